#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crowdsense/generator.hpp"
#include "crowdsense/model.hpp"
#include "crowdsense/online.hpp"

// Monte-Carlo sweeps over seeded random instances. One generator parameter
// (users | tasks | fraction | observe-fraction) is swept; every sweep point
// averages per-trial utilities (and online/offline ratios where applicable)
// over trials with derived per-trial seeds, so outputs are reproducible
// byte for byte.

namespace crowdsense {

enum class SweepParameter { kUsers, kTasks, kTaskFraction, kObserveFraction };

enum class MechanismKind { kSmart, kMSensing, kOnline };

struct ExperimentConfig {
  GeneratorConfig generator;
  SweepParameter parameter = SweepParameter::kUsers;
  std::vector<double> points;  // strictly increasing
  int trials = 1;
  std::vector<MechanismKind> mechanisms;
  // Observe fractions scanned per point when the swept parameter is the
  // task fraction and the online mechanism is requested (best one reported);
  // a single-entry grid is used directly for utility sweeps.
  std::vector<double> observe_fractions = {1.0 / 3.0};
};

struct SweepRow {
  double sweep_value = 0;
  std::string mechanism;
  double mean_utility = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  // Ratio sweeps only:
  std::optional<double> ratio_mean;      // absent when no valid trials
  int ratio_valid_trials = 0;
  std::optional<double> observe_fraction;  // fraction behind the online row
};

// Mean utility per (sweep point, mechanism). Requires smart and msensing.
std::vector<SweepRow> utility_sweep(const ExperimentConfig& config);

// Mean of u_online / u_offline over trials with positive offline utility.
// Sweeping the task fraction scans the observe grid per point and reports
// the best fraction (carried in observe_fraction).
std::vector<SweepRow> competitive_ratio_sweep(const ExperimentConfig& config);

// Header + one line per row, UTF-8, LF endings, fixed six-decimal reals.
void write_csv(const std::vector<SweepRow>& rows, bool ratio_columns,
               std::ostream& out);

const char* to_string(SweepParameter parameter);
const char* to_string(MechanismKind kind);

}  // namespace crowdsense
