#include "crowdsense/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "crowdsense/msensing.hpp"
#include "crowdsense/smart.hpp"

namespace crowdsense {

namespace {

constexpr std::uint64_t kArrivalSalt = 0x0a5511e5u;

void validate(const ExperimentConfig& config) {
  if (config.points.empty()) {
    throw std::invalid_argument("sweep.points: must not be empty");
  }
  for (std::size_t k = 1; k < config.points.size(); ++k) {
    if (config.points[k] <= config.points[k - 1]) {
      throw std::invalid_argument("sweep.points: must be strictly increasing");
    }
  }
  if (config.trials < 1) {
    throw std::invalid_argument("trials: must be at least 1");
  }
  if (config.mechanisms.empty()) {
    throw std::invalid_argument("mechanisms: must not be empty");
  }
  if (config.observe_fractions.empty()) {
    throw std::invalid_argument("observe_fractions: must not be empty");
  }
}

GeneratorConfig at_point(const ExperimentConfig& config, double point) {
  GeneratorConfig g = config.generator;
  switch (config.parameter) {
    case SweepParameter::kUsers:
      g.users = static_cast<int>(point);
      break;
    case SweepParameter::kTasks:
      g.tasks = static_cast<int>(point);
      break;
    case SweepParameter::kTaskFraction:
      g.task_fraction = point;
      break;
    case SweepParameter::kObserveFraction:
      break;  // generator unchanged; the online config takes the point
  }
  return g;
}

bool has_mechanism(const ExperimentConfig& config, MechanismKind kind) {
  return std::find(config.mechanisms.begin(), config.mechanisms.end(), kind) !=
         config.mechanisms.end();
}

AuctionOutcome run_kind(const Instance& instance, MechanismKind kind,
                        std::uint64_t trial_seed, double observe_fraction) {
  switch (kind) {
    case MechanismKind::kSmart:
      return run_smart(instance);
    case MechanismKind::kMSensing:
      return run_msensing(instance);
    case MechanismKind::kOnline: {
      std::vector<UserId> order = random_arrival_order(
          instance.user_count(), mix64(trial_seed ^ kArrivalSalt));
      return run_online(instance, order, OnlineConfig{observe_fraction});
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<SweepRow> utility_sweep(const ExperimentConfig& config) {
  validate(config);
  if (config.parameter == SweepParameter::kObserveFraction) {
    throw std::invalid_argument(
        "utility sweeps cannot sweep the observe fraction");
  }
  if (!has_mechanism(config, MechanismKind::kSmart) ||
      !has_mechanism(config, MechanismKind::kMSensing)) {
    throw std::invalid_argument(
        "mechanisms: utility sweeps need both smart and msensing");
  }
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < config.points.size(); ++p) {
    GeneratorConfig base = at_point(config, config.points[p]);
    std::vector<double> sums(config.mechanisms.size(), 0.0);
    for (int t = 0; t < config.trials; ++t) {
      std::uint64_t trial_seed = derive_seed(
          config.generator.seed, static_cast<std::uint64_t>(p),
          static_cast<std::uint64_t>(t));
      GeneratorConfig g = base;
      g.seed = trial_seed;
      Instance instance = generate_instance(g);
      for (std::size_t m = 0; m < config.mechanisms.size(); ++m) {
        sums[m] += static_cast<double>(
            run_kind(instance, config.mechanisms[m], trial_seed,
                     config.observe_fractions.front())
                .utility);
      }
    }
    for (std::size_t m = 0; m < config.mechanisms.size(); ++m) {
      SweepRow row;
      row.sweep_value = config.points[p];
      row.mechanism = to_string(config.mechanisms[m]);
      row.mean_utility = sums[m] / config.trials;
      row.trials = config.trials;
      row.seed = config.generator.seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SweepRow> competitive_ratio_sweep(const ExperimentConfig& config) {
  validate(config);
  if (!has_mechanism(config, MechanismKind::kOnline)) {
    throw std::invalid_argument("mechanisms: ratio sweeps need online");
  }
  const bool sweep_observe =
      config.parameter == SweepParameter::kObserveFraction;
  if (!sweep_observe && config.parameter != SweepParameter::kTaskFraction) {
    throw std::invalid_argument(
        "ratio sweeps sweep the observe fraction or the task fraction");
  }

  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < config.points.size(); ++p) {
    GeneratorConfig base = at_point(config, config.points[p]);
    std::vector<double> grid = sweep_observe
                                   ? std::vector<double>{config.points[p]}
                                   : config.observe_fractions;

    double smart_sum = 0.0;
    std::vector<double> online_sum(grid.size(), 0.0);
    std::vector<double> ratio_sum(grid.size(), 0.0);
    std::vector<int> ratio_valid(grid.size(), 0);
    for (int t = 0; t < config.trials; ++t) {
      std::uint64_t trial_seed = derive_seed(
          config.generator.seed, static_cast<std::uint64_t>(p),
          static_cast<std::uint64_t>(t));
      GeneratorConfig g = base;
      g.seed = trial_seed;
      Instance instance = generate_instance(g);
      Value offline = run_smart(instance).utility;
      smart_sum += static_cast<double>(offline);
      std::vector<UserId> order = random_arrival_order(
          instance.user_count(), mix64(trial_seed ^ kArrivalSalt));
      for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        Value online =
            run_online(instance, order, OnlineConfig{grid[gi]}).utility;
        online_sum[gi] += static_cast<double>(online);
        if (offline > 0) {
          ratio_sum[gi] +=
              static_cast<double>(online) / static_cast<double>(offline);
          ++ratio_valid[gi];
        }
      }
    }

    // Best grid entry by mean ratio; ties to the smaller fraction.
    std::size_t best = 0;
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
      double a = ratio_valid[gi] ? ratio_sum[gi] / ratio_valid[gi] : -1.0;
      double b = ratio_valid[best] ? ratio_sum[best] / ratio_valid[best] : -1.0;
      if (a > b) best = gi;
    }

    SweepRow smart_row;
    smart_row.sweep_value = config.points[p];
    smart_row.mechanism = to_string(MechanismKind::kSmart);
    smart_row.mean_utility = smart_sum / config.trials;
    smart_row.trials = config.trials;
    smart_row.seed = config.generator.seed;
    rows.push_back(std::move(smart_row));

    SweepRow online_row;
    online_row.sweep_value = config.points[p];
    online_row.mechanism = to_string(MechanismKind::kOnline);
    online_row.mean_utility = online_sum[best] / config.trials;
    online_row.trials = config.trials;
    online_row.seed = config.generator.seed;
    online_row.ratio_valid_trials = ratio_valid[best];
    if (ratio_valid[best] > 0) {
      online_row.ratio_mean = ratio_sum[best] / ratio_valid[best];
    }
    online_row.observe_fraction = grid[best];
    rows.push_back(std::move(online_row));
  }
  return rows;
}

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string format_sweep_value(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(x));
    return buf;
  }
  return format_real(x);
}

}  // namespace

void write_csv(const std::vector<SweepRow>& rows, bool ratio_columns,
               std::ostream& out) {
  out << "sweep_value,mechanism,mean_utility,trials,seed";
  if (ratio_columns) out << ",ratio_mean,ratio_valid_trials,observe_fraction";
  out << "\n";
  for (const SweepRow& row : rows) {
    out << format_sweep_value(row.sweep_value) << ',' << row.mechanism << ','
        << format_real(row.mean_utility) << ',' << row.trials << ','
        << row.seed;
    if (ratio_columns) {
      out << ',' << (row.ratio_mean ? format_real(*row.ratio_mean) : "")
          << ',' << row.ratio_valid_trials << ','
          << (row.observe_fraction ? format_real(*row.observe_fraction) : "");
    }
    out << "\n";
  }
}

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kUsers:
      return "users";
    case SweepParameter::kTasks:
      return "tasks";
    case SweepParameter::kTaskFraction:
      return "fraction";
    case SweepParameter::kObserveFraction:
      return "observe-fraction";
  }
  return "?";
}

const char* to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSmart:
      return "smart";
    case MechanismKind::kMSensing:
      return "msensing";
    case MechanismKind::kOnline:
      return "online";
  }
  return "?";
}

}  // namespace crowdsense
