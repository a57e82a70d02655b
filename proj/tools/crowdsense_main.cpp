// Command-line front end: run one auction from an instance file, sweep
// experiment configs to CSV, run the property battery, or walk through the
// built-in example instance.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "crowdsense/experiment.hpp"
#include "crowdsense/fixtures.hpp"
#include "crowdsense/generator.hpp"
#include "crowdsense/io.hpp"
#include "crowdsense/msensing.hpp"
#include "crowdsense/online.hpp"
#include "crowdsense/smart.hpp"
#include "crowdsense/verify.hpp"

namespace {

using namespace crowdsense;

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("CROWDSENSE_SEED");
  if (!env || !*env) return std::nullopt;
  return std::strtoull(env, nullptr, 10);
}

int cmd_run(const std::string& instance_path, const std::string& mechanism,
            double observe_fraction, std::uint64_t arrival_seed,
            const std::string& out_path) {
  Instance instance = io::load_instance_file(instance_path);
  AuctionOutcome outcome;
  if (mechanism == "smart") {
    outcome = run_smart(instance);
  } else if (mechanism == "msensing") {
    outcome = run_msensing(instance);
  } else {
    if (auto seed = env_seed_override()) arrival_seed = *seed;
    std::vector<UserId> order =
        random_arrival_order(instance.user_count(), arrival_seed);
    outcome = run_online(instance, order, OnlineConfig{observe_fraction});
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument(out_path + ": cannot write");
    io::save_outcome(outcome, mechanism, out);
  }
  io::save_outcome(outcome, mechanism, std::cout);
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  ExperimentConfig config = io::load_experiment_file(config_path);
  if (auto seed = env_seed_override()) config.generator.seed = *seed;
  bool ratio =
      config.parameter == SweepParameter::kObserveFraction ||
      (config.parameter == SweepParameter::kTaskFraction &&
       std::find(config.mechanisms.begin(), config.mechanisms.end(),
                 MechanismKind::kOnline) != config.mechanisms.end());
  std::vector<SweepRow> rows =
      ratio ? competitive_ratio_sweep(config) : utility_sweep(config);
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument(out_path + ": cannot write");
  write_csv(rows, ratio, out);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_verify(std::uint64_t seed, int count, int max_users, int max_tasks,
               const std::string& out_path) {
  if (auto env = env_seed_override()) seed = *env;
  PropertyReport report = run_battery({seed, count, max_users, max_tasks});
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument(out_path + ": cannot write");
    write_report_jsonl(report, out);
  }
  std::cout << "instances=" << report.instances
            << " violations=" << report.violations.size() << "\n";
  for (const Violation& v : report.violations) {
    std::cout << v.property << " seed=" << v.seed << ": " << v.detail << "\n";
  }
  return report.violations.empty() ? 0 : 1;
}

const char* rule_name(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::kPayCritical:
      return "pay next best user's bid value (gamma)";
    case SelectionRule::kReplace:
      return "replace with next best user";
    case SelectionRule::kPayCapped:
      return "pay min(marginal value, entry cap)";
    case SelectionRule::kDrop:
      return "drop";
  }
  return "?";
}

int cmd_example() {
  Instance instance = fixtures::example_instance();
  ScreeningResult screening;
  SelectionTrace trace;
  AuctionOutcome outcome = run_smart(instance, &screening, &trace);

  std::cout << "screening order:";
  for (UserId id : screening.order) std::cout << " " << id;
  std::cout << "\n";
  for (const SelectionStep& step : trace.steps) {
    std::cout << "user " << step.user << ": sigma=" << step.sigma;
    if (step.next_best.gamma) {
      std::cout << " gamma=" << *step.next_best.gamma;
    } else {
      std::cout << " gamma=inf";
    }
    std::cout << " beta=" << step.beta << " -> " << rule_name(step.rule);
    if (step.rule == SelectionRule::kReplace) {
      std::cout << " (user " << step.replacement << " paid "
                << step.replacement_payment << ")";
    } else if (step.rule != SelectionRule::kDrop) {
      std::cout << " (paid " << step.payment << ")";
    }
    std::cout << "\n";
  }
  std::cout << "T={";
  for (std::size_t k = 0; k < outcome.winners.size(); ++k) {
    std::cout << (k ? "," : "") << outcome.winners[k];
  }
  std::cout << "} payments";
  for (UserId id : outcome.winners) {
    std::cout << " p_" << id << "="
              << outcome.payments[static_cast<std::size_t>(id)];
  }
  std::cout << "\nutility " << outcome.utility << "\n";

  AuctionOutcome baseline = run_msensing(instance);
  std::cout << "msensing winners={";
  for (std::size_t k = 0; k < baseline.winners.size(); ++k) {
    std::cout << (k ? "," : "") << baseline.winners[k];
  }
  std::cout << "} payments";
  for (UserId id : baseline.winners) {
    std::cout << " p_" << id << "="
              << baseline.payments[static_cast<std::size_t>(id)];
  }
  std::cout << "\nmsensing utility " << baseline.utility << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse-auction toolkit for task-coverage crowd sensing"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one auction from an instance file");
  std::string instance_path, mechanism = "smart", out_path;
  double observe_fraction = 1.0 / 3.0;
  std::uint64_t arrival_seed = 1;
  run->add_option("--instance", instance_path, "Instance JSON file")
      ->required();
  run->add_option("--mechanism", mechanism, "smart | msensing | online")
      ->check(CLI::IsMember({"smart", "msensing", "online"}));
  run->add_option("--observe-fraction", observe_fraction,
                  "Observation fraction for the online mechanism");
  run->add_option("--arrival-seed", arrival_seed,
                  "Seed for the online arrival order");
  run->add_option("--out", out_path, "Write the outcome JSON here as well");

  auto* simulate =
      app.add_subcommand("simulate", "Sweep an experiment config to CSV");
  std::string config_path, csv_path;
  simulate->add_option("--config", config_path, "Experiment JSON file")
      ->required();
  simulate->add_option("--out", csv_path, "Output CSV path")->required();

  auto* verify =
      app.add_subcommand("verify", "Run the property battery on random instances");
  std::uint64_t seed = 1;
  int count = 100, max_users = 12, max_tasks = 10;
  std::string report_path;
  verify->add_option("--seed", seed, "Battery seed");
  verify->add_option("--count", count, "Number of random instances");
  verify->add_option("--max-users", max_users, "Largest instance user count");
  verify->add_option("--max-tasks", max_tasks, "Largest instance task count");
  verify->add_option("--out", report_path, "Violation report (JSON lines)");

  auto* example =
      app.add_subcommand("example", "Trace the built-in example instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(instance_path, mechanism, observe_fraction, arrival_seed,
                     out_path);
    }
    if (simulate->parsed()) return cmd_simulate(config_path, csv_path);
    if (verify->parsed()) {
      return cmd_verify(seed, count, max_users, max_tasks, report_path);
    }
    if (example->parsed()) return cmd_example();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
