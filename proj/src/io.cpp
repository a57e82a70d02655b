#include "crowdsense/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace crowdsense::io {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

std::int64_t require_int(const ordered_json& node, const std::string& field) {
  if (!node.contains(field) || !node[field].is_number_integer()) {
    fail(field, "expected an integer");
  }
  return node[field].get<std::int64_t>();
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  return in;
}

}  // namespace

Instance load_instance(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance: invalid JSON: ") +
                                e.what());
  }
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) {
    fail("tasks", "expected an array");
  }
  if (!doc.contains("users") || !doc["users"].is_array()) {
    fail("users", "expected an array");
  }
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < doc["tasks"].size(); ++k) {
    const auto& t = doc["tasks"][k];
    const std::string where = "tasks[" + std::to_string(k) + "]";
    if (!t.is_object()) fail(where, "expected an object");
    tasks.push_back({static_cast<TaskId>(require_int(t, "id")),
                     require_int(t, "value")});
    if (tasks.back().id != static_cast<TaskId>(k)) {
      fail(where + ".id", "task ids must be contiguous from 0");
    }
  }
  std::vector<UserProfile> users;
  for (std::size_t k = 0; k < doc["users"].size(); ++k) {
    const auto& u = doc["users"][k];
    const std::string where = "users[" + std::to_string(k) + "]";
    if (!u.is_object()) fail(where, "expected an object");
    UserProfile profile;
    profile.id = static_cast<UserId>(require_int(u, "id"));
    profile.bid = require_int(u, "bid");
    if (!u.contains("tasks") || !u["tasks"].is_array() || u["tasks"].empty()) {
      fail(where + ".tasks", "expected a nonempty array");
    }
    for (const auto& t : u["tasks"]) {
      if (!t.is_number_integer()) fail(where + ".tasks", "expected integers");
      profile.tasks.push_back(t.get<TaskId>());
    }
    std::sort(profile.tasks.begin(), profile.tasks.end());
    profile.tasks.erase(
        std::unique(profile.tasks.begin(), profile.tasks.end()),
        profile.tasks.end());
    users.push_back(std::move(profile));
  }
  try {
    return Instance(TaskCatalog(std::move(tasks)), std::move(users));
  } catch (const std::invalid_argument&) {
    throw;  // already carries the field name
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in = open_file(path);
  return load_instance(in);
}

void save_instance(const Instance& instance, std::ostream& out) {
  ordered_json doc;
  doc["tasks"] = ordered_json::array();
  for (const Task& t : instance.catalog().tasks()) {
    doc["tasks"].push_back({{"id", t.id}, {"value", t.value}});
  }
  doc["users"] = ordered_json::array();
  for (const UserProfile& u : instance.users()) {
    std::vector<TaskId> tasks = u.tasks;
    std::sort(tasks.begin(), tasks.end());
    doc["users"].push_back({{"id", u.id}, {"tasks", tasks}, {"bid", u.bid}});
  }
  out << doc.dump(2) << "\n";
}

void save_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot write");
  save_instance(instance, out);
}

namespace {

SweepParameter parse_parameter(const std::string& name) {
  if (name == "users") return SweepParameter::kUsers;
  if (name == "tasks") return SweepParameter::kTasks;
  if (name == "fraction" || name == "task_fraction") {
    return SweepParameter::kTaskFraction;
  }
  if (name == "observe-fraction" || name == "observe_fraction") {
    return SweepParameter::kObserveFraction;
  }
  fail("sweep.parameter", "unknown parameter '" + name + "'");
}

MechanismKind parse_mechanism(const std::string& name) {
  if (name == "smart") return MechanismKind::kSmart;
  if (name == "msensing") return MechanismKind::kMSensing;
  if (name == "online") return MechanismKind::kOnline;
  fail("mechanisms", "unknown mechanism '" + name + "'");
}

}  // namespace

ExperimentConfig load_experiment(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment: invalid JSON: ") +
                                e.what());
  }
  ExperimentConfig config;
  if (!doc.contains("generator") || !doc["generator"].is_object()) {
    fail("generator", "expected an object");
  }
  const auto& g = doc["generator"];
  config.generator.users = static_cast<int>(require_int(g, "users"));
  config.generator.tasks = static_cast<int>(require_int(g, "tasks"));
  auto range = [&](const char* field, Value& lo, Value& hi) {
    if (!g.contains(field) || !g[field].is_array() || g[field].size() != 2) {
      fail(std::string("generator.") + field, "expected [lo, hi]");
    }
    lo = g[field][0].get<Value>();
    hi = g[field][1].get<Value>();
  };
  range("value_range", config.generator.value_lo, config.generator.value_hi);
  range("bid_range", config.generator.bid_lo, config.generator.bid_hi);
  if (!g.contains("task_fraction") || !g["task_fraction"].is_number()) {
    fail("generator.task_fraction", "expected a number");
  }
  config.generator.task_fraction = g["task_fraction"].get<double>();
  if (!g.contains("seed") || !g["seed"].is_number_integer()) {
    fail("generator.seed", "expected an integer");
  }
  config.generator.seed = g["seed"].get<std::uint64_t>();

  if (!doc.contains("sweep") || !doc["sweep"].is_object()) {
    fail("sweep", "expected an object");
  }
  const auto& sweep = doc["sweep"];
  if (!sweep.contains("parameter") || !sweep["parameter"].is_string()) {
    fail("sweep.parameter", "expected a string");
  }
  config.parameter = parse_parameter(sweep["parameter"].get<std::string>());
  if (!sweep.contains("points") || !sweep["points"].is_array() ||
      sweep["points"].empty()) {
    fail("sweep.points", "expected a nonempty array");
  }
  for (const auto& p : sweep["points"]) {
    if (!p.is_number()) fail("sweep.points", "expected numbers");
    config.points.push_back(p.get<double>());
  }

  config.trials = static_cast<int>(require_int(doc, "trials"));
  if (!doc.contains("mechanisms") || !doc["mechanisms"].is_array() ||
      doc["mechanisms"].empty()) {
    fail("mechanisms", "expected a nonempty array");
  }
  for (const auto& m : doc["mechanisms"]) {
    if (!m.is_string()) fail("mechanisms", "expected strings");
    config.mechanisms.push_back(parse_mechanism(m.get<std::string>()));
  }
  if (doc.contains("observe_fractions")) {
    if (!doc["observe_fractions"].is_array() ||
        doc["observe_fractions"].empty()) {
      fail("observe_fractions", "expected a nonempty array");
    }
    config.observe_fractions.clear();
    for (const auto& f : doc["observe_fractions"]) {
      if (!f.is_number()) fail("observe_fractions", "expected numbers");
      config.observe_fractions.push_back(f.get<double>());
    }
  }
  return config;
}

ExperimentConfig load_experiment_file(const std::string& path) {
  std::ifstream in = open_file(path);
  return load_experiment(in);
}

void save_outcome(const AuctionOutcome& outcome, const std::string& mechanism,
                  std::ostream& out) {
  ordered_json doc;
  doc["mechanism"] = mechanism;
  doc["winners"] = outcome.winners;
  ordered_json payments = ordered_json::object();
  for (UserId id : outcome.winners) {
    payments[std::to_string(id)] =
        outcome.payments[static_cast<std::size_t>(id)];
  }
  doc["payments"] = payments;
  doc["utility"] = outcome.utility;
  out << doc.dump(2) << "\n";
}

}  // namespace crowdsense::io
