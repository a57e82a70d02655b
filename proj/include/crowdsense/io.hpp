#pragma once

#include <iosfwd>
#include <string>

#include "crowdsense/experiment.hpp"
#include "crowdsense/model.hpp"

// JSON file formats.
//
// Instance:   {"tasks":[{"id":0,"value":12},...],
//              "users":[{"id":1,"tasks":[0,3],"bid":8},...]}
// Experiment: {"generator":{...},"sweep":{"parameter":...,"points":[...]},
//              "trials":N,"mechanisms":[...],"observe_fractions":[...]}
//
// save_instance emits a canonical form (ids ascending, task lists sorted,
// fixed key order, two-space indent) so load/save round-trips are identical
// byte for byte. Malformed input raises std::invalid_argument naming the
// offending field.

namespace crowdsense::io {

Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);
void save_instance(const Instance& instance, std::ostream& out);
void save_instance_file(const Instance& instance, const std::string& path);

ExperimentConfig load_experiment(std::istream& in);
ExperimentConfig load_experiment_file(const std::string& path);

// {"mechanism":...,"winners":[...],"payments":{"<id>":p,...},"utility":u}
void save_outcome(const AuctionOutcome& outcome, const std::string& mechanism,
                  std::ostream& out);

}  // namespace crowdsense::io
