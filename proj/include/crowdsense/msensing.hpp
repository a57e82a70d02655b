#pragma once

#include "crowdsense/model.hpp"

namespace crowdsense {

// Greedy baseline mechanism ("msensing" in the CLI): the winners are exactly
// the screening set of the offline mechanism and each winner is paid its
// entry cap beta.
AuctionOutcome run_msensing(const Instance& instance);

}  // namespace crowdsense
