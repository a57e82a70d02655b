#pragma once

#include "crowdsense/model.hpp"

namespace crowdsense::fixtures {

// The five-user, six-task instance behind the `example` CLI subcommand.
// Small enough to trace by hand, rich enough to exercise every payment rule
// of the offline mechanism (replacement, marginal-cap and entry-cap
// payments all occur).
Instance example_instance();

}  // namespace crowdsense::fixtures
