#include "crowdsense/fixtures.hpp"

namespace crowdsense::fixtures {

Instance example_instance() {
  TaskCatalog catalog({{0, 10}, {1, 8}, {2, 9}, {3, 6}, {4, 8}, {5, 9}});
  std::vector<UserProfile> users = {
      {1, {0, 1, 2, 3}, 8},
      {2, {0, 3, 4}, 6},
      {3, {1, 3, 5}, 6},
      {4, {5}, 7},
      {5, {2}, 2},
  };
  return Instance(std::move(catalog), std::move(users));
}

}  // namespace crowdsense::fixtures
