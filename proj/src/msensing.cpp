#include "crowdsense/msensing.hpp"

#include "crowdsense/smart.hpp"

namespace crowdsense {

AuctionOutcome run_msensing(const Instance& instance) {
  ScreeningResult screening = screen_users(instance);
  std::vector<Value> payments(
      static_cast<std::size_t>(instance.user_count()) + 1, 0);
  for (UserId id : screening.order) {
    payments[static_cast<std::size_t>(id)] = user_entry_payment(instance, id);
  }
  return make_outcome(instance, screening.order, std::move(payments));
}

}  // namespace crowdsense
