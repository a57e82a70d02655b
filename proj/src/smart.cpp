#include "crowdsense/smart.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace crowdsense {

bool ScreeningResult::contains(UserId id) const {
  return std::find(order.begin(), order.end(), id) != order.end();
}

std::optional<int> ScreeningResult::entry_round(UserId id) const {
  auto it = std::find(order.begin(), order.end(), id);
  if (it == order.end()) return std::nullopt;
  return static_cast<int>(it - order.begin()) + 1;
}

namespace detail {

Eligibility all_users(const Instance& instance) {
  return Eligibility(static_cast<std::size_t>(instance.user_count()) + 1, 1);
}

Eligibility user_subset(const Instance& instance,
                        std::span<const UserId> ids) {
  Eligibility in(static_cast<std::size_t>(instance.user_count()) + 1, 0);
  for (UserId id : ids) {
    if (id < 1 || id > instance.user_count()) {
      throw std::out_of_range("unknown user id " + std::to_string(id));
    }
    in[static_cast<std::size_t>(id)] = 1;
  }
  return in;
}

namespace {

void mask_or(TaskMask& dst, const TaskMask& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

// Best (marginal value - bid) among eligible users outside `skip`, ties to
// the lowest id. Returns the winning margin's marginal value as well so
// callers do not recompute it.
struct BestMargin {
  UserId user = 0;  // 0 = none
  Value margin = 0;
  Value marginal = 0;
};

BestMargin best_margin(const Instance& instance, const Eligibility& in,
                       const std::vector<char>& skip, const TaskMask& covered) {
  BestMargin best;
  for (UserId k = 1; k <= instance.user_count(); ++k) {
    if (!in[static_cast<std::size_t>(k)] || skip[static_cast<std::size_t>(k)])
      continue;
    Value marginal = instance.marginal_value_vs_mask(k, covered);
    Value margin = marginal - instance.bid(k);
    if (best.user == 0 || margin > best.margin) {
      best = {k, margin, marginal};
    }
  }
  return best;
}

std::vector<char> member_flags(const Instance& instance,
                               std::span<const UserId> ids) {
  std::vector<char> flags(static_cast<std::size_t>(instance.user_count()) + 1,
                          0);
  for (UserId id : ids) flags[static_cast<std::size_t>(id)] = 1;
  return flags;
}

}  // namespace

ScreeningResult screen_users(const Instance& instance, const Eligibility& in) {
  ScreeningResult result;
  std::vector<char> in_s(static_cast<std::size_t>(instance.user_count()) + 1,
                         0);
  TaskMask covered(instance.words(), 0);
  for (;;) {
    BestMargin best = best_margin(instance, in, in_s, covered);
    if (best.user == 0 || best.margin <= 0) break;
    result.order.push_back(best.user);
    in_s[static_cast<std::size_t>(best.user)] = 1;
    mask_or(covered, instance.user_mask(best.user));
  }
  return result;
}

NextBest next_best_user(const Instance& instance, const Eligibility& in,
                        UserId i, std::span<const UserId> T) {
  auto pos = std::find(T.begin(), T.end(), i);
  if (pos == T.end()) {
    throw std::invalid_argument("next_best_user: user " + std::to_string(i) +
                                " is not in T");
  }
  std::vector<char> skip = member_flags(instance, T);
  TaskMask covered(instance.words(), 0);
  for (UserId id : T) {
    if (id != i) mask_or(covered, instance.user_mask(id));
  }
  BestMargin best = best_margin(instance, in, skip, covered);
  if (best.user == 0 || best.margin <= 0) return {std::nullopt, std::nullopt};
  Value own = instance.marginal_value_vs_mask(i, covered);
  return {best.user, own - best.marginal + instance.bid(best.user)};
}

Value user_entry_payment(const Instance& instance, const Eligibility& in,
                         UserId i) {
  if (i < 1 || i > instance.user_count()) {
    throw std::out_of_range("unknown user id " + std::to_string(i));
  }
  std::vector<char> taken(static_cast<std::size_t>(instance.user_count()) + 1,
                          0);
  taken[static_cast<std::size_t>(i)] = 1;  // i competes against U \ {i}
  TaskMask covered(instance.words(), 0);
  Value beta = 0;
  for (;;) {
    Value own = instance.marginal_value_vs_mask(i, covered);
    if (own <= instance.bid(i)) return beta;
    BestMargin best = best_margin(instance, in, taken, covered);
    if (best.user == 0 || best.margin <= 0) {
      // Competitors exhausted or none left with a positive margin: the
      // remaining marginal value itself is the binding entry cap.
      return std::max(beta, own);
    }
    beta = std::max(beta, own - best.marginal + instance.bid(best.user));
    taken[static_cast<std::size_t>(best.user)] = 1;
    mask_or(covered, instance.user_mask(best.user));
  }
}

Replacement replace_user(const Instance& instance, const Eligibility& in,
                         std::span<const UserId> T, UserId i, UserId j) {
  auto pos = std::find(T.begin(), T.end(), i);
  if (pos == T.end()) {
    throw std::invalid_argument("replace_user: user " + std::to_string(i) +
                                " is not in T");
  }
  if (std::find(T.begin(), T.end(), j) != T.end()) {
    throw std::invalid_argument("replace_user: user " + std::to_string(j) +
                                " is already in T");
  }
  Replacement rep;
  rep.winners.assign(T.begin(), T.end());
  rep.winners[static_cast<std::size_t>(pos - T.begin())] = j;
  rep.user = j;
  NextBest nb = next_best_user(instance, in, j, rep.winners);
  rep.gamma = nb.gamma;
  Value own = 0;
  {
    TaskMask covered(instance.words(), 0);
    for (UserId id : rep.winners) {
      if (id != j) mask_or(covered, instance.user_mask(id));
    }
    own = instance.marginal_value_vs_mask(j, covered);
  }
  rep.payment = (nb.gamma.has_value() && *nb.gamma < own) ? *nb.gamma : own;
  return rep;
}

Selection winner_selection(const Instance& instance, const Eligibility& in,
                           const ScreeningResult& screening,
                           SelectionTrace* trace) {
  Selection sel;
  sel.winners.assign(screening.order.begin(), screening.order.end());
  sel.payments.assign(static_cast<std::size_t>(instance.user_count()) + 1, 0);
  if (trace) {
    trace->steps.clear();
    trace->beta_table.assign(
        static_cast<std::size_t>(instance.user_count()) + 1, std::nullopt);
  }

  for (UserId i : screening.order) {
    assert(std::find(sel.winners.begin(), sel.winners.end(), i) !=
           sel.winners.end());
    SelectionStep step;
    step.user = i;
    step.next_best = next_best_user(instance, in, i, sel.winners);
    if (trace && step.next_best.candidate) {
      // The candidate's entry cap is re-marked infinite when it is picked.
      (*trace).beta_table[static_cast<std::size_t>(*step.next_best.candidate)] =
          std::nullopt;
    }
    step.sigma = instance.sigma(i, sel.winners);
    step.beta = user_entry_payment(instance, in, i);
    if (trace) {
      trace->beta_table[static_cast<std::size_t>(i)] = step.beta;
    }

    const Gamma& gamma = step.next_best.gamma;
    if (step.sigma > 0) {
      if (gamma.has_value() && *gamma >= instance.bid(i) &&
          *gamma <= step.beta) {
        step.rule = SelectionRule::kPayCritical;
        step.payment = *gamma;
        sel.payments[static_cast<std::size_t>(i)] = *gamma;
      } else if (gamma.has_value() && *gamma < instance.bid(i) &&
                 *gamma <= step.beta) {
        step.rule = SelectionRule::kReplace;
        Replacement rep = replace_user(instance, in, sel.winners, i,
                                       *step.next_best.candidate);
        sel.winners = std::move(rep.winners);
        sel.payments[static_cast<std::size_t>(i)] = 0;
        sel.payments[static_cast<std::size_t>(rep.user)] = rep.payment;
        step.replacement = rep.user;
        step.replacement_gamma = rep.gamma;
        step.replacement_payment = rep.payment;
      } else {  // gamma infinite or above the entry cap
        step.rule = SelectionRule::kPayCapped;
        step.payment = std::min(step.sigma + instance.bid(i), step.beta);
        sel.payments[static_cast<std::size_t>(i)] = step.payment;
      }
    } else if (gamma.has_value()) {
      step.rule = SelectionRule::kReplace;
      Replacement rep = replace_user(instance, in, sel.winners, i,
                                     *step.next_best.candidate);
      sel.winners = std::move(rep.winners);
      sel.payments[static_cast<std::size_t>(i)] = 0;
      sel.payments[static_cast<std::size_t>(rep.user)] = rep.payment;
      step.replacement = rep.user;
      step.replacement_gamma = rep.gamma;
      step.replacement_payment = rep.payment;
    } else {
      step.rule = SelectionRule::kDrop;
      sel.winners.erase(
          std::find(sel.winners.begin(), sel.winners.end(), i));
      sel.payments[static_cast<std::size_t>(i)] = 0;
    }
    if (trace) trace->steps.push_back(step);
  }
  return sel;
}

AuctionOutcome run_smart(const Instance& instance, const Eligibility& in) {
  ScreeningResult screening = screen_users(instance, in);
  Selection sel = winner_selection(instance, in, screening, nullptr);
  sel = crowdsense::remove_bad_users(instance, sel.winners,
                                     std::move(sel.payments));
  return make_outcome(instance, std::move(sel.winners),
                      std::move(sel.payments));
}

}  // namespace detail

ScreeningResult screen_users(const Instance& instance) {
  return detail::screen_users(instance, detail::all_users(instance));
}

NextBest next_best_user(const Instance& instance, UserId i,
                        std::span<const UserId> T) {
  return detail::next_best_user(instance, detail::all_users(instance), i, T);
}

Value user_entry_payment(const Instance& instance, UserId i) {
  return detail::user_entry_payment(instance, detail::all_users(instance), i);
}

Replacement replace_user(const Instance& instance, std::span<const UserId> T,
                         UserId i, UserId j) {
  return detail::replace_user(instance, detail::all_users(instance), T, i, j);
}

Selection winner_selection(const Instance& instance,
                           const ScreeningResult& screening,
                           SelectionTrace* trace) {
  return detail::winner_selection(instance, detail::all_users(instance),
                                  screening, trace);
}

Selection remove_bad_users(const Instance& instance,
                           std::span<const UserId> T,
                           std::vector<Value> payments) {
  Selection sel;
  sel.winners.assign(T.begin(), T.end());
  std::sort(sel.winners.begin(), sel.winners.end());
  sel.payments = std::move(payments);
  sel.payments.resize(static_cast<std::size_t>(instance.user_count()) + 1, 0);
  // One sequential pass in ascending id order against the mutating set.
  std::vector<UserId> ids = sel.winners;
  for (UserId id : ids) {
    Value p = sel.payments[static_cast<std::size_t>(id)];
    TaskMask covered(instance.words(), 0);
    for (UserId other : sel.winners) {
      if (other != id) {
        const TaskMask& m = instance.user_mask(other);
        for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= m[w];
      }
    }
    if (instance.marginal_value_vs_mask(id, covered) - p <= 0) {
      sel.winners.erase(
          std::find(sel.winners.begin(), sel.winners.end(), id));
      sel.payments[static_cast<std::size_t>(id)] = 0;
    }
  }
  return sel;
}

AuctionOutcome run_smart(const Instance& instance) {
  return detail::run_smart(instance, detail::all_users(instance));
}

AuctionOutcome run_smart(const Instance& instance, ScreeningResult* screening,
                         SelectionTrace* trace) {
  detail::Eligibility in = detail::all_users(instance);
  ScreeningResult s = detail::screen_users(instance, in);
  Selection sel = detail::winner_selection(instance, in, s, trace);
  sel = remove_bad_users(instance, sel.winners, std::move(sel.payments));
  if (screening) *screening = std::move(s);
  return make_outcome(instance, std::move(sel.winners),
                      std::move(sel.payments));
}

}  // namespace crowdsense
