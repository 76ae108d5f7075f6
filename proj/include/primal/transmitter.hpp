#pragma once

#include <algorithm>
#include <array>
#include <ostream>
#include <random>

#include "primal/config.hpp"
#include "primal/costs.hpp"
#include "primal/fields.hpp"
#include "primal/message.hpp"

namespace primal {

/// Value-learning state for one outgoing channel of one agent.
///
/// The learner maintains a value estimate per field mask and picks which
/// fields to include in outgoing messages: cheap-but-sufficient masks earn
/// mild negative rewards (their cost), insufficient ones earn a large
/// penalty, so the estimates converge toward the cheapest mask the receiver
/// still accepts.  Exploration is epsilon-greedy with a decaying epsilon.
///
/// Estimates start at minus the mask's priced cost on this channel — the
/// exact reward the mask would earn if the receiver accepted it.  Masks that
/// turn out sufficient are therefore fixed points of the update, while
/// insufficient ones sink by the failure penalty as soon as they are tried,
/// so greedy selection never regresses to a costlier mask.
struct TransmitterState {
  TransmitterState(QLearnParams p, const CostVector& tariff)
      : params(p), epsilon(p.epsilon_start) {
    for (FieldMask m = 0; m < kNumMasks; ++m) {
      q[m] = -(comm_cost(m, tariff) +
               p.privacy_weight * privacy_cost(m, tariff));
    }
  }
  TransmitterState() : TransmitterState(QLearnParams{}, CostVector{}) {}

  QLearnParams params;
  std::array<double, kNumMasks> q{};
  double epsilon = 0.0;
  long updates = 0;  ///< rewards absorbed so far (bookkeeping only)
};

/// The mask a greedy (no-exploration) selection would pick right now: the
/// highest-valued mask, ties broken toward fewer fields and then the smaller
/// encoding.
inline FieldMask greedy_mask(const TransmitterState& s) {
  FieldMask best = 0;
  for (FieldMask m = 1; m < kNumMasks; ++m) {
    if (s.q[m] > s.q[best] ||
        (s.q[m] == s.q[best] && mask_size(m) < mask_size(best))) {
      best = m;
    }
  }
  return best;
}

/// Picks the mask for the next outgoing message.  With learning disabled the
/// full report mask is used unconditionally.  Otherwise, with probability
/// epsilon a uniformly random mask is explored; else the greedy mask wins.
inline FieldMask select_mask(const TransmitterState& s, bool learning_enabled,
                             std::mt19937_64& rng) {
  if (!learning_enabled) return kFullReportMask;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < s.epsilon) {
    std::uniform_int_distribution<unsigned> pick(0, kNumMasks - 1);
    return pick(rng);
  }
  return greedy_mask(s);
}

/// Reward for one delivery: the negated charged cost (privacy converted at
/// privacy_weight), minus the failure penalty when the receiver could not
/// use the message.
inline double transmission_reward(double charged_comm, double charged_privacy,
                                  bool valid, const QLearnParams& p) {
  double r = -(charged_comm + p.privacy_weight * charged_privacy);
  if (!valid) r -= p.failure_penalty;
  return r;
}

/// Folds one reward into the chosen mask's estimate and decays epsilon.
inline void update(TransmitterState& s, FieldMask mask, double reward) {
  const double a = s.params.alpha;
  s.q[mask] = (1.0 - a) * s.q[mask] + a * reward;
  s.epsilon = std::max(s.params.epsilon_min, s.epsilon * s.params.epsilon_decay);
  ++s.updates;
}

/// Writes the value table as CSV: mask,size,fields,q.
inline void dump_q_table(const TransmitterState& s, std::ostream& out) {
  out << "mask,size,fields,q\n";
  auto old = out.precision(12);
  for (FieldMask m = 0; m < kNumMasks; ++m) {
    out << m << ',' << mask_size(m) << ',' << '"' << mask_to_string(m) << '"'
        << ',' << s.q[m] << '\n';
  }
  out.precision(old);
}

}  // namespace primal
