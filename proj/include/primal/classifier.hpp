#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "primal/config.hpp"
#include "primal/message.hpp"

namespace primal {

enum class Label { normal, event };

/// A classification outcome: label plus a confidence in [0, 1].
struct Verdict {
  Label label = Label::normal;
  double confidence = 0.0;
};

/// One-class outlier detector over a sliding window of normal samples.
///
/// The window keeps the most recent `window_size` values that were labelled
/// (or presumed) normal.  A query value is scored by its standardized
/// distance |x - mean| / stddev from the window, and called an event when the
/// score exceeds a radius.  The radius is the empirical boundary_quantile of
/// the window's own standardized values (signed, so with a symmetric window
/// roughly 2*(1-q) of normal mass sits outside it); while the window is too
/// small for an empirical estimate the matching normal-distribution quantile
/// stands in.
class OneClassState {
 public:
  explicit OneClassState(ClassifierParams params = {})
      : params_(params) {}

  const ClassifierParams& params() const { return params_; }
  std::size_t training_size() const { return window_.size(); }

  /// Absorbs a labelled sample.  Only normal samples enter the window; the
  /// detector models normality and treats events as "anything far from it".
  void train(double value, Label label) {
    if (label != Label::normal) return;
    window_.push_back(value);
    sum_ += value;
    sum_sq_ += value * value;
    if (window_.size() > params_.window_size) {
      const double old = window_.front();
      window_.pop_front();
      sum_ -= old;
      sum_sq_ -= old * old;
    }
    stats_dirty_ = true;
  }

  double mean() const {
    return window_.empty() ? 0.0 : sum_ / static_cast<double>(window_.size());
  }

  double stddev() const {
    const auto n = window_.size();
    if (n < 2) return 0.0;
    const double m = mean();
    const double var =
        std::max(0.0, (sum_sq_ - static_cast<double>(n) * m * m) /
                          static_cast<double>(n - 1));
    return std::sqrt(var);
  }

  /// Standardized distance of `value` from the window.  A degenerate window
  /// (zero spread) scores 0 for the window's own value and +inf otherwise.
  double score(double value) const {
    const double sd = stddev();
    if (sd == 0.0) {
      return value == mean() ? 0.0
                             : std::numeric_limits<double>::infinity();
    }
    return std::abs(value - mean()) / sd;
  }

  /// Current decision radius in score units.
  double radius() const {
    refresh_radius();
    return radius_;
  }

  /// Labels `value` and reports how far it sits from the decision boundary,
  /// squashed into [0, 1) by 1 - exp(-slope * distance).  With fewer than
  /// min_training_points samples the detector abstains: (normal, 0).
  Verdict classify(double value) const {
    if (window_.size() < params_.min_training_points) return {Label::normal, 0.0};
    const double s = score(value);
    const double r = radius();
    Verdict v;
    v.label = s > r ? Label::event : Label::normal;
    if (std::isinf(s)) {
      v.confidence = 1.0;
    } else {
      v.confidence =
          1.0 - std::exp(-params_.confidence_slope * std::abs(s - r));
    }
    return v;
  }

 private:
  void refresh_radius() const {
    if (!stats_dirty_) return;
    stats_dirty_ = false;
    const auto n = window_.size();
    const double sd = stddev();
    if (n < 2 || sd == 0.0) {
      // Too little data for an empirical quantile; use the quantile of a
      // standard normal, which the standardized scores would follow if the
      // window were normal.
      boost::math::normal_distribution<double> unit;
      radius_ = boost::math::quantile(unit, params_.boundary_quantile);
      return;
    }
    // The boundary_quantile of the window's standardized values equals the
    // standardized quantile of the raw values (standardization is monotone).
    std::vector<double> sorted(window_.begin(), window_.end());
    std::sort(sorted.begin(), sorted.end());
    const double h =
        params_.boundary_quantile * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    const double vq =
        lo + 1 < n ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
                   : sorted[lo];
    radius_ = (vq - mean()) / sd;
  }

  ClassifierParams params_;
  std::deque<double> window_;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
  mutable double radius_ = 0.0;
  mutable bool stats_dirty_ = true;
};

/// A peer's answer to an opinion request.
enum class Vote {
  yes,      ///< "that reading is an event"
  no,       ///< "that reading is normal"
  unknown,  ///< abstain
};

struct Opinion {
  Vote vote = Vote::unknown;
  double confidence = 0.0;
  /// Whether the request carried the fields the responder needed.  Used by
  /// the requester's learner as the success/failure signal for the mask it
  /// chose; an honest "unknown" from a complete request is not a failure.
  bool request_valid = false;
};

/// Produces this node's opinion on a peer's masked reading.
///
/// The request must expose the value and an event type this node knows how
/// to judge; otherwise the opinion is an abstention flagged as a protocol
/// failure.  A complete request is classified with our own detector, and we
/// abstain (honestly) when our confidence is below `unknown_threshold`.
inline Opinion form_opinion(const OneClassState& classifier,
                            const Message& request, int own_event_type,
                            double unknown_threshold) {
  Opinion op;
  if (request.purpose != Purpose::opinion_request ||
      !request.has(Field::value) || !request.has(Field::event_type) ||
      request.event_type != own_event_type) {
    op.vote = Vote::unknown;
    op.confidence = 0.0;
    op.request_valid = false;
    return op;
  }
  op.request_valid = true;
  const Verdict v = classifier.classify(request.value);
  op.confidence = v.confidence;
  if (v.confidence < unknown_threshold) {
    op.vote = Vote::unknown;
  } else {
    op.vote = v.label == Label::event ? Vote::yes : Vote::no;
  }
  return op;
}

/// Confidence-weighted vote between an agent's own verdict and its
/// neighbors' opinions.  Abstentions contribute no weight.  If nobody
/// expressed a usable opinion the agent keeps its own verdict; on a tie the
/// agent's own label wins.  The revised confidence is the winning side's
/// share of the total expressed weight.
inline Verdict aggregate_votes(const Verdict& own,
                               std::span<const Opinion> opinions) {
  double weight_event = own.label == Label::event ? own.confidence : 0.0;
  double weight_normal = own.label == Label::normal ? own.confidence : 0.0;
  double expressed = 0.0;
  for (const Opinion& op : opinions) {
    if (op.vote == Vote::unknown) continue;
    expressed += op.confidence;
    (op.vote == Vote::yes ? weight_event : weight_normal) += op.confidence;
  }
  if (expressed == 0.0) return own;
  const double total = weight_event + weight_normal;
  Verdict out;
  if (weight_event > weight_normal) {
    out.label = Label::event;
  } else if (weight_normal > weight_event) {
    out.label = Label::normal;
  } else {
    out.label = own.label;
  }
  const double winning = out.label == Label::event ? weight_event : weight_normal;
  out.confidence = total > 0.0 ? winning / total : 0.0;
  return out;
}

}  // namespace primal
