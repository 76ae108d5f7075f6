#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "primal/classifier.hpp"
#include "primal/ground_truth.hpp"
#include "primal/message.hpp"
#include "primal/network.hpp"

namespace primal {

/// Detection counts against ground truth, per location-timestep cell.
struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

/// Precision, recall and F-measure, with empty denominators scored as 0.
inline Metrics compute_metrics(const ConfusionCounts& c) {
  Metrics m;
  const double tp = static_cast<double>(c.tp);
  m.precision = c.tp + c.fp > 0 ? tp / static_cast<double>(c.tp + c.fp) : 0.0;
  m.recall = c.tp + c.fn > 0 ? tp / static_cast<double>(c.tp + c.fn) : 0.0;
  m.f_measure = m.precision + m.recall > 0.0
                    ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                    : 0.0;
  return m;
}

/// One alarm as the supervisor received it.
struct AlarmRecord {
  int timestep = 0;      ///< iteration during which the alarm arrived
  FieldMask mask = 0;
  int location = 0;      ///< meaningful only if the mask carries location
  int reported_timestep = 0;  ///< ditto for timestep
  double comm = 0.0;
  double privacy = 0.0;
  bool accepted = false;
};

/// The scoring authority.  Collects alarms, scores each iteration against
/// the hidden event grid, and hands labelled truth back to agents according
/// to the feedback mode.
class Supervisor {
 public:
  Supervisor(const GroundTruth& truth, FeedbackMode mode)
      : truth_(&truth), mode_(mode) {}

  FeedbackMode feedback_mode() const { return mode_; }

  /// Ingests one alarm.  An alarm is usable only if it places the event:
  /// location, timestep and event type must all be present.  Duplicate
  /// alarms for an already-flagged (location, timestep) are accepted but
  /// flag nothing new.  Returns whether the alarm was usable, which is also
  /// the success signal for the sender's mask learner.
  bool log_alarm(const Message& alarm, const Receipt& receipt) {
    AlarmRecord rec;
    rec.timestep = current_timestep_;
    rec.mask = alarm.mask;
    rec.comm = receipt.comm;
    rec.privacy = receipt.privacy;
    rec.accepted = is_valid_mask(alarm.mask, Purpose::alarm);
    if (rec.accepted) {
      rec.location = alarm.location;
      rec.reported_timestep = alarm.timestep;
      flagged_.emplace(alarm.location, alarm.timestep);
    }
    log_.push_back(rec);
    return rec.accepted;
  }

  /// Scores iteration `timestep`: every location flagged by a usable alarm
  /// counts as a detection, everything else as silence.  Returns this
  /// iteration's confusion counts and folds them into the running totals.
  ConfusionCounts close_iteration(int timestep) {
    ConfusionCounts delta;
    for (int l = 0; l < truth_->num_locations(); ++l) {
      const bool event = truth_->is_event(l, timestep);
      const bool flagged = flagged_.count({l, timestep}) > 0;
      if (event && flagged)
        ++delta.tp;
      else if (!event && flagged)
        ++delta.fp;
      else if (event && !flagged)
        ++delta.fn;
      else
        ++delta.tn;
    }
    totals_ += delta;
    current_timestep_ = timestep + 1;
    return delta;
  }

  /// True label for a grid cell; the labelled truth used for feedback.
  Label true_label(int location, int timestep) const {
    return truth_->is_event(location, timestep) ? Label::event : Label::normal;
  }

  /// Label for a reading under the configured feedback mode, or nothing if
  /// this mode withholds it.  In alarm_only mode, only cells flagged by a
  /// usable alarm are labelled.
  std::optional<Label> feedback(int location, int timestep) const {
    switch (mode_) {
      case FeedbackMode::full:
        return true_label(location, timestep);
      case FeedbackMode::alarm_only:
        if (flagged_.count({location, timestep}) > 0)
          return true_label(location, timestep);
        return std::nullopt;
      case FeedbackMode::none:
        return std::nullopt;
    }
    return std::nullopt;
  }

  const ConfusionCounts& totals() const { return totals_; }
  const std::vector<AlarmRecord>& alarm_log() const { return log_; }

 private:
  const GroundTruth* truth_;
  FeedbackMode mode_;
  int current_timestep_ = 0;
  std::set<std::pair<int, int>> flagged_;  ///< (location, timestep) cells
  std::vector<AlarmRecord> log_;
  ConfusionCounts totals_;
};

/// Writes an alarm log as CSV.  Location and reported timestep are left
/// blank for alarms whose mask didn't carry them.
inline void dump_alarm_log(const std::vector<AlarmRecord>& log,
                           std::ostream& out) {
  out << "t,l,reported_t,mask,comm_cost,privacy_cost,accepted\n";
  auto old = out.precision(12);
  for (const AlarmRecord& a : log) {
    out << a.timestep << ',';
    if (a.accepted)
      out << a.location << ',' << a.reported_timestep;
    else
      out << ',';
    out << ',' << a.mask << ',' << a.comm << ',' << a.privacy << ','
        << (a.accepted ? 1 : 0) << '\n';
  }
  out.precision(old);
}

}  // namespace primal
