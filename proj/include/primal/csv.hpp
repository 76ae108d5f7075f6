#pragma once

#include <ostream>
#include <string_view>

#include "primal/simulation.hpp"

namespace primal {

/// A named numeric column derivable from one record row.  One shared table
/// keeps per-run CSVs, sweep aggregation, and experiment summaries in
/// agreement about what "the metrics" are.
struct RunMetric {
  std::string_view name;
  double (*get)(const RunRecordRow&);
};

inline constexpr RunMetric kRunMetrics[] = {
    {"precision", [](const RunRecordRow& r) { return r.precision; }},
    {"recall", [](const RunRecordRow& r) { return r.recall; }},
    {"f_measure", [](const RunRecordRow& r) { return r.f_measure; }},
    {"precision_iter", [](const RunRecordRow& r) { return r.precision_iter; }},
    {"recall_iter", [](const RunRecordRow& r) { return r.recall_iter; }},
    {"f_iter", [](const RunRecordRow& r) { return r.f_iter; }},
    {"neighbor_msgs",
     [](const RunRecordRow& r) { return static_cast<double>(r.neighbor_msgs); }},
    {"opinion_responses",
     [](const RunRecordRow& r) {
       return static_cast<double>(r.opinion_responses);
     }},
    {"supervisor_msgs",
     [](const RunRecordRow& r) {
       return static_cast<double>(r.supervisor_msgs);
     }},
    {"neighbor_comm", [](const RunRecordRow& r) { return r.neighbor_comm; }},
    {"neighbor_privacy",
     [](const RunRecordRow& r) { return r.neighbor_privacy; }},
    {"supervisor_comm",
     [](const RunRecordRow& r) { return r.supervisor_comm; }},
    {"supervisor_privacy",
     [](const RunRecordRow& r) { return r.supervisor_privacy; }},
    {"total_comm",
     [](const RunRecordRow& r) { return r.neighbor_comm + r.supervisor_comm; }},
    {"total_privacy",
     [](const RunRecordRow& r) {
       return r.neighbor_privacy + r.supervisor_privacy;
     }},
};

inline constexpr std::size_t kNumRunMetrics = std::size(kRunMetrics);

/// Writes one run's record: a header row, then one row per iteration.
inline void write_run_csv(const std::vector<RunRecordRow>& record,
                          std::ostream& out) {
  out << "iteration,tp,fp,tn,fn,precision,recall,f_measure,"
         "precision_iter,recall_iter,f_iter,"
         "neighbor_msgs,opinion_responses,supervisor_msgs,"
         "neighbor_comm,neighbor_privacy,supervisor_comm,supervisor_privacy\n";
  auto old = out.precision(12);
  for (const RunRecordRow& r : record) {
    out << r.iteration << ',' << r.tp << ',' << r.fp << ',' << r.tn << ','
        << r.fn << ',' << r.precision << ',' << r.recall << ',' << r.f_measure
        << ',' << r.precision_iter << ',' << r.recall_iter << ',' << r.f_iter
        << ',' << r.neighbor_msgs << ',' << r.opinion_responses << ','
        << r.supervisor_msgs << ',' << r.neighbor_comm << ','
        << r.neighbor_privacy << ',' << r.supervisor_comm << ','
        << r.supervisor_privacy << '\n';
  }
  out.precision(old);
}

}  // namespace primal
