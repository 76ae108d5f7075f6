#pragma once

#include <utility>
#include <vector>

#include "primal/agent.hpp"
#include "primal/classifier.hpp"
#include "primal/config.hpp"
#include "primal/costs.hpp"
#include "primal/ground_truth.hpp"
#include "primal/network.hpp"
#include "primal/rng.hpp"
#include "primal/supervisor.hpp"

namespace primal {

/// One iteration's worth of observable state: cumulative detection quality,
/// this iteration's detection quality in isolation, and running channel
/// totals as of the end of the iteration.
struct RunRecordRow {
  int iteration = 0;

  long tp = 0;
  long fp = 0;
  long tn = 0;
  long fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;

  double precision_iter = 0.0;
  double recall_iter = 0.0;
  double f_iter = 0.0;

  long neighbor_msgs = 0;
  long opinion_responses = 0;
  long supervisor_msgs = 0;
  double neighbor_comm = 0.0;
  double neighbor_privacy = 0.0;
  double supervisor_comm = 0.0;
  double supervisor_privacy = 0.0;
};

/// Everything a finished run leaves behind.
struct RunResult {
  SimConfig config;
  Topology topology;
  GroundTruth ground_truth;
  std::vector<RunRecordRow> record;     ///< one row per iteration
  std::vector<AgentState> agents;       ///< final learner/classifier state
  std::vector<AlarmRecord> alarm_log;
  ConfusionCounts confusion;
  ChannelLedger ledger;
  CostTotals neighbor_receipts;    ///< shadow sums of receipts, per channel,
  CostTotals supervisor_receipts;  ///< for reconciliation against the ledger
};

/// The per-channel cost profiles agents are charged under.  Peers that are
/// trusted not to price privacy zero the privacy column on the peer channel;
/// the supervisor channel always charges the configured costs.
struct EffectiveTariffs {
  CostVector neighbor;
  CostVector supervisor;
};

inline EffectiveTariffs effective_tariffs(const SimConfig& cfg) {
  EffectiveTariffs t{cfg.cost_vector, cfg.cost_vector};
  if (cfg.privacy_preserving_neighbors) t.neighbor.privacy.fill(0.0);
  return t;
}

/// Runs one complete simulation.  Throws ConfigError if the configuration is
/// invalid.  Deterministic: the same config (including seed) byte-for-byte
/// reproduces the same result.
inline RunResult run_simulation(const SimConfig& cfg) {
  validate(cfg);

  auto gt_rng = make_stream(cfg.seed, stream::ground_truth);
  auto topo_rng = make_stream(cfg.seed, stream::topology);
  auto meas_rng = make_stream(cfg.seed, stream::measurements);
  auto priming_rng = make_stream(cfg.seed, stream::priming);

  GroundTruth truth = generate_ground_truth(cfg.event_model, cfg.num_sensors,
                                            cfg.iterations, gt_rng);
  Topology topo = build_topology(cfg, topo_rng);
  const EffectiveTariffs tariffs = effective_tariffs(cfg);

  std::vector<AgentState> agents;
  agents.reserve(static_cast<std::size_t>(topo.num_agents));
  for (int i = 0; i < topo.num_agents; ++i) {
    agents.emplace_back(i, cfg.classifier_params, cfg.qlearn_params,
                        tariffs.neighbor, tariffs.supervisor,
                        make_stream(cfg.seed, stream::agents +
                                                  static_cast<std::uint64_t>(i)));
  }

  Supervisor supervisor(truth, cfg.feedback_mode);

  // With a supervisor willing to hand out labels, each classifier starts
  // from a small stock of known-normal samples; without one, agents must
  // bootstrap from their own presumed-normal early readings.
  if (cfg.feedback_mode != FeedbackMode::none) {
    for (AgentState& agent : agents) {
      for (std::size_t n = 0; n < cfg.classifier_params.min_training_points;
           ++n) {
        agent.classifier.train(
            draw_normal(priming_rng, cfg.event_model.normal_dist.mean,
                        cfg.event_model.normal_dist.stddev),
            Label::normal);
      }
    }
  }

  ChannelLedger ledger;
  CostTotals neighbor_receipts;
  CostTotals supervisor_receipts;
  StepContext ctx{cfg,    topo,       ledger, tariffs.neighbor,
                  tariffs.supervisor, agents, supervisor,
                  neighbor_receipts,  supervisor_receipts};

  std::vector<RunRecordRow> record;
  record.reserve(static_cast<std::size_t>(cfg.iterations));

  std::vector<std::vector<Measurement>> inbox(
      static_cast<std::size_t>(topo.num_agents));

  for (int t = 0; t < cfg.iterations; ++t) {
    for (auto& box : inbox) box.clear();

    // Sensors measure and report to their owning agent.  The report always
    // carries the full reading; its delivery is infrastructure, charged to
    // the supervisor channel when it actually crosses a hop.
    for (int s = 0; s < cfg.num_sensors; ++s) {
      Measurement reading =
          sample_measurement(truth, cfg.event_model, s, t, meas_rng);
      const int owner = topo.owner_of(s);
      const Message report = make_message(Purpose::sensor_report,
                                          kFullReportMask, reading, owner);
      supervisor_receipts.add(transmit(report, Endpoint::sensor(s),
                                       Endpoint::agent(owner), topo,
                                       tariffs.supervisor, ledger));
      inbox[static_cast<std::size_t>(owner)].push_back(reading);
    }

    for (int a = 0; a < topo.num_agents; ++a)
      for (const Measurement& reading : inbox[static_cast<std::size_t>(a)])
        process_reading(agents[static_cast<std::size_t>(a)], reading, ctx);

    const ConfusionCounts delta = supervisor.close_iteration(t);

    for (int a = 0; a < topo.num_agents; ++a)
      for (const Measurement& reading : inbox[static_cast<std::size_t>(a)])
        train_on_reading(agents[static_cast<std::size_t>(a)], reading,
                         supervisor);

    RunRecordRow row;
    row.iteration = t;
    const ConfusionCounts& total = supervisor.totals();
    row.tp = total.tp;
    row.fp = total.fp;
    row.tn = total.tn;
    row.fn = total.fn;
    const Metrics cumulative = compute_metrics(total);
    row.precision = cumulative.precision;
    row.recall = cumulative.recall;
    row.f_measure = cumulative.f_measure;
    const Metrics windowed = compute_metrics(delta);
    row.precision_iter = windowed.precision;
    row.recall_iter = windowed.recall;
    row.f_iter = windowed.f_measure;
    row.neighbor_msgs = ledger.neighbor_msgs;
    row.opinion_responses = ledger.opinion_responses;
    row.supervisor_msgs = ledger.supervisor_msgs;
    row.neighbor_comm = ledger.neighbor_comm;
    row.neighbor_privacy = ledger.neighbor_privacy;
    row.supervisor_comm = ledger.supervisor_comm;
    row.supervisor_privacy = ledger.supervisor_privacy;
    record.push_back(row);
  }

  RunResult result;
  result.config = cfg;
  result.topology = std::move(topo);
  result.ground_truth = std::move(truth);
  result.record = std::move(record);
  result.agents = std::move(agents);
  result.alarm_log = supervisor.alarm_log();
  result.confusion = supervisor.totals();
  result.ledger = ledger;
  result.neighbor_receipts = neighbor_receipts;
  result.supervisor_receipts = supervisor_receipts;
  return result;
}

}  // namespace primal
