#pragma once

#include <random>
#include <vector>

#include "primal/classifier.hpp"
#include "primal/config.hpp"
#include "primal/message.hpp"
#include "primal/network.hpp"
#include "primal/supervisor.hpp"
#include "primal/transmitter.hpp"

namespace primal {

/// One detection node: a classifier plus an independent mask learner per
/// outgoing channel, and a private random stream for exploration.  Each
/// learner is primed with the cost profile of its own channel, which may
/// differ (e.g. peers that don't price privacy).
struct AgentState {
  AgentState(int agent_id, const ClassifierParams& cp, const QLearnParams& qp,
             const CostVector& neighbor_tariff,
             const CostVector& supervisor_tariff, std::mt19937_64 stream)
      : id(agent_id),
        classifier(cp),
        neighbor_tx(qp, neighbor_tariff),
        supervisor_tx(qp, supervisor_tariff),
        rng(std::move(stream)) {}

  int id;
  OneClassState classifier;
  TransmitterState neighbor_tx;
  TransmitterState supervisor_tx;
  std::mt19937_64 rng;
};

/// Whether a verdict warrants asking the neighbors.
inline bool should_consult(const Verdict& own, NeighborCriterion criterion,
                           double confidence_threshold) {
  switch (criterion) {
    case NeighborCriterion::all:
      return true;
    case NeighborCriterion::outlier:
      return own.label == Label::event;
    case NeighborCriterion::confidence:
      return own.confidence < confidence_threshold;
    case NeighborCriterion::none:
      return false;
  }
  return false;
}

/// Whether a (possibly vote-revised) verdict warrants alarming the
/// supervisor.
inline bool should_alarm(const Verdict& verdict,
                         SupervisorCriterion criterion) {
  switch (criterion) {
    case SupervisorCriterion::all:
      return true;
    case SupervisorCriterion::outlier:
      return verdict.label == Label::event;
  }
  return false;
}

/// Everything an agent needs to act on a reading that is not its own state.
/// The two CostTotals accumulate every receipt handed back by the transport,
/// split by channel, so callers can reconcile them against the ledger.
struct StepContext {
  const SimConfig& cfg;
  const Topology& topo;
  ChannelLedger& ledger;
  const CostVector& neighbor_costs;
  const CostVector& supervisor_costs;
  std::vector<AgentState>& agents;
  Supervisor& supervisor;
  CostTotals& neighbor_receipts;
  CostTotals& supervisor_receipts;
};

/// Handles one reading end to end: classify, optionally poll the neighbors
/// and fold their votes in, optionally alarm.  Every transmission charges
/// the ledger, and with learning enabled every receipt immediately pays or
/// penalizes the mask that produced it.
inline void process_reading(AgentState& agent, const Measurement& reading,
                            StepContext& ctx) {
  Verdict verdict = agent.classifier.classify(reading.value);

  const auto& peers = ctx.topo.neighbors[agent.id];
  if (!peers.empty() &&
      should_consult(verdict, ctx.cfg.neighbor_criterion,
                     ctx.cfg.consult_confidence_threshold)) {
    const FieldMask mask =
        select_mask(agent.neighbor_tx, ctx.cfg.learning_enabled, agent.rng);
    const Message request =
        make_message(Purpose::opinion_request, mask, reading, agent.id);
    std::vector<Opinion> opinions;
    opinions.reserve(peers.size());
    for (int peer : peers) {
      const Receipt receipt =
          transmit(request, Endpoint::agent(agent.id), Endpoint::agent(peer),
                   ctx.topo, ctx.neighbor_costs, ctx.ledger);
      ctx.neighbor_receipts.add(receipt);
      const Opinion opinion =
          form_opinion(ctx.agents[peer].classifier, request,
                       reading.event_type, ctx.cfg.unknown_threshold);
      ctx.neighbor_receipts.add(charge_opinion_response(ctx.ledger));
      opinions.push_back(opinion);
      if (ctx.cfg.learning_enabled) {
        update(agent.neighbor_tx, mask,
               transmission_reward(receipt.comm, receipt.privacy,
                                   opinion.request_valid,
                                   agent.neighbor_tx.params));
      }
    }
    verdict = aggregate_votes(verdict, opinions);
  }

  if (should_alarm(verdict, ctx.cfg.supervisor_criterion)) {
    const FieldMask mask =
        select_mask(agent.supervisor_tx, ctx.cfg.learning_enabled, agent.rng);
    const Message alarm =
        make_message(Purpose::alarm, mask, reading, agent.id);
    const Receipt receipt =
        transmit(alarm, Endpoint::agent(agent.id), Endpoint::supervisor(),
                 ctx.topo, ctx.supervisor_costs, ctx.ledger);
    ctx.supervisor_receipts.add(receipt);
    const bool accepted = ctx.supervisor.log_alarm(alarm, receipt);
    if (ctx.cfg.learning_enabled) {
      update(agent.supervisor_tx, mask,
             transmission_reward(receipt.comm, receipt.privacy, accepted,
                                 agent.supervisor_tx.params));
    }
  }
}

/// End-of-iteration training for one reading: use the supervisor's label
/// when the feedback mode grants one; otherwise, while the classifier is
/// still data-starved, presume the reading normal so the node can get off
/// the ground without supervision.
inline void train_on_reading(AgentState& agent, const Measurement& reading,
                             const Supervisor& supervisor) {
  if (auto label = supervisor.feedback(reading.location, reading.timestep)) {
    agent.classifier.train(reading.value, *label);
  } else if (agent.classifier.training_size() <
             agent.classifier.params().min_training_points) {
    agent.classifier.train(reading.value, Label::normal);
  }
}

}  // namespace primal
