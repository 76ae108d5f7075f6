#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "primal/config.hpp"
#include "primal/costs.hpp"
#include "primal/message.hpp"

namespace primal {

/// Raised when a sender addresses a message the wiring does not allow
/// (e.g. an opinion request to a non-neighbor).  Always a programming error
/// in the caller, never a data condition.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Static wiring of one run: which agent owns which sensor, and which agents
/// each agent may consult.  Neighbor lists are directed unless the
/// configuration asks for a mutual relation.
struct Topology {
  Organization organization = Organization::distributed;
  int num_sensors = 0;
  int num_agents = 0;
  /// neighbors[a] = agents that a consults, sorted ascending.
  std::vector<std::vector<int>> neighbors;

  /// The agent a sensor reports to.
  int owner_of(int sensor_id) const {
    return organization == Organization::centralized ? 0 : sensor_id;
  }

  /// Hop count from a sensor to its owning agent.  Co-located except in the
  /// centralized layout, where readings travel to the single remote agent.
  int sensor_hops() const {
    return organization == Organization::centralized ? 1 : 0;
  }

  /// Hop count from an agent to the supervisor.  The centralized agent is
  /// the supervisor's co-located delegate; everyone else is one hop away.
  int supervisor_hops() const {
    return organization == Organization::centralized ? 0 : 1;
  }

  bool are_neighbors(int from_agent, int to_agent) const {
    const auto& n = neighbors[from_agent];
    return std::binary_search(n.begin(), n.end(), to_agent);
  }
};

/// Builds the wiring for a configuration.  In the distributed layout every
/// agent receives round(fraction * num_agents) distinct random peers (never
/// itself); the other layouts have empty neighbor lists.
inline Topology build_topology(const SimConfig& cfg, std::mt19937_64& rng) {
  Topology topo;
  topo.organization = cfg.organization;
  topo.num_sensors = cfg.num_sensors;
  topo.num_agents =
      cfg.organization == Organization::centralized ? 1 : cfg.num_sensors;
  topo.neighbors.assign(topo.num_agents, {});
  if (cfg.organization != Organization::distributed) return topo;

  const int k = static_cast<int>(
      std::llround(cfg.neighborhood_fraction * topo.num_agents));
  if (k > topo.num_agents - 1)
    throw ConfigError("neighborhood_fraction asks for more neighbors than exist");
  if (k == 0) return topo;

  std::vector<int> pool(topo.num_agents);
  std::iota(pool.begin(), pool.end(), 0);
  for (int a = 0; a < topo.num_agents; ++a) {
    // Partial Fisher-Yates over the candidate pool with `a` excluded.
    std::vector<int> candidates;
    candidates.reserve(topo.num_agents - 1);
    for (int b : pool)
      if (b != a) candidates.push_back(b);
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(
          i, static_cast<int>(candidates.size()) - 1);
      std::swap(candidates[i], candidates[pick(rng)]);
      topo.neighbors[a].push_back(candidates[i]);
    }
    std::sort(topo.neighbors[a].begin(), topo.neighbors[a].end());
  }
  if (cfg.symmetric_neighbors) {
    for (int a = 0; a < topo.num_agents; ++a)
      for (int b : topo.neighbors[a])
        if (!topo.are_neighbors(b, a)) {
          topo.neighbors[b].insert(
              std::upper_bound(topo.neighbors[b].begin(),
                               topo.neighbors[b].end(), a),
              a);
        }
  }
  return topo;
}

/// Writes the neighbor lists, one line per agent: "agent: n1,n2,...".
inline void dump_topology(const Topology& topo, std::ostream& out) {
  for (int a = 0; a < topo.num_agents; ++a) {
    out << a << ':';
    for (std::size_t i = 0; i < topo.neighbors[a].size(); ++i) {
      out << (i == 0 ? ' ' : ',') << topo.neighbors[a][i];
    }
    out << '\n';
  }
}

/// A party that can send or receive messages.
struct Endpoint {
  enum class Kind { sensor, agent, supervisor };
  Kind kind = Kind::agent;
  int id = 0;

  static Endpoint sensor(int id) { return {Kind::sensor, id}; }
  static Endpoint agent(int id) { return {Kind::agent, id}; }
  static Endpoint supervisor() { return {Kind::supervisor, 0}; }
};

/// What one delivery charged.  Receipts are returned to the caller so the
/// sender's learner can be paid/penalized with exactly what was charged.
struct Receipt {
  double comm = 0.0;
  double privacy = 0.0;
};

/// Plain cost accumulator, used to cross-check the ledger against the sum of
/// receipts handed out.
struct CostTotals {
  double comm = 0.0;
  double privacy = 0.0;

  void add(const Receipt& r) {
    comm += r.comm;
    privacy += r.privacy;
  }
};

/// Running totals of traffic and cost, split by channel.
///
/// The agent-to-agent (and sensor-to-agent) side is the neighbor channel;
/// the agent-to-supervisor side is the supervisor channel.  Message counts
/// deliberately track protocol messages, not cost: sensor reports are
/// unavoidable plumbing and are not counted, and peer responses are counted
/// separately from requests so request traffic stays comparable across
/// layouts.
struct ChannelLedger {
  long neighbor_msgs = 0;        ///< opinion requests delivered
  long opinion_responses = 0;    ///< opinion responses delivered
  long supervisor_msgs = 0;      ///< alarms delivered
  double neighbor_comm = 0.0;
  double neighbor_privacy = 0.0;
  double supervisor_comm = 0.0;
  double supervisor_privacy = 0.0;

  void reset() { *this = ChannelLedger{}; }

  ChannelLedger& operator+=(const ChannelLedger& o) {
    neighbor_msgs += o.neighbor_msgs;
    opinion_responses += o.opinion_responses;
    supervisor_msgs += o.supervisor_msgs;
    neighbor_comm += o.neighbor_comm;
    neighbor_privacy += o.neighbor_privacy;
    supervisor_comm += o.supervisor_comm;
    supervisor_privacy += o.supervisor_privacy;
    return *this;
  }

  double total_comm() const { return neighbor_comm + supervisor_comm; }
  double total_privacy() const {
    return neighbor_privacy + supervisor_privacy;
  }
};

/// Delivers a message, charging the ledger and returning the receipt.
///
/// Legal routes and their accounting:
///  - sensor -> owning agent (sensor_report): costs land on the supervisor
///    channel (in the centralized layout the agent is the collection point
///    and the hop is real; elsewhere it is co-located and free); not counted
///    as a protocol message.
///  - agent -> neighboring agent (opinion_request): neighbor channel, one
///    hop, counted.
///  - agent -> supervisor (alarm): supervisor channel, counted; free only
///    in the centralized layout where the agent sits with the supervisor.
/// Anything else throws ProtocolError.
inline Receipt transmit(const Message& msg, Endpoint from, Endpoint to,
                        const Topology& topo, const CostVector& costs,
                        ChannelLedger& ledger) {
  using Kind = Endpoint::Kind;
  const double unit_comm = comm_cost(msg.mask, costs);
  const double unit_privacy = privacy_cost(msg.mask, costs);

  if (from.kind == Kind::sensor && to.kind == Kind::agent &&
      msg.purpose == Purpose::sensor_report) {
    if (topo.owner_of(from.id) != to.id)
      throw ProtocolError("sensor report sent to a non-owning agent");
    const double hops = topo.sensor_hops();
    Receipt r{unit_comm * hops, unit_privacy * hops};
    ledger.supervisor_comm += r.comm;
    ledger.supervisor_privacy += r.privacy;
    return r;
  }
  if (from.kind == Kind::agent && to.kind == Kind::agent &&
      msg.purpose == Purpose::opinion_request) {
    if (!topo.are_neighbors(from.id, to.id))
      throw ProtocolError("opinion request sent to a non-neighbor");
    Receipt r{unit_comm, unit_privacy};
    ledger.neighbor_msgs += 1;
    ledger.neighbor_comm += r.comm;
    ledger.neighbor_privacy += r.privacy;
    return r;
  }
  if (from.kind == Kind::agent && to.kind == Kind::supervisor &&
      msg.purpose == Purpose::alarm) {
    const double hops = topo.supervisor_hops();
    Receipt r{unit_comm * hops, unit_privacy * hops};
    ledger.supervisor_msgs += 1;
    ledger.supervisor_comm += r.comm;
    ledger.supervisor_privacy += r.privacy;
    return r;
  }
  throw ProtocolError("illegal route for message purpose");
}

/// Charges one opinion response: a fixed-size verdict (one comm unit, no
/// private fields) flowing back over the neighbor channel.
inline Receipt charge_opinion_response(ChannelLedger& ledger) {
  Receipt r{1.0, 0.0};
  ledger.opinion_responses += 1;
  ledger.neighbor_comm += r.comm;
  ledger.neighbor_privacy += r.privacy;
  return r;
}

}  // namespace primal
