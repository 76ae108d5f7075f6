#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "primal/costs.hpp"
#include "primal/fields.hpp"

namespace primal {

/// Raised for any malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// How agents are wired to sensors and to each other.
enum class Organization {
  centralized,    ///< one agent owns every sensor; no peers
  decentralized,  ///< one agent per sensor; no peers
  distributed,    ///< one agent per sensor plus a random peer neighborhood
};

/// When an agent asks its neighbors for a second opinion.
enum class NeighborCriterion {
  all,         ///< on every reading
  outlier,     ///< only when its own classifier says "event"
  confidence,  ///< only when its own confidence is below a threshold
  none,        ///< never
};

/// When an agent raises an alarm to the supervisor.
enum class SupervisorCriterion {
  all,      ///< on every reading
  outlier,  ///< only when the (possibly vote-revised) verdict says "event"
};

/// How much labelled truth flows back from the supervisor each iteration.
enum class FeedbackMode {
  full,        ///< true label for every reading
  alarm_only,  ///< true label only for cells flagged by an accepted alarm
  none,        ///< no labels at all
};

/// How ground-truth events are scattered over the (location, time) grid.
enum class EventModelKind {
  bernoulli,    ///< each cell is an event independently with probability p
  fixed_count,  ///< exactly `total_events` cells drawn without replacement
};

struct ValueDist {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Parameters of the synthetic environment.
struct EventModel {
  EventModelKind kind = EventModelKind::bernoulli;
  double p_event = 0.5;
  int total_events = 300;
  ValueDist normal_dist{0.0, 1.0};  ///< readings at quiet cells
  ValueDist event_dist{5.0, 1.0};   ///< readings at event cells
};

/// Parameters of the per-agent one-class classifier.
struct ClassifierParams {
  std::size_t window_size = 100;       ///< sliding window of normal samples
  double boundary_quantile = 0.95;     ///< quantile defining the score radius
  double confidence_slope = 2.0;       ///< steepness of the confidence curve
  std::size_t min_training_points = 10;  ///< below this, always "normal"
};

/// Parameters of the per-channel field-selection learners.
struct QLearnParams {
  double alpha = 0.1;             ///< learning rate
  double epsilon_start = 0.3;
  double epsilon_min = 0.01;
  double epsilon_decay = 0.94;    ///< applied per update
  double privacy_weight = 1.0;    ///< exchange rate privacy -> cost units
  double failure_penalty = 100.0; ///< surcharge for masks the receiver rejects
};

/// Full description of one simulation run.
struct SimConfig {
  int num_sensors = 10;
  Organization organization = Organization::distributed;
  double neighborhood_fraction = 0.2;  ///< peers consulted, as share of agents
  bool symmetric_neighbors = false;    ///< make the neighbor relation mutual
  int iterations = 200;
  std::uint64_t seed = 1;

  EventModel event_model;
  ClassifierParams classifier_params;
  QLearnParams qlearn_params;
  CostVector cost_vector;

  bool learning_enabled = false;
  NeighborCriterion neighbor_criterion = NeighborCriterion::outlier;
  SupervisorCriterion supervisor_criterion = SupervisorCriterion::outlier;
  double consult_confidence_threshold = 0.6;  ///< for criterion `confidence`
  double unknown_threshold = 0.2;  ///< peers abstain below this confidence
  bool privacy_preserving_neighbors = false;  ///< peers don't price privacy
  FeedbackMode feedback_mode = FeedbackMode::full;
};

// ---------------------------------------------------------------------------
// enum <-> string
// ---------------------------------------------------------------------------

namespace detail {

template <typename Enum>
struct EnumNames;

template <>
struct EnumNames<Organization> {
  static constexpr std::pair<Organization, std::string_view> table[] = {
      {Organization::centralized, "centralized"},
      {Organization::decentralized, "decentralized"},
      {Organization::distributed, "distributed"},
  };
  static constexpr std::string_view what = "organization";
};

template <>
struct EnumNames<NeighborCriterion> {
  static constexpr std::pair<NeighborCriterion, std::string_view> table[] = {
      {NeighborCriterion::all, "all"},
      {NeighborCriterion::outlier, "outlier"},
      {NeighborCriterion::confidence, "confidence"},
      {NeighborCriterion::none, "none"},
  };
  static constexpr std::string_view what = "neighbor_criterion";
};

template <>
struct EnumNames<SupervisorCriterion> {
  static constexpr std::pair<SupervisorCriterion, std::string_view> table[] = {
      {SupervisorCriterion::all, "all"},
      {SupervisorCriterion::outlier, "outlier"},
  };
  static constexpr std::string_view what = "supervisor_criterion";
};

template <>
struct EnumNames<FeedbackMode> {
  static constexpr std::pair<FeedbackMode, std::string_view> table[] = {
      {FeedbackMode::full, "full"},
      {FeedbackMode::alarm_only, "alarm_only"},
      {FeedbackMode::none, "none"},
  };
  static constexpr std::string_view what = "feedback_mode";
};

template <>
struct EnumNames<EventModelKind> {
  static constexpr std::pair<EventModelKind, std::string_view> table[] = {
      {EventModelKind::bernoulli, "bernoulli"},
      {EventModelKind::fixed_count, "fixed_count"},
  };
  static constexpr std::string_view what = "event_model.kind";
};

}  // namespace detail

template <typename Enum>
std::string_view to_string(Enum value) {
  for (const auto& [v, name] : detail::EnumNames<Enum>::table)
    if (v == value) return name;
  return "?";
}

template <typename Enum>
Enum enum_from_string(std::string_view text) {
  for (const auto& [v, name] : detail::EnumNames<Enum>::table)
    if (name == text) return v;
  throw ConfigError("invalid value '" + std::string(text) + "' for " +
                    std::string(detail::EnumNames<Enum>::what));
}

// ---------------------------------------------------------------------------
// key/value access
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline double parse_double(std::string_view key, std::string_view text) {
  try {
    std::size_t pos = 0;
    double v = std::stod(std::string(text), &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + std::string(text) + "' for " +
                      std::string(key));
  }
}

inline long long parse_int(std::string_view key, std::string_view text) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(std::string(text), &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing chars");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer '" + std::string(text) + "' for " +
                      std::string(key));
  }
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on")
    return true;
  if (text == "false" || text == "0" || text == "no" || text == "off")
    return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "' for " +
                    std::string(key));
}

inline std::optional<Field> field_from_name(std::string_view name) {
  for (unsigned i = 0; i < kNumFields; ++i)
    if (kFieldNames[i] == name) return static_cast<Field>(i);
  return std::nullopt;
}

}  // namespace detail

/// Assigns one dotted configuration key, e.g. "qlearn_params.epsilon_decay"
/// or "cost_vector.privacy_cost.location".  Throws ConfigError on unknown
/// keys or unparsable values.  This is the single entry point used by config
/// files and by sweep axes, so both accept exactly the same vocabulary.
inline void apply_key(SimConfig& cfg, std::string_view key,
                      std::string_view value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_int;
  const std::string val(detail::trim(value));

  if (key == "num_sensors") {
    cfg.num_sensors = static_cast<int>(parse_int(key, val));
  } else if (key == "organization") {
    cfg.organization = enum_from_string<Organization>(val);
  } else if (key == "neighborhood_fraction") {
    cfg.neighborhood_fraction = parse_double(key, val);
  } else if (key == "symmetric_neighbors") {
    cfg.symmetric_neighbors = parse_bool(key, val);
  } else if (key == "iterations") {
    cfg.iterations = static_cast<int>(parse_int(key, val));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(key, val));
  } else if (key == "learning_enabled") {
    cfg.learning_enabled = parse_bool(key, val);
  } else if (key == "neighbor_criterion") {
    cfg.neighbor_criterion = enum_from_string<NeighborCriterion>(val);
  } else if (key == "supervisor_criterion") {
    cfg.supervisor_criterion = enum_from_string<SupervisorCriterion>(val);
  } else if (key == "consult_confidence_threshold") {
    cfg.consult_confidence_threshold = parse_double(key, val);
  } else if (key == "unknown_threshold") {
    cfg.unknown_threshold = parse_double(key, val);
  } else if (key == "privacy_preserving_neighbors") {
    cfg.privacy_preserving_neighbors = parse_bool(key, val);
  } else if (key == "feedback_mode") {
    cfg.feedback_mode = enum_from_string<FeedbackMode>(val);
  } else if (key == "event_model.kind") {
    cfg.event_model.kind = enum_from_string<EventModelKind>(val);
  } else if (key == "event_model.p_event") {
    cfg.event_model.p_event = parse_double(key, val);
  } else if (key == "event_model.total_events") {
    cfg.event_model.total_events = static_cast<int>(parse_int(key, val));
  } else if (key == "event_model.normal_dist.mean") {
    cfg.event_model.normal_dist.mean = parse_double(key, val);
  } else if (key == "event_model.normal_dist.stddev") {
    cfg.event_model.normal_dist.stddev = parse_double(key, val);
  } else if (key == "event_model.event_dist.mean") {
    cfg.event_model.event_dist.mean = parse_double(key, val);
  } else if (key == "event_model.event_dist.stddev") {
    cfg.event_model.event_dist.stddev = parse_double(key, val);
  } else if (key == "classifier_params.window_size") {
    cfg.classifier_params.window_size =
        static_cast<std::size_t>(parse_int(key, val));
  } else if (key == "classifier_params.boundary_quantile") {
    cfg.classifier_params.boundary_quantile = parse_double(key, val);
  } else if (key == "classifier_params.confidence_slope") {
    cfg.classifier_params.confidence_slope = parse_double(key, val);
  } else if (key == "classifier_params.min_training_points") {
    cfg.classifier_params.min_training_points =
        static_cast<std::size_t>(parse_int(key, val));
  } else if (key == "qlearn_params.alpha") {
    cfg.qlearn_params.alpha = parse_double(key, val);
  } else if (key == "qlearn_params.epsilon_start") {
    cfg.qlearn_params.epsilon_start = parse_double(key, val);
  } else if (key == "qlearn_params.epsilon_min") {
    cfg.qlearn_params.epsilon_min = parse_double(key, val);
  } else if (key == "qlearn_params.epsilon_decay") {
    cfg.qlearn_params.epsilon_decay = parse_double(key, val);
  } else if (key == "qlearn_params.privacy_weight") {
    cfg.qlearn_params.privacy_weight = parse_double(key, val);
  } else if (key == "qlearn_params.failure_penalty") {
    cfg.qlearn_params.failure_penalty = parse_double(key, val);
  } else if (key.starts_with("cost_vector.")) {
    std::string_view rest = key.substr(12);
    bool is_comm = rest.starts_with("comm_cost.");
    bool is_privacy = rest.starts_with("privacy_cost.");
    if (!is_comm && !is_privacy)
      throw ConfigError("unknown configuration key '" + std::string(key) +
                        "'");
    std::string_view fname = rest.substr(is_comm ? 10 : 13);
    auto f = detail::field_from_name(fname);
    if (!f)
      throw ConfigError("unknown field '" + std::string(fname) + "' in " +
                        std::string(key));
    auto idx = static_cast<unsigned>(*f);
    (is_comm ? cfg.cost_vector.comm[idx] : cfg.cost_vector.privacy[idx]) =
        parse_double(key, val);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

/// Parses `key = value` lines.  Blank lines and lines starting with `#` are
/// ignored; inline `# comments` after the value are stripped.
inline SimConfig parse_config(std::istream& in,
                              SimConfig base = SimConfig{}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = detail::trim(sv.substr(0, hash));
    if (sv.empty()) continue;
    auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + std::string(sv) +
                        "'");
    std::string_view key = detail::trim(sv.substr(0, eq));
    std::string_view value = detail::trim(sv.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    apply_key(base, key, value);
  }
  return base;
}

inline SimConfig load_config(const std::string& path,
                             SimConfig base = SimConfig{}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

/// Writes every key in the vocabulary of apply_key, so a saved config
/// round-trips exactly.
inline void save_config(const SimConfig& cfg, std::ostream& out) {
  auto kv = [&out](std::string_view key, const auto& value) {
    out << key << " = " << value << "\n";
  };
  out.precision(17);
  kv("num_sensors", cfg.num_sensors);
  kv("organization", to_string(cfg.organization));
  kv("neighborhood_fraction", cfg.neighborhood_fraction);
  kv("symmetric_neighbors", cfg.symmetric_neighbors ? "true" : "false");
  kv("iterations", cfg.iterations);
  kv("seed", cfg.seed);
  kv("learning_enabled", cfg.learning_enabled ? "true" : "false");
  kv("neighbor_criterion", to_string(cfg.neighbor_criterion));
  kv("supervisor_criterion", to_string(cfg.supervisor_criterion));
  kv("consult_confidence_threshold", cfg.consult_confidence_threshold);
  kv("unknown_threshold", cfg.unknown_threshold);
  kv("privacy_preserving_neighbors",
     cfg.privacy_preserving_neighbors ? "true" : "false");
  kv("feedback_mode", to_string(cfg.feedback_mode));
  kv("event_model.kind", to_string(cfg.event_model.kind));
  kv("event_model.p_event", cfg.event_model.p_event);
  kv("event_model.total_events", cfg.event_model.total_events);
  kv("event_model.normal_dist.mean", cfg.event_model.normal_dist.mean);
  kv("event_model.normal_dist.stddev", cfg.event_model.normal_dist.stddev);
  kv("event_model.event_dist.mean", cfg.event_model.event_dist.mean);
  kv("event_model.event_dist.stddev", cfg.event_model.event_dist.stddev);
  kv("classifier_params.window_size", cfg.classifier_params.window_size);
  kv("classifier_params.boundary_quantile",
     cfg.classifier_params.boundary_quantile);
  kv("classifier_params.confidence_slope",
     cfg.classifier_params.confidence_slope);
  kv("classifier_params.min_training_points",
     cfg.classifier_params.min_training_points);
  kv("qlearn_params.alpha", cfg.qlearn_params.alpha);
  kv("qlearn_params.epsilon_start", cfg.qlearn_params.epsilon_start);
  kv("qlearn_params.epsilon_min", cfg.qlearn_params.epsilon_min);
  kv("qlearn_params.epsilon_decay", cfg.qlearn_params.epsilon_decay);
  kv("qlearn_params.privacy_weight", cfg.qlearn_params.privacy_weight);
  kv("qlearn_params.failure_penalty", cfg.qlearn_params.failure_penalty);
  for (unsigned i = 0; i < kNumFields; ++i)
    kv("cost_vector.comm_cost." + std::string(kFieldNames[i]),
       cfg.cost_vector.comm[i]);
  for (unsigned i = 0; i < kNumFields; ++i)
    kv("cost_vector.privacy_cost." + std::string(kFieldNames[i]),
       cfg.cost_vector.privacy[i]);
}

/// Rejects configurations the simulation cannot honor.  Throws ConfigError
/// naming the offending key.
inline void validate(const SimConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.num_sensors < 1) fail("num_sensors must be >= 1");
  if (cfg.iterations < 0) fail("iterations must be >= 0");
  if (cfg.neighborhood_fraction < 0.0 || cfg.neighborhood_fraction > 1.0)
    fail("neighborhood_fraction must lie in [0, 1]");
  if (cfg.event_model.p_event < 0.0 || cfg.event_model.p_event > 1.0)
    fail("event_model.p_event must lie in [0, 1]");
  if (cfg.event_model.total_events < 0)
    fail("event_model.total_events must be >= 0");
  if (cfg.event_model.kind == EventModelKind::fixed_count &&
      static_cast<long long>(cfg.event_model.total_events) >
          static_cast<long long>(cfg.num_sensors) * cfg.iterations)
    fail("event_model.total_events exceeds the number of grid cells");
  if (cfg.event_model.normal_dist.stddev < 0.0)
    fail("event_model.normal_dist.stddev must be >= 0");
  if (cfg.event_model.event_dist.stddev < 0.0)
    fail("event_model.event_dist.stddev must be >= 0");
  if (cfg.classifier_params.window_size < 1)
    fail("classifier_params.window_size must be >= 1");
  if (cfg.classifier_params.window_size <
      cfg.classifier_params.min_training_points)
    fail("classifier_params.window_size must be >= min_training_points");
  if (cfg.classifier_params.boundary_quantile <= 0.0 ||
      cfg.classifier_params.boundary_quantile >= 1.0)
    fail("classifier_params.boundary_quantile must lie in (0, 1)");
  if (cfg.classifier_params.confidence_slope <= 0.0)
    fail("classifier_params.confidence_slope must be > 0");
  if (cfg.qlearn_params.alpha <= 0.0 || cfg.qlearn_params.alpha > 1.0)
    fail("qlearn_params.alpha must lie in (0, 1]");
  if (cfg.qlearn_params.epsilon_start < 0.0 ||
      cfg.qlearn_params.epsilon_start > 1.0)
    fail("qlearn_params.epsilon_start must lie in [0, 1]");
  if (cfg.qlearn_params.epsilon_min < 0.0 ||
      cfg.qlearn_params.epsilon_min > cfg.qlearn_params.epsilon_start)
    fail("qlearn_params.epsilon_min must lie in [0, epsilon_start]");
  if (cfg.qlearn_params.epsilon_decay <= 0.0 ||
      cfg.qlearn_params.epsilon_decay > 1.0)
    fail("qlearn_params.epsilon_decay must lie in (0, 1]");
  if (cfg.qlearn_params.privacy_weight < 0.0)
    fail("qlearn_params.privacy_weight must be >= 0");
  if (cfg.qlearn_params.failure_penalty < 0.0)
    fail("qlearn_params.failure_penalty must be >= 0");
  if (cfg.consult_confidence_threshold < 0.0 ||
      cfg.consult_confidence_threshold > 1.0)
    fail("consult_confidence_threshold must lie in [0, 1]");
  if (cfg.unknown_threshold < 0.0 || cfg.unknown_threshold > 1.0)
    fail("unknown_threshold must lie in [0, 1]");
  for (unsigned i = 0; i < kNumFields; ++i) {
    if (cfg.cost_vector.comm[i] <= 0.0)
      fail("cost_vector.comm_cost entries must be > 0");
    if (cfg.cost_vector.privacy[i] < 0.0)
      fail("cost_vector.privacy_cost entries must be >= 0");
  }
  if (cfg.organization == Organization::distributed) {
    const int agents = cfg.num_sensors;
    const auto k =
        static_cast<int>(std::llround(cfg.neighborhood_fraction * agents));
    if (k > agents - 1)
      fail("neighborhood_fraction asks for more neighbors than exist");
  }
}

}  // namespace primal
