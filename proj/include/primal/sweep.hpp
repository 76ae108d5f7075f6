#pragma once

#include <array>
#include <cstddef>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primal/config.hpp"
#include "primal/csv.hpp"
#include "primal/profiles.hpp"
#include "primal/simulation.hpp"
#include "primal/stats.hpp"

namespace primal {

/// One grid cell: a ready-to-run configuration plus the axis assignments
/// that produced it, kept as strings for labelling output rows.
struct LabeledConfig {
  std::vector<std::pair<std::string, std::string>> labels;
  SimConfig config;
};

/// A parsed sweep description: a base configuration, axes to cross, and how
/// many seed-paired replications to run per cell.
struct SweepSpec {
  SimConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  int replications = 1;
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = trim(text.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Applies one axis assignment to a configuration.  Axis names are the
/// configuration keys accepted by apply_key, plus the special axis
/// "profile" whose values are catalog profile names.
inline void apply_axis_value(SimConfig& cfg, std::string_view axis,
                             std::string_view value) {
  if (axis == "profile") {
    const CommProfile* p = find_profile(value);
    if (!p)
      throw ConfigError("unknown profile '" + std::string(value) + "'");
    apply_profile(cfg, *p);
    return;
  }
  apply_key(cfg, axis, value);
}

/// Parses a sweep spec.  The format is the config format plus two
/// extensions: `replications = N` and `axis.<key> = v1, v2, ...` lines.
/// Axis order in the file fixes the nesting order of the grid (last axis
/// varies fastest).
inline SweepSpec parse_sweep_spec(std::istream& in,
                                  SimConfig base = SimConfig{}) {
  SweepSpec spec;
  spec.base = std::move(base);
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
    std::string key(detail::trim(sv.substr(0, eq)));
    std::string_view value = detail::trim(sv.substr(eq + 1));
    if (key == "replications") {
      spec.replications = static_cast<int>(detail::parse_int(key, value));
      if (spec.replications < 1)
        throw ConfigError("replications must be >= 1");
    } else if (key.starts_with("axis.")) {
      std::string axis = key.substr(5);
      auto values = detail::split_list(value);
      if (values.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": axis '" +
                          axis + "' has no values");
      if (axis != "profile") {
        // Fail fast on bad keys/values, on a scratch copy.
        SimConfig probe = spec.base;
        for (const auto& v : values) apply_axis_value(probe, axis, v);
      } else {
        for (const auto& v : values)
          if (!find_profile(v))
            throw ConfigError("unknown profile '" + v + "'");
      }
      spec.axes.emplace_back(std::move(axis), std::move(values));
    } else {
      apply_key(spec.base, key, value);
    }
  }
  return spec;
}

inline SweepSpec load_sweep_spec(const std::string& path,
                                 SimConfig base = SimConfig{}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sweep spec '" + path + "'");
  return parse_sweep_spec(in, std::move(base));
}

/// Expands the cross product of the axes into concrete cells, last axis
/// varying fastest.  With no axes there is exactly one cell: the base.
inline std::vector<LabeledConfig> expand_cells(const SweepSpec& spec) {
  std::vector<LabeledConfig> cells;
  cells.push_back(LabeledConfig{{}, spec.base});
  for (const auto& [axis, values] : spec.axes) {
    std::vector<LabeledConfig> next;
    next.reserve(cells.size() * values.size());
    for (const LabeledConfig& cell : cells) {
      for (const std::string& value : values) {
        LabeledConfig expanded = cell;
        expanded.labels.emplace_back(axis, value);
        apply_axis_value(expanded.config, axis, value);
        next.push_back(std::move(expanded));
      }
    }
    cells = std::move(next);
  }
  return cells;
}

/// Aggregated outcome of one cell: per-iteration and last-iteration
/// accumulators across replications, one per metric in kRunMetrics.
struct CellSummary {
  LabeledConfig cell;
  std::vector<std::array<stats::Accumulator, kNumRunMetrics>> per_iteration;
  std::array<stats::Accumulator, kNumRunMetrics> final_row{};
};

/// Runs every cell `replications` times with seeds base+0..base+R-1, so the
/// r-th replication of every cell shares one environment realization, and
/// aggregates the record rows.  `progress`, if given, is called after every
/// completed run with (finished_runs, total_runs).
inline std::vector<CellSummary> run_cells(
    const std::vector<LabeledConfig>& cells, int replications,
    const std::function<void(int, int)>& progress = {}) {
  std::vector<CellSummary> out;
  out.reserve(cells.size());
  const int total = static_cast<int>(cells.size()) * replications;
  int finished = 0;
  for (const LabeledConfig& cell : cells) {
    CellSummary summary;
    summary.cell = cell;
    summary.per_iteration.resize(
        static_cast<std::size_t>(cell.config.iterations));
    for (int r = 0; r < replications; ++r) {
      SimConfig cfg = cell.config;
      cfg.seed = cell.config.seed + static_cast<std::uint64_t>(r);
      const RunResult result = run_simulation(cfg);
      for (const RunRecordRow& row : result.record) {
        auto& accs = summary.per_iteration[static_cast<std::size_t>(
            row.iteration)];
        for (std::size_t m = 0; m < kNumRunMetrics; ++m)
          accs[m].add(kRunMetrics[m].get(row));
      }
      if (!result.record.empty()) {
        const RunRecordRow& last = result.record.back();
        for (std::size_t m = 0; m < kNumRunMetrics; ++m)
          summary.final_row[m].add(kRunMetrics[m].get(last));
      }
      if (progress) progress(++finished, total);
    }
    out.push_back(std::move(summary));
  }
  return out;
}

namespace detail {

inline void write_axis_header(const std::vector<CellSummary>& cells,
                              std::ostream& out) {
  if (cells.empty()) return;
  for (const auto& [axis, value] : cells.front().cell.labels)
    out << axis << ',';
}

inline void write_axis_values(const CellSummary& cell, std::ostream& out) {
  for (const auto& [axis, value] : cell.cell.labels) out << value << ',';
}

}  // namespace detail

/// Writes the full per-iteration aggregation: one row per cell per
/// iteration, with axis values first, then mean and 95% CI half-width for
/// every metric.
inline void write_sweep_csv(const std::vector<CellSummary>& cells,
                            std::ostream& out) {
  detail::write_axis_header(cells, out);
  out << "iteration";
  for (const RunMetric& m : kRunMetrics)
    out << ',' << m.name << "_mean," << m.name << "_ci";
  out << '\n';
  auto old = out.precision(12);
  for (const CellSummary& cell : cells) {
    for (std::size_t t = 0; t < cell.per_iteration.size(); ++t) {
      detail::write_axis_values(cell, out);
      out << t;
      for (const auto& acc : cell.per_iteration[t])
        out << ',' << acc.mean << ',' << acc.ci_half_width();
      out << '\n';
    }
  }
  out.precision(old);
}

/// Writes one summary row per cell, aggregating only each run's last
/// iteration.
inline void write_final_csv(const std::vector<CellSummary>& cells,
                            std::ostream& out) {
  detail::write_axis_header(cells, out);
  out << "iterations,replications";
  for (const RunMetric& m : kRunMetrics)
    out << ',' << m.name << "_mean," << m.name << "_ci";
  out << '\n';
  auto old = out.precision(12);
  for (const CellSummary& cell : cells) {
    detail::write_axis_values(cell, out);
    out << cell.cell.config.iterations << ',' << cell.final_row[0].n;
    for (const auto& acc : cell.final_row)
      out << ',' << acc.mean << ',' << acc.ci_half_width();
    out << '\n';
  }
  out.precision(old);
}

}  // namespace primal
