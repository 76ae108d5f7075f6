#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primal/profiles.hpp"
#include "primal/sweep.hpp"

namespace primal {

/// Builds one cell from a base config and a list of axis assignments; the
/// labels and the configuration agree by construction.
inline LabeledConfig make_cell(
    SimConfig base,
    std::initializer_list<std::pair<std::string_view, std::string_view>>
        assignments) {
  LabeledConfig cell{{}, std::move(base)};
  for (const auto& [axis, value] : assignments) {
    cell.labels.emplace_back(std::string(axis), std::string(value));
    apply_axis_value(cell.config, axis, value);
  }
  return cell;
}

/// A canned study: a fixed list of cells plus a replication count.
struct Experiment {
  std::string name;
  std::string description;
  int replications = 1;
  std::vector<LabeledConfig> cells;
};

/// Learning on vs. off, everything else at defaults.  Shows the calibration
/// dip while masks are explored and the privacy saved once they settle.
inline Experiment experiment_calibration() {
  Experiment e;
  e.name = "calibration";
  e.description =
      "field-selection learning on vs. off at the default network";
  e.replications = 50;
  e.cells = {
      make_cell(SimConfig{}, {{"learning_enabled", "false"}}),
      make_cell(SimConfig{}, {{"learning_enabled", "true"}}),
  };
  return e;
}

/// Network-shape grid: size x neighborhood size x organization, with
/// learning on everywhere.
inline Experiment experiment_parameters() {
  Experiment e;
  e.name = "parameters";
  e.description =
      "sensors x neighborhood fraction x organization, learning on";
  e.replications = 20;
  for (std::string_view n : {"10", "50"})
    for (std::string_view frac : {"0", "0.2", "0.5"})
      for (std::string_view org : {"centralized", "distributed"})
        e.cells.push_back(make_cell(
            SimConfig{}, {{"learning_enabled", "true"},
                          {"num_sensors", n},
                          {"neighborhood_fraction", frac},
                          {"organization", org}}));
  return e;
}

/// Consultation/alarm gating policies with learning on, against an
/// everything-always baseline with learning off.
inline Experiment experiment_criteria() {
  Experiment e;
  e.name = "criteria";
  e.description =
      "consultation criteria under learning vs. an always-send baseline";
  e.replications = 30;
  for (std::string_view nc : {"all", "outlier", "confidence"})
    e.cells.push_back(make_cell(SimConfig{},
                                {{"neighbor_criterion", nc},
                                 {"supervisor_criterion", "outlier"},
                                 {"learning_enabled", "true"}}));
  e.cells.push_back(make_cell(SimConfig{},
                              {{"neighbor_criterion", "all"},
                               {"supervisor_criterion", "all"},
                               {"learning_enabled", "false"}}));
  return e;
}

/// Every catalog communication profile, with and without learning.
inline Experiment experiment_profiles() {
  Experiment e;
  e.name = "profiles";
  e.description = "catalog communication profiles x learning toggle";
  e.replications = 20;
  for (const CommProfile& p : kProfileCatalog)
    for (std::string_view learn : {"false", "true"})
      e.cells.push_back(make_cell(
          SimConfig{}, {{"profile", p.name}, {"learning_enabled", learn}}));
  return e;
}

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"calibration", "parameters",
                                                 "criteria", "profiles"};
  return names;
}

/// Looks up a canned study by name; throws ConfigError for unknown names.
inline Experiment find_experiment(std::string_view name) {
  if (name == "calibration") return experiment_calibration();
  if (name == "parameters") return experiment_parameters();
  if (name == "criteria") return experiment_criteria();
  if (name == "profiles") return experiment_profiles();
  throw ConfigError("unknown experiment '" + std::string(name) +
                    "' (expected calibration, parameters, criteria or "
                    "profiles)");
}

}  // namespace primal
