#pragma once

#include <array>
#include <ostream>
#include <string>
#include <string_view>

#include "primal/config.hpp"

namespace primal {

/// A literature-inspired communication policy: whether peers see private
/// fields, and how eagerly a node talks to peers and to the supervisor.
/// `exemplar` names published systems the row is modelled on ("-" when the
/// cell is a gap no surveyed system occupies).
struct CommProfile {
  std::string_view name;
  bool privacy_preserving = false;
  NeighborCriterion neighbor_criterion = NeighborCriterion::all;
  SupervisorCriterion supervisor_criterion = SupervisorCriterion::all;
  std::string_view exemplar;
};

/// Catalog of the policies found in (or implied by) the surveyed systems.
/// Naming: PP/NP = privacy-preserving or not towards peers, then one letter
/// per criterion (O = outlier-triggered, A = always, N = never) for the
/// neighbor and supervisor channels respectively.
inline constexpr std::array<CommProfile, 10> kProfileCatalog = {{
    {"PP-OO", true, NeighborCriterion::outlier, SupervisorCriterion::outlier,
     "ZMH09"},
    {"PP-OA", true, NeighborCriterion::outlier, SupervisorCriterion::all, "-"},
    {"PP-AO", true, NeighborCriterion::all, SupervisorCriterion::outlier,
     "Ruan08"},
    {"PP-AA", true, NeighborCriterion::all, SupervisorCriterion::all, "-"},
    {"NP-OO", false, NeighborCriterion::outlier, SupervisorCriterion::outlier,
     "Zhang12"},
    {"NP-OA", false, NeighborCriterion::outlier, SupervisorCriterion::all,
     "-"},
    {"NP-AO", false, NeighborCriterion::all, SupervisorCriterion::outlier,
     "MarinPerianu07+Wittenburg10"},
    {"NP-AA", false, NeighborCriterion::all, SupervisorCriterion::all,
     "Bahrepour10"},
    {"NP-NO", false, NeighborCriterion::none, SupervisorCriterion::outlier,
     "Zoumboulakis07+Faulkner11+Faulkner13"},
    {"NP-NA", false, NeighborCriterion::none, SupervisorCriterion::all,
     "Bahrepour09"},
}};

inline const CommProfile* find_profile(std::string_view name) {
  for (const CommProfile& p : kProfileCatalog)
    if (p.name == name) return &p;
  return nullptr;
}

/// Overwrites the config's communication policy with the profile's.
/// Learning and every other knob are left untouched, so profiles can be
/// compared under identical environments and learner settings.
inline void apply_profile(SimConfig& cfg, const CommProfile& profile) {
  cfg.neighbor_criterion = profile.neighbor_criterion;
  cfg.supervisor_criterion = profile.supervisor_criterion;
  cfg.privacy_preserving_neighbors = profile.privacy_preserving;
}

/// Writes the catalog as CSV.
inline void dump_profiles(std::ostream& out) {
  out << "name,privacy_preserving,neighbor_criterion,supervisor_criterion,"
         "exemplar\n";
  for (const CommProfile& p : kProfileCatalog) {
    out << p.name << ',' << (p.privacy_preserving ? 1 : 0) << ','
        << to_string(p.neighbor_criterion) << ','
        << to_string(p.supervisor_criterion) << ',' << p.exemplar << '\n';
  }
}

}  // namespace primal
