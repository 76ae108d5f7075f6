#pragma once

#include <array>

#include "primal/fields.hpp"

namespace primal {

/// Per-field communication and privacy prices.
///
/// Sending a message over one hop charges, for every field included in its
/// mask, the field's communication cost plus its privacy cost.  The default
/// tariff prices every field at one unit of communication and considers only
/// the reading's location privacy-sensitive.
struct CostVector {
  std::array<double, kNumFields> comm{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  std::array<double, kNumFields> privacy{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};

  double comm_for(Field f) const { return comm[static_cast<unsigned>(f)]; }
  double privacy_for(Field f) const {
    return privacy[static_cast<unsigned>(f)];
  }
};

/// Communication cost of sending the masked fields over a single hop.
inline double comm_cost(FieldMask mask, const CostVector& costs) {
  double total = 0.0;
  for (unsigned i = 0; i < kNumFields; ++i)
    if ((mask >> i) & 1u) total += costs.comm[i];
  return total;
}

/// Privacy cost of exposing the masked fields over a single hop.
inline double privacy_cost(FieldMask mask, const CostVector& costs) {
  double total = 0.0;
  for (unsigned i = 0; i < kNumFields; ++i)
    if ((mask >> i) & 1u) total += costs.privacy[i];
  return total;
}

}  // namespace primal
