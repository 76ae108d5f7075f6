#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace primal {

/// The six fields a sensor reading carries on the wire.
///
/// The enumerator value is the field's bit position inside a FieldMask, so
/// the mask encoding of a field set is stable and documented:
///   agent_id = bit 0, location = bit 1, value = bit 2,
///   timestep = bit 3, event_type = bit 4, sensor_type = bit 5.
enum class Field : unsigned {
  agent_id = 0,
  location = 1,
  value = 2,
  timestep = 3,
  event_type = 4,
  sensor_type = 5,
};

inline constexpr unsigned kNumFields = 6;

/// A subset of the six message fields, encoded as an integer in [0, 64).
using FieldMask = unsigned;

inline constexpr unsigned kNumMasks = 64;

constexpr FieldMask field_bit(Field f) {
  return FieldMask{1} << static_cast<unsigned>(f);
}

constexpr FieldMask mask_of(std::initializer_list<Field> fields) {
  FieldMask m = 0;
  for (Field f : fields) m |= field_bit(f);
  return m;
}

constexpr bool has_field(FieldMask m, Field f) {
  return (m & field_bit(f)) != 0;
}

/// Number of fields included in the mask.
constexpr unsigned mask_size(FieldMask m) {
  return static_cast<unsigned>(std::popcount(m & (kNumMasks - 1)));
}

/// Everything except the sending agent's identity: the mask a node uses when
/// it is not trying to economize, and the payload of a raw sensor report.
inline constexpr FieldMask kFullReportMask =
    mask_of({Field::location, Field::value, Field::timestep,
             Field::event_type, Field::sensor_type});

inline constexpr std::array<std::string_view, kNumFields> kFieldNames = {
    "agent_id", "location", "value", "timestep", "event_type", "sensor_type",
};

constexpr std::string_view field_name(Field f) {
  return kFieldNames[static_cast<unsigned>(f)];
}

/// Renders a mask as e.g. "{location,value}"; the empty mask is "{}".
inline std::string mask_to_string(FieldMask m) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < kNumFields; ++i) {
    if ((m >> i) & 1u) {
      if (!first) out += ',';
      out += kFieldNames[i];
      first = false;
    }
  }
  out += '}';
  return out;
}

}  // namespace primal
