#pragma once

#include <cstdint>

#include "primal/fields.hpp"

namespace primal {

/// One raw sensor reading, before any masking.
struct Measurement {
  int sensor_id = 0;     ///< index of the reporting sensor
  int location = 0;      ///< grid location (equals the sensor index here)
  double value = 0.0;    ///< the measured quantity
  int timestep = 0;      ///< iteration at which the reading was taken
  int event_type = 0;    ///< kind of event the sensor watches for
  int sensor_type = 0;   ///< kind of sensor hardware
};

/// Why a message is being sent; determines which fields the receiver needs.
enum class Purpose {
  sensor_report,    ///< sensor hands a reading to its owning agent
  opinion_request,  ///< agent asks a peer to second-guess a reading
  alarm,            ///< agent notifies the supervisor of a detected event
};

/// Fields a receiver must get for a message of this purpose to be usable.
/// A sensor report is always usable; a peer can only judge a reading it can
/// see (value + event type); the supervisor can only act on an alarm it can
/// place (location + timestep + event type).
constexpr FieldMask required_mask(Purpose purpose) {
  switch (purpose) {
    case Purpose::sensor_report:
      return 0;
    case Purpose::opinion_request:
      return mask_of({Field::value, Field::event_type});
    case Purpose::alarm:
      return mask_of({Field::location, Field::timestep, Field::event_type});
  }
  return 0;
}

/// Checks that a mask carries every field the receiver of a message with
/// this purpose needs.
constexpr bool is_valid_mask(FieldMask mask, Purpose purpose) {
  const FieldMask need = required_mask(purpose);
  return (mask & need) == need;
}

/// A masked message.  Field members are only meaningful when the
/// corresponding bit is set in `mask`; everything else is zeroed at
/// construction so omitted fields genuinely carry no information.
struct Message {
  Purpose purpose = Purpose::sensor_report;
  FieldMask mask = 0;
  int agent_id = 0;
  int location = 0;
  double value = 0.0;
  int timestep = 0;
  int event_type = 0;
  int sensor_type = 0;

  bool has(Field f) const { return has_field(mask, f); }
};

/// Builds a message from a reading, copying only the masked fields.
inline Message make_message(Purpose purpose, FieldMask mask,
                            const Measurement& m, int sender_agent_id) {
  Message msg;
  msg.purpose = purpose;
  msg.mask = mask & (kNumMasks - 1);
  if (msg.has(Field::agent_id)) msg.agent_id = sender_agent_id;
  if (msg.has(Field::location)) msg.location = m.location;
  if (msg.has(Field::value)) msg.value = m.value;
  if (msg.has(Field::timestep)) msg.timestep = m.timestep;
  if (msg.has(Field::event_type)) msg.event_type = m.event_type;
  if (msg.has(Field::sensor_type)) msg.sensor_type = m.sensor_type;
  return msg;
}

}  // namespace primal
