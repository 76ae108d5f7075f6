#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "primal/config.hpp"
#include "primal/message.hpp"
#include "primal/rng.hpp"

namespace primal {

/// The hidden (location, timestep) event grid a run is scored against.
/// Locations coincide with sensor indices: sensor i sits at location i.
class GroundTruth {
 public:
  GroundTruth() : GroundTruth(0, 0) {}
  GroundTruth(int num_locations, int iterations)
      : num_locations_(num_locations),
        iterations_(iterations),
        grid_(static_cast<std::size_t>(num_locations) * iterations, 0) {}

  int num_locations() const { return num_locations_; }
  int iterations() const { return iterations_; }

  bool is_event(int location, int timestep) const {
    return grid_[index(location, timestep)] != 0;
  }

  void set_event(int location, int timestep, bool on) {
    grid_[index(location, timestep)] = on ? 1 : 0;
  }

  /// Total number of event cells in the grid.
  long event_count() const {
    return std::accumulate(grid_.begin(), grid_.end(), 0L,
                           [](long a, std::uint8_t b) { return a + b; });
  }

 private:
  std::size_t index(int location, int timestep) const {
    return static_cast<std::size_t>(timestep) * num_locations_ + location;
  }

  int num_locations_;
  int iterations_;
  std::vector<std::uint8_t> grid_;
};

/// Scatters events over the grid according to the event model.
inline GroundTruth generate_ground_truth(const EventModel& model,
                                         int num_locations, int iterations,
                                         std::mt19937_64& rng) {
  GroundTruth gt(num_locations, iterations);
  if (model.kind == EventModelKind::bernoulli) {
    std::bernoulli_distribution flip(model.p_event);
    for (int t = 0; t < iterations; ++t)
      for (int l = 0; l < num_locations; ++l)
        gt.set_event(l, t, flip(rng));
  } else {
    // Draw exactly total_events distinct cells.
    const std::size_t cells =
        static_cast<std::size_t>(num_locations) * iterations;
    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto want = static_cast<std::size_t>(model.total_events);
    for (std::size_t i = 0; i < want && i < cells; ++i) {
      const auto cell = order[i];
      gt.set_event(static_cast<int>(cell % num_locations),
                   static_cast<int>(cell / num_locations), true);
    }
  }
  return gt;
}

/// Draws sensor `sensor_id`'s reading at `timestep`: a sample from the event
/// distribution if the grid holds an event there, otherwise from the normal
/// one.
inline Measurement sample_measurement(const GroundTruth& gt,
                                      const EventModel& model, int sensor_id,
                                      int timestep, std::mt19937_64& rng) {
  Measurement m;
  m.sensor_id = sensor_id;
  m.location = sensor_id;
  m.timestep = timestep;
  m.event_type = 0;
  m.sensor_type = 0;
  if (gt.is_event(sensor_id, timestep)) {
    m.value = draw_normal(rng, model.event_dist.mean, model.event_dist.stddev);
  } else {
    m.value =
        draw_normal(rng, model.normal_dist.mean, model.normal_dist.stddev);
  }
  return m;
}

}  // namespace primal
