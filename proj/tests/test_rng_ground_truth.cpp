#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "primal/ground_truth.hpp"
#include "primal/rng.hpp"

using namespace primal;

TEST_CASE("splitmix64 matches the reference sequence") {
  // Reference values computed independently from the published constants.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
  CHECK(splitmix64(42) == 0xBDD732262FEB6E95ULL);
}

TEST_CASE("streams are deterministic and tag-separated") {
  auto a1 = make_stream(7, stream::ground_truth);
  auto a2 = make_stream(7, stream::ground_truth);
  CHECK(a1() == a2());

  auto b = make_stream(7, stream::measurements);
  auto c = make_stream(8, stream::ground_truth);
  auto a3 = make_stream(7, stream::ground_truth);
  const auto head = a3();
  CHECK(head != b());
  CHECK(head != c());
}

TEST_CASE("draw_normal consumes the engine identically per call") {
  auto r1 = make_stream(3, stream::priming);
  auto r2 = make_stream(3, stream::priming);
  for (int i = 0; i < 10; ++i)
    REQUIRE(draw_normal(r1, 1.0, 2.0) == draw_normal(r2, 1.0, 2.0));
}

TEST_CASE("degenerate event probabilities fill or clear the grid") {
  EventModel model;
  auto rng = make_stream(1, stream::ground_truth);

  model.p_event = 0.0;
  CHECK(generate_ground_truth(model, 10, 50, rng).event_count() == 0);

  model.p_event = 1.0;
  CHECK(generate_ground_truth(model, 10, 50, rng).event_count() == 500);
}

TEST_CASE("fixed_count scatters exactly the requested number of events") {
  EventModel model;
  model.kind = EventModelKind::fixed_count;
  model.total_events = 123;
  auto rng = make_stream(5, stream::ground_truth);
  const GroundTruth gt = generate_ground_truth(model, 10, 200, rng);
  CHECK(gt.event_count() == 123);
}

TEST_CASE("bernoulli event rate concentrates on p") {
  // 50 independent grids of 10x200 cells at p = 0.2: the mean count sits
  // within 4 standard errors of 400 (se = sqrt(2000*0.16/50) = 2.53).
  EventModel model;
  model.p_event = 0.2;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = make_stream(seed, stream::ground_truth);
    total += static_cast<double>(
        generate_ground_truth(model, 10, 200, rng).event_count());
  }
  const double mean = total / 50.0;
  CHECK(std::abs(mean - 400.0) < 10.12);
}

TEST_CASE("grid indexing is (location, timestep) addressable") {
  GroundTruth gt(4, 3);
  gt.set_event(2, 1, true);
  CHECK(gt.is_event(2, 1));
  CHECK_FALSE(gt.is_event(1, 2));
  CHECK_FALSE(gt.is_event(2, 0));
  CHECK(gt.event_count() == 1);
  gt.set_event(2, 1, false);
  CHECK(gt.event_count() == 0);
}

TEST_CASE("measurements carry the sensor's location and draw by cell truth") {
  EventModel model;  // normal N(0,1), event N(5,1)
  GroundTruth gt(2, 400);
  for (int t = 0; t < 400; ++t) gt.set_event(1, t, true);

  auto rng = make_stream(11, stream::measurements);
  double normal_sum = 0.0;
  double event_sum = 0.0;
  for (int t = 0; t < 400; ++t) {
    const Measurement quiet = sample_measurement(gt, model, 0, t, rng);
    const Measurement hot = sample_measurement(gt, model, 1, t, rng);
    CHECK(quiet.location == 0);
    CHECK(quiet.sensor_id == 0);
    CHECK(quiet.timestep == t);
    CHECK(quiet.event_type == 0);
    CHECK(quiet.sensor_type == 0);
    normal_sum += quiet.value;
    event_sum += hot.value;
  }
  CHECK(std::abs(normal_sum / 400.0 - 0.0) < 0.25);
  CHECK(std::abs(event_sum / 400.0 - 5.0) < 0.25);
}
