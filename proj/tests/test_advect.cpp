#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "euler/advect.hpp"
#include "euler/errors.hpp"
#include "euler/rng.hpp"

using namespace euler;
using namespace euler::geom;
using namespace euler::conf;
using namespace euler::field;
using namespace euler::advect;

static const ConformalMap& disc_map() {
  static ConformalMap map(validate_domain(disc_spec()));
  return map;
}

TEST_CASE("point-vortex tracer completes its circular orbit in t = pi/2") {
  VortexField f;
  add_point_vortex(f, Complex(0, 0), kTwoPi);
  add_tracer(f, Complex(0.5, 0.0));

  SimConfig cfg;
  cfg.t_end = kPi / 2.0;  // angular speed 4 at r = 1/2
  cfg.dt0 = 1e-3;
  cfg.sample_dt = 0.1;
  SimResult res = simulate(disc_map(), f, cfg);

  Complex end = res.final_field.tracers[0];
  CHECK(std::abs(end - Complex(0.5, 0.0)) < 1e-6);
  CHECK(res.exited_count == 0);
  // radius is conserved along the way
  for (const auto& s : res.trajectories[1].samples)
    CHECK(std::abs(std::abs(s.z) - 0.5) < 1e-9);
}

TEST_CASE("zero field: step is the identity") {
  VortexField f;
  add_tracer(f, Complex(0.3, -0.2));
  add_tracer(f, Complex(-0.7, 0.1));
  VortexField g = step(disc_map(), f, 0.25);
  CHECK(std::abs(g.tracers[0] - f.tracers[0]) == 0.0);
  CHECK(std::abs(g.tracers[1] - f.tracers[1]) == 0.0);
}

TEST_CASE("single ring is a relative equilibrium: |z| constant to 1e-8") {
  VortexField f;
  const int n = 48;
  const double r0 = 0.35;
  for (int k = 0; k < n; ++k)
    add_point_vortex(f, std::polar(r0, kTwoPi * k / n), 0.5 / n, 0.05);

  SimConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt0 = 5e-3;
  cfg.sample_dt = 0.25;
  SimResult res = simulate(disc_map(), f, cfg);
  for (const auto& p : res.final_field.particles)
    CHECK(std::abs(std::abs(p.z) - r0) < 1e-8);
}

TEST_CASE("circulation sum is conserved exactly and trajectories stay ordered in time") {
  ConformalMap map(validate_domain(square_spec()));
  VortexField f = init_patch(
      map, [](Complex z) { return std::abs(z - Complex(0.25, 0.1)) < 0.25; }, 1.0, 40);
  add_tracer_ring(f, Complex(0.25, 0.1), 0.12, 64);

  double w0 = f.omega_l1;
  SimConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt0 = 0.01;
  cfg.sample_dt = 0.2;
  SimResult res = simulate(map, f, cfg);

  for (const auto& row : res.conservation) {
    CHECK(row.sum_w == w0);  // weights never touched
    CHECK(row.has_ring);
  }
  for (const auto& tr : res.trajectories) {
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
      CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    CHECK(tr.status == Trajectory::Status::alive);
  }
  CHECK(res.max_dt_over_clamp <= 1.0 + 1e-12);
}

TEST_CASE("tracer ring area drifts less than 1e-3 relative per unit time") {
  VortexField f = init_patch(
      disc_map(), [](Complex z) { return std::abs(z) < 0.5; }, 1.0, 32);
  add_tracer_ring(f, Complex(0, 0), 0.3, 64);

  SimConfig cfg;
  cfg.t_end = 10.0;
  cfg.dt0 = 0.01;
  cfg.sample_dt = 1.0;
  SimResult res = simulate(disc_map(), f, cfg);

  double area0 = res.conservation.front().ring_area;
  REQUIRE(area0 > 0.0);
  for (const auto& row : res.conservation) {
    double drift = std::abs(row.ring_area - area0) / area0;
    CHECK(drift <= 1e-3 * std::max(row.t, 1.0));
  }
  for (const auto& tr : res.trajectories) CHECK(tr.status == Trajectory::Status::alive);
}

TEST_CASE("backward then forward returns to the start") {
  ConformalMap map(validate_domain(square_spec()));
  VortexField f = init_patch(
      map, [](Complex z) { return std::abs(z - Complex(-0.2, 0.3)) < 0.2; }, 1.5, 40);

  SimConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt0 = 5e-3;
  cfg.sample_dt = 0.5;
  SimResult fwd = simulate(map, f, cfg);
  SimResult back = backward_simulate(map, fwd.final_field, cfg);

  double max_err = 0.0;
  for (std::size_t k = 0; k < f.particles.size(); ++k)
    max_err = std::max(max_err, std::abs(back.final_field.particles[k].z - f.particles[k].z));
  CHECK(max_err < 1e-6);
}

TEST_CASE("backward orbit of a point-vortex tracer reverses orientation, same radius") {
  VortexField f;
  add_point_vortex(f, Complex(0, 0), kTwoPi);
  add_tracer(f, Complex(0.5, 0.0));
  SimConfig cfg;
  cfg.t_end = 0.2;
  cfg.dt0 = 1e-3;
  SimResult fwd = simulate(disc_map(), f, cfg);
  SimResult back = backward_simulate(disc_map(), f, cfg);
  Complex zf = fwd.final_field.tracers[0];
  Complex zb = back.final_field.tracers[0];
  CHECK(std::abs(std::abs(zf) - 0.5) < 1e-8);
  CHECK(std::abs(std::abs(zb) - 0.5) < 1e-8);
  CHECK(std::arg(zf) == doctest::Approx(-std::arg(zb)).epsilon(1e-9));
}

TEST_CASE("flow map composes: 0 -> 0.3 -> 0.6 equals 0 -> 0.6") {
  VortexField f = init_patch(
      disc_map(), [](Complex z) { return std::abs(z - Complex(0.3, 0.0)) < 0.2; }, 1.0, 32);
  SimConfig half;
  half.t_end = 0.3;
  half.dt0 = 0.01;
  half.sample_dt = 0.3;
  SimConfig full = half;
  full.t_end = 0.6;

  SimResult a = simulate(disc_map(), f, half);
  SimResult b = simulate(disc_map(), a.final_field, half);
  SimResult c = simulate(disc_map(), f, full);

  double max_err = 0.0;
  for (std::size_t k = 0; k < f.particles.size(); ++k)
    max_err =
        std::max(max_err, std::abs(b.final_field.particles[k].z - c.final_field.particles[k].z));
  CHECK(max_err < 1e-7);
}

TEST_CASE("a stage position beyond 1 - exit_tol rejects the step") {
  VortexField f;
  add_point_vortex(f, Complex(0, 0), kTwoPi);
  add_tracer(f, std::polar(1.0 - 5e-11, 0.3));  // already past the exit threshold
  CHECK_THROWS_AS(step(disc_map(), f, 1e-3), ParticleExited);
}

TEST_CASE("a trajectory pinned at the rim is frozen as exited; the run continues") {
  VortexField f;
  add_point_vortex(f, Complex(0, 0), kTwoPi);
  add_tracer(f, Complex(0.5, 0.0));
  add_tracer(f, std::polar(1.0 - 5e-11, 1.0));

  SimConfig cfg;
  cfg.t_end = 0.05;
  cfg.dt0 = 1e-3;
  cfg.sample_dt = 0.05;
  SimResult res = simulate(disc_map(), f, cfg);

  CHECK(res.collapse_events >= 1);
  CHECK(res.exited_count == 1);
  CHECK(res.trajectories[2].status == Trajectory::Status::exited);
  CHECK(res.trajectories[1].status == Trajectory::Status::alive);
  // the healthy tracer still moved
  CHECK(std::abs(res.final_field.tracers[0] - Complex(0.5, 0.0)) > 1e-3);
}

TEST_CASE("polygon area: shoelace on a square") {
  std::vector<Complex> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(sq) == doctest::Approx(1.0));
}
