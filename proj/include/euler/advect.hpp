#pragma once

#include <vector>

#include "euler/field.hpp"

namespace euler::advect {

struct SimConfig {
  double t_end = 1.0;
  double dt0 = 1e-2;        // initial / maximal step
  double cfl = 0.2;         // dt <= cfl * (1 - |z|)_min / |v|_max, disc side
  double exit_tol = 1e-10;  // exit declared at |z| >= 1 - exit_tol
  double sample_dt = 0.05;  // trajectory / conservation output cadence
  double collapse_dt = 1e-14;
  bool record_q = false;    // log Q along trajectories (adds an O(N^2) pass per sample)
  bool record_x = true;     // log physical positions (one eval_s per sample)
};

struct TrajSample {
  double t = 0.0;
  Complex z;               // disc-side position
  Complex x;               // physical position (if recorded)
  double psi = 0.0;
  double one_minus_abs_z = 0.0;
  double phys_dist_est = 0.0;  // (1 - |z|) |S'(z)|, an estimate, never asserted
  double q = 0.0;              // if recorded
};

struct Trajectory {
  enum class Status { alive, exited };
  int id = 0;
  bool is_tracer = false;
  double start_time = 0.0;
  Complex start_z;
  std::vector<TrajSample> samples;
  // exited covers both the |z| >= 1 - exit_tol crossing and a step-size
  // collapse (the stepper freezing a trajectory it can no longer resolve).
  Status status = Status::alive;
};

struct ConservationRow {
  double t = 0.0;
  double sum_w = 0.0;
  double ring_area = 0.0;  // shoelace area of the marked tracer ring
  bool has_ring = false;
  double min_gap = 0.0;           // min over entities of 1 - |z|
  double min_phys_dist_est = 0.0; // (1-|z|)|S'(z)| at the argmin entity
};

struct SimResult {
  field::VortexField final_field;
  std::vector<Trajectory> trajectories;  // particles first, then tracers
  std::vector<ConservationRow> conservation;
  int exited_count = 0;
  int collapse_events = 0;
  double max_dt_over_clamp = 0.0;  // diagnostic: max of dt / (cfl * gap / vmax)
};

// One classical RK4 step of the full coupled system (particles and tracers
// together); stage velocities are evaluated against the staged positions of
// all particles with the weights frozen.  Throws ParticleExited if any stage
// position reaches |z| >= 1 - exit_tol; the step is then rejected.
field::VortexField step(const conf::ConformalMap& map, const field::VortexField& f,
                        double dt, double exit_tol = 1e-10);

SimResult simulate(const conf::ConformalMap& map, const field::VortexField& f0,
                   const SimConfig& cfg);

// Time-reversed integration (u -> -u).
SimResult backward_simulate(const conf::ConformalMap& map, const field::VortexField& f0,
                            const SimConfig& cfg);

// Shoelace area of a closed polygon.
double polygon_area(const std::vector<Complex>& pts);

}  // namespace euler::advect
