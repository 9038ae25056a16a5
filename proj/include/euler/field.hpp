#pragma once

#include <functional>
#include <vector>

#include "euler/conformal.hpp"
#include "euler/types.hpp"

namespace euler::field {

// One vortex blob: disc-side position, circulation weight w (omega_0 times
// the physical cell measure, i.e. the disc-side measure of omega dy), and
// blob radius eps in the disc metric.  eps = 0 is a point vortex.
struct Particle {
  Complex z;
  double w = 0.0;
  double eps = 0.0;
};

// Immutable snapshot of the Lagrangian vorticity field plus zero-weight
// tracer probes.  Treated as a value; the advection module returns new
// snapshots instead of mutating.
struct VortexField {
  std::vector<Particle> particles;
  std::vector<Complex> tracers;
  int ring_offset = -1;  // first tracer of the marked diagnostic ring, -1 if none
  int ring_count = 0;
  double omega_inf = 0.0;  // cached ||omega||_inf estimate from initial values
  double omega_l1 = 0.0;   // sum of w (bookkeeping identity)
  bool nonnegative = true;
};

struct FieldSample {
  double psi = 0.0;
  Complex u;      // physical velocity
  Complex r_vec;  // R(xi)
  double q = 0.0; // Q = -2pi * dPsi/dt
};

// Midpoint-rule particle discretization of omega_0 over a disc-side region:
// particles on a uniform grid restricted to the region, w = omega0(S(z)) *
// det DS(z) * cell_area, blob radius = grid spacing.  Throws
// ResolutionTooCoarse below 4 particles.
VortexField init_patch(const conf::ConformalMap& map,
                       const std::function<bool(Complex)>& region,
                       const std::function<double(Complex)>& omega0_phys, int resolution);

// Same with constant omega_0 (skips evaluating S at every grid point).
VortexField init_patch(const conf::ConformalMap& map,
                       const std::function<bool(Complex)>& region, double omega0,
                       int resolution);

VortexField merge(const VortexField& a, const VortexField& b);

void add_point_vortex(VortexField& f, Complex z, double w, double eps = 0.0);
void add_tracer(VortexField& f, Complex z);
// Marks the ring used for the area-conservation diagnostic.
void add_tracer_ring(VortexField& f, Complex center, double radius, int count);

// Stream function at a disc point: -(1/2pi) sum_k w_k ln(|xi-z|_eps /
// (|xi-z*||z|)), the log argument evaluated through the algebraic identity
// |xi-z|^2/(|xi-z*|^2|z|^2) = 1 - (1-|xi|^2)(1-|z|^2)/(|xi-z*|^2|z|^2) so
// near-rim values keep full relative accuracy.
double stream_disc(const VortexField& f, DiskPoint xi);
double stream(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x);

// R(xi) = sum_k w_k ((xi-z)/(|xi-z|^2 + eps^2) - (xi-z*)/|xi-z*|^2)^perp;
// the direct kernel is blob-regularized, the image kernel exact, and the
// z = 0 particle drops its image term.
Complex r_field(const VortexField& f, DiskPoint xi);

// u = (1/2pi) DT(x)^T R(T(x)).
Complex velocity(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x);
// u at the physical point S(xi), no inversion.
Complex velocity_disc(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi);
// dz/dt of a disc-side trajectory: R(xi) / (2pi det DS(xi)).
Complex disc_velocity(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi);

// Disc-side velocities of all particles (self direct term vanishes, image
// self-interaction kept).  Used by Q and by the stepper.
std::vector<Complex> particle_disc_velocities(const conf::ConformalMap& map,
                                              const VortexField& f);

// Q(xi) = -2pi * dPsi/dt = sum_k w_k K(xi, z_k) . (DT(x_k) u_k) with
// K(xi,z) = (z-xi)/(|z-xi|^2 + eps^2) - (z-xi*)/|z-xi*|^2 and the xi = 0
// kernel replaced by z/|z|^2.
double q_field_disc(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi);
double q_field(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x);
// Same but with the particle velocities precomputed (one O(N^2) pass shared
// across many evaluation points).
double q_field_disc(const VortexField& f, const std::vector<Complex>& disc_velocities,
                    DiskPoint xi);

FieldSample sample(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x);

}  // namespace euler::field
