#include "euler/field.hpp"

#include <algorithm>
#include <cmath>

#include "euler/errors.hpp"

namespace euler::field {

namespace {
constexpr double kPatchRim = 1e-6;  // particles stay within |z| <= 1 - 1e-6
}

// ---------------------------------------------------------------------------
// construction

static VortexField init_patch_impl(const conf::ConformalMap& map,
                                   const std::function<bool(Complex)>& region,
                                   const std::function<double(Complex)>* omega0_phys,
                                   double omega0_const, int resolution) {
  if (resolution < 2) throw ResolutionTooCoarse("resolution must be at least 2");
  VortexField f;
  const double h = 2.0 / resolution;
  const double cell = h * h;
  KahanSum l1;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      Complex z(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h);
      if (std::abs(z) > 1.0 - kPatchRim) continue;
      if (!region(z)) continue;
      double w0 = omega0_phys ? (*omega0_phys)(map.eval_s(z)) : omega0_const;
      double w = w0 * map.det_ds(z) * cell;
      f.particles.push_back({z, w, h});
      f.omega_inf = std::max(f.omega_inf, std::abs(w0));
      if (w0 < 0.0) f.nonnegative = false;
      l1.add(w);
    }
  }
  if (f.particles.size() < 4)
    throw ResolutionTooCoarse("patch produced only " + std::to_string(f.particles.size()) +
                              " particles");
  f.omega_l1 = l1.value();
  return f;
}

VortexField init_patch(const conf::ConformalMap& map,
                       const std::function<bool(Complex)>& region,
                       const std::function<double(Complex)>& omega0_phys, int resolution) {
  return init_patch_impl(map, region, &omega0_phys, 0.0, resolution);
}

VortexField init_patch(const conf::ConformalMap& map,
                       const std::function<bool(Complex)>& region, double omega0,
                       int resolution) {
  return init_patch_impl(map, region, nullptr, omega0, resolution);
}

static void refresh_l1(VortexField& f) {
  KahanSum l1;
  for (const Particle& p : f.particles) l1.add(p.w);
  f.omega_l1 = l1.value();
}

VortexField merge(const VortexField& a, const VortexField& b) {
  VortexField f = a;
  f.particles.insert(f.particles.end(), b.particles.begin(), b.particles.end());
  if (f.ring_offset < 0 && b.ring_offset >= 0) {
    f.ring_offset = static_cast<int>(f.tracers.size()) + b.ring_offset;
    f.ring_count = b.ring_count;
  }
  f.tracers.insert(f.tracers.end(), b.tracers.begin(), b.tracers.end());
  f.omega_inf = std::max(a.omega_inf, b.omega_inf);
  f.nonnegative = a.nonnegative && b.nonnegative;
  refresh_l1(f);
  return f;
}

void add_point_vortex(VortexField& f, Complex z, double w, double eps) {
  f.particles.push_back({z, w, eps});
  if (w < 0.0) f.nonnegative = false;
  if (eps > 0.0) f.omega_inf = std::max(f.omega_inf, std::abs(w) / (kPi * eps * eps));
  refresh_l1(f);
}

void add_tracer(VortexField& f, Complex z) { f.tracers.push_back(z); }

void add_tracer_ring(VortexField& f, Complex center, double radius, int count) {
  f.ring_offset = static_cast<int>(f.tracers.size());
  f.ring_count = count;
  for (int k = 0; k < count; ++k)
    f.tracers.push_back(center + std::polar(radius, kTwoPi * k / count));
}

// ---------------------------------------------------------------------------
// stream function

double stream_disc(const VortexField& f, DiskPoint xip) {
  const Complex xi = xip.z;
  const double one_m_xi2 = 1.0 - abs2(xi);
  KahanSum acc;
  for (const Particle& p : f.particles) {
    double log_arg;  // ln(|xi - z|_eps / (|xi - z*| |z|))
    if (p.z == Complex(0, 0)) {
      log_arg = std::log(std::max(std::abs(xi), p.eps));  // denominator limit is 1
    } else {
      double denom2 = abs2(xi - circle_image(p.z)) * abs2(p.z);
      double d = std::abs(xi - p.z);
      if (d >= p.eps) {
        // |xi-z|^2 = denom2 - (1-|xi|^2)(1-|z|^2) exactly; log1p keeps the
        // near-rim cancellation accurate.
        log_arg = 0.5 * std::log1p(-one_m_xi2 * (1.0 - abs2(p.z)) / denom2);
      } else {
        log_arg = std::log(p.eps) - 0.5 * std::log(denom2);
      }
    }
    acc.add(p.w * log_arg);
  }
  return -acc.value() / kTwoPi;
}

double stream(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x) {
  return stream_disc(f, map.eval_t(x));
}

// ---------------------------------------------------------------------------
// R, velocity, Q

Complex r_field(const VortexField& f, DiskPoint xip) {
  const Complex xi = xip.z;
  KahanComplex acc;
  for (const Particle& p : f.particles) {
    Complex direct = (xi - p.z) / (abs2(xi - p.z) + p.eps * p.eps);
    Complex img(0, 0);
    if (p.z != Complex(0, 0)) {
      Complex dzs = xi - circle_image(p.z);
      img = dzs / abs2(dzs);
    }
    acc.add(p.w * perp(direct - img));
  }
  return acc.value();
}

Complex velocity_disc(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi) {
  // u = (1/2pi) DT^T R with DT^T v = conj(T') v and T' = 1/S'.
  Complex sp = map.sprime(xi);
  return r_field(f, xi) / (kTwoPi * std::conj(sp));
}

Complex velocity(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x) {
  return velocity_disc(map, f, map.eval_t(x));
}

Complex disc_velocity(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi) {
  return r_field(f, xi) / (kTwoPi * map.det_ds(xi));
}

std::vector<Complex> particle_disc_velocities(const conf::ConformalMap& map,
                                              const VortexField& f) {
  std::vector<Complex> v(f.particles.size());
  for (std::size_t k = 0; k < f.particles.size(); ++k)
    v[k] = disc_velocity(map, f, f.particles[k].z);
  return v;
}

// K(xi, z) with the blob-regularized direct part; xi = 0 uses z/|z|^2.
static Complex q_kernel(Complex xi, Complex z, double eps) {
  if (xi == Complex(0, 0)) {
    if (z == Complex(0, 0)) return Complex(0, 0);
    return z / abs2(z);
  }
  Complex direct = (z - xi) / (abs2(z - xi) + eps * eps);
  Complex dimg = z - circle_image(xi);
  return direct - dimg / abs2(dimg);
}

double q_field_disc(const VortexField& f, const std::vector<Complex>& v, DiskPoint xip) {
  const Complex xi = xip.z;
  KahanSum acc;
  for (std::size_t k = 0; k < f.particles.size(); ++k) {
    const Particle& p = f.particles[k];
    Complex kk = q_kernel(xi, p.z, p.eps);
    // K . (DT(x_k) u_k); DT(x_k) u_k equals the disc-side velocity v_k
    acc.add(p.w * (kk.real() * v[k].real() + kk.imag() * v[k].imag()));
  }
  return acc.value();
}

double q_field_disc(const conf::ConformalMap& map, const VortexField& f, DiskPoint xi) {
  return q_field_disc(f, particle_disc_velocities(map, f), xi);
}

double q_field(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x) {
  return q_field_disc(map, f, map.eval_t(x));
}

FieldSample sample(const conf::ConformalMap& map, const VortexField& f, PhysicalPoint x) {
  FieldSample s;
  Complex xi = map.eval_t(x);
  s.psi = stream_disc(f, xi);
  s.r_vec = r_field(f, xi);
  s.u = velocity_disc(map, f, xi);
  s.q = q_field_disc(map, f, xi);
  return s;
}

}  // namespace euler::field
