#include "euler/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "euler/errors.hpp"
#include "euler/quadrature.hpp"

namespace euler::conf {

namespace {
constexpr double kQuadTol = 1e-8;
constexpr int kMaxPathDepth = 58;
constexpr int kNewtonCap = 100;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}
}  // namespace

ConformalMap::ConformalMap(geom::Domain domain, int quad_order, Complex anchor)
    : domain_(std::move(domain)), half_nodes_(std::max(quad_order, 16)), anchor_(anchor) {
  if (half_nodes_ % 2 != 0) ++half_nodes_;

  const auto& corners = domain_.spec().corner_set.corners;
  corner_theta_.reserve(corners.size());
  corner_alpha_.reserve(corners.size());
  corner_unit_.reserve(corners.size());
  for (const auto& c : corners) {
    corner_theta_.push_back(c.theta);
    corner_alpha_.push_back(c.alpha);
    corner_unit_.push_back(std::polar(1.0, c.theta));
  }

  quad_free_ = domain_.spec().twist.max_harmonic() == 0;
  c0_ = domain_.spec().twist.constant_term();
  if (!quad_free_) {
    const int m = 2 * half_nodes_;
    node_theta_.resize(m);
    node_unit_.resize(m);
    node_g_.resize(m);
    const double kappa = domain_.kappa();
    for (int i = 0; i < m; ++i) {
      double th = kTwoPi * i / m;
      node_theta_[i] = th;
      node_unit_[i] = std::polar(1.0, th);
      node_g_[i] = domain_.beta_c(th) - kappa * th - c0_;
    }
  }

  build_inverse_grid();
}

// ---------------------------------------------------------------------------
// corner factors (closed form, principal branch)

Complex ConformalMap::corner_product_log(Complex z) const {
  Complex sum(0, 0);
  for (std::size_t j = 0; j < corner_alpha_.size(); ++j)
    sum -= corner_alpha_[j] * std::log(1.0 - z * std::conj(corner_unit_[j]));
  return sum;
}

double ConformalMap::corner_abs_log(Complex z) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < corner_alpha_.size(); ++j)
    sum -= corner_alpha_[j] * std::log(abs2(z - corner_unit_[j]));
  return sum;
}

// ---------------------------------------------------------------------------
// continuous-twist boundary integrals, periodic trapezoid with node doubling

// Both integrals are computed with g shifted by its value at arg(z): the
// shift is exact (the Schwarz kernel integrates a constant to 2*pi*c, pulled
// out as the phase e^{ic}; the Im kernel integrates it to zero) and removes
// the large constant under the kernel peak near theta = arg(z).
void ConformalMap::twist_integrals(Complex z, Complex* schwarz, double* im_part,
                                   double* schwarz_est, double* im_est) const {
  const int m = 2 * half_nodes_;
  const double kappa = domain_.kappa();
  double cz = 0.0;
  if (z != Complex(0, 0)) {
    double th = std::arg(z);
    cz = domain_.beta_c(th) - kappa * th - c0_;
  }

  KahanComplex sch_half, sch_full;
  KahanSum im_half, im_full;
  for (int i = 0; i < m; ++i) {
    Complex e = node_unit_[i];
    double g = node_g_[i] - cz;
    Complex frac = z / (e - z);
    Complex k_schwarz = 1.0 + 2.0 * frac;   // (e + z)/(e - z)
    Complex sterm = k_schwarz * g;
    double iterm = frac.imag() * g;
    sch_full.add(sterm);
    im_full.add(iterm);
    if (i % 2 == 0) {
      sch_half.add(sterm);
      im_half.add(iterm);
    }
  }

  // trapezoid weights: (i/2pi) * (2pi/M) = i/M and -(2/pi) * (2pi/M) = -4/M
  const Complex i_unit(0, 1);
  Complex sch_n = i_unit * sch_half.value() / static_cast<double>(half_nodes_);
  Complex sch_2n = i_unit * sch_full.value() / static_cast<double>(m);
  double d_n = -4.0 * im_half.value() / half_nodes_;
  double d_2n = -4.0 * im_full.value() / m;

  if (schwarz) *schwarz = sch_2n + i_unit * cz;
  if (schwarz_est) *schwarz_est = std::abs(sch_2n - sch_n);
  if (im_part) *im_part = d_2n;
  if (im_est) *im_est = std::abs(d_2n - d_n);
}

// ---------------------------------------------------------------------------
// S', det DS

Complex ConformalMap::sprime(DiskPoint zp) const {
  Complex z = zp.z;
  Complex log_val = corner_product_log(z);
  if (!quad_free_) {
    Complex sch;
    double est = 0.0;
    twist_integrals(z, &sch, nullptr, &est, nullptr);
    if (est > kQuadTol)
      throw QuadratureUnderresolved("sprime twist integral: node-doubling estimate " +
                                    sci(est) + " at |z| = " +
                                    sci(std::abs(z)));
    log_val += sch;
  }
  return domain_.sprime0() * std::exp(log_val);
}

double ConformalMap::det_ds(DiskPoint zp) const {
  Complex z = zp.z;
  double exponent = corner_abs_log(z);
  if (!quad_free_) {
    double d = 0.0, est = 0.0;
    twist_integrals(z, nullptr, &d, nullptr, &est);
    if (est > kQuadTol)
      throw QuadratureUnderresolved("det_ds twist integral: node-doubling estimate " +
                                    sci(est) + " at |z| = " +
                                    sci(std::abs(z)));
    exponent += d;
  }
  double s0 = domain_.sprime0();
  return s0 * s0 * std::exp(exponent);
}

// ---------------------------------------------------------------------------
// S by path quadrature along the ray from 0

// 15-point Gauss on t in [a,b] of S'(t z) z.
static Complex gauss_segment(const ConformalMap& map, Complex z, double a, double b) {
  const auto& rule = quad::gauss_legendre(15);
  Complex acc(0, 0);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    double t = mid + half * rule.x[i];
    acc += rule.w[i] * map.sprime(t * z);
  }
  return acc * half * z;
}

Complex ConformalMap::eval_s_segment(Complex z, double a, double b, int depth,
                                     double tol) const {
  Complex whole = gauss_segment(*this, z, a, b);
  double mid = 0.5 * (a + b);
  Complex left = gauss_segment(*this, z, a, mid);
  Complex right = gauss_segment(*this, z, mid, b);
  Complex refined = left + right;
  if (std::abs(refined - whole) <= tol * (b - a) || depth >= kMaxPathDepth) {
    if (depth >= kMaxPathDepth && std::abs(refined - whole) > tol * (b - a))
      throw QuadratureUnderresolved("eval_s path quadrature stalled near t in [" +
                                    std::to_string(a) + ", " + std::to_string(b) + "]");
    return refined;
  }
  return eval_s_segment(z, a, mid, depth + 1, tol) +
         eval_s_segment(z, mid, b, depth + 1, tol);
}

Complex ConformalMap::eval_s(DiskPoint zp) const {
  Complex z = zp.z;
  if (z == Complex(0, 0)) return anchor_;
  Complex coarse = gauss_segment(*this, z, 0.0, 1.0);
  double scale = std::max({std::abs(coarse), std::abs(z) * domain_.sprime0(), 1e-30});
  return anchor_ + eval_s_segment(z, 0.0, 1.0, 0, 1e-8 * scale);
}

// ---------------------------------------------------------------------------
// Newton inversion

void ConformalMap::build_inverse_grid() {
  const double radii[] = {0.15, 0.35, 0.55, 0.75, 0.9};
  const int n_ang = 48;
  grid_z_.push_back(Complex(0, 0));
  grid_s_.push_back(anchor_);
  for (double r : radii)
    for (int a = 0; a < n_ang; ++a) {
      Complex z = std::polar(r, kTwoPi * (a + 0.5) / n_ang);
      grid_z_.push_back(z);
      grid_s_.push_back(eval_s(z));
    }
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (Complex s : grid_s_) {
    xlo = std::min(xlo, s.real());
    xhi = std::max(xhi, s.real());
    ylo = std::min(ylo, s.imag());
    yhi = std::max(yhi, s.imag());
  }
  diameter_ = std::max(std::hypot(xhi - xlo, yhi - ylo), 1e-12);
}

Complex ConformalMap::eval_t(PhysicalPoint xp) const {
  const Complex x = xp.x;
  const double tol = 1e-12 * diameter_;

  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < grid_s_.size(); ++i) {
    double d = abs2(grid_s_[i] - x);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  Complex zeta = grid_z_[best];
  double res = std::abs(eval_s(zeta) - x);

  for (int iter = 0; iter < kNewtonCap; ++iter) {
    if (res <= tol) return zeta;
    Complex dstep = (eval_s(zeta) - x) / sprime(zeta);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      Complex cand = zeta - lambda * dstep;
      if (std::abs(cand) >= 1.0 - 1e-13) {
        lambda *= 0.5;
        continue;
      }
      double cand_res = std::abs(eval_s(cand) - x);
      if (cand_res < res) {
        zeta = cand;
        res = cand_res;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw InversionDiverged("Newton stagnated at residual " + std::to_string(res) +
                              "; point outside the image or too near a corner");
  }
  throw InversionDiverged("Newton iteration cap reached at residual " + std::to_string(res));
}

Mat2 ConformalMap::dt_matrix_at_disc(DiskPoint z) const {
  Complex tp = 1.0 / sprime(z);
  return Mat2{tp.real(), -tp.imag(), tp.imag(), tp.real()};
}

Mat2 ConformalMap::dt_matrix(PhysicalPoint x) const {
  return dt_matrix_at_disc(eval_t(x));
}

// ---------------------------------------------------------------------------
// Dini-integral diagnostic

double ConformalMap::dini_integral_sup(int sample_count) const {
  if (quad_free_) return 0.0;  // integrand reduces to a constant; exact zero
  const int n_ang = 16;
  const int n_rad = std::max(1, sample_count / n_ang);
  double sup = 0.0;
  for (int i = 0; i < n_rad; ++i) {
    double f = n_rad == 1 ? 0.0 : static_cast<double>(i) / (n_rad - 1);
    double gap = std::pow(10.0, -1.0 - 5.0 * f);  // 1e-1 down to 1e-6
    double r = 1.0 - gap;
    for (int a = 0; a < n_ang; ++a) {
      Complex z = std::polar(r, kTwoPi * (a + 0.618 * (i + 1)) / n_ang);
      double d = 0.0;
      twist_integrals(z, nullptr, &d, nullptr, nullptr);
      // im_part = -(2/pi) * integral, so |integral| = (pi/2) |im_part|
      sup = std::max(sup, 0.5 * kPi * std::abs(d));
    }
  }
  return sup;
}

}  // namespace euler::conf
