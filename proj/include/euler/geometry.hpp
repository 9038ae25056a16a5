#pragma once

#include <string>
#include <vector>

#include "euler/types.hpp"

namespace euler::geom {

// One boundary corner, disc side: the preimage angle theta in (0, 2pi] and
// the turning fraction alpha in (-1,1)\{0}.  The interior angle of the
// physical corner at S(e^{i theta}) is pi - pi*alpha.
struct Corner {
  double theta = 0.0;
  double alpha = 0.0;
};

struct CornerSet {
  std::vector<Corner> corners;  // strictly increasing theta
};

// Continuous part beta_c of the boundary tangent argument, restricted to
// closed forms so it is trivially Dini continuous:
//   zero     ->  0                         (requires kappa = 0)
//   linear   ->  c0 + c1*theta             (requires c1 = kappa)
//   fourier  ->  c0 + c1*theta + sum_k (a_k cos k theta + b_k sin k theta),
//               coeffs = {c0, c1, a1, b1, a2, b2, ...}  (c1 = kappa)
struct TwistFunction {
  enum class Kind { zero, linear, fourier };

  Kind kind = Kind::zero;
  std::vector<double> coeffs;

  double operator()(double theta) const;
  double constant_term() const;  // c0
  double slope() const;          // c1
  int max_harmonic() const;      // 0 for zero/linear

  // Reporting-only modulus of continuity: m(r) = L*r with L a Lipschitz
  // bound of the closed form.
  double lipschitz_bound() const;
  double modulus(double r) const { return lipschitz_bound() * r; }

  static TwistFunction zero();
  static TwistFunction linear(double c0, double c1);
  static TwistFunction fourier(std::vector<double> coeffs);
};

// Raw disc-side description of the boundary of Omega.
struct DomainSpec {
  CornerSet corner_set;
  TwistFunction twist;
  double kappa = 0.0;    // winding split: beta_c(theta+2pi) = beta_c(theta) + 2 pi kappa
  double sprime0 = 1.0;  // |S'(0)| > 0
};

// Derived structural constants: alpha_* = (1 + max alpha_j^+)/2 and the
// largest delta in (0, 1/8] such that every 6*delta window of beta_d^+
// increases by at most pi*alpha_*.
struct StructuralConstants {
  double alpha_star = 0.5;
  double delta = 0.125;
  std::vector<double> alpha_plus;
};

// A validated DomainSpec plus its structural constants and prefix sums.
// All accessors are pure; safe for unrestricted concurrent use.
class Domain {
 public:
  const DomainSpec& spec() const { return spec_; }
  const StructuralConstants& constants() const { return constants_; }
  double alpha_star() const { return constants_.alpha_star; }
  double delta() const { return constants_.delta; }
  double kappa() const { return spec_.kappa; }
  double sprime0() const { return spec_.sprime0; }
  std::size_t corner_count() const { return spec_.corner_set.corners.size(); }

  double beta_c(double theta) const;
  double beta_d(double theta) const;       // pi * sum_{theta_j <= theta} alpha_j, extended
  double beta_d_plus(double theta) const;  // same with alpha_j^+
  double beta(double theta) const { return beta_c(theta) + beta_d(theta); }

 private:
  friend Domain validate_domain(DomainSpec spec);
  Domain(DomainSpec spec, StructuralConstants constants);

  DomainSpec spec_;
  StructuralConstants constants_;
  std::vector<double> thetas_;        // corner angles
  std::vector<double> prefix_alpha_;  // prefix_alpha_[j] = sum of alpha over first j corners
  std::vector<double> prefix_plus_;
  double sum_alpha_ = 0.0;
  double sum_plus_ = 0.0;
};

// Checks all DomainSpec invariants and computes the structural constants.
// Throws AngleOutOfRange, NonmonotoneCorners, WindingMismatch.
Domain validate_domain(DomainSpec spec);

// Largest delta <= 1/8 satisfying the 6*delta-window condition, found by
// scan + bisection at resolution 1e-9.  Existence is structural: windows
// shrink to single corners and pi*alpha_j^+ <= pi*alpha_* for each j.
double compute_delta(const DomainSpec& spec);

// Reference domains used throughout the tests and the CLI presets.
DomainSpec disc_spec();     // no corners, beta_c = theta + pi/2, kappa = 1
DomainSpec square_spec();   // four alpha = 1/2 corners at pi/2, pi, 3pi/2, 2pi
DomainSpec lshape_spec();   // five alpha = 1/2 corners and one reentrant alpha = -1/2

}  // namespace euler::geom
