#pragma once

#include <vector>

#include "euler/geometry.hpp"
#include "euler/types.hpp"

namespace euler::conf {

// Evaluator for the Riemann map S: D -> Omega determined by the disc-side
// boundary data, its complex derivative S', the Jacobian det DS (two
// independent evaluation paths), and the numerical inverse T = S^{-1}.
//
// S' splits into a closed-form corner product and a boundary integral of the
// continuous twist:
//
//   S'(z) = |S'(0)| * prod_j (1 - z e^{-i theta_j})^{-alpha_j}
//           * exp( (i/2pi) int_0^{2pi} (e^{it}+z)/(e^{it}-z) g(t) dt ),
//
// with g = beta_c - kappa*theta - c0 the mean-zero continuous part.  The
// rotation is fixed so that S'(0) = |S'(0)| is real positive.  The integral
// is evaluated with the periodic trapezoid rule; the value of g at arg(z) is
// subtracted first (a constant shift is exact for both kernels) which keeps
// the rule accurate where the kernel concentrates.  A node-doubling
// comparison estimates the quadrature error and evaluations throw
// QuadratureUnderresolved above 1e-8.
//
// Immutable after construction; all evaluations are pure.
class ConformalMap {
 public:
  explicit ConformalMap(geom::Domain domain, int quad_order = 1024, Complex anchor = Complex(0, 0));

  const geom::Domain& domain() const { return domain_; }
  int quad_order() const { return half_nodes_; }
  Complex anchor() const { return anchor_; }

  // Complex derivative S'(z).
  Complex sprime(DiskPoint z) const;

  // det DS(z) > 0 via the corner-product formula; det DS(0) = |S'(0)|^2.
  double det_ds(DiskPoint z) const;

  // S(z) = anchor + int_0^1 S'(t z) z dt by adaptive composite Gauss
  // quadrature along the ray, relative error <= 1e-8.
  Complex eval_s(DiskPoint z) const;

  // Newton inversion of S with a coarse-grid initial guess; converged when
  // |S(zeta) - x| <= 1e-12 * diam(Omega).  Throws InversionDiverged.
  Complex eval_t(PhysicalPoint x) const;

  // DT at the physical point x, built from T'(x) = 1/S'(T(x)).
  Mat2 dt_matrix(PhysicalPoint x) const;

  // DT at x = S(z) without inversion.
  Mat2 dt_matrix_at_disc(DiskPoint z) const;

  // Empirical sup over sample_count points (1-|z| log-spaced down to 1e-6)
  // of |int Im(z/(e^{it}-z)) (beta_c(t) - kappa t) dt|; finiteness diagnostic.
  double dini_integral_sup(int sample_count) const;

  double diameter_estimate() const { return diameter_; }

  static Complex image(Complex z) { return circle_image(z); }

 private:
  Complex corner_product_log(Complex z) const;  // sum_j -alpha_j Log(1 - z e^{-i theta_j})
  double corner_abs_log(Complex z) const;       // sum_j -2 alpha_j ln|z - e^{i theta_j}|
  void twist_integrals(Complex z, Complex* schwarz, double* im_part, double* schwarz_est,
                       double* im_est) const;
  Complex eval_s_segment(Complex z, double a, double b, int depth, double tol) const;
  void build_inverse_grid();

  geom::Domain domain_;
  int half_nodes_;  // quadrature order N; cache holds 2N nodes for doubling
  Complex anchor_;
  bool quad_free_ = true;  // twist has no harmonics: boundary integral is identically zero

  std::vector<double> corner_theta_;
  std::vector<double> corner_alpha_;
  std::vector<Complex> corner_unit_;  // e^{i theta_j}

  std::vector<double> node_theta_;  // 2N nodes
  std::vector<Complex> node_unit_;
  std::vector<double> node_g_;      // beta_c - kappa*theta - c0 at nodes
  double c0_ = 0.0;

  std::vector<Complex> grid_z_;  // inverse-grid preimages
  std::vector<Complex> grid_s_;  // and their images
  double diameter_ = 1.0;
};

}  // namespace euler::conf
