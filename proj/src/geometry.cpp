#include "euler/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "euler/errors.hpp"

namespace euler::geom {

namespace {
constexpr double kWindingTol = 1e-12;
constexpr double kDeltaMax = 0.125;
constexpr double kDeltaResolution = 1e-9;
}  // namespace

// ---------------------------------------------------------------------------
// TwistFunction

double TwistFunction::operator()(double theta) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::linear:
      return coeffs[0] + coeffs[1] * theta;
    case Kind::fourier: {
      double v = coeffs[0] + coeffs[1] * theta;
      int k = 1;
      for (std::size_t i = 2; i + 1 < coeffs.size(); i += 2, ++k)
        v += coeffs[i] * std::cos(k * theta) + coeffs[i + 1] * std::sin(k * theta);
      return v;
    }
  }
  return 0.0;
}

double TwistFunction::constant_term() const {
  return kind == Kind::zero ? 0.0 : coeffs[0];
}

double TwistFunction::slope() const {
  return kind == Kind::zero ? 0.0 : coeffs[1];
}

int TwistFunction::max_harmonic() const {
  if (kind != Kind::fourier) return 0;
  int k = 0;
  for (std::size_t i = 2; i + 1 < coeffs.size(); i += 2) {
    ++k;
    // trailing zero pairs do not count
  }
  while (k > 0) {
    std::size_t i = 2 + 2 * (k - 1);
    if (coeffs[i] != 0.0 || coeffs[i + 1] != 0.0) break;
    --k;
  }
  return k;
}

double TwistFunction::lipschitz_bound() const {
  double L = std::abs(slope());
  if (kind == Kind::fourier) {
    int k = 1;
    for (std::size_t i = 2; i + 1 < coeffs.size(); i += 2, ++k)
      L += k * (std::abs(coeffs[i]) + std::abs(coeffs[i + 1]));
  }
  return L;
}

TwistFunction TwistFunction::zero() { return TwistFunction{Kind::zero, {}}; }

TwistFunction TwistFunction::linear(double c0, double c1) {
  return TwistFunction{Kind::linear, {c0, c1}};
}

TwistFunction TwistFunction::fourier(std::vector<double> coeffs) {
  if (coeffs.size() < 2) coeffs.resize(2, 0.0);
  if (coeffs.size() % 2 != 0) coeffs.push_back(0.0);
  return TwistFunction{Kind::fourier, std::move(coeffs)};
}

// ---------------------------------------------------------------------------
// Validation

static void check_corners(const CornerSet& cs) {
  double prev = 0.0;
  for (const Corner& c : cs.corners) {
    if (!(c.alpha > -1.0 && c.alpha < 1.0) || c.alpha == 0.0)
      throw AngleOutOfRange("corner alpha " + std::to_string(c.alpha) +
                            " not in (-1,1) \\ {0}");
    if (!(c.theta > prev) || c.theta > kTwoPi)
      throw NonmonotoneCorners("corner angles must be strictly increasing in (0, 2pi]");
    prev = c.theta;
  }
}

static void check_twist(const TwistFunction& tw, double kappa) {
  switch (tw.kind) {
    case TwistFunction::Kind::zero:
      if (std::abs(kappa) > kWindingTol)
        throw WindingMismatch("zero twist requires kappa = 0");
      break;
    case TwistFunction::Kind::linear:
      if (tw.coeffs.size() != 2)
        throw AngleOutOfRange("linear twist takes exactly two coefficients");
      if (std::abs(tw.slope() - kappa) > kWindingTol)
        throw WindingMismatch("twist slope must equal kappa for 2pi-periodic extension");
      break;
    case TwistFunction::Kind::fourier:
      if (tw.coeffs.size() < 2 || tw.coeffs.size() % 2 != 0)
        throw AngleOutOfRange("fourier twist coefficients must be {c0, c1, a1, b1, ...}");
      if (std::abs(tw.slope() - kappa) > kWindingTol)
        throw WindingMismatch("twist slope must equal kappa for 2pi-periodic extension");
      break;
  }
}

Domain::Domain(DomainSpec spec, StructuralConstants constants)
    : spec_(std::move(spec)), constants_(std::move(constants)) {
  const auto& cs = spec_.corner_set.corners;
  thetas_.reserve(cs.size());
  prefix_alpha_.assign(1, 0.0);
  prefix_plus_.assign(1, 0.0);
  for (const Corner& c : cs) {
    thetas_.push_back(c.theta);
    prefix_alpha_.push_back(prefix_alpha_.back() + c.alpha);
    prefix_plus_.push_back(prefix_plus_.back() + std::max(c.alpha, 0.0));
  }
  sum_alpha_ = prefix_alpha_.back();
  sum_plus_ = prefix_plus_.back();
}

Domain validate_domain(DomainSpec spec) {
  check_corners(spec.corner_set);
  check_twist(spec.twist, spec.kappa);
  if (!(spec.sprime0 > 0.0))
    throw AngleOutOfRange("sprime0 must be positive");

  double sum_alpha = 0.0;
  double max_plus = 0.0;
  for (const Corner& c : spec.corner_set.corners) {
    sum_alpha += c.alpha;
    max_plus = std::max(max_plus, c.alpha);
  }
  // pi * sum alpha_j = 2 pi (1 - kappa)
  if (std::abs(sum_alpha - 2.0 * (1.0 - spec.kappa)) > kWindingTol)
    throw WindingMismatch("sum of alpha_j = " + std::to_string(sum_alpha) +
                          " but 2(1 - kappa) = " + std::to_string(2.0 * (1.0 - spec.kappa)));

  StructuralConstants sc;
  sc.alpha_star = (1.0 + max_plus) / 2.0;
  sc.alpha_plus.reserve(spec.corner_set.corners.size());
  for (const Corner& c : spec.corner_set.corners)
    sc.alpha_plus.push_back(std::max(c.alpha, 0.0));
  sc.delta = compute_delta(spec);
  return Domain(std::move(spec), std::move(sc));
}

// ---------------------------------------------------------------------------
// beta and friends

// Reduce theta to theta0 in (0, 2pi] plus an integer number of turns.
static void reduce_angle(double theta, double& theta0, double& turns) {
  double n = std::ceil(theta / kTwoPi) - 1.0;
  theta0 = theta - kTwoPi * n;
  // Guard against rounding at the seam.
  if (theta0 <= 0.0) {
    theta0 += kTwoPi;
    n -= 1.0;
  } else if (theta0 > kTwoPi) {
    theta0 -= kTwoPi;
    n += 1.0;
  }
  turns = n;
}

double Domain::beta_c(double theta) const {
  // beta_c(theta + 2pi) = beta_c(theta) + 2 pi kappa holds for the closed
  // forms by construction (slope = kappa, harmonics periodic).
  return spec_.twist(theta);
}

double Domain::beta_d(double theta) const {
  double theta0, turns;
  reduce_angle(theta, theta0, turns);
  auto it = std::upper_bound(thetas_.begin(), thetas_.end(), theta0);
  double base = prefix_alpha_[static_cast<std::size_t>(it - thetas_.begin())];
  return kPi * (base + turns * sum_alpha_);
}

double Domain::beta_d_plus(double theta) const {
  double theta0, turns;
  reduce_angle(theta, theta0, turns);
  auto it = std::upper_bound(thetas_.begin(), thetas_.end(), theta0);
  double base = prefix_plus_[static_cast<std::size_t>(it - thetas_.begin())];
  return kPi * (base + turns * sum_plus_);
}

// ---------------------------------------------------------------------------
// delta

// The window (theta - 3 delta, theta + 3 delta] holds a set of corners iff
// their angular span is < 6 delta, so feasibility reduces to runs of
// consecutive corners (over two periods, for wrap-around).
static bool delta_feasible(const std::vector<Corner>& corners, double alpha_star,
                           double delta) {
  const std::size_t n = corners.size();
  if (n == 0) return true;
  std::vector<double> pos(2 * n), plus(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    pos[j] = corners[j].theta;
    pos[j + n] = corners[j].theta + kTwoPi;
    plus[j] = plus[j + n] = std::max(corners[j].alpha, 0.0);
  }
  const double window = 6.0 * delta;
  std::size_t hi = 0;
  double run = 0.0;
  for (std::size_t lo = 0; lo < n; ++lo) {
    if (hi < lo) {
      hi = lo;
      run = 0.0;
    }
    while (hi < 2 * n && pos[hi] - pos[lo] < window) {
      run += plus[hi];
      ++hi;
    }
    if (run > alpha_star + 1e-15) return false;
    run -= plus[lo];
  }
  return true;
}

double compute_delta(const DomainSpec& spec) {
  const auto& corners = spec.corner_set.corners;
  double max_plus = 0.0;
  for (const Corner& c : corners) max_plus = std::max(max_plus, c.alpha);
  const double alpha_star = (1.0 + max_plus) / 2.0;

  if (delta_feasible(corners, alpha_star, kDeltaMax)) return kDeltaMax;

  double lo = 0.0, hi = kDeltaMax;
  for (int iter = 0; iter < 80 && hi - lo > kDeltaResolution; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (delta_feasible(corners, alpha_star, mid))
      lo = mid;
    else
      hi = mid;
  }
  if (lo <= 0.0)
    throw Error("DeltaNotFound", "no feasible delta above bisection resolution");
  return lo;
}

// ---------------------------------------------------------------------------
// reference domains

DomainSpec disc_spec() {
  DomainSpec s;
  s.twist = TwistFunction::linear(kPi / 2.0, 1.0);
  s.kappa = 1.0;
  s.sprime0 = 1.0;
  return s;
}

DomainSpec square_spec() {
  DomainSpec s;
  s.corner_set.corners = {{kPi / 2.0, 0.5}, {kPi, 0.5}, {3.0 * kPi / 2.0, 0.5}, {kTwoPi, 0.5}};
  s.twist = TwistFunction::zero();
  s.kappa = 0.0;
  s.sprime0 = 1.0;
  return s;
}

DomainSpec lshape_spec() {
  // Five convex right-angle corners and one reentrant corner (interior angle
  // 3pi/2) at theta = pi; preimages equally spaced.
  DomainSpec s;
  s.corner_set.corners = {{kPi / 3.0, 0.5},      {2.0 * kPi / 3.0, 0.5}, {kPi, -0.5},
                          {4.0 * kPi / 3.0, 0.5}, {5.0 * kPi / 3.0, 0.5}, {kTwoPi, 0.5}};
  s.twist = TwistFunction::zero();
  s.kappa = 0.0;
  s.sprime0 = 1.0;
  return s;
}

}  // namespace euler::geom
