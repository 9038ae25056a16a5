#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace euler {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Evaluations refuse points closer to the unit circle than this: the disc
// kernels 1/(e^{i theta} - z) lose all accuracy beyond it.
inline constexpr double kRimGap = 1e-14;

inline double abs2(Complex v) { return v.real() * v.real() + v.imag() * v.imag(); }

// v^perp = (-v2, v1), i.e. multiplication by i.
inline Complex perp(Complex v) { return Complex(-v.imag(), v.real()); }

// z* = z/|z|^2, inversion across the unit circle.  Callers handle z = 0
// (the image term is dropped or the kernel replaced, depending on call site).
inline Complex circle_image(Complex z) { return z / abs2(z); }

// A point strictly inside the unit disc.  The constructor is the API
// boundary that enforces |z| <= 1 - kRimGap.
struct DiskPoint {
  Complex z;
  DiskPoint(Complex value) : z(value) {
    if (std::abs(value) > 1.0 - kRimGap)
      throw std::invalid_argument("DiskPoint: |z| exceeds 1 - 1e-14");
  }
  DiskPoint(double re, double im) : DiskPoint(Complex(re, im)) {}
  operator Complex() const { return z; }
};

// A point of the physical domain Omega (no constraint; membership is the
// caller's responsibility and is detected by inversion failure).
struct PhysicalPoint {
  Complex x;
  PhysicalPoint(Complex value) : x(value) {}
  PhysicalPoint(double re, double im) : x(re, im) {}
  operator Complex() const { return x; }
};

// 2x2 real matrix, row major.
struct Mat2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

  Complex apply(Complex v) const {
    return Complex(a11 * v.real() + a12 * v.imag(), a21 * v.real() + a22 * v.imag());
  }
  Complex apply_transpose(Complex v) const {
    return Complex(a11 * v.real() + a21 * v.imag(), a12 * v.real() + a22 * v.imag());
  }
  double det() const { return a11 * a22 - a12 * a21; }
};

// Compensated (Kahan) accumulator; particle sums use a fixed order plus
// compensation so results are reproducible across runs.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct KahanComplex {
  KahanSum re, im;
  void add(Complex v) {
    re.add(v.real());
    im.add(v.imag());
  }
  Complex value() const { return Complex(re.value(), im.value()); }
};

}  // namespace euler
