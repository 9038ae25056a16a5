#pragma once

#include <vector>

namespace euler::quad {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule of order n (Newton iteration on P_n); cached per order.
const GaussRule& gauss_legendre(int n);

}  // namespace euler::quad
