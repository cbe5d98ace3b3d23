#pragma once

#include <vector>

namespace nanoantenna::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Nodes ascend.
Rule gauss_legendre(int n);

}  // namespace nanoantenna::quadrature
