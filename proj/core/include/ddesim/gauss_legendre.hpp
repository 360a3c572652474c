#pragma once

#include <vector>

namespace ddesim {

struct QuadratureRule {
    std::vector<double> nodes;    // ascending, inside (-1, 1)
    std::vector<double> weights;  // positive, sum to 2
};

// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on P_n.
QuadratureRule gauss_legendre(int n);

}  // namespace ddesim
