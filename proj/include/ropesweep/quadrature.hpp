#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ropesweep {

struct QuadratureRule {
    std::vector<double> nodes;    ///< on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n), cached per n.
const QuadratureRule& gauss_legendre(std::size_t n);

double integrate_fixed(const std::function<double(double)>& f, double lo, double hi, const QuadratureRule& rule);

}  // namespace ropesweep
