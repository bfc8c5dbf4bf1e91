/// @file quadrature.hpp
/// @brief Gauss-Legendre rules on the reference interval [-1,1].
#pragma once

#include <vector>

namespace ldgflow {

struct QuadRule1D {
    std::vector<double> points;  // ascending in (-1,1)
    std::vector<double> weights; // positive, sum to 2
    int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule (exact through degree 2n-1).
QuadRule1D gauss_legendre(int n);

/// Smallest Gauss rule exact for polynomials of the given degree.
QuadRule1D gauss_for_degree(int degree);

} // namespace ldgflow
