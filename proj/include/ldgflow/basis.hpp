/**
 * @file basis.hpp
 * @brief Orthonormal modal Legendre bases on reference elements.
 *
 * 1D fields (free surface elevation) use the orthonormal Legendre basis on
 * [-1,1]; fields on quadrilaterals use its tensor product on [-1,1]^2 with
 * (k+1)^2 modes.  Orthonormality is with respect to the reference measure, so
 * mass matrices are diagonal exactly on affinely mapped elements and stay
 * small dense SPD systems on trapezoids.
 *
 * Mode numbering on quads: m = mx*(k+1) + mz with mx the x-degree and mz the
 * z-degree of the tensor factor.
 */
#pragma once

#include "ldgflow/quadrature.hpp"

#include <vector>

namespace ldgflow {

/// Orthonormal Legendre polynomial value, \int_{-1}^1 Pn Pm = delta_nm.
double legendre_ortho(int n, double x);

/// Derivative of the orthonormal Legendre polynomial.
double legendre_ortho_deriv(int n, double x);

/// Values of modes 0..order at a point (out has order+1 entries).
void legendre_ortho_all(int order, double x, double* out);
void legendre_ortho_deriv_all(int order, double x, double* out);

// Local face ids of the reference square, used throughout the mesh layer.
enum LocalFace : int {
    face_left = 0,   // xi = -1, parametrized by eta ascending
    face_right = 1,  // xi = +1, parametrized by eta ascending
    face_bottom = 2, // eta = -1, parametrized by xi ascending
    face_top = 3,    // eta = +1, parametrized by xi ascending
};

/**
 * Precomputed reference-element tables for one polynomial order and one
 * quadrature rule: volume values/derivatives and face traces, stored both
 * point-major (for evaluation) and mode-major (for moment accumulation).
 */
struct BasisTables {
    int order = 0;
    int n_modes_1d = 0; // order+1
    int n_modes = 0;    // (order+1)^2
    QuadRule1D rule;    // 1D rule; volume rule is its tensor square
    int nq1 = 0;
    int nq2 = 0; // nq1*nq1, point index q = qx*nq1 + qz

    // Volume tables, [q * n_modes + m] and transposed [m * nq2 + q].
    std::vector<double> val, dxi, deta;
    std::vector<double> val_t, dxi_t, deta_t;

    // Face trace tables per local face, [q * n_modes + m] / [m * nq1 + q].
    std::vector<double> face_val[4];
    std::vector<double> face_val_t[4];

    // 1D tables for surface fields, [q * n_modes_1d + m] plus endpoint traces.
    std::vector<double> val1d, val1d_t, dx1d, dx1d_t;
    std::vector<double> end_val[2]; // 0: x=-1, 1: x=+1

    BasisTables() = default;
    BasisTables(int order, const QuadRule1D& rule);
};

} // namespace ldgflow
