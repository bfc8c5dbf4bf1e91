/**
 * @file kernels.hpp
 * @brief Low-level dense kernels used by the DG assembly inner loops.
 *
 * All heavy per-element work (evaluating modal expansions at quadrature
 * points, accumulating moments against test functions, weighted reductions)
 * reduces to small dense matrix-vector products and fused dot products.
 * Scalar reference implementations are always available; an AVX2/FMA variant
 * is selected at runtime when the CPU supports it.  Both variants are kept
 * equivalence-tested, and the active one can be forced via the environment
 * variable LDGFLOW_KERNELS=scalar|avx2.
 */
#pragma once

#include <cstddef>

namespace ldgflow::kernels {

enum class Impl { scalar, avx2 };

/// Implementation picked at startup (cpuid + LDGFLOW_KERNELS override).
Impl active();

/// Human-readable name of the active implementation.
const char* active_name();

// y = A x, A row-major m x n
void matvec(const double* a, const double* x, int m, int n, double* y);

// y += s * A x
void matvec_acc(const double* a, const double* x, int m, int n, double s, double* y);

// sum_i a[i] b[i]
double dot(const double* a, const double* b, int n);

// sum_i w[i] a[i] b[i]
double dot3(const double* w, const double* a, const double* b, int n);

namespace detail {
// Reference and vectorized entry points, exposed for the equivalence tests.
void matvec_scalar(const double* a, const double* x, int m, int n, double* y);
void matvec_acc_scalar(const double* a, const double* x, int m, int n, double s, double* y);
double dot_scalar(const double* a, const double* b, int n);
double dot3_scalar(const double* w, const double* a, const double* b, int n);

bool avx2_available();
void matvec_avx2(const double* a, const double* x, int m, int n, double* y);
void matvec_acc_avx2(const double* a, const double* x, int m, int n, double s, double* y);
double dot_avx2(const double* a, const double* b, int n);
double dot3_avx2(const double* w, const double* a, const double* b, int n);
} // namespace detail

} // namespace ldgflow::kernels
