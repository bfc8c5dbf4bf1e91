/// @file smallmat.hpp
/// @brief Dense factorizations for the tiny element-local systems (n <= ~25).
#pragma once

#include <stdexcept>
#include <vector>

namespace ldgflow {

/// LU factorization with partial pivoting, row-major storage.
class SmallLU {
  public:
    SmallLU() = default;
    explicit SmallLU(std::vector<double> a, int n) { factor(std::move(a), n); }

    void factor(std::vector<double> a, int n);
    void solve(double* rhs) const; // in place, length n
    int size() const { return n_; }

  private:
    int n_ = 0;
    std::vector<double> lu_;
    std::vector<int> piv_;
};

/// Cholesky factorization for symmetric positive definite matrices.
class SmallCholesky {
  public:
    SmallCholesky() = default;
    explicit SmallCholesky(std::vector<double> a, int n) { factor(std::move(a), n); }

    void factor(std::vector<double> a, int n);
    void solve(double* rhs) const;
    int size() const { return n_; }

  private:
    int n_ = 0;
    std::vector<double> l_; // lower triangle, row-major
};

} // namespace ldgflow
