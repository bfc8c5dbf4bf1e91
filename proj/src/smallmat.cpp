#include "ldgflow/smallmat.hpp"

#include <cmath>
#include <utility>

namespace ldgflow {

void SmallLU::factor(std::vector<double> a, int n) {
    if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("SmallLU: bad size");
    n_ = n;
    lu_ = std::move(a);
    piv_.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu_[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            double v = std::abs(lu_[r * n + k]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0) throw std::runtime_error("SmallLU: singular local system");
        piv_[k] = p;
        if (p != k)
            for (int c = 0; c < n; ++c) std::swap(lu_[k * n + c], lu_[p * n + c]);
        const double inv = 1.0 / lu_[k * n + k];
        for (int r = k + 1; r < n; ++r) {
            double f = lu_[r * n + k] * inv;
            lu_[r * n + k] = f;
            for (int c = k + 1; c < n; ++c) lu_[r * n + c] -= f * lu_[k * n + c];
        }
    }
}

void SmallLU::solve(double* rhs) const {
    const int n = n_;
    // the factorization swaps whole rows, multipliers included, so the full
    // permutation is applied to the right-hand side before the L-solve
    for (int k = 0; k < n; ++k)
        if (piv_[k] != k) std::swap(rhs[k], rhs[piv_[k]]);
    for (int k = 0; k < n; ++k)
        for (int r = k + 1; r < n; ++r) rhs[r] -= lu_[r * n + k] * rhs[k];
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= lu_[r * n + c] * rhs[c];
        rhs[r] = acc / lu_[r * n + r];
    }
}

void SmallCholesky::factor(std::vector<double> a, int n) {
    if (static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("SmallCholesky: bad size");
    n_ = n;
    l_.assign(n * n, 0.0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c <= r; ++c) {
            double acc = a[r * n + c];
            for (int k = 0; k < c; ++k) acc -= l_[r * n + k] * l_[c * n + k];
            if (r == c) {
                if (acc <= 0.0) throw std::runtime_error("SmallCholesky: matrix not SPD");
                l_[r * n + r] = std::sqrt(acc);
            } else {
                l_[r * n + c] = acc / l_[c * n + c];
            }
        }
    }
}

void SmallCholesky::solve(double* rhs) const {
    const int n = n_;
    for (int r = 0; r < n; ++r) {
        double acc = rhs[r];
        for (int c = 0; c < r; ++c) acc -= l_[r * n + c] * rhs[c];
        rhs[r] = acc / l_[r * n + r];
    }
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= l_[c * n + r] * rhs[c];
        rhs[r] = acc / l_[r * n + r];
    }
}

} // namespace ldgflow
