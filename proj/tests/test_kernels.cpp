// Equivalence tests between the scalar reference kernels and the runtime-
// dispatched SIMD variants, plus the small dense factorizations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldgflow/kernels.hpp"
#include "ldgflow/smallmat.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace ldgflow;

namespace {
std::mt19937_64 rng(987654321);

std::vector<double> random_vec(int n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}
} // namespace

TEST_CASE("matvec variants agree across sizes") {
    for (int m : {1, 2, 3, 5, 9, 16, 25, 49}) {
        for (int n : {1, 3, 4, 7, 8, 13, 25, 49}) {
            const auto a = random_vec(m * n);
            const auto x = random_vec(n);
            std::vector<double> ys(m), yv(m);
            kernels::detail::matvec_scalar(a.data(), x.data(), m, n, ys.data());
            kernels::detail::matvec_avx2(a.data(), x.data(), m, n, yv.data());
            for (int r = 0; r < m; ++r)
                CHECK(ys[r] == doctest::Approx(yv[r]).epsilon(1e-14));

            auto zs = random_vec(m);
            auto zv = zs;
            kernels::detail::matvec_acc_scalar(a.data(), x.data(), m, n, 0.7, zs.data());
            kernels::detail::matvec_acc_avx2(a.data(), x.data(), m, n, 0.7, zv.data());
            for (int r = 0; r < m; ++r)
                CHECK(zs[r] == doctest::Approx(zv[r]).epsilon(1e-14));
        }
    }
}

TEST_CASE("dot and weighted dot agree") {
    for (int n : {1, 2, 4, 5, 9, 31, 64}) {
        const auto a = random_vec(n), b = random_vec(n), w = random_vec(n);
        CHECK(kernels::detail::dot_scalar(a.data(), b.data(), n) ==
              doctest::Approx(kernels::detail::dot_avx2(a.data(), b.data(), n))
                  .epsilon(1e-14));
        CHECK(kernels::detail::dot3_scalar(w.data(), a.data(), b.data(), n) ==
              doctest::Approx(kernels::detail::dot3_avx2(w.data(), a.data(), b.data(), n))
                  .epsilon(1e-14));
    }
}

TEST_CASE("dispatched kernels match the scalar reference") {
    const int m = 25, n = 49;
    const auto a = random_vec(m * n);
    const auto x = random_vec(n);
    std::vector<double> ys(m), yd(m);
    kernels::detail::matvec_scalar(a.data(), x.data(), m, n, ys.data());
    kernels::matvec(a.data(), x.data(), m, n, yd.data());
    for (int r = 0; r < m; ++r) CHECK(ys[r] == doctest::Approx(yd[r]).epsilon(1e-14));
}

TEST_CASE("LU solves random systems") {
    for (int n : {1, 2, 5, 9, 25}) {
        auto a = random_vec(n * n);
        for (int i = 0; i < n; ++i) a[i * n + i] += 3.0; // keep well conditioned
        const auto xref = random_vec(n);
        std::vector<double> b(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i] += a[i * n + j] * xref[j];
        SmallLU lu(a, n);
        lu.solve(b.data());
        for (int i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(xref[i]).epsilon(1e-11));
    }
}

TEST_CASE("LU rejects singular systems") {
    std::vector<double> a{1.0, 2.0, 2.0, 4.0};
    CHECK_THROWS(SmallLU(a, 2));
}

TEST_CASE("Cholesky solves SPD systems and rejects indefinite ones") {
    for (int n : {1, 3, 9, 25}) {
        const auto g = random_vec(n * n);
        std::vector<double> a(n * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) a[i * n + j] += g[i * n + k] * g[j * n + k];
                if (i == j) a[i * n + j] += 1.0;
            }
        const auto xref = random_vec(n);
        std::vector<double> b(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b[i] += a[i * n + j] * xref[j];
        SmallCholesky ch(a, n);
        ch.solve(b.data());
        for (int i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(xref[i]).epsilon(1e-10));
    }
    std::vector<double> bad{1.0, 0.0, 0.0, -1.0};
    CHECK_THROWS(SmallCholesky(bad, 2));
}
