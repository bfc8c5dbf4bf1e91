#include "ldgflow/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace ldgflow::kernels {

namespace detail {

void matvec_scalar(const double* a, const double* x, int m, int n, double* y) {
    for (int r = 0; r < m; ++r) {
        const double* row = a + static_cast<std::size_t>(r) * n;
        double acc = 0.0;
        for (int c = 0; c < n; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

void matvec_acc_scalar(const double* a, const double* x, int m, int n, double s, double* y) {
    for (int r = 0; r < m; ++r) {
        const double* row = a + static_cast<std::size_t>(r) * n;
        double acc = 0.0;
        for (int c = 0; c < n; ++c) acc += row[c] * x[c];
        y[r] += s * acc;
    }
}

double dot_scalar(const double* a, const double* b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot3_scalar(const double* w, const double* a, const double* b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

} // namespace detail

namespace {

struct Dispatch {
    Impl impl;
    void (*matvec)(const double*, const double*, int, int, double*);
    void (*matvec_acc)(const double*, const double*, int, int, double, double*);
    double (*dot)(const double*, const double*, int);
    double (*dot3)(const double*, const double*, const double*, int);
};

Dispatch pick() {
    const char* force = std::getenv("LDGFLOW_KERNELS");
    bool want_avx2 = detail::avx2_available();
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) want_avx2 = false;
        if (std::strcmp(force, "avx2") == 0 && !detail::avx2_available()) want_avx2 = false;
    }
    if (want_avx2) {
        return {Impl::avx2, detail::matvec_avx2, detail::matvec_acc_avx2,
                detail::dot_avx2, detail::dot3_avx2};
    }
    return {Impl::scalar, detail::matvec_scalar, detail::matvec_acc_scalar,
            detail::dot_scalar, detail::dot3_scalar};
}

const Dispatch& table() {
    static const Dispatch d = pick();
    return d;
}

} // namespace

Impl active() { return table().impl; }

const char* active_name() { return table().impl == Impl::avx2 ? "avx2" : "scalar"; }

void matvec(const double* a, const double* x, int m, int n, double* y) {
    table().matvec(a, x, m, n, y);
}

void matvec_acc(const double* a, const double* x, int m, int n, double s, double* y) {
    table().matvec_acc(a, x, m, n, s, y);
}

double dot(const double* a, const double* b, int n) { return table().dot(a, b, n); }

double dot3(const double* w, const double* a, const double* b, int n) {
    return table().dot3(w, a, b, n);
}

} // namespace ldgflow::kernels
