#include "ldgflow/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ldgflow {

double legendre_ortho(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return std::sqrt(0.5);
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return std::sqrt(n + 0.5) * p1;
}

double legendre_ortho_deriv(int n, double x) {
    if (n == 0) return 0.0;
    if (n == 1) return std::sqrt(1.5);
    // derivative recurrence: P'_n = x P'_{n-1} + n P_{n-1}
    double p0 = 1.0, p1 = x;
    double d1 = 1.0;
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        double d2 = x * d1 + k * p1;
        p0 = p1;
        p1 = p2;
        d1 = d2;
    }
    return std::sqrt(n + 0.5) * d1;
}

void legendre_ortho_all(int order, double x, double* out) {
    double p0 = 1.0, p1 = x;
    out[0] = std::sqrt(0.5);
    if (order >= 1) out[1] = std::sqrt(1.5) * x;
    for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
        out[k] = std::sqrt(k + 0.5) * p2;
    }
}

void legendre_ortho_deriv_all(int order, double x, double* out) {
    out[0] = 0.0;
    if (order >= 1) out[1] = std::sqrt(1.5);
    double p0 = 1.0, p1 = x;
    double d1 = 1.0;
    for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        double d2 = x * d1 + k * p1;
        p0 = p1;
        p1 = p2;
        d1 = d2;
        out[k] = std::sqrt(k + 0.5) * d2;
    }
}

BasisTables::BasisTables(int order_, const QuadRule1D& rule_) : order(order_), rule(rule_) {
    if (order < 0) throw std::invalid_argument("BasisTables: negative order");
    n_modes_1d = order + 1;
    n_modes = n_modes_1d * n_modes_1d;
    nq1 = rule.size();
    nq2 = nq1 * nq1;

    std::vector<double> v(nq1 * n_modes_1d), d(nq1 * n_modes_1d);
    for (int q = 0; q < nq1; ++q) {
        legendre_ortho_all(order, rule.points[q], &v[q * n_modes_1d]);
        legendre_ortho_deriv_all(order, rule.points[q], &d[q * n_modes_1d]);
    }

    val.resize(nq2 * n_modes);
    dxi.resize(nq2 * n_modes);
    deta.resize(nq2 * n_modes);
    for (int qx = 0; qx < nq1; ++qx)
        for (int qz = 0; qz < nq1; ++qz) {
            int q = qx * nq1 + qz;
            for (int mx = 0; mx < n_modes_1d; ++mx)
                for (int mz = 0; mz < n_modes_1d; ++mz) {
                    int m = mx * n_modes_1d + mz;
                    val[q * n_modes + m] = v[qx * n_modes_1d + mx] * v[qz * n_modes_1d + mz];
                    dxi[q * n_modes + m] = d[qx * n_modes_1d + mx] * v[qz * n_modes_1d + mz];
                    deta[q * n_modes + m] = v[qx * n_modes_1d + mx] * d[qz * n_modes_1d + mz];
                }
        }
    auto transpose = [](const std::vector<double>& src, int rows, int cols) {
        std::vector<double> dst(src.size());
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) dst[c * rows + r] = src[r * cols + c];
        return dst;
    };
    val_t = transpose(val, nq2, n_modes);
    dxi_t = transpose(dxi, nq2, n_modes);
    deta_t = transpose(deta, nq2, n_modes);

    std::vector<double> vp(n_modes_1d), vm(n_modes_1d);
    legendre_ortho_all(order, 1.0, vp.data());
    legendre_ortho_all(order, -1.0, vm.data());
    for (int f = 0; f < 4; ++f) face_val[f].resize(nq1 * n_modes);
    for (int q = 0; q < nq1; ++q) {
        const double* vq = &v[q * n_modes_1d];
        for (int mx = 0; mx < n_modes_1d; ++mx)
            for (int mz = 0; mz < n_modes_1d; ++mz) {
                int m = mx * n_modes_1d + mz;
                face_val[face_left][q * n_modes + m] = vm[mx] * vq[mz];
                face_val[face_right][q * n_modes + m] = vp[mx] * vq[mz];
                face_val[face_bottom][q * n_modes + m] = vq[mx] * vm[mz];
                face_val[face_top][q * n_modes + m] = vq[mx] * vp[mz];
            }
    }
    for (int f = 0; f < 4; ++f) face_val_t[f] = transpose(face_val[f], nq1, n_modes);

    val1d.resize(nq1 * n_modes_1d);
    dx1d.resize(nq1 * n_modes_1d);
    for (int q = 0; q < nq1; ++q)
        for (int m = 0; m < n_modes_1d; ++m) {
            val1d[q * n_modes_1d + m] = v[q * n_modes_1d + m];
            dx1d[q * n_modes_1d + m] = d[q * n_modes_1d + m];
        }
    val1d_t = transpose(val1d, nq1, n_modes_1d);
    dx1d_t = transpose(dx1d, nq1, n_modes_1d);
    end_val[0] = vm;
    end_val[1] = vp;
}

} // namespace ldgflow
