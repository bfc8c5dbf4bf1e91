#include "ldgflow/problem.hpp"

#include "ldgflow/mms.hpp"

#include <cmath>

namespace ldgflow {

namespace {
bool close(double a, double b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)); }
} // namespace

MmsProblem::MmsProblem(const HydroCoefficients& hydro, const DarcyCoefficients& darcy,
                       double initial_time)
    : t0_(initial_time) {
    // The manufactured solution is derived for one fixed coefficient set; the
    // forcing terms would be inconsistent with anything else.
    if (!close(hydro.g, 1.0))
        throw std::invalid_argument("MmsProblem: manufactured solution requires g = 1");
    if (!close(hydro.d[0], mms::viscosity) || !close(hydro.d[2], mms::viscosity) ||
        !close(hydro.d[1], 0.0))
        throw std::invalid_argument("MmsProblem: requires D = 0.05 I");
    if (!close(darcy.d[0], mms::conductivity) || !close(darcy.d[2], mms::conductivity) ||
        !close(darcy.d[1], 0.0))
        throw std::invalid_argument("MmsProblem: requires D~ = 0.01 I");
}

void MmsProblem::momentum_source(double t, int nx, int nz, const double* xs,
                                 const double* zs, double* out) const {
    for (int i = 0; i < nx; ++i) {
        const auto f = mms::column_factors(t, xs[i]);
        for (int j = 0; j < nz; ++j)
            out[i * nz + j] = mms::momentum_source_from(f, zs[i * nz + j]);
    }
}

void MmsProblem::pce_source(double t, int n, const double* xs, double* out) const {
    for (int i = 0; i < n; ++i) out[i] = mms::pce_source_from(mms::column_factors(t, xs[i]));
}

void MmsProblem::darcy_source(double t, int nx, int nz, const double* xs, const double* zs,
                              double* out) const {
    for (int i = 0; i < nx; ++i) {
        const auto f = mms::column_factors(t, xs[i]);
        for (int j = 0; j < nz; ++j)
            out[i * nz + j] = mms::darcy_source_from(f, zs[i * nz + j]);
    }
}

void MmsProblem::lateral_velocity(double t, int n, const double* xs, const double* zs,
                                  double* out) const {
    double last_x = xs[0];
    auto f = mms::column_factors(t, last_x);
    for (int i = 0; i < n; ++i) {
        if (xs[i] != last_x) {
            last_x = xs[i];
            f = mms::column_factors(t, last_x);
        }
        out[i] = mms::u_from(f, zs[i]);
    }
}

void MmsProblem::inflow_elevation(double t, int n, const double* xs, double* out) const {
    for (int i = 0; i < n; ++i) out[i] = mms::xi(t, xs[i]);
}

void MmsProblem::top_stress(double t, int n, const double* xs, const double* zs,
                            const double* nx, const double* nz, double* out) const {
    for (int i = 0; i < n; ++i)
        out[i] = mms::stress_flux(t, xs[i], zs[i], nx[i], nz[i]);
}

void MmsProblem::darcy_head(double t, int n, const double* xs, const double* zs,
                            double* out) const {
    for (int i = 0; i < n; ++i) out[i] = mms::head(t, xs[i], zs[i]);
}

void MmsProblem::darcy_flux(double t, int n, const double* xs, const double* zs,
                            const double* nx, const double* nz, double* out) const {
    for (int i = 0; i < n; ++i)
        out[i] = mms::darcy_u(t, xs[i], zs[i]) * nx[i] + mms::darcy_w(t, xs[i], zs[i]) * nz[i];
}

double MmsProblem::initial_xi(double x) const { return mms::xi(t0_, x); }
double MmsProblem::initial_u(double x, double z) const { return mms::u(t0_, x, z); }
double MmsProblem::initial_head(double x, double z) const { return mms::head(t0_, x, z); }

double PhysicalProblem::initial_xi(double x) const {
    if (spec_.init_xi_bump == 0.0) return spec_.init_xi;
    const double span = spec_.x1 - spec_.x0;
    return spec_.init_xi + spec_.init_xi_bump * std::cos(M_PI * (x - spec_.x0) / span);
}

} // namespace ldgflow
