#include "ldgflow/mms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldgflow::mms {

namespace {
constexpr double ax = 0.003, kx = 0.08;  // xi = 5 + 0.003 sin(0.08 x + 0.08 t)
constexpr double krx = 0.07, krt = 0.4;  // r  = sin(0.07 x + 0.4 t)
constexpr double km = 0.07;              // m  = cos(0.07 x + 0.07 t)
constexpr double c = 0.1;                // vertical wavenumber of u
constexpr double b = 0.3;                // vertical wavenumber of h~
constexpr double s = bed_slope;
} // namespace

double zb(double x) { return s * x; }

double xi(double t, double x) { return 5.0 + ax * std::sin(kx * x + kx * t); }
double xi_t(double t, double x) { return ax * kx * std::cos(kx * x + kx * t); }
double xi_x(double t, double x) { return ax * kx * std::cos(kx * x + kx * t); }

namespace {
double r_of(double t, double x) { return std::sin(krx * x + krt * t); }
double rx_of(double t, double x) { return krx * std::cos(krx * x + krt * t); }
double rt_of(double t, double x) { return krt * std::cos(krx * x + krt * t); }
double rxx_of(double t, double x) { return -krx * krx * std::sin(krx * x + krt * t); }
double m_of(double t, double x) { return std::cos(km * x + km * t); }
double mx_of(double t, double x) { return -km * std::sin(km * x + km * t); }
double mxx_of(double t, double x) { return -km * km * std::cos(km * x + km * t); }

// n(t,x,z): divergence-matching part of w.
double n_of(double rx, double r, double c1, double s1, double z) {
    return -rx * (std::sin(c * z) / c - z * c1) - c * s * r * z * s1;
}
} // namespace

ColumnFactors column_factors(double t, double x) {
    ColumnFactors f;
    f.t = t;
    f.x = x;
    f.zb = zb(x);
    f.c1 = std::cos(c * f.zb);
    f.s1 = std::sin(c * f.zb);
    f.c3 = std::cos(b * f.zb);
    f.s3 = std::sin(b * f.zb);
    f.xi = xi(t, x);
    f.xi_x = xi_x(t, x);
    f.xi_t = xi_t(t, x);
    f.xi_xx = -ax * kx * kx * std::sin(kx * x + kx * t);
    f.r = r_of(t, x);
    f.r_x = rx_of(t, x);
    f.r_t = rt_of(t, x);
    f.r_xx = rxx_of(t, x);
    f.m = m_of(t, x);
    f.m_x = mx_of(t, x);
    f.m_t = f.m_x; // same phase speed in x and t
    f.m_xx = mxx_of(t, x);
    // epsilon shifts w so the interface flux matches the Darcy seepage:
    //   eps = 0.01 (s h~_x - h~_z)|_{z=zb} - n|_{z=zb}
    const double hx_zb = f.xi_x - b * s * f.c3 * f.m;
    const double hz_zb = b * f.c3 * f.m;
    const double n_zb = n_of(f.r_x, f.r, f.c1, f.s1, f.zb);
    f.eps = conductivity * (s * hx_zb - hz_zb) - n_zb;
    return f;
}

double u_from(const ColumnFactors& f, double z) { return f.r * (std::cos(c * z) - f.c1); }

double w_from(const ColumnFactors& f, double z) {
    return n_of(f.r_x, f.r, f.c1, f.s1, z) + f.eps;
}

double u(double t, double x, double z) { return u_from(column_factors(t, x), z); }
double w(double t, double x, double z) { return w_from(column_factors(t, x), z); }

double u_t(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.r_t * (std::cos(c * z) - f.c1);
}
double u_x(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.r_x * (std::cos(c * z) - f.c1) + f.r * c * s * f.s1;
}
double u_z(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return -c * f.r * std::sin(c * z);
}
double u_xx(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.r_xx * (std::cos(c * z) - f.c1) + 2.0 * f.r_x * c * s * f.s1 +
           f.r * c * c * s * s * f.c1;
}
double u_zz(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return -c * c * f.r * std::cos(c * z);
}
double w_z(double t, double x, double z) { return -u_x(t, x, z); }

double head(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.xi + (std::sin(b * z) - f.s3) * f.m;
}
double head_t(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.xi_t + (std::sin(b * z) - f.s3) * f.m_t;
}
double head_x(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.xi_x - b * s * f.c3 * f.m + (std::sin(b * z) - f.s3) * f.m_x;
}
double head_z(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return b * std::cos(b * z) * f.m;
}
double head_xx(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return f.xi_xx + b * b * s * s * f.s3 * f.m - 2.0 * b * s * f.c3 * f.m_x +
           (std::sin(b * z) - f.s3) * f.m_xx;
}
double head_zz(double t, double x, double z) {
    const auto f = column_factors(t, x);
    return -b * b * std::sin(b * z) * f.m;
}

double momentum_source_from(const ColumnFactors& f, double z) {
    const double cz = std::cos(c * z), sz = std::sin(c * z);
    const double shape = cz - f.c1;
    const double uu = f.r * shape;
    const double ut = f.r_t * shape;
    const double ux = f.r_x * shape + f.r * c * s * f.s1;
    const double uz = -c * f.r * sz;
    const double uxx = f.r_xx * shape + 2.0 * f.r_x * c * s * f.s1 + f.r * c * c * s * s * f.c1;
    const double uzz = -c * c * f.r * cz;
    const double ww = n_of(f.r_x, f.r, f.c1, f.s1, z) + f.eps;
    const double wz = -ux;
    return ut + 2.0 * uu * ux + uz * ww + uu * wz + g * f.xi_x - viscosity * (uxx + uzz);
}

double momentum_source(double t, double x, double z) {
    return momentum_source_from(column_factors(t, x), z);
}

double pce_source_from(const ColumnFactors& f) {
    // Residual of the depth-integrated mass balance including the interface
    // exchange; collapses to the kinematic mismatch at the free surface.
    const double u_surf = u_from(f, f.xi);
    const double w_surf = w_from(f, f.xi);
    return f.xi_t + u_surf * f.xi_x - w_surf;
}

double pce_source(double t, double x) { return pce_source_from(column_factors(t, x)); }

double darcy_source_from(const ColumnFactors& f, double z) {
    const double sz = std::sin(b * z);
    const double ht = f.xi_t + (sz - f.s3) * f.m_t;
    const double hxx = f.xi_xx + b * b * s * s * f.s3 * f.m - 2.0 * b * s * f.c3 * f.m_x +
                       (sz - f.s3) * f.m_xx;
    const double hzz = -b * b * sz * f.m;
    return ht - conductivity * (hxx + hzz);
}

double darcy_source(double t, double x, double z) {
    return darcy_source_from(column_factors(t, x), z);
}

double darcy_u(double t, double x, double z) { return -conductivity * head_x(t, x, z); }
double darcy_w(double t, double x, double z) { return -conductivity * head_z(t, x, z); }

double stress_flux(double t, double x, double z, double nx, double nz) {
    return -viscosity * (u_x(t, x, z) * nx + u_z(t, x, z) * nz);
}

double eval_exact(std::string_view field, double t, double x, double z) {
    if (field == "xi") return xi(t, x);
    if (field == "u") return u(t, x, z);
    if (field == "w") return w(t, x, z);
    if (field == "head") return head(t, x, z);
    if (field == "darcy_u") return darcy_u(t, x, z);
    if (field == "darcy_w") return darcy_w(t, x, z);
    throw std::invalid_argument("eval_exact: unknown field " + std::string(field));
}

double eval_forcing(std::string_view equation, double t, double x, double z) {
    if (equation == "momentum") return momentum_source(t, x, z);
    if (equation == "pce") return pce_source(t, x);
    if (equation == "darcy") return darcy_source(t, x, z);
    if (equation == "continuity") return u_x(t, x, z) + w_z(t, x, z);
    throw std::invalid_argument("eval_forcing: unknown equation " + std::string(equation));
}

} // namespace ldgflow::mms
