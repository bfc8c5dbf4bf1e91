#include "ldgflow/dgops.hpp"

#include "ldgflow/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ldgflow {

void project_l2(const PointFn& f, const BasisTables& tab, const VolumeGeom& vol,
                DGField& out) {
    const int nm = tab.n_modes;
    const int nq2 = vol.nq2;
    if (out.n_modes != nm || out.n_elem != vol.n_elem)
        throw std::invalid_argument("project_l2: field/table mismatch");
    std::vector<double> fw(nq2);
    for (int e = 0; e < vol.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq2;
        for (int q = 0; q < nq2; ++q)
            fw[q] = f(vol.x[base + q], vol.z[base + q]) * vol.wdet[base + q];
        double* c = out.elem(e);
        for (int m = 0; m < nm; ++m) c[m] = 0.0;
        kernels::matvec_acc(tab.val_t.data(), fw.data(), nm, nq2, 1.0, c);
        SmallCholesky mass(element_mass(tab, vol, e), nm);
        mass.solve(c);
    }
}

void project_l2_surface(const LineFn& f, const BasisTables& tab, const SurfaceGeom& geom,
                        DGField& out) {
    const int nm = tab.n_modes_1d;
    const int nq = geom.nq1;
    if (out.n_modes != nm || out.n_elem != geom.n_elem)
        throw std::invalid_argument("project_l2_surface: field/table mismatch");
    std::vector<double> fw(nq);
    for (int e = 0; e < geom.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq;
        for (int q = 0; q < nq; ++q) fw[q] = f(geom.x[base + q]) * geom.wdx[base + q];
        double* c = out.elem(e);
        for (int m = 0; m < nm; ++m) c[m] = 0.0;
        kernels::matvec_acc(tab.val1d_t.data(), fw.data(), nm, nq, 1.0, c);
        for (int m = 0; m < nm; ++m) c[m] *= geom.inv_mass[e];
    }
}

double eval_field(const DGField& field, int element, double xi, double eta) {
    if (element < 0 || element >= field.n_elem)
        throw std::out_of_range("eval_field: unknown element id");
    const int n1 = field.order + 1;
    std::vector<double> px(n1), pz(n1);
    legendre_ortho_all(field.order, xi, px.data());
    legendre_ortho_all(field.order, eta, pz.data());
    const double* c = field.elem(element);
    double v = 0.0;
    for (int mx = 0; mx < n1; ++mx)
        for (int mz = 0; mz < n1; ++mz) v += c[mx * n1 + mz] * px[mx] * pz[mz];
    return v;
}

double eval_field_surface(const DGField& field, int element, double xi) {
    if (element < 0 || element >= field.n_elem)
        throw std::out_of_range("eval_field_surface: unknown element id");
    const int n1 = field.order + 1;
    std::vector<double> px(n1);
    legendre_ortho_all(field.order, xi, px.data());
    const double* c = field.elem(element);
    double v = 0.0;
    for (int m = 0; m < n1; ++m) v += c[m] * px[m];
    return v;
}

ScalarTracePair jump_avg_scalar(double left, double right, double nx, double nz) {
    return {0.5 * (left + right), left * nx - right * nx, left * nz - right * nz};
}

VectorTracePair jump_avg_vector(double lx, double lz, double rx, double rz, double nx,
                                double nz) {
    return {0.5 * (lx + rx), 0.5 * (lz + rz), (lx - rx) * nx + (lz - rz) * nz};
}

double l2_error(const DGField& field, const PointFn& exact, const BasisTables& tab,
                const VolumeGeom& vol) {
    const int nm = tab.n_modes;
    const int nq2 = vol.nq2;
    std::vector<double> vals(nq2);
    double acc = 0.0;
    for (int e = 0; e < vol.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tab.val.data(), field.elem(e), nq2, nm, vals.data());
        for (int q = 0; q < nq2; ++q) {
            const double d = vals[q] - exact(vol.x[base + q], vol.z[base + q]);
            acc += vol.wdet[base + q] * d * d;
        }
    }
    return std::sqrt(acc);
}

double l2_error_surface(const DGField& field, const LineFn& exact, const BasisTables& tab,
                        const SurfaceGeom& geom) {
    const int nm = tab.n_modes_1d;
    const int nq = geom.nq1;
    std::vector<double> vals(nq);
    double acc = 0.0;
    for (int e = 0; e < geom.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq;
        kernels::matvec(tab.val1d.data(), field.elem(e), nq, nm, vals.data());
        for (int q = 0; q < nq; ++q) {
            const double d = vals[q] - exact(geom.x[base + q]);
            acc += geom.wdx[base + q] * d * d;
        }
    }
    return std::sqrt(acc);
}

double integrate(const DGField& field, const BasisTables& tab, const VolumeGeom& vol) {
    const int nm = tab.n_modes;
    const int nq2 = vol.nq2;
    std::vector<double> vals(nq2);
    double acc = 0.0;
    for (int e = 0; e < vol.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tab.val.data(), field.elem(e), nq2, nm, vals.data());
        for (int q = 0; q < nq2; ++q) acc += vol.wdet[base + q] * vals[q];
    }
    return acc;
}

double integrate_surface(const DGField& field, const BasisTables& tab,
                         const SurfaceGeom& geom) {
    const int nm = tab.n_modes_1d;
    const int nq = geom.nq1;
    std::vector<double> vals(nq);
    double acc = 0.0;
    for (int e = 0; e < geom.n_elem; ++e) {
        const std::size_t base = static_cast<std::size_t>(e) * nq;
        kernels::matvec(tab.val1d.data(), field.elem(e), nq, nm, vals.data());
        for (int q = 0; q < nq; ++q) acc += geom.wdx[base + q] * vals[q];
    }
    return acc;
}

double l2_norm_sq(const DGField& field, const BasisTables& tab, const VolumeGeom& vol) {
    const int nm = tab.n_modes;
    const int nq2 = vol.nq2;
    std::vector<double> vals(nq2);
    double acc = 0.0;
    for (int e = 0; e < vol.n_elem; ++e) {
        kernels::matvec(tab.val.data(), field.elem(e), nq2, nm, vals.data());
        acc += kernels::dot3(&vol.wdet[static_cast<std::size_t>(e) * nq2], vals.data(),
                             vals.data(), nq2);
    }
    return acc;
}

double l2_norm_sq_surface(const DGField& field, const BasisTables& tab,
                          const SurfaceGeom& geom) {
    const int nm = tab.n_modes_1d;
    const int nq = geom.nq1;
    std::vector<double> vals(nq);
    double acc = 0.0;
    for (int e = 0; e < geom.n_elem; ++e) {
        kernels::matvec(tab.val1d.data(), field.elem(e), nq, nm, vals.data());
        acc += kernels::dot3(&geom.wdx[static_cast<std::size_t>(e) * nq], vals.data(),
                             vals.data(), nq);
    }
    return acc;
}

double eoc(double err_coarse, double err_fine, double dx_coarse, double dx_fine) {
    if (!(err_coarse > 0.0) || !(err_fine > 0.0))
        throw std::invalid_argument("eoc: errors must be positive");
    if (!(dx_coarse > 0.0) || !(dx_fine > 0.0))
        throw std::invalid_argument("eoc: mesh sizes must be positive");
    return std::log(err_coarse / err_fine) / std::log(dx_coarse / dx_fine);
}

} // namespace ldgflow
