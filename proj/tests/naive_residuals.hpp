// Slow reference residuals of the element-local solves, evaluated with direct
// quadrature loops on the live simulation state.  Preconditions: closed-box
// walls (zero velocity datum) and an interface flux frozen from the current
// Darcy state, i.e. the state right after Simulation::refresh_diagnostics().
#pragma once

#include "ldgflow/coupling.hpp"
#include "test_support.hpp"

#include <cmath>
#include <vector>

namespace ldgflow::testing {

/// max over elements/modes/components of the LDG auxiliary-equation residual
/// (D^-1 Q, psi) + E_Q(u, psi).
inline double max_q_residual(Simulation& sim) {
    const auto& mesh = sim.mesh();
    const auto& st = sim.state();
    const int pu = st.u.order;
    const int nmu = (pu + 1) * (pu + 1);
    const int nqf = 9;
    const double dinv = 1.0 / sim.config().hydro.d[0];
    double worst = 0.0;
    for (int e = 0; e < mesh.n_ff_elem(); ++e) {
        for (int comp = 0; comp < 2; ++comp) {
            const DGField& qc = comp == 0 ? st.qx : st.qz;
            for (int mode = 0; mode < nmu; ++mode) {
                double res = naive_volume_moment(
                    mesh, false, e, pu, mode, [&](double x, double z) {
                        return dinv * trace_at(qc, mesh, false, e, x, z);
                    });
                res -= naive_volume_moment(
                    mesh, false, e, pu, mode,
                    [&](double x, double z) { return trace_at(st.u, mesh, false, e, x, z); },
                    12, comp == 0, comp == 1);
                for (const auto& f : mesh.ff_faces) {
                    if (f.owner != e && f.neighbor != e) continue;
                    const double sgn = f.owner == e ? 1.0 : -1.0;
                    const auto fp = face_points(f, nqf);
                    for (int q = 0; q < nqf; ++q) {
                        double uv;
                        if (f.neighbor >= 0) {
                            uv = 0.5 *
                                 (trace_at(st.u, mesh, false, f.owner, fp.x[q], fp.z[q]) +
                                  trace_at(st.u, mesh, false, f.neighbor, fp.x[q],
                                           fp.z[q]));
                        } else if (f.cls == FaceClass::inflow ||
                                   f.cls == FaceClass::outflow) {
                            uv = 0.0; // closed wall datum
                        } else {
                            uv = trace_at(st.u, mesh, false, e, fp.x[q], fp.z[q]);
                        }
                        const double na = comp == 0 ? sgn * f.nx : sgn * f.nz;
                        const auto c = mesh.ff_corners(e);
                        const auto r = to_reference(c, fp.x[q], fp.z[q]);
                        std::vector<double> px(pu + 1), pz(pu + 1);
                        legendre_ortho_all(pu, r.xi, px.data());
                        legendre_ortho_all(pu, r.eta, pz.data());
                        res += uv * na * px[mode / (pu + 1)] * pz[mode % (pu + 1)] *
                               fp.wds[q];
                    }
                }
                worst = std::max(worst, std::abs(res));
            }
        }
    }
    return worst;
}

/// max over elements/modes of the continuity-equation residual for the
/// solved vertical velocity.
inline double max_w_residual(Simulation& sim) {
    const auto& mesh = sim.mesh();
    const auto& st = sim.state();
    const int pw = st.w.order;
    const int nmw = (pw + 1) * (pw + 1);
    const int nqf = 9;
    double worst = 0.0;
    for (int e = 0; e < mesh.n_ff_elem(); ++e) {
        const int col = mesh.column_of_ff(e);
        for (int mode = 0; mode < nmw; ++mode) {
            double res = -naive_volume_moment(
                mesh, false, e, pw, mode,
                [&](double x, double z) { return trace_at(st.u, mesh, false, e, x, z); },
                14, true, false);
            res -= naive_volume_moment(
                mesh, false, e, pw, mode,
                [&](double x, double z) { return trace_at(st.w, mesh, false, e, x, z); },
                14, false, true);
            for (const auto& f : mesh.ff_faces) {
                if (f.owner != e && f.neighbor != e) continue;
                const double sgn = f.owner == e ? 1.0 : -1.0;
                const bool vertical = f.nz == 0.0;
                const auto fp = face_points(f, nqf);
                for (int q = 0; q < nqf; ++q) {
                    double val;
                    if (vertical) {
                        if (f.neighbor >= 0) {
                            const double um =
                                trace_at(st.u, mesh, false, f.owner, fp.x[q], fp.z[q]);
                            const double up = trace_at(st.u, mesh, false, f.neighbor,
                                                       fp.x[q], fp.z[q]);
                            val = 0.5 * (um + up) * f.nx;
                            if (sim.config().pce_xi_penalty) {
                                // stabilized mass flux shared with the PCE
                                const double m =
                                    0.5 * (std::abs(um * f.nx) + std::abs(up * f.nx));
                                const double lam = m + std::sqrt(m * m + 1.0);
                                const double xim =
                                    eval_field_surface(st.xi, f.column, 1.0);
                                const double xip =
                                    eval_field_surface(st.xi, f.column + 1, -1.0);
                                val += 0.5 * lam * (xim - xip);
                            }
                        } else {
                            val = 0.0; // closed wall datum
                        }
                        val *= sgn;
                    } else if (f.cls == FaceClass::bottom) {
                        const Face& fd = mesh.darcy_faces[mesh.interface_darcy[col]];
                        const double un =
                            trace_at(st.darcy_ux, mesh, true, fd.owner, fp.x[q], fp.z[q]) *
                                fd.nx +
                            trace_at(st.darcy_uz, mesh, true, fd.owner, fp.x[q], fp.z[q]) *
                                fd.nz;
                        val = -un; // free-flow orientation
                    } else {
                        const int below = f.owner; // horizontal faces: owner is below
                        const double uu = trace_at(st.u, mesh, false, below, fp.x[q],
                                                   fp.z[q]);
                        const double ww = trace_at(st.w, mesh, false, below, fp.x[q],
                                                   fp.z[q]);
                        val = sgn * (uu * f.nx + ww * f.nz);
                    }
                    const auto c = mesh.ff_corners(e);
                    const auto r = to_reference(c, fp.x[q], fp.z[q]);
                    std::vector<double> px(pw + 1), pz(pw + 1);
                    legendre_ortho_all(pw, r.xi, px.data());
                    legendre_ortho_all(pw, r.eta, pz.data());
                    res += val * px[mode / (pw + 1)] * pz[mode % (pw + 1)] * fp.wds[q];
                }
            }
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

} // namespace ldgflow::testing
