#include "ldgflow/freeflow.hpp"

#include "ldgflow/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ldgflow {

namespace flux {

double lambda_interior(double un_minus, double un_plus) {
    const double m = 0.5 * (std::abs(un_minus) + std::abs(un_plus));
    return m + std::sqrt(m * m + 1.0);
}

double lambda_inflow(double un) {
    const double a = std::abs(un);
    return a + std::sqrt(un * un + 1.0);
}

double lambda_lower_bound(double un) {
    constexpr double sqrt2 = 1.4142135623730951;
    return (sqrt2 + 1.0) / sqrt2 * std::abs(un) + 1.0 / sqrt2;
}

double r_h_interior(double u_minus, double u_plus, double nx) {
    return 0.5 * (u_minus + u_plus) * nx;
}

double r_h_penalty(double xi_minus, double xi_plus, double lambda) {
    return 0.5 * lambda * (xi_minus - xi_plus);
}
double r_h_inflow(double u_interior, double nx) { return u_interior * nx; }
double r_h_outflow(double u_hat, double nx) { return u_hat * nx; }

double r_u_interior_lateral(double u_minus, double u_plus, double xi_minus, double xi_plus,
                            double lambda, double nx, double g) {
    return 0.5 * (u_minus * u_minus + u_plus * u_plus) * nx +
           g * 0.5 * (xi_minus + xi_plus) * nx + 0.5 * lambda * (u_minus - u_plus);
}

double r_u_horizontal(double u_minus, double u_plus, double u_below, double w_below,
                      double xi, double nx, double nz, double g) {
    const double un_below = u_below * nx + w_below * nz;
    return 0.5 * (u_minus + u_plus) * un_below + g * xi * nx;
}

double r_u_inflow(double u, double u_hat, double xi_hat, double lambda, double nx,
                  double g) {
    return u * (u * nx) + g * xi_hat * nx + 0.5 * lambda * (u - u_hat);
}

double r_u_outflow(double u, double u_hat, double xi, double nx, double g) {
    return u * (u_hat * nx) + g * xi * nx;
}

double r_u_top(double u, double w, double xi, double nx, double nz, double g) {
    return u * (u * nx + w * nz) + g * xi * nx;
}

double r_u_bottom(double u, double xi, double darcy_un, double nx, double g) {
    return u * darcy_un + g * xi * nx;
}

double s_u_interior(double qx_minus, double qz_minus, double qx_plus, double qz_plus,
                    double nx, double nz) {
    return 0.5 * (qx_minus + qx_plus) * nx + 0.5 * (qz_minus + qz_plus) * nz;
}

double s_u_one_sided(double qx, double qz, double nx, double nz) {
    return qx * nx + qz * nz;
}

} // namespace flux

SmallLU build_w_reference_operator(const BasisTables& tab) {
    const int nm = tab.n_modes;
    std::vector<double> a(static_cast<std::size_t>(nm) * nm, 0.0);
    // top-face term <W, sigma> along eta = +1 (n_z ds reduces to dx)
    for (int q = 0; q < tab.nq1; ++q) {
        const double wq = tab.rule.weights[q];
        const double* phi = &tab.face_val[face_top][static_cast<std::size_t>(q) * nm];
        for (int i = 0; i < nm; ++i)
            for (int j = 0; j < nm; ++j) a[i * nm + j] += wq * phi[i] * phi[j];
    }
    // minus the volume term (W, d_eta sigma) on the reference square
    for (int qx = 0; qx < tab.nq1; ++qx)
        for (int qz = 0; qz < tab.nq1; ++qz) {
            const int q = qx * tab.nq1 + qz;
            const double wq = tab.rule.weights[qx] * tab.rule.weights[qz];
            const double* phi = &tab.val[static_cast<std::size_t>(q) * nm];
            const double* dphi = &tab.deta[static_cast<std::size_t>(q) * nm];
            for (int i = 0; i < nm; ++i)
                for (int j = 0; j < nm; ++j) a[i * nm + j] -= wq * phi[j] * dphi[i];
        }
    return SmallLU(std::move(a), nm);
}

// ---------------------------------------------------------------------------

namespace {

inline void eval_trace(const BasisTables& tab, const DGField& f, int e, int local_face,
                       double* out) {
    kernels::matvec(tab.face_val[local_face].data(), f.elem(e), tab.nq1, tab.n_modes, out);
}

} // namespace

void FreeflowAssembler::eval_boundary(const Face& face, int face_idx, double t,
                                      BoundaryEval& out) {
    const int nq = r_.fgeom->nq1;
    const std::size_t base = static_cast<std::size_t>(face_idx) * nq;
    out.u_hat.resize(nq);
    out.xi_hat.resize(nq);
    out.inflow.assign(nq, false);
    r_.data->lateral_velocity(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base],
                              out.u_hat.data());
    r_.data->inflow_elevation(t, nq, &r_.fgeom->x[base], out.xi_hat.data());
    const LateralPolicy policy =
        face.side == 0 ? r_.mesh->spec.left : r_.mesh->spec.right;
    for (int q = 0; q < nq; ++q) {
        if (policy == LateralPolicy::inflow)
            out.inflow[q] = true;
        else if (policy == LateralPolicy::outflow)
            out.inflow[q] = false;
        else
            out.inflow[q] = out.u_hat[q] * face.nx <= 0.0;
    }
}

void FreeflowAssembler::eval_xi_columns(const DGField& xi) {
    const int C = r_.mesh->n_columns();
    const int nq = r_.sgeom->nq1;
    const int nm = r_.tab_xi->n_modes_1d;
    xi_at_xq_.resize(static_cast<std::size_t>(C) * nq);
    xi_end_.resize(static_cast<std::size_t>(C) * 2);
    for (int c = 0; c < C; ++c) {
        kernels::matvec(r_.tab_xi->val1d.data(), xi.elem(c), nq, nm, &xi_at_xq_[c * nq]);
        xi_end_[c * 2 + 0] = kernels::dot(r_.tab_xi->end_val[0].data(), xi.elem(c), nm);
        xi_end_[c * 2 + 1] = kernels::dot(r_.tab_xi->end_val[1].data(), xi.elem(c), nm);
    }
}

void FreeflowAssembler::lateral_u_flux(const DGField& xi, const DGField& u, double t,
                                       std::vector<double>& out) {
    const int L = r_.mesh->layers;
    const int C = r_.mesh->n_columns();
    const int nq = r_.fgeom->nq1;
    const int nvf = (C + 1) * L;
    out.resize(static_cast<std::size_t>(nvf) * nq);
    tm_.resize(nq);
    tp_.resize(nq);
    eval_xi_columns(xi);
    for (int vf = 0; vf < nvf; ++vf) {
        const Face& f = r_.mesh->ff_faces[vf];
        double* dst = &out[static_cast<std::size_t>(vf) * nq];
        if (f.neighbor >= 0) {
            eval_trace(*r_.tab_u, u, f.owner, f.owner_face, tm_.data());
            eval_trace(*r_.tab_u, u, f.neighbor, f.neighbor_face, tp_.data());
            for (int q = 0; q < nq; ++q)
                dst[q] = flux::r_h_interior(tm_[q], tp_[q], f.nx);
            if (r_.pce_xi_penalty) {
                const double xim = xi_end_[static_cast<std::size_t>(f.column) * 2 + 1];
                const double xip = xi_end_[static_cast<std::size_t>(f.column + 1) * 2 + 0];
                for (int q = 0; q < nq; ++q) {
                    const double lam = flux::lambda_interior(tm_[q] * f.nx, tp_[q] * f.nx);
                    dst[q] += flux::r_h_penalty(xim, xip, lam);
                }
            }
        } else {
            eval_trace(*r_.tab_u, u, f.owner, f.owner_face, tm_.data());
            eval_boundary(f, vf, t, bdry_);
            for (int q = 0; q < nq; ++q)
                dst[q] = bdry_.inflow[q] ? flux::r_h_inflow(tm_[q], f.nx)
                                         : flux::r_h_outflow(bdry_.u_hat[q], f.nx);
        }
    }
}

void FreeflowAssembler::solve_q(const DGField& u, double t, DGField& qx, DGField& qz) {
    const auto& mesh = *r_.mesh;
    const auto& tab = *r_.tab_u;
    const int nm = tab.n_modes;
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int n_elem = mesh.n_ff_elem();
    const int nvf = n_vertical_faces();

    rx_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0);
    rz_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0);
    tm_.resize(nq);
    tp_.resize(nq);
    fw_.resize(nq);
    fw2_.resize(nq);

    // face terms of E_Q: central {U} on interior faces, data on lateral
    // boundaries, one-sided traces on top and bottom
    const int n_faces = static_cast<int>(mesh.ff_faces.size());
    for (int fi = 0; fi < n_faces; ++fi) {
        const Face& f = mesh.ff_faces[fi];
        const std::size_t base = static_cast<std::size_t>(fi) * nq;
        const double* wnx = &r_.fgeom->wnx[base];
        const double* wnz = &r_.fgeom->wnz[base];
        eval_trace(tab, u, f.owner, f.owner_face, tm_.data());
        const bool vertical = fi < nvf;
        if (f.neighbor >= 0) {
            eval_trace(tab, u, f.neighbor, f.neighbor_face, tp_.data());
            for (int q = 0; q < nq; ++q) {
                const double val = 0.5 * (tm_[q] + tp_[q]);
                fw_[q] = val * wnx[q];
                fw2_[q] = val * wnz[q];
            }
            kernels::matvec_acc(tab.face_val_t[f.owner_face].data(), fw_.data(), nm, nq, 1.0,
                                &rx_[static_cast<std::size_t>(f.owner) * nm]);
            kernels::matvec_acc(tab.face_val_t[f.neighbor_face].data(), fw_.data(), nm, nq,
                                -1.0, &rx_[static_cast<std::size_t>(f.neighbor) * nm]);
            if (!vertical) {
                kernels::matvec_acc(tab.face_val_t[f.owner_face].data(), fw2_.data(), nm, nq,
                                    1.0, &rz_[static_cast<std::size_t>(f.owner) * nm]);
                kernels::matvec_acc(tab.face_val_t[f.neighbor_face].data(), fw2_.data(), nm,
                                    nq, -1.0, &rz_[static_cast<std::size_t>(f.neighbor) * nm]);
            }
        } else {
            if (vertical) {
                // S_Q uses the velocity datum on both lateral boundary classes
                eval_boundary(f, fi, t, bdry_);
                for (int q = 0; q < nq; ++q) fw_[q] = bdry_.u_hat[q] * wnx[q];
                kernels::matvec_acc(tab.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                    1.0, &rx_[static_cast<std::size_t>(f.owner) * nm]);
            } else {
                for (int q = 0; q < nq; ++q) {
                    fw_[q] = tm_[q] * wnx[q];
                    fw2_[q] = tm_[q] * wnz[q];
                }
                double* ex = &rx_[static_cast<std::size_t>(f.owner) * nm];
                double* ez = &rz_[static_cast<std::size_t>(f.owner) * nm];
                kernels::matvec_acc(tab.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                    1.0, ex);
                kernels::matvec_acc(tab.face_val_t[f.owner_face].data(), fw2_.data(), nm, nq,
                                    1.0, ez);
            }
        }
    }

    // volume terms and local solves
    aux_.resize(nq2);
    fw_.resize(nq2);
    fw2_.resize(nq2);
    std::vector<double>& yx = tm_;
    std::vector<double>& yz = tp_;
    yx.resize(nm);
    yz.resize(nm);
    for (int e = 0; e < n_elem; ++e) {
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tab.val.data(), u.elem(e), nq2, nm, aux_.data());
        const double axe = r_.vol->ax[e];
        double wsum = 0.0, usum = 0.0;
        for (int q = 0; q < nq2; ++q) {
            const double a = r_.vol->wdet[vb + q] * aux_[q];
            fw_[q] = a;                       // for d/dxi part and d/deta via bx
            fw2_[q] = a * r_.vol->bx[vb + q]; // x-gradient, eta part
            wsum += r_.vol->wdet[vb + q];
            usum += a;
        }
        double* ex = &rx_[static_cast<std::size_t>(e) * nm];
        double* ez = &rz_[static_cast<std::size_t>(e) * nm];
        kernels::matvec_acc(tab.dxi_t.data(), fw_.data(), nm, nq2, -axe, ex);
        kernels::matvec_acc(tab.deta_t.data(), fw2_.data(), nm, nq2, -1.0, ex);
        for (int q = 0; q < nq2; ++q) fw2_[q] = fw_[q] * r_.vol->cz[vb + q];
        kernels::matvec_acc(tab.deta_t.data(), fw2_.data(), nm, nq2, -1.0, ez);

        for (int m = 0; m < nm; ++m) {
            yx[m] = ex[m];
            yz[m] = ez[m];
        }
        r_.mass_u->chol[e].solve(yx.data());
        r_.mass_u->chol[e].solve(yz.data());
        const Tensor2 d = r_.coeff->d_of_u ? r_.coeff->d_at(usum / wsum) : r_.coeff->d;
        double* cx = qx.elem(e);
        double* cz2 = qz.elem(e);
        for (int m = 0; m < nm; ++m) {
            cx[m] = -(d[0] * yx[m] + d[1] * yz[m]);
            cz2[m] = -(d[1] * yx[m] + d[2] * yz[m]);
        }
    }
}

void FreeflowAssembler::solve_w(const DGField& u, const std::vector<double>& lateral_flux,
                                const std::vector<double>& interface_flux, double t,
                                DGField& w) {
    (void)t;
    const auto& mesh = *r_.mesh;
    const auto& tabw = *r_.tab_w;
    const auto& tabu = *r_.tab_u;
    const int L = mesh.layers;
    const int C = mesh.n_columns();
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int nmw = tabw.n_modes;
    const int nvf = (C + 1) * L;

    rhs_.resize(nmw);
    tm_.resize(nq);
    tp_.resize(nq);
    fw_.resize(std::max(nq, nq2));
    aux_.resize(nq2);
    fw2_.resize(nq2);
    std::vector<double>& f_down = qm_;
    f_down.resize(nq);

    for (int c = 0; c < C; ++c) {
        for (int k = 0; k < L; ++k) {
            const int e = mesh.ff_elem(c, k);
            for (int m = 0; m < nmw; ++m) rhs_[m] = 0.0;

            // lateral faces: the stored flux is in owner orientation
            for (int side = 0; side < 2; ++side) {
                const int vf = (c + side) * L + k;
                const Face& f = mesh.ff_faces[vf];
                const double sign = f.owner == e ? 1.0 : -1.0;
                const int lf = f.owner == e ? f.owner_face : f.neighbor_face;
                const std::size_t base = static_cast<std::size_t>(vf) * nq;
                for (int q = 0; q < nq; ++q)
                    fw_[q] = sign * lateral_flux[base + q] * r_.fgeom->wds[base + q];
                kernels::matvec_acc(tabw.face_val_t[lf].data(), fw_.data(), nmw, nq, 1.0,
                                    rhs_.data());
            }

            // bottom face: interface flux or upwind value from below
            const int hfb = nvf + c * (L + 1) + k;
            {
                const std::size_t base = static_cast<std::size_t>(hfb) * nq;
                if (k == 0) {
                    for (int q = 0; q < nq; ++q)
                        fw_[q] = interface_flux[static_cast<std::size_t>(c) * nq + q] *
                                 r_.fgeom->wds[base + q];
                } else {
                    for (int q = 0; q < nq; ++q)
                        fw_[q] = -f_down[q] * r_.fgeom->wds[base + q];
                }
                kernels::matvec_acc(tabw.face_val_t[face_bottom].data(), fw_.data(), nmw, nq,
                                    1.0, rhs_.data());
            }

            // top face, known u part (the W part of <U.n, sigma> is in the matrix)
            const int hft = nvf + c * (L + 1) + k + 1;
            {
                const std::size_t base = static_cast<std::size_t>(hft) * nq;
                eval_trace(tabu, u, e, face_top, tm_.data());
                for (int q = 0; q < nq; ++q) fw_[q] = tm_[q] * r_.fgeom->wnx[base + q];
                kernels::matvec_acc(tabw.face_val_t[face_top].data(), fw_.data(), nmw, nq,
                                    1.0, rhs_.data());
            }

            // volume: -(u, d_x sigma)
            {
                const std::size_t vb = static_cast<std::size_t>(e) * nq2;
                kernels::matvec(tabu.val.data(), u.elem(e), nq2, tabu.n_modes, aux_.data());
                const double axe = r_.vol->ax[e];
                for (int q = 0; q < nq2; ++q) {
                    const double a = r_.vol->wdet[vb + q] * aux_[q];
                    fw_[q] = a;
                    fw2_[q] = a * r_.vol->bx[vb + q];
                }
                kernels::matvec_acc(tabw.dxi_t.data(), fw_.data(), nmw, nq2, -axe,
                                    rhs_.data());
                kernels::matvec_acc(tabw.deta_t.data(), fw2_.data(), nmw, nq2, -1.0,
                                    rhs_.data());
            }

            // (dx/2) A_ref W + rhs = 0
            const double scale = -r_.vol->ax[e]; // -(2/dx)
            for (int m = 0; m < nmw; ++m) rhs_[m] *= scale;
            r_.w_op->solve(rhs_.data());
            double* cw = w.elem(e);
            for (int m = 0; m < nmw; ++m) cw[m] = rhs_[m];

            // upwind values for the element above
            if (k + 1 < L) {
                const Face& ft = mesh.ff_faces[hft];
                eval_trace(tabu, u, e, face_top, tm_.data());
                eval_trace(tabw, w, e, face_top, tp_.data());
                for (int q = 0; q < nq; ++q) f_down[q] = tm_[q] * ft.nx + tp_[q] * ft.nz;
            }
        }
    }
}

void FreeflowAssembler::pce_rate(const DGField& u, const std::vector<double>& lateral_flux,
                                 const std::vector<double>& interface_flux, double t,
                                 DGField& dxi) {
    const auto& mesh = *r_.mesh;
    const auto& tabx = *r_.tab_xi;
    const auto& tabu = *r_.tab_u;
    const int L = mesh.layers;
    const int C = mesh.n_columns();
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int nmx = tabx.n_modes_1d;
    const int nvf = (C + 1) * L;

    rhs_.assign(static_cast<std::size_t>(C) * nmx, 0.0);
    fw_.resize(std::max(nq, nq2));
    aux_.resize(nq2);
    aux2_.resize(nq);
    src_.resize(nq);

    // lateral faces: the surface test function is constant along each face
    for (int vf = 0; vf < nvf; ++vf) {
        const Face& f = mesh.ff_faces[vf];
        const std::size_t base = static_cast<std::size_t>(vf) * nq;
        double s = 0.0;
        for (int q = 0; q < nq; ++q) s += lateral_flux[base + q] * r_.fgeom->wds[base + q];
        const int own_col = mesh.column_of_ff(f.owner);
        const int own_side = f.owner_face == face_right ? 1 : 0;
        double* ro = &rhs_[static_cast<std::size_t>(own_col) * nmx];
        for (int m = 0; m < nmx; ++m) ro[m] -= s * tabx.end_val[own_side][m];
        if (f.neighbor >= 0) {
            const int nb_col = mesh.column_of_ff(f.neighbor);
            const int nb_side = f.neighbor_face == face_right ? 1 : 0;
            double* rn = &rhs_[static_cast<std::size_t>(nb_col) * nmx];
            for (int m = 0; m < nmx; ++m) rn[m] += s * tabx.end_val[nb_side][m];
        }
    }

    // interface exchange on I_bot
    for (int c = 0; c < C; ++c) {
        const int hfb = nvf + c * (L + 1);
        const std::size_t base = static_cast<std::size_t>(hfb) * nq;
        for (int q = 0; q < nq; ++q)
            fw_[q] = interface_flux[static_cast<std::size_t>(c) * nq + q] *
                     r_.fgeom->wds[base + q];
        kernels::matvec_acc(tabx.val1d_t.data(), fw_.data(), nmx, nq, -1.0,
                            &rhs_[static_cast<std::size_t>(c) * nmx]);
    }

    // volume: +(u, d_x delta) over each column
    for (int e = 0; e < mesh.n_ff_elem(); ++e) {
        const int c = mesh.column_of_ff(e);
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tabu.val.data(), u.elem(e), nq2, tabu.n_modes, aux_.data());
        for (int qx = 0; qx < nq; ++qx) {
            double acc = 0.0;
            for (int qz = 0; qz < nq; ++qz)
                acc += aux_[qx * nq + qz] * r_.vol->wdet[vb + qx * nq + qz];
            aux2_[qx] = acc;
        }
        kernels::matvec_acc(tabx.dx1d_t.data(), aux2_.data(), nmx, nq, r_.vol->ax[e],
                            &rhs_[static_cast<std::size_t>(c) * nmx]);
    }

    // source
    for (int c = 0; c < C; ++c) {
        const std::size_t sb = static_cast<std::size_t>(c) * nq;
        r_.data->pce_source(t, nq, &r_.sgeom->x[sb], src_.data());
        for (int q = 0; q < nq; ++q) fw_[q] = src_[q] * r_.sgeom->wdx[sb + q];
        kernels::matvec_acc(tabx.val1d_t.data(), fw_.data(), nmx, nq, 1.0,
                            &rhs_[static_cast<std::size_t>(c) * nmx]);
    }

    for (int c = 0; c < C; ++c) {
        double* d = dxi.elem(c);
        const double im = r_.sgeom->inv_mass[c];
        for (int m = 0; m < nmx; ++m) d[m] = im * rhs_[static_cast<std::size_t>(c) * nmx + m];
    }
}

void FreeflowAssembler::momentum_rate(const DGField& xi, const DGField& u, const DGField& w,
                                      const DGField& qx, const DGField& qz,
                                      const std::vector<double>& interface_flux,
                                      const std::vector<double>& penalty_rate, double t,
                                      DGField& du) {
    const auto& mesh = *r_.mesh;
    const auto& tabu = *r_.tab_u;
    const auto& tabw = *r_.tab_w;
    const int L = mesh.layers;
    const int C = mesh.n_columns();
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int nm = tabu.n_modes;
    const int nvf = (C + 1) * L;
    const int n_elem = mesh.n_ff_elem();
    const double g = r_.coeff->g;

    eval_xi_columns(xi);
    rhs_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0);
    tm_.resize(nq);
    tp_.resize(nq);
    wm_.resize(nq);
    qm_.resize(nq);
    qp_.resize(nq);
    qzm_.resize(nq);
    qzp_.resize(nq);
    fw_.resize(std::max(nq, nq2));
    src_.resize(std::max(nq, nq2));

    // ---- vertical faces -----------------------------------------------------
    for (int vf = 0; vf < nvf; ++vf) {
        const Face& f = mesh.ff_faces[vf];
        const std::size_t base = static_cast<std::size_t>(vf) * nq;
        const double* wds = &r_.fgeom->wds[base];
        eval_trace(tabu, u, f.owner, f.owner_face, tm_.data());
        eval_trace(tabu, qx, f.owner, f.owner_face, qm_.data());
        if (f.neighbor >= 0) {
            eval_trace(tabu, u, f.neighbor, f.neighbor_face, tp_.data());
            eval_trace(tabu, qx, f.neighbor, f.neighbor_face, qp_.data());
            const double xim = xi_end_[static_cast<std::size_t>(f.column) * 2 + 1];
            const double xip = xi_end_[static_cast<std::size_t>(f.column + 1) * 2 + 0];
            for (int q = 0; q < nq; ++q) {
                const double lam = flux::lambda_interior(tm_[q] * f.nx, tp_[q] * f.nx);
                const double ru =
                    flux::r_u_interior_lateral(tm_[q], tp_[q], xim, xip, lam, f.nx, g);
                const double su = 0.5 * (qm_[q] + qp_[q]) * f.nx;
                fw_[q] = (ru + su) * wds[q];
            }
            kernels::matvec_acc(tabu.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rhs_[static_cast<std::size_t>(f.owner) * nm]);
            kernels::matvec_acc(tabu.face_val_t[f.neighbor_face].data(), fw_.data(), nm, nq,
                                1.0, &rhs_[static_cast<std::size_t>(f.neighbor) * nm]);
        } else {
            eval_boundary(f, vf, t, bdry_);
            const int col = f.column;
            const double xi_own = xi_end_[static_cast<std::size_t>(col) * 2 +
                                          (f.owner_face == face_right ? 1 : 0)];
            for (int q = 0; q < nq; ++q) {
                double ru;
                if (bdry_.inflow[q]) {
                    const double lam = flux::lambda_inflow(tm_[q] * f.nx);
                    ru = flux::r_u_inflow(tm_[q], bdry_.u_hat[q], bdry_.xi_hat[q], lam, f.nx,
                                          g);
                } else {
                    ru = flux::r_u_outflow(tm_[q], bdry_.u_hat[q], xi_own, f.nx, g);
                }
                const double su = qm_[q] * f.nx;
                fw_[q] = (ru + su) * wds[q];
            }
            kernels::matvec_acc(tabu.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rhs_[static_cast<std::size_t>(f.owner) * nm]);
        }
    }

    // ---- horizontal faces ---------------------------------------------------
    for (int c = 0; c < C; ++c) {
        const double* xi_q = &xi_at_xq_[static_cast<std::size_t>(c) * nq];
        for (int k = 0; k <= L; ++k) {
            const int fi = nvf + c * (L + 1) + k;
            const Face& f = mesh.ff_faces[fi];
            const std::size_t base = static_cast<std::size_t>(fi) * nq;
            const double* wds = &r_.fgeom->wds[base];
            eval_trace(tabu, u, f.owner, f.owner_face, tm_.data());
            eval_trace(tabu, qx, f.owner, f.owner_face, qm_.data());
            eval_trace(tabu, qz, f.owner, f.owner_face, qzm_.data());
            if (f.neighbor >= 0) {
                // interior: advective velocity from the element below (owner)
                eval_trace(tabu, u, f.neighbor, f.neighbor_face, tp_.data());
                eval_trace(tabw, w, f.owner, f.owner_face, wm_.data());
                eval_trace(tabu, qx, f.neighbor, f.neighbor_face, qp_.data());
                eval_trace(tabu, qz, f.neighbor, f.neighbor_face, qzp_.data());
                for (int q = 0; q < nq; ++q) {
                    const double ru = flux::r_u_horizontal(tm_[q], tp_[q], tm_[q], wm_[q],
                                                           xi_q[q], f.nx, f.nz, g);
                    const double su = flux::s_u_interior(qm_[q], qzm_[q], qp_[q], qzp_[q],
                                                         f.nx, f.nz);
                    fw_[q] = (ru + su) * wds[q];
                }
                kernels::matvec_acc(tabu.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                    -1.0, &rhs_[static_cast<std::size_t>(f.owner) * nm]);
                kernels::matvec_acc(tabu.face_val_t[f.neighbor_face].data(), fw_.data(), nm,
                                    nq, 1.0, &rhs_[static_cast<std::size_t>(f.neighbor) * nm]);
            } else if (f.cls == FaceClass::top) {
                eval_trace(tabw, w, f.owner, f.owner_face, wm_.data());
                // diffusive boundary flux S_U on I_top (normal constant per face)
                aux_.assign(nq, f.nx);
                aux2_.assign(nq, f.nz);
                r_.data->top_stress(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base],
                                    aux_.data(), aux2_.data(), src_.data());
                for (int q = 0; q < nq; ++q) {
                    const double ru = flux::r_u_top(tm_[q], wm_[q], xi_q[q], f.nx, f.nz, g);
                    fw_[q] = (ru + src_[q]) * wds[q];
                }
                // mesh penalty (n_z/2) d/dt(Xi_s - Xi) U
                if (!penalty_rate.empty()) {
                    const double* rate = &penalty_rate[static_cast<std::size_t>(c) * nq];
                    for (int q = 0; q < nq; ++q)
                        fw_[q] += 0.5 * rate[q] * tm_[q] * r_.fgeom->wnz[base + q];
                }
                kernels::matvec_acc(tabu.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                    -1.0, &rhs_[static_cast<std::size_t>(f.owner) * nm]);
            } else { // bottom: interface flux + friction (or prescribed stress)
                const double* iflux = &interface_flux[static_cast<std::size_t>(c) * nq];
                const bool prescribed = r_.data->prescribes_interface_stress();
                if (prescribed) {
                    aux_.assign(nq, f.nx);
                    aux2_.assign(nq, f.nz);
                    r_.data->top_stress(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base],
                                        aux_.data(), aux2_.data(), src_.data());
                }
                for (int q = 0; q < nq; ++q) {
                    const double ru = flux::r_u_bottom(tm_[q], xi_q[q], iflux[q], f.nx, g);
                    const double su =
                        prescribed ? src_[q] : r_.coeff->friction.stress(tm_[q]);
                    fw_[q] = (ru + su) * wds[q];
                }
                kernels::matvec_acc(tabu.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                    -1.0, &rhs_[static_cast<std::size_t>(f.owner) * nm]);
            }
        }
    }

    // ---- volume terms and mass solve ---------------------------------------
    aux_.resize(nq2);
    aux2_.resize(nq2);
    fw_.resize(nq2);
    fw2_.resize(nq2);
    std::vector<double> wvals(nq2), fu(nq2);
    for (int e = 0; e < n_elem; ++e) {
        const int c = mesh.column_of_ff(e);
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tabu.val.data(), u.elem(e), nq2, nm, aux_.data());
        kernels::matvec(tabw.val.data(), w.elem(e), nq2, tabw.n_modes, wvals.data());
        kernels::matvec(tabu.val.data(), qx.elem(e), nq2, nm, aux2_.data());
        kernels::matvec(tabu.val.data(), qz.elem(e), nq2, nm, fw2_.data());
        // body force, batched per element (x-major layout matches the cache)
        {
            std::vector<double> xs(nq);
            for (int qxi = 0; qxi < nq; ++qxi) xs[qxi] = r_.vol->x[vb + qxi * nq];
            r_.data->momentum_source(t, nq, nq, xs.data(), &r_.vol->z[vb], fu.data());
        }
        const double* xi_q = &xi_at_xq_[static_cast<std::size_t>(c) * nq];
        const double axe = r_.vol->ax[e];
        double* re = &rhs_[static_cast<std::size_t>(e) * nm];
        for (int q = 0; q < nq2; ++q) {
            const double wq = r_.vol->wdet[vb + q];
            const double a = wq * (aux_[q] * aux_[q] + aux2_[q] + g * xi_q[q / nq]);
            const double bz = wq * (aux_[q] * wvals[q] + fw2_[q]);
            fw_[q] = a;
            aux2_[q] = a * r_.vol->bx[vb + q] + bz * r_.vol->cz[vb + q];
            wvals[q] = wq * fu[q];
        }
        kernels::matvec_acc(tabu.dxi_t.data(), fw_.data(), nm, nq2, axe, re);
        kernels::matvec_acc(tabu.deta_t.data(), aux2_.data(), nm, nq2, 1.0, re);
        kernels::matvec_acc(tabu.val_t.data(), wvals.data(), nm, nq2, 1.0, re);

        double* d = du.elem(e);
        for (int m = 0; m < nm; ++m) d[m] = re[m];
        r_.mass_u->chol[e].solve(d);
    }
}

double FreeflowAssembler::lambda_jump_dissipation(const DGField& u) {
    const auto& mesh = *r_.mesh;
    const int nq = r_.fgeom->nq1;
    const int nvf = n_vertical_faces();
    tm_.resize(nq);
    tp_.resize(nq);
    double acc = 0.0;
    for (int vf = 0; vf < nvf; ++vf) {
        const Face& f = mesh.ff_faces[vf];
        if (f.neighbor < 0) continue;
        const std::size_t base = static_cast<std::size_t>(vf) * nq;
        eval_trace(*r_.tab_u, u, f.owner, f.owner_face, tm_.data());
        eval_trace(*r_.tab_u, u, f.neighbor, f.neighbor_face, tp_.data());
        for (int q = 0; q < nq; ++q) {
            const double lam = flux::lambda_interior(tm_[q] * f.nx, tp_[q] * f.nx);
            const double j = tm_[q] - tp_[q];
            acc += 0.5 * lam * j * j * r_.fgeom->wds[base + q];
        }
    }
    return acc;
}

double FreeflowAssembler::friction_dissipation(const DGField& u) {
    const auto& mesh = *r_.mesh;
    const int nq = r_.fgeom->nq1;
    const int L = mesh.layers;
    const int nvf = n_vertical_faces();
    tm_.resize(nq);
    double acc = 0.0;
    for (int c = 0; c < mesh.n_columns(); ++c) {
        const int fi = nvf + c * (L + 1);
        const Face& f = mesh.ff_faces[fi];
        const std::size_t base = static_cast<std::size_t>(fi) * nq;
        eval_trace(*r_.tab_u, u, f.owner, f.owner_face, tm_.data());
        for (int q = 0; q < nq; ++q)
            acc += r_.coeff->friction.stress(tm_[q]) * tm_[q] * r_.fgeom->wds[base + q];
    }
    return acc;
}

double FreeflowAssembler::q_dissipation(const DGField& u, const DGField& qx,
                                        const DGField& qz) {
    const auto& tab = *r_.tab_u;
    const int nm = tab.n_modes;
    const int nq2 = r_.vol->nq2;
    aux_.resize(nq2);
    aux2_.resize(nq2);
    fw_.resize(nq2);
    double acc = 0.0;
    for (int e = 0; e < r_.vol->n_elem; ++e) {
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tab.val.data(), qx.elem(e), nq2, nm, aux_.data());
        kernels::matvec(tab.val.data(), qz.elem(e), nq2, nm, aux2_.data());
        Tensor2 d = r_.coeff->d;
        if (r_.coeff->d_of_u) {
            kernels::matvec(tab.val.data(), u.elem(e), nq2, nm, fw_.data());
            double wsum = 0.0, usum = 0.0;
            for (int q = 0; q < nq2; ++q) {
                wsum += r_.vol->wdet[vb + q];
                usum += r_.vol->wdet[vb + q] * fw_[q];
            }
            d = r_.coeff->d_at(usum / wsum);
        }
        for (int q = 0; q < nq2; ++q) {
            double ix, iz;
            apply_tensor_inverse(d, aux_[q], aux2_[q], ix, iz);
            acc += r_.vol->wdet[vb + q] * (ix * aux_[q] + iz * aux2_[q]);
        }
    }
    return acc;
}

} // namespace ldgflow
