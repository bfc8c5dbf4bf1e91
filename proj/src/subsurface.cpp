#include "ldgflow/subsurface.hpp"

#include "ldgflow/kernels.hpp"

#include <cmath>

namespace ldgflow {

namespace {
inline void eval_trace(const BasisTables& tab, const DGField& f, int e, int local_face,
                       double* out) {
    kernels::matvec(tab.face_val[local_face].data(), f.elem(e), tab.nq1, tab.n_modes, out);
}
} // namespace

void DarcyAssembler::solve_flux(const DGField& head, const std::vector<double>& interface_head,
                                double t, DGField& ux, DGField& uz) {
    const auto& mesh = *r_.mesh;
    const auto& tabh = *r_.tab_h;
    const auto& tabq = *r_.tab_q;
    const int nm = tabq.n_modes;
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int n_elem = mesh.n_darcy_elem();

    rx_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0);
    rz_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0);
    tm_.resize(nq);
    tp_.resize(nq);
    fw_.resize(nq);
    fw2_.resize(nq);
    src_.resize(nq);

    // E_U~ face terms: {H~} on interior, h-hat on Dirichlet, one-sided trace
    // on Neumann, the free-flow dynamic head on the interface
    for (std::size_t fi = 0; fi < mesh.darcy_faces.size(); ++fi) {
        const Face& f = mesh.darcy_faces[fi];
        const std::size_t base = fi * nq;
        const double* wnx = &r_.fgeom->wnx[base];
        const double* wnz = &r_.fgeom->wnz[base];
        if (f.neighbor >= 0) {
            eval_trace(tabh, head, f.owner, f.owner_face, tm_.data());
            eval_trace(tabh, head, f.neighbor, f.neighbor_face, tp_.data());
            for (int q = 0; q < nq; ++q) src_[q] = 0.5 * (tm_[q] + tp_[q]);
        } else if (f.cls == FaceClass::darcy_top) {
            const double* ih = &interface_head[static_cast<std::size_t>(f.column) * nq];
            for (int q = 0; q < nq; ++q) src_[q] = ih[q];
        } else if (f.cls == FaceClass::darcy_dirichlet) {
            r_.data->darcy_head(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base], src_.data());
        } else { // Neumann: interior head trace
            eval_trace(tabh, head, f.owner, f.owner_face, src_.data());
        }
        for (int q = 0; q < nq; ++q) {
            fw_[q] = src_[q] * wnx[q];
            fw2_[q] = src_[q] * wnz[q];
        }
        double* ex = &rx_[static_cast<std::size_t>(f.owner) * nm];
        double* ez = &rz_[static_cast<std::size_t>(f.owner) * nm];
        kernels::matvec_acc(tabq.face_val_t[f.owner_face].data(), fw_.data(), nm, nq, 1.0, ex);
        kernels::matvec_acc(tabq.face_val_t[f.owner_face].data(), fw2_.data(), nm, nq, 1.0,
                            ez);
        if (f.neighbor >= 0) {
            double* nx_ = &rx_[static_cast<std::size_t>(f.neighbor) * nm];
            double* nz_ = &rz_[static_cast<std::size_t>(f.neighbor) * nm];
            kernels::matvec_acc(tabq.face_val_t[f.neighbor_face].data(), fw_.data(), nm, nq,
                                -1.0, nx_);
            kernels::matvec_acc(tabq.face_val_t[f.neighbor_face].data(), fw2_.data(), nm, nq,
                                -1.0, nz_);
        }
    }

    // volume term -(H~, grad . psi) and local solves
    aux_.resize(nq2);
    fw_.resize(nq2);
    fw2_.resize(nq2);
    std::vector<double>& yx = tm_;
    std::vector<double>& yz = tp_;
    yx.resize(nm);
    yz.resize(nm);
    for (int e = 0; e < n_elem; ++e) {
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tabh.val.data(), head.elem(e), nq2, tabh.n_modes, aux_.data());
        const double axe = r_.vol->ax[e];
        double wsum = 0.0, hsum = 0.0;
        for (int q = 0; q < nq2; ++q) {
            const double a = r_.vol->wdet[vb + q] * aux_[q];
            fw_[q] = a;
            fw2_[q] = a * r_.vol->bx[vb + q];
            wsum += r_.vol->wdet[vb + q];
            hsum += a;
        }
        double* ex = &rx_[static_cast<std::size_t>(e) * nm];
        double* ez = &rz_[static_cast<std::size_t>(e) * nm];
        kernels::matvec_acc(tabq.dxi_t.data(), fw_.data(), nm, nq2, -axe, ex);
        kernels::matvec_acc(tabq.deta_t.data(), fw2_.data(), nm, nq2, -1.0, ex);
        for (int q = 0; q < nq2; ++q) fw2_[q] = fw_[q] * r_.vol->cz[vb + q];
        kernels::matvec_acc(tabq.deta_t.data(), fw2_.data(), nm, nq2, -1.0, ez);

        for (int m = 0; m < nm; ++m) {
            yx[m] = ex[m];
            yz[m] = ez[m];
        }
        r_.mass_q->chol[e].solve(yx.data());
        r_.mass_q->chol[e].solve(yz.data());
        const Tensor2 d =
            r_.coeff->d_of_h ? r_.coeff->d_at(hsum / wsum) : r_.coeff->d;
        double* cx = ux.elem(e);
        double* cz = uz.elem(e);
        for (int m = 0; m < nm; ++m) {
            cx[m] = -(d[0] * yx[m] + d[1] * yz[m]);
            cz[m] = -(d[1] * yx[m] + d[2] * yz[m]);
        }
    }
}

void DarcyAssembler::head_rate(const DGField& head, const DGField& ux, const DGField& uz,
                               const std::vector<double>& interface_flux_ff, double t,
                               DGField& dhead) {
    const auto& mesh = *r_.mesh;
    const auto& tabh = *r_.tab_h;
    const auto& tabq = *r_.tab_q;
    const int nm = tabh.n_modes;
    const int nq = r_.fgeom->nq1;
    const int nq2 = r_.vol->nq2;
    const int n_elem = mesh.n_darcy_elem();
    const double eta = r_.coeff->eta;

    rx_.assign(static_cast<std::size_t>(n_elem) * nm, 0.0); // rhs
    tm_.resize(nq);
    tp_.resize(nq);
    um_.resize(nq);
    up_.resize(nq);
    vm_.resize(nq);
    vp_.resize(nq);
    fw_.resize(nq);
    src_.resize(std::max(nq, nq2));

    for (std::size_t fi = 0; fi < mesh.darcy_faces.size(); ++fi) {
        const Face& f = mesh.darcy_faces[fi];
        const std::size_t base = fi * nq;
        const double* wds = &r_.fgeom->wds[base];
        const double pen = eta / f.length;
        if (f.neighbor >= 0) {
            eval_trace(tabq, ux, f.owner, f.owner_face, um_.data());
            eval_trace(tabq, uz, f.owner, f.owner_face, vm_.data());
            eval_trace(tabq, ux, f.neighbor, f.neighbor_face, up_.data());
            eval_trace(tabq, uz, f.neighbor, f.neighbor_face, vp_.data());
            eval_trace(tabh, head, f.owner, f.owner_face, tm_.data());
            eval_trace(tabh, head, f.neighbor, f.neighbor_face, tp_.data());
            for (int q = 0; q < nq; ++q) {
                const double un = 0.5 * ((um_[q] + up_[q]) * f.nx + (vm_[q] + vp_[q]) * f.nz);
                fw_[q] = (un + pen * (tm_[q] - tp_[q])) * wds[q];
            }
            kernels::matvec_acc(tabh.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rx_[static_cast<std::size_t>(f.owner) * nm]);
            kernels::matvec_acc(tabh.face_val_t[f.neighbor_face].data(), fw_.data(), nm, nq,
                                1.0, &rx_[static_cast<std::size_t>(f.neighbor) * nm]);
        } else if (f.cls == FaceClass::darcy_neumann) {
            tm_.assign(nq, f.nx);
            tp_.assign(nq, f.nz);
            r_.data->darcy_flux(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base], tm_.data(),
                                tp_.data(), src_.data());
            for (int q = 0; q < nq; ++q) fw_[q] = src_[q] * wds[q];
            kernels::matvec_acc(tabh.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rx_[static_cast<std::size_t>(f.owner) * nm]);
        } else if (f.cls == FaceClass::darcy_top) {
            // the exchanged flux, stored in free-flow orientation (n~ = -n)
            const double* iflux = &interface_flux_ff[static_cast<std::size_t>(f.column) * nq];
            for (int q = 0; q < nq; ++q) fw_[q] = -iflux[q] * wds[q];
            kernels::matvec_acc(tabh.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rx_[static_cast<std::size_t>(f.owner) * nm]);
        } else {
            // one-sided velocity flux on Dirichlet faces
            eval_trace(tabq, ux, f.owner, f.owner_face, um_.data());
            eval_trace(tabq, uz, f.owner, f.owner_face, vm_.data());
            for (int q = 0; q < nq; ++q) fw_[q] = (um_[q] * f.nx + vm_[q] * f.nz) * wds[q];
            if (f.cls == FaceClass::darcy_dirichlet) {
                eval_trace(tabh, head, f.owner, f.owner_face, tm_.data());
                r_.data->darcy_head(t, nq, &r_.fgeom->x[base], &r_.fgeom->z[base],
                                    src_.data());
                for (int q = 0; q < nq; ++q)
                    fw_[q] += pen * (tm_[q] - src_[q]) * wds[q];
            }
            kernels::matvec_acc(tabh.face_val_t[f.owner_face].data(), fw_.data(), nm, nq,
                                -1.0, &rx_[static_cast<std::size_t>(f.owner) * nm]);
        }
    }

    // volume advection of the flux and the source term
    aux_.resize(nq2);
    aux2_.resize(nq2);
    fw_.resize(nq2);
    fw2_.resize(nq2);
    std::vector<double> fsrc(nq2), xs(nq);
    for (int e = 0; e < n_elem; ++e) {
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tabq.val.data(), ux.elem(e), nq2, tabq.n_modes, aux_.data());
        kernels::matvec(tabq.val.data(), uz.elem(e), nq2, tabq.n_modes, aux2_.data());
        for (int qxi = 0; qxi < nq; ++qxi) xs[qxi] = r_.vol->x[vb + qxi * nq];
        r_.data->darcy_source(t, nq, nq, xs.data(), &r_.vol->z[vb], fsrc.data());
        const double axe = r_.vol->ax[e];
        double* re = &rx_[static_cast<std::size_t>(e) * nm];
        for (int q = 0; q < nq2; ++q) {
            const double wq = r_.vol->wdet[vb + q];
            fw_[q] = wq * aux_[q];
            fw2_[q] = wq * (aux_[q] * r_.vol->bx[vb + q] + aux2_[q] * r_.vol->cz[vb + q]);
            fsrc[q] *= wq;
        }
        kernels::matvec_acc(tabh.dxi_t.data(), fw_.data(), nm, nq2, axe, re);
        kernels::matvec_acc(tabh.deta_t.data(), fw2_.data(), nm, nq2, 1.0, re);
        kernels::matvec_acc(tabh.val_t.data(), fsrc.data(), nm, nq2, 1.0, re);

        double* d = dhead.elem(e);
        for (int m = 0; m < nm; ++m) d[m] = re[m];
        r_.mass_h->chol[e].solve(d);
    }
}

double DarcyAssembler::velocity_dissipation(const DGField& head, const DGField& ux,
                                            const DGField& uz) {
    const auto& tabq = *r_.tab_q;
    const auto& tabh = *r_.tab_h;
    const int nq2 = r_.vol->nq2;
    aux_.resize(nq2);
    aux2_.resize(nq2);
    fw_.resize(nq2);
    double acc = 0.0;
    for (int e = 0; e < r_.vol->n_elem; ++e) {
        const std::size_t vb = static_cast<std::size_t>(e) * nq2;
        kernels::matvec(tabq.val.data(), ux.elem(e), nq2, tabq.n_modes, aux_.data());
        kernels::matvec(tabq.val.data(), uz.elem(e), nq2, tabq.n_modes, aux2_.data());
        Tensor2 d = r_.coeff->d;
        if (r_.coeff->d_of_h) {
            kernels::matvec(tabh.val.data(), head.elem(e), nq2, tabh.n_modes, fw_.data());
            double wsum = 0.0, hsum = 0.0;
            for (int q = 0; q < nq2; ++q) {
                wsum += r_.vol->wdet[vb + q];
                hsum += r_.vol->wdet[vb + q] * fw_[q];
            }
            d = r_.coeff->d_at(hsum / wsum);
        }
        for (int q = 0; q < nq2; ++q) {
            double ix, iz;
            apply_tensor_inverse(d, aux_[q], aux2_[q], ix, iz);
            acc += r_.vol->wdet[vb + q] * (ix * aux_[q] + iz * aux2_[q]);
        }
    }
    return acc;
}

double DarcyAssembler::head_jump_dissipation(const DGField& head) {
    const auto& mesh = *r_.mesh;
    const auto& tabh = *r_.tab_h;
    const int nq = r_.fgeom->nq1;
    tm_.resize(nq);
    tp_.resize(nq);
    double acc = 0.0;
    for (std::size_t fi = 0; fi < mesh.darcy_faces.size(); ++fi) {
        const Face& f = mesh.darcy_faces[fi];
        if (f.neighbor < 0) continue;
        const std::size_t base = fi * nq;
        eval_trace(tabh, head, f.owner, f.owner_face, tm_.data());
        eval_trace(tabh, head, f.neighbor, f.neighbor_face, tp_.data());
        const double pen = r_.coeff->eta / f.length;
        for (int q = 0; q < nq; ++q) {
            const double j = tm_[q] - tp_[q];
            acc += pen * j * j * r_.fgeom->wds[base + q];
        }
    }
    return acc;
}

} // namespace ldgflow
