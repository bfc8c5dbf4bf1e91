#include "ldgflow/coupling.hpp"

#include "ldgflow/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldgflow {

double interface_dynamic_head(double xi_trace, double u_trace, double g) {
    return xi_trace + u_trace * u_trace / (2.0 * g);
}

double interface_friction(double u_trace, const FrictionSpec& spec) {
    spec.validate();
    return spec.stress(u_trace);
}

namespace {
int max_order(const SimulationConfig& c) {
    int m = c.order_u;
    m = std::max(m, c.order_w);
    m = std::max(m, c.order_xi);
    m = std::max(m, c.order_head);
    m = std::max(m, c.order_flux);
    return m;
}
} // namespace

Simulation::Simulation(const SimulationConfig& cfg, std::shared_ptr<const ProblemData> data)
    : cfg_(cfg), data_(std::move(data)), disc_(max_order(cfg)) {
    if (cfg_.subcycles < 1)
        throw std::invalid_argument("Simulation: subcycle count must be positive");
    cfg_.hydro.friction.validate();
    if (!(cfg_.darcy.eta > 0.0))
        throw std::invalid_argument("Simulation: penalty eta must be positive");

    tab_u_ = &disc_.tab(cfg_.order_u);
    tab_w_ = &disc_.tab(cfg_.order_w);
    tab_xi_ = &disc_.tab(cfg_.order_xi);
    tab_h_ = &disc_.tab(cfg_.order_head);
    tab_q_ = &disc_.tab(cfg_.order_flux);

    mesh_ = build_layered_mesh(cfg_.mesh, [&](double x) { return data_->initial_xi(x); });

    build_surface_geom(mesh_.surface, disc_.rule(), sgeom_);
    build_volume_geom(mesh_, true, disc_.rule(), darcy_vol_);
    build_face_geom(mesh_.darcy_faces, disc_.rule(), darcy_fgeom_);
    mass_h_.build(*tab_h_, darcy_vol_);
    mass_q_.build(*tab_q_, darcy_vol_);
    w_op_ = build_w_reference_operator(*tab_w_);

    state_.time = cfg_.t0;
    state_.xi = DGField("xi", MeshComponent::surface, cfg_.order_xi, mesh_.n_columns(),
                        mesh_.id);
    state_.u = DGField("u", MeshComponent::freeflow, cfg_.order_u, mesh_.n_ff_elem(),
                       mesh_.id);
    state_.w = DGField("w", MeshComponent::freeflow, cfg_.order_w, mesh_.n_ff_elem(),
                       mesh_.id);
    state_.qx = DGField("qx", MeshComponent::freeflow, cfg_.order_u, mesh_.n_ff_elem(),
                        mesh_.id);
    state_.qz = DGField("qz", MeshComponent::freeflow, cfg_.order_u, mesh_.n_ff_elem(),
                        mesh_.id);
    state_.head = DGField("head", MeshComponent::darcy, cfg_.order_head,
                          mesh_.n_darcy_elem(), mesh_.id);
    state_.darcy_ux = DGField("darcy_u", MeshComponent::darcy, cfg_.order_flux,
                              mesh_.n_darcy_elem(), mesh_.id);
    state_.darcy_uz = DGField("darcy_w", MeshComponent::darcy, cfg_.order_flux,
                              mesh_.n_darcy_elem(), mesh_.id);
    dxi_ = state_.xi;
    du_ = state_.u;
    dhead_ = state_.head;

    // project the initial surface elevation, then conform the mesh to its
    // smoothed representation before projecting the velocity
    project_l2_surface([&](double x) { return data_->initial_xi(x); }, *tab_xi_, sgeom_,
                       state_.xi);
    rebuild_ff_geometry();
    move_mesh_to_smoothed();

    project_l2([&](double x, double z) { return data_->initial_u(x, z); }, *tab_u_, ff_vol_,
               state_.u);
    project_l2([&](double x, double z) { return data_->initial_head(x, z); }, *tab_h_,
               darcy_vol_, state_.head);

    FreeflowAssembler::Refs fr;
    fr.mesh = &mesh_;
    fr.vol = &ff_vol_;
    fr.fgeom = &ff_fgeom_;
    fr.sgeom = &sgeom_;
    fr.tab_u = tab_u_;
    fr.tab_w = tab_w_;
    fr.tab_xi = tab_xi_;
    fr.mass_u = &mass_u_;
    fr.w_op = &w_op_;
    fr.coeff = &cfg_.hydro;
    fr.data = data_.get();
    fr.pce_xi_penalty = cfg_.pce_xi_penalty;
    ff_ = std::make_unique<FreeflowAssembler>(fr);

    DarcyAssembler::Refs dr;
    dr.mesh = &mesh_;
    dr.vol = &darcy_vol_;
    dr.fgeom = &darcy_fgeom_;
    dr.tab_h = tab_h_;
    dr.tab_q = tab_q_;
    dr.mass_h = &mass_h_;
    dr.mass_q = &mass_q_;
    dr.coeff = &cfg_.darcy;
    dr.data = data_.get();
    da_ = std::make_unique<DarcyAssembler>(dr);

    const int C = mesh_.n_columns();
    const int nq = disc_.rule().size();
    iface_flux_.assign(static_cast<std::size_t>(C) * nq, 0.0);
    iface_head_.assign(iface_flux_.size(), 0.0);
    penalty_rate_.assign(iface_flux_.size(), 0.0);
    gap_prev_.assign(iface_flux_.size(), 0.0);

    // initial diagnostic solves: U~ from the initial head and dynamic head,
    // then Q and W from the initial velocity and interface flux
    compute_interface_head();
    da_->solve_flux(state_.head, iface_head_, state_.time, state_.darcy_ux, state_.darcy_uz);
    refresh_diagnostics();
    update_penalty_rate(0.0); // seeds the gap; first-step rate stays zero
}

void Simulation::rebuild_ff_geometry() {
    build_volume_geom(mesh_, false, disc_.rule(), ff_vol_);
    build_face_geom(mesh_.ff_faces, disc_.rule(), ff_fgeom_);
    mass_u_.build(*tab_u_, ff_vol_);
}

std::vector<bool> Simulation::inflow_node_tags(double t) const {
    const int C = mesh_.n_columns();
    std::vector<bool> tags(C + 1, false);
    auto tag_side = [&](int node, LateralPolicy policy, double nx) {
        if (policy == LateralPolicy::inflow) {
            tags[node] = true;
        } else if (policy == LateralPolicy::auto_classify) {
            const double x = mesh_.surface.node_x[node];
            const double z = mesh_.xis_node[node];
            double uh = 0.0;
            data_->lateral_velocity(t, 1, &x, &z, &uh);
            tags[node] = uh * nx <= 0.0;
        }
    };
    tag_side(0, mesh_.spec.left, -1.0);
    tag_side(C, mesh_.spec.right, 1.0);
    return tags;
}

void Simulation::move_mesh_to_smoothed() {
    const double t = state_.time;
    auto xis = smooth_free_surface(state_.xi, mesh_.surface, inflow_node_tags(t),
                                   [&](double x) { return data_->inflow_elevation_at(t, x); });
    mesh_.move(xis);
    rebuild_ff_geometry();
}

void Simulation::update_penalty_rate(double dt) {
    const int C = mesh_.n_columns();
    const int nq = disc_.rule().size();
    const int nmx = tab_xi_->n_modes_1d;
    for (int c = 0; c < C; ++c) {
        const double xis_l = mesh_.xis_node[c], xis_r = mesh_.xis_node[c + 1];
        for (int q = 0; q < nq; ++q) {
            const double ref = disc_.rule().points[q]; // [-1,1] along the column
            const double xis = 0.5 * (xis_l + xis_r) + 0.5 * (xis_r - xis_l) * ref;
            double xi_h = 0.0;
            const double* coef = state_.xi.elem(c);
            for (int m = 0; m < nmx; ++m)
                xi_h += coef[m] * tab_xi_->val1d[q * nmx + m];
            const std::size_t i = static_cast<std::size_t>(c) * nq + q;
            const double gap = xis - xi_h;
            penalty_rate_[i] = dt > 0.0 ? (gap - gap_prev_[i]) / dt : 0.0;
            gap_prev_[i] = gap;
        }
    }
}

void Simulation::compute_interface_head() {
    const int C = mesh_.n_columns();
    const int nq = disc_.rule().size();
    std::vector<double> u_trace(nq);
    for (int c = 0; c < C; ++c) {
        const int fi = mesh_.interface_ff[c];
        const Face& f = mesh_.ff_faces[fi];
        kernels::matvec(tab_u_->face_val[f.owner_face].data(), state_.u.elem(f.owner),
                        nq, tab_u_->n_modes, u_trace.data());
        for (int q = 0; q < nq; ++q) {
            double xi_h = 0.0;
            const double* coef = state_.xi.elem(c);
            for (int m = 0; m < tab_xi_->n_modes_1d; ++m)
                xi_h += coef[m] * tab_xi_->val1d[q * tab_xi_->n_modes_1d + m];
            iface_head_[static_cast<std::size_t>(c) * nq + q] =
                interface_dynamic_head(xi_h, u_trace[q], cfg_.hydro.g);
        }
    }
}

void Simulation::freeze_interface_flux() {
    const int C = mesh_.n_columns();
    const int nq = disc_.rule().size();
    std::vector<double> ux_t(nq), uz_t(nq);
    for (int c = 0; c < C; ++c) {
        const int fi = mesh_.interface_darcy[c];
        const Face& f = mesh_.darcy_faces[fi];
        kernels::matvec(tab_q_->face_val[f.owner_face].data(), state_.darcy_ux.elem(f.owner),
                        nq, tab_q_->n_modes, ux_t.data());
        kernels::matvec(tab_q_->face_val[f.owner_face].data(), state_.darcy_uz.elem(f.owner),
                        nq, tab_q_->n_modes, uz_t.data());
        for (int q = 0; q < nq; ++q) {
            // single exchanged value; free-flow orientation is n = -n~
            const double un_darcy = ux_t[q] * f.nx + uz_t[q] * f.nz;
            iface_flux_[static_cast<std::size_t>(c) * nq + q] = -un_darcy;
        }
    }
}

void Simulation::guard(const char* where) const {
    const double lim = cfg_.max_coefficient;
    if (state_.xi.max_abs() > lim || state_.u.max_abs() > lim ||
        state_.head.max_abs() > lim)
        throw std::runtime_error(
            "instability detected (" + std::string(where) + ") at coupled step " +
            std::to_string(coupled_steps_) + ", t = " + std::to_string(state_.time));
}

void Simulation::free_flow_substep() {
    const double dt = cfg_.dt;
    const double t = state_.time;
    guard("free-flow substep");
    ff_->lateral_u_flux(state_.xi, state_.u, t, lat_flux_);
    ff_->solve_q(state_.u, t, state_.qx, state_.qz);
    ff_->solve_w(state_.u, lat_flux_, iface_flux_, t, state_.w);
    ff_->pce_rate(state_.u, lat_flux_, iface_flux_, t, dxi_);
    ff_->momentum_rate(state_.xi, state_.u, state_.w, state_.qx, state_.qz, iface_flux_,
                       penalty_rate_, t, du_);
    for (std::size_t i = 0; i < state_.xi.coef.size(); ++i)
        state_.xi.coef[i] += dt * dxi_.coef[i];
    for (std::size_t i = 0; i < state_.u.coef.size(); ++i)
        state_.u.coef[i] += dt * du_.coef[i];
    state_.time = t + dt;
    ++substeps_;
    guard("free-flow substep");
    try {
        move_mesh_to_smoothed();
    } catch (const std::exception& ex) {
        throw std::runtime_error(std::string(ex.what()) + " at coupled step " +
                                 std::to_string(coupled_steps_) + ", substep " +
                                 std::to_string(substeps_));
    }
    update_penalty_rate(dt);
}

void Simulation::darcy_substep() {
    const double dt_darcy = cfg_.dt * cfg_.subcycles;
    const double t_old = state_.time - dt_darcy; // Darcy data at its own level
    compute_interface_head();
    da_->solve_flux(state_.head, iface_head_, t_old, state_.darcy_ux, state_.darcy_uz);
    da_->head_rate(state_.head, state_.darcy_ux, state_.darcy_uz, iface_flux_, t_old,
                   dhead_);
    for (std::size_t i = 0; i < state_.head.coef.size(); ++i)
        state_.head.coef[i] += dt_darcy * dhead_.coef[i];
}

void Simulation::refresh_diagnostics() {
    freeze_interface_flux();
    ff_->lateral_u_flux(state_.xi, state_.u, state_.time, lat_flux_);
    ff_->solve_q(state_.u, state_.time, state_.qx, state_.qz);
    ff_->solve_w(state_.u, lat_flux_, iface_flux_, state_.time, state_.w);
}

const EnergyBudget& Simulation::coupled_step() {
    freeze_interface_flux();
    for (int i = 0; i < cfg_.subcycles; ++i) free_flow_substep();
    darcy_substep();
    ++coupled_steps_;
    guard("coupled step");
    // diagnostics consistent with the post-step state, also used for logging
    refresh_diagnostics();
    budget_ = energy_budget();
    return budget_;
}

EnergyBudget Simulation::energy_budget() {
    EnergyBudget b;
    b.time = state_.time;
    b.xi_sq = l2_norm_sq_surface(state_.xi, *tab_xi_, sgeom_);
    b.u_sq = l2_norm_sq(state_.u, *tab_u_, ff_vol_);
    b.head_sq = l2_norm_sq(state_.head, *tab_h_, darcy_vol_);
    b.q_diss = ff_->q_dissipation(state_.u, state_.qx, state_.qz);
    b.lambda_jump = ff_->lambda_jump_dissipation(state_.u);
    b.friction = ff_->friction_dissipation(state_.u);
    b.darcy_diss = da_->velocity_dissipation(state_.head, state_.darcy_ux, state_.darcy_uz);
    b.head_jump = da_->head_jump_dissipation(state_.head);

    // interface transfer <Xi + |U|^2/2g, U~ . n> with the current exchange flux
    const int C = mesh_.n_columns();
    const int nq = disc_.rule().size();
    std::vector<double> u_trace(nq);
    double transfer = 0.0;
    for (int c = 0; c < C; ++c) {
        const int fi = mesh_.interface_ff[c];
        const Face& f = mesh_.ff_faces[fi];
        const std::size_t base = static_cast<std::size_t>(fi) * nq;
        kernels::matvec(tab_u_->face_val[f.owner_face].data(), state_.u.elem(f.owner), nq,
                        tab_u_->n_modes, u_trace.data());
        for (int q = 0; q < nq; ++q) {
            double xi_h = 0.0;
            const double* coef = state_.xi.elem(c);
            for (int m = 0; m < tab_xi_->n_modes_1d; ++m)
                xi_h += coef[m] * tab_xi_->val1d[q * tab_xi_->n_modes_1d + m];
            transfer += interface_dynamic_head(xi_h, u_trace[q], cfg_.hydro.g) *
                        iface_flux_[static_cast<std::size_t>(c) * nq + q] *
                        ff_fgeom_.wds[base + q];
        }
    }
    b.transfer = transfer;

    auto check = [](double v, const char* name) {
        if (v < -1e-12 * (1.0 + std::abs(v)))
            throw std::runtime_error(std::string("energy budget: dissipation term ") + name +
                                     " is negative");
    };
    check(b.q_diss, "q");
    check(b.lambda_jump, "lambda_jump");
    check(b.friction, "friction");
    check(b.darcy_diss, "darcy");
    check(b.head_jump, "head_jump");
    return b;
}

double Simulation::error_vs(const PointFn& exact, const DGField& field) const {
    if (field.component == MeshComponent::freeflow)
        return l2_error(field, exact, field.order == cfg_.order_u ? *tab_u_ : *tab_w_,
                        ff_vol_);
    if (field.component == MeshComponent::darcy)
        return l2_error(field, exact, field.order == cfg_.order_head ? *tab_h_ : *tab_q_,
                        darcy_vol_);
    throw std::invalid_argument("error_vs: use error_vs_surface for surface fields");
}

double Simulation::error_vs_surface(const LineFn& exact) const {
    return l2_error_surface(state_.xi, exact, *tab_xi_, sgeom_);
}

double Simulation::xi_volume() { return integrate_surface(state_.xi, *tab_xi_, sgeom_); }

double Simulation::head_volume() { return integrate(state_.head, *tab_h_, darcy_vol_); }

} // namespace ldgflow
