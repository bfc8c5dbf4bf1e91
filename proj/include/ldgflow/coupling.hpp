/**
 * @file coupling.hpp
 * @brief Interface data exchange, the subcycled coupled time loop, and the
 *        discrete energy-budget monitor.
 *
 * One coupled step advances the system by the Darcy step dt~ = subcycles*dt:
 * the Darcy normal flux is frozen from the current subsurface state, the free
 * flow takes `subcycles` explicit steps (each re-solving Q and W, updating Xi
 * and U, then smoothing and moving the mesh), the dynamic head is taken from
 * the end-of-subcycle free-flow state, and the subsurface takes one explicit
 * step.  The coinciding interface faces share one quadrature rule, and each
 * exchanged value is computed once and reused sign-flipped, which makes the
 * discrete volume exchange cancel exactly.
 */
#pragma once

#include "ldgflow/dgops.hpp"
#include "ldgflow/field.hpp"
#include "ldgflow/freeflow.hpp"
#include "ldgflow/geom.hpp"
#include "ldgflow/mesh.hpp"
#include "ldgflow/problem.hpp"
#include "ldgflow/subsurface.hpp"

#include <memory>
#include <vector>

namespace ldgflow {

/// Dynamic head transferred to the subsurface: xi + |u|^2 / (2g).
double interface_dynamic_head(double xi_trace, double u_trace, double g);

/// Friction stress C_f(u) u applied as the bottom viscous flux.
double interface_friction(double u_trace, const FrictionSpec& spec);

/// Quadratic terms of the discrete stability statement, logged per coupled step.
struct EnergyBudget {
    double time = 0;
    double xi_sq = 0;        // ||Xi||^2 over the surface domain
    double u_sq = 0;         // ||U||^2 over the free-flow domain
    double head_sq = 0;      // ||H~||^2 over the subsurface
    double q_diss = 0;       // ||sqrt(D^-1) Q||^2
    double lambda_jump = 0;  // sum (lambda/2) ||[U]||^2 over I_lat
    double friction = 0;     // <C_f(U) U, U> over I_bot
    double darcy_diss = 0;   // ||sqrt(D~^-1) U~||^2
    double head_jump = 0;    // sum (eta/dx) ||[H~]||^2 over interior faces
    double transfer = 0;     // <Xi + |U|^2/2g, U~ . n> over I_bot (signed)

    double total() const { return xi_sq + u_sq + head_sq; }
};

struct SimulationConfig {
    MeshSpec mesh;
    int order_u = 1, order_w = 2, order_xi = 2;
    int order_head = 1, order_flux = 1;
    double dt = 0.01;
    int subcycles = 10; // dt~ = subcycles * dt
    HydroCoefficients hydro;
    DarcyCoefficients darcy;
    double max_coefficient = 1e12; // instability guard
    bool pce_xi_penalty = true;    // standard-LF elevation penalty in R_H
    double t0 = 0.0;
};

/// All unknowns of the coupled system at one time level.
struct CoupledState {
    DGField xi, u, w, qx, qz;          // free flow
    DGField head, darcy_ux, darcy_uz;  // subsurface
    double time = 0.0;
};

class Simulation {
  public:
    Simulation(const SimulationConfig& cfg, std::shared_ptr<const ProblemData> data);

    /// Advance by one coupled step dt~; returns the post-step energy budget.
    const EnergyBudget& coupled_step();

    // Sub-operations, exposed for verification of the lock-step equivalence.
    void freeze_interface_flux();
    void free_flow_substep();
    void darcy_substep();
    void refresh_diagnostics(); // re-solve Q, W, U~ at the current state

    EnergyBudget energy_budget();

    double time() const { return state_.time; }
    long coupled_steps_taken() const { return coupled_steps_; }
    const CoupledState& state() const { return state_; }
    CoupledState& state() { return state_; }
    const LayeredSliceMesh& mesh() const { return mesh_; }
    const SimulationConfig& config() const { return cfg_; }

    // Error / conservation helpers.
    double error_vs(const PointFn& exact, const DGField& field) const;
    double error_vs_surface(const LineFn& exact) const;
    double xi_volume();   // integral of Xi over the surface domain
    double head_volume(); // integral of H~ over the subsurface

    const std::vector<double>& interface_flux() const { return iface_flux_; }
    FreeflowAssembler& freeflow() { return *ff_; }
    DarcyAssembler& subsurface() { return *da_; }
    Discretization& discretization() { return disc_; }
    const VolumeGeom& ff_volume_geom() const { return ff_vol_; }
    const VolumeGeom& darcy_volume_geom() const { return darcy_vol_; }
    const SurfaceGeom& surface_geom() const { return sgeom_; }

  private:
    void rebuild_ff_geometry();
    void move_mesh_to_smoothed();
    void update_penalty_rate(double dt);
    void compute_interface_head();
    void guard(const char* where) const;
    std::vector<bool> inflow_node_tags(double t) const;

    SimulationConfig cfg_;
    std::shared_ptr<const ProblemData> data_;
    Discretization disc_;
    const BasisTables *tab_u_, *tab_w_, *tab_xi_, *tab_h_, *tab_q_;

    LayeredSliceMesh mesh_;
    VolumeGeom ff_vol_, darcy_vol_;
    FaceQuadGeom ff_fgeom_, darcy_fgeom_;
    SurfaceGeom sgeom_;
    MassCache mass_u_, mass_h_, mass_q_;
    SmallLU w_op_;

    std::unique_ptr<FreeflowAssembler> ff_;
    std::unique_ptr<DarcyAssembler> da_;

    CoupledState state_;
    DGField dxi_, du_, dhead_;
    std::vector<double> lat_flux_, iface_flux_, iface_head_;
    std::vector<double> gap_prev_, penalty_rate_;
    EnergyBudget budget_;
    long coupled_steps_ = 0;
    long substeps_ = 0;
};

} // namespace ldgflow
