/**
 * @file freeflow.hpp
 * @brief Semi-discrete LDG residuals for the hydrostatic free-flow system.
 *
 * Unknowns on the moving slice mesh: surface elevation Xi (1D field, order
 * 2p), horizontal velocity U (order p), diagnostic vertical velocity W (order
 * 2p), auxiliary stress Q = -D grad U (two components, order p).
 *
 * Flux choices follow the modified Lax-Friedrichs construction: central
 * advective/elevation averages plus the penalty lambda_U on interior and
 * inflow lateral faces of the momentum equation only; central diffusive
 * fluxes with one-sided boundary closures; the advective velocity on interior
 * horizontal faces is taken from the element below; the bottom faces carry
 * the Darcy exchange flux and the friction closure.
 */
#pragma once

#include "ldgflow/dgops.hpp"
#include "ldgflow/field.hpp"
#include "ldgflow/geom.hpp"
#include "ldgflow/mesh.hpp"
#include "ldgflow/problem.hpp"
#include "ldgflow/smallmat.hpp"

#include <vector>

namespace ldgflow {

// ---------------------------------------------------------------------------
// Per-quadrature-point flux primitives (owner orientation).
// ---------------------------------------------------------------------------
namespace flux {

/// Penalty on interior lateral faces: {|U.n|} + sqrt({|U.n|}^2 + 1).
double lambda_interior(double un_minus, double un_plus);

/// Penalty on inflow lateral faces: |U.n| + sqrt((U.n)^2 + 1).
double lambda_inflow(double un);

/// Elevation-jump stabilization of the PCE flux (the standard Lax-Friedrichs
/// ingredient; switchable, since the modified solver omits it).
double r_h_penalty(double xi_minus, double xi_plus, double lambda);

/// Guaranteed lower bound of the penalty: ((sqrt2+1)/sqrt2)|U.n| + 1/sqrt2.
double lambda_lower_bound(double un);

// PCE / continuity normal flux R_H on lateral faces.
double r_h_interior(double u_minus, double u_plus, double nx);
double r_h_inflow(double u_interior, double nx);
double r_h_outflow(double u_hat, double nx);

// Momentum normal flux R_U.
double r_u_interior_lateral(double u_minus, double u_plus, double xi_minus, double xi_plus,
                            double lambda, double nx, double g);
double r_u_horizontal(double u_minus, double u_plus, double u_below, double w_below,
                      double xi, double nx, double nz, double g);
double r_u_inflow(double u, double u_hat, double xi_hat, double lambda, double nx, double g);
double r_u_outflow(double u, double u_hat, double xi, double nx, double g);
double r_u_top(double u, double w, double xi, double nx, double nz, double g);
double r_u_bottom(double u, double xi, double darcy_un, double nx, double g);

// Diffusive normal fluxes.
double s_u_interior(double qx_minus, double qz_minus, double qx_plus, double qz_plus,
                    double nx, double nz);
double s_u_one_sided(double qx, double qz, double nx, double nz); // I_i and I_o
// S_U on I_top is boundary data (0 for the physical surface condition) and
// C_f(u) u on I_bot; S_Q trace values are the plain averages / data / traces.

} // namespace flux

// ---------------------------------------------------------------------------
// Assembler
// ---------------------------------------------------------------------------

/// Reference operator of the vertical-transport solve for W: the matrix of
/// <W n_z, sigma>_top - (W, d_z sigma)_K is (dx/2) times a fixed reference
/// matrix for every trapezoidal element of this mesh family.
SmallLU build_w_reference_operator(const BasisTables& tab);

class FreeflowAssembler {
  public:
    struct Refs {
        const LayeredSliceMesh* mesh = nullptr;
        const VolumeGeom* vol = nullptr;
        const FaceQuadGeom* fgeom = nullptr;
        const SurfaceGeom* sgeom = nullptr;
        const BasisTables* tab_u = nullptr;
        const BasisTables* tab_w = nullptr;
        const BasisTables* tab_xi = nullptr;
        const MassCache* mass_u = nullptr;
        const SmallLU* w_op = nullptr;
        const HydroCoefficients* coeff = nullptr;
        const ProblemData* data = nullptr;
        bool pce_xi_penalty = true; // standard-LF elevation penalty in R_H
    };

    explicit FreeflowAssembler(Refs refs) : r_(refs) {}

    /// R_H values on all vertical faces, owner orientation, [vface*nq1 + q].
    /// Shared by the PCE and the vertical-velocity equation.  With the
    /// elevation penalty enabled the interior flux is
    /// {U}.n + (lambda_U/2) [Xi].n.
    void lateral_u_flux(const DGField& xi, const DGField& u, double t,
                        std::vector<double>& out);

    /// Element-local auxiliary solve Q = -D grad U with LDG fluxes.
    void solve_q(const DGField& u, double t, DGField& qx, DGField& qz);

    /// Column-wise bottom-to-top solve of the continuity equation for W.
    /// interface_flux is the Darcy normal flux in free-flow orientation,
    /// [column*nq1 + q].
    void solve_w(const DGField& u, const std::vector<double>& lateral_flux,
                 const std::vector<double>& interface_flux, double t, DGField& w);

    /// d/dt of the surface elevation coefficients.
    void pce_rate(const DGField& u, const std::vector<double>& lateral_flux,
                  const std::vector<double>& interface_flux, double t, DGField& dxi);

    /// d/dt of the horizontal velocity coefficients.  penalty_rate holds
    /// d/dt(Xi_s - Xi) at the top-face quadrature points, [column*nq1 + q].
    void momentum_rate(const DGField& xi, const DGField& u, const DGField& w,
                       const DGField& qx, const DGField& qz,
                       const std::vector<double>& interface_flux,
                       const std::vector<double>& penalty_rate, double t, DGField& du);

    // Dissipation terms of the energy budget.
    double lambda_jump_dissipation(const DGField& u);     // sum (lambda/2)||[u]||^2, I_lat
    double friction_dissipation(const DGField& u);        // <C_f(u) u, u>, I_bot
    double q_dissipation(const DGField& u, const DGField& qx, const DGField& qz);

    int n_vertical_faces() const {
        return (r_.mesh->n_columns() + 1) * r_.mesh->layers;
    }

  private:
    struct BoundaryEval {
        std::vector<double> u_hat, xi_hat;
        std::vector<bool> inflow;
    };
    void eval_boundary(const Face& face, int face_idx, double t, BoundaryEval& out);
    void eval_xi_columns(const DGField& xi);

    Refs r_;
    // scratch (single-threaded assembly)
    std::vector<double> xi_at_xq_, xi_end_;
    std::vector<double> tm_, tp_, wm_, qm_, qp_, qzm_, qzp_, fw_, fw2_, aux_, aux2_;
    std::vector<double> rhs_, rx_, rz_, src_;
    BoundaryEval bdry_;
};

} // namespace ldgflow
