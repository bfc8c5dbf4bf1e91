/**
 * @file subsurface.hpp
 * @brief Semi-discrete LDG discretization of the mixed Darcy system on the
 *        fixed subsurface block, with interior-penalty stabilization of the
 *        hydraulic head.
 *
 * Head H~ evolves explicitly; the seepage velocity U~ = -D~ grad H~ is an
 * element-local solve with central head fluxes, boundary data on Dirichlet
 * and Neumann faces, and the dynamic head from the free flow on the interface
 * faces.
 */
#pragma once

#include "ldgflow/dgops.hpp"
#include "ldgflow/field.hpp"
#include "ldgflow/geom.hpp"
#include "ldgflow/mesh.hpp"
#include "ldgflow/problem.hpp"

#include <vector>

namespace ldgflow {

class DarcyAssembler {
  public:
    struct Refs {
        const LayeredSliceMesh* mesh = nullptr;
        const VolumeGeom* vol = nullptr;
        const FaceQuadGeom* fgeom = nullptr;
        const BasisTables* tab_h = nullptr; // head
        const BasisTables* tab_q = nullptr; // velocity components
        const MassCache* mass_h = nullptr;
        const MassCache* mass_q = nullptr;
        const DarcyCoefficients* coeff = nullptr;
        const ProblemData* data = nullptr;
    };

    explicit DarcyAssembler(Refs refs) : r_(refs) {}

    /// Element-local solve of D~^{-1} U~ + grad H~ = 0 with LDG head fluxes.
    /// interface_head holds the dynamic head xi + |u|^2/(2g) at the interface
    /// quadrature points, [column*nq1 + q].
    void solve_flux(const DGField& head, const std::vector<double>& interface_head, double t,
                    DGField& ux, DGField& uz);

    /// d/dt of the head coefficients: central velocity fluxes, boundary data,
    /// interior-penalty jumps, source.  The interface faces use the single
    /// exchanged flux value (free-flow orientation, sign-flipped here), so the
    /// coupled volume exchange cancels exactly against the free-flow side.
    void head_rate(const DGField& head, const DGField& ux, const DGField& uz,
                   const std::vector<double>& interface_flux_ff, double t, DGField& dhead);

    // Energy budget terms.
    double velocity_dissipation(const DGField& head, const DGField& ux, const DGField& uz);
    double head_jump_dissipation(const DGField& head); // interior faces only

  private:
    Refs r_;
    std::vector<double> tm_, tp_, um_, up_, vm_, vp_, fw_, fw2_, aux_, aux2_, rx_, rz_, src_;
};

} // namespace ldgflow
