/**
 * @file dgops.hpp
 * @brief Projections, field evaluation, jump/average algebra, L2 errors, EOC.
 */
#pragma once

#include "ldgflow/basis.hpp"
#include "ldgflow/field.hpp"
#include "ldgflow/geom.hpp"

#include <functional>
#include <map>

namespace ldgflow {

/// Shared quadrature rule plus reference tables per polynomial order.
/// The rule is Gauss-Legendre exact through degree 2*max_order+4.
class Discretization {
  public:
    explicit Discretization(int max_order) : rule_(gauss_for_degree(2 * max_order + 4)) {}

    const QuadRule1D& rule() const { return rule_; }
    const BasisTables& tab(int order) {
        auto it = tables_.find(order);
        if (it == tables_.end())
            it = tables_.emplace(order, BasisTables(order, rule_)).first;
        return it->second;
    }

  private:
    QuadRule1D rule_;
    std::map<int, BasisTables> tables_;
};

using PointFn = std::function<double(double x, double z)>;
using LineFn = std::function<double(double x)>;

// --- L2 projection -----------------------------------------------------------

/// Element-wise L2 projection of f onto the field's space (2D blocks).
void project_l2(const PointFn& f, const BasisTables& tab, const VolumeGeom& vol,
                DGField& out);

/// Same for 1D surface fields.
void project_l2_surface(const LineFn& f, const BasisTables& tab, const SurfaceGeom& geom,
                        DGField& out);

// --- evaluation --------------------------------------------------------------

/// Value of a 2D field at a reference point of one element.
double eval_field(const DGField& field, int element, double xi, double eta);

/// Value of a surface field at a reference point of one element.
double eval_field_surface(const DGField& field, int element, double xi);

// --- jump / average algebra --------------------------------------------------

/// Average and (vector-valued) jump of a scalar across a face; n is the unit
/// normal out of the "left" element.
struct ScalarTracePair {
    double avg;
    double jump_x, jump_z;
};
ScalarTracePair jump_avg_scalar(double left, double right, double nx, double nz);

/// Average and (scalar-valued) jump of a vector across a face.
struct VectorTracePair {
    double avg_x, avg_z;
    double jump;
};
VectorTracePair jump_avg_vector(double lx, double lz, double rx, double rz, double nx,
                                double nz);

// --- norms and errors --------------------------------------------------------

/// || field - exact ||_{L2} over a 2D block.
double l2_error(const DGField& field, const PointFn& exact, const BasisTables& tab,
                const VolumeGeom& vol);

/// || field - exact ||_{L2} over the surface domain.
double l2_error_surface(const DGField& field, const LineFn& exact, const BasisTables& tab,
                        const SurfaceGeom& geom);

/// Integral of the field over its block.
double integrate(const DGField& field, const BasisTables& tab, const VolumeGeom& vol);
double integrate_surface(const DGField& field, const BasisTables& tab,
                         const SurfaceGeom& geom);

/// Squared L2 norm of the field.
double l2_norm_sq(const DGField& field, const BasisTables& tab, const VolumeGeom& vol);
double l2_norm_sq_surface(const DGField& field, const BasisTables& tab,
                          const SurfaceGeom& geom);

/// Estimated order of convergence from two errors and two mesh sizes.
double eoc(double err_coarse, double err_fine, double dx_coarse, double dx_fine);

} // namespace ldgflow
