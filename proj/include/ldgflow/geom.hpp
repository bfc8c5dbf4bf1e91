/**
 * @file geom.hpp
 * @brief Quadrature-resolved geometry caches for one mesh state.
 *
 * Elements are bilinear trapezoids (vertical sides, straight sloped top and
 * bottom edges).  With x(xi) affine and z(xi,eta) affine in eta, the physical
 * gradient of a reference basis function is
 *     d/dx = ax * d/dxi + bx(q) * d/deta,   d/dz = cz(q) * d/deta,
 * and the Jacobian determinant varies linearly in xi only.  All caches are
 * flattened per element/face times quadrature point and rebuilt whenever the
 * free-flow mesh moves; the Darcy caches are built once.
 */
#pragma once

#include "ldgflow/basis.hpp"
#include "ldgflow/mesh.hpp"
#include "ldgflow/quadrature.hpp"
#include "ldgflow/smallmat.hpp"

#include <vector>

namespace ldgflow {

struct VolumeGeom {
    int n_elem = 0, nq1 = 0, nq2 = 0;
    std::vector<double> x, z, wdet; // [e*nq2 + q]
    std::vector<double> bx, cz;     // gradient factors per quadrature point
    std::vector<double> ax;         // 2/dx per element
};

struct FaceQuadGeom {
    int n_faces = 0, nq1 = 0;
    std::vector<double> x, z;          // [f*nq1 + q]
    std::vector<double> wds, wnx, wnz; // weight*ds and weight*n*ds
};

struct SurfaceGeom {
    int n_elem = 0, nq1 = 0;
    std::vector<double> x;   // [e*nq1 + q]
    std::vector<double> wdx; // weight * dx/2
    std::vector<double> inv_mass; // orthonormal basis => diagonal: 2/dx per element
};

void build_volume_geom(const LayeredSliceMesh& mesh, bool darcy, const QuadRule1D& rule,
                       VolumeGeom& out);
void build_face_geom(const std::vector<Face>& faces, const QuadRule1D& rule,
                     FaceQuadGeom& out);
void build_surface_geom(const SurfaceMesh1D& surface, const QuadRule1D& rule,
                        SurfaceGeom& out);

/// Per-element mass matrices (dense SPD, Cholesky-factored) for one order.
struct MassCache {
    int n_modes = 0;
    std::vector<SmallCholesky> chol;
    std::vector<double> scratch_row; // assembly scratch, n_modes^2

    void build(const BasisTables& tab, const VolumeGeom& vol);
    void solve_in_place(int e, double* rhs) const { chol[e].solve(rhs); }
};

/// Raw mass matrix of one element (row-major n_modes^2), by quadrature.
std::vector<double> element_mass(const BasisTables& tab, const VolumeGeom& vol, int e);

} // namespace ldgflow
