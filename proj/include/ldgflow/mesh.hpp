/**
 * @file mesh.hpp
 * @brief Layered xz-slice mesh for the free-flow block and the fixed Darcy
 *        block underneath, with classified face sets.
 *
 * The surface mesh is a 1D partition of the x-extent; each surface element
 * carries one column of quadrilateral elements between the bathymetry z_b and
 * the smoothed free surface Xi_s (uniform sigma layers), plus a fixed column
 * of Darcy elements between the aquifer bottom and z_b.  Lateral faces are
 * strictly vertical; horizontal faces follow the (piecewise linear) layer
 * interfaces and may be sloped.  The free-flow bottom faces geometrically
 * coincide with the Darcy top faces with opposite normals.
 *
 * Element numbering: e = column * layers + layer, layer 0 at the bottom.
 */
#pragma once

#include "ldgflow/field.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ldgflow {

enum class FaceClass {
    interior_lateral,    // I_lat
    interior_horizontal, // I_horiz
    top,                 // I_top (free surface)
    bottom,              // I_bot (interface, free-flow side)
    inflow,              // I_i
    outflow,             // I_o
    darcy_interior,      // I~_int
    darcy_dirichlet,     // I~_D
    darcy_neumann,       // I~_N
    darcy_top,           // I~_top (interface, Darcy side)
};

const char* face_class_name(FaceClass cls);

/// How lateral boundary faces of the free-flow block are classified.
enum class LateralPolicy {
    auto_classify, // by sign of the prescribed velocity datum, per point
    inflow,        // force I_i
    outflow,       // force I_o (a closed wall is outflow with zero datum)
};

enum class DarcyBoundary { dirichlet, neumann };

/// Straight face segment with owner-outward unit normal.
struct Face {
    int owner = -1;
    int neighbor = -1; // -1 on boundary faces
    int owner_face = 0;
    int neighbor_face = 0; // LocalFace ids into the reference square
    FaceClass cls = FaceClass::interior_lateral;
    double x0 = 0, z0 = 0, x1 = 0, z1 = 0; // endpoints along the parametrization
    double nx = 0, nz = 0;
    double length = 0; // Delta x_gamma
    int column = -1;   // column of the owner
    int side = -1;     // boundary faces: 0 = left, 1 = right, -1 otherwise
};

struct SurfaceMesh1D {
    std::vector<double> node_x; // strictly increasing
    int n_elem = 0;
    double dx(int e) const { return node_x[e + 1] - node_x[e]; }
};

struct MeshSpec {
    double x0 = 0.0, x1 = 100.0;
    int columns = 2;
    int layers = 1;
    int darcy_layers = 1;
    double zb_offset = 0.0, zb_slope = 0.005; // z_b(x) = offset + slope*x
    double darcy_bottom = -5.0;
    LateralPolicy left = LateralPolicy::auto_classify;
    LateralPolicy right = LateralPolicy::auto_classify;
    DarcyBoundary darcy_left = DarcyBoundary::dirichlet;
    DarcyBoundary darcy_right = DarcyBoundary::dirichlet;
    DarcyBoundary darcy_bottom_bc = DarcyBoundary::dirichlet;

    double zb(double x) const { return zb_offset + zb_slope * x; }
};

class LayeredSliceMesh {
  public:
    MeshSpec spec;
    SurfaceMesh1D surface;
    std::uint64_t id = 0;

    int layers = 0;
    int darcy_layers = 0;
    std::vector<double> zb_node;  // per surface node
    std::vector<double> xis_node; // smoothed elevation per surface node
    std::vector<double> zcol;     // free-flow column nodes, [node*(layers+1)+k]
    std::vector<double> zdar;     // Darcy column nodes, fixed

    std::vector<Face> ff_faces;
    std::vector<Face> darcy_faces;
    std::vector<int> interface_ff;    // per column: index into ff_faces (I_bot)
    std::vector<int> interface_darcy; // per column: index into darcy_faces (I~_top)

    double domain_height = 0.0; // reference height for the wet-depth guard

    int n_columns() const { return surface.n_elem; }
    int n_ff_elem() const { return n_columns() * layers; }
    int n_darcy_elem() const { return n_columns() * darcy_layers; }

    int ff_elem(int column, int layer) const { return column * layers + layer; }
    int darcy_elem(int column, int layer) const { return column * darcy_layers + layer; }
    int column_of_ff(int e) const { return e / layers; }
    int layer_of_ff(int e) const { return e % layers; }

    // Corner coordinates of an element (left/right x, bottom/top z at each side).
    struct Corners {
        double xl, xr, zbl, zbr, ztl, ztr;
    };
    Corners ff_corners(int e) const;
    Corners darcy_corners(int e) const;

    /// Recompute free-flow column nodes and face geometry for new nodal Xi_s.
    /// Throws if the wet depth degenerates anywhere. The Darcy block is fixed.
    void move(const std::vector<double>& new_xis);

    void dump_csv(const std::string& path) const;

  private:
    friend LayeredSliceMesh build_layered_mesh(const MeshSpec&,
                                               const std::function<double(double)>&);
    void build_faces();
    void update_ff_face_geometry();
};

/// Build the coupled mesh with the free surface at the given initial elevation
/// (evaluated at the surface nodes). Throws on non-positive layer counts or if
/// the elevation does not clear the bathymetry.
LayeredSliceMesh build_layered_mesh(const MeshSpec& spec,
                                    const std::function<double(double)>& initial_xi);

/// Nodal smoothing of a discontinuous surface elevation field: arithmetic mean
/// of the two adjacent element traces at interior nodes, the inflow datum at
/// inflow boundary nodes, the single adjacent trace elsewhere.  The field
/// itself is left untouched.
std::vector<double> smooth_free_surface(const DGField& xi, const SurfaceMesh1D& surface,
                                        const std::vector<bool>& node_is_inflow,
                                        const std::function<double(double)>& inflow_xi);

} // namespace ldgflow
