#include "ldgflow/mesh.hpp"

#include "ldgflow/basis.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ldgflow {

namespace {

std::atomic<std::uint64_t> next_mesh_id{1};

void set_segment_geometry(Face& f, bool flip_normal) {
    double dx = f.x1 - f.x0;
    double dz = f.z1 - f.z0;
    f.length = std::hypot(dx, dz);
    // up/right normal of the directed segment; callers flip for downward faces
    f.nx = -dz / f.length;
    f.nz = dx / f.length;
    if (flip_normal) {
        f.nx = -f.nx;
        f.nz = -f.nz;
    }
}

} // namespace

const char* face_class_name(FaceClass cls) {
    switch (cls) {
        case FaceClass::interior_lateral: return "interior_lateral";
        case FaceClass::interior_horizontal: return "interior_horizontal";
        case FaceClass::top: return "top";
        case FaceClass::bottom: return "bottom";
        case FaceClass::inflow: return "inflow";
        case FaceClass::outflow: return "outflow";
        case FaceClass::darcy_interior: return "darcy_interior";
        case FaceClass::darcy_dirichlet: return "darcy_dirichlet";
        case FaceClass::darcy_neumann: return "darcy_neumann";
        case FaceClass::darcy_top: return "darcy_top";
    }
    return "?";
}

LayeredSliceMesh::Corners LayeredSliceMesh::ff_corners(int e) const {
    int c = column_of_ff(e);
    int k = layer_of_ff(e);
    int ln = c, rn = c + 1;
    return {surface.node_x[ln],          surface.node_x[rn],
            zcol[ln * (layers + 1) + k], zcol[rn * (layers + 1) + k],
            zcol[ln * (layers + 1) + k + 1], zcol[rn * (layers + 1) + k + 1]};
}

LayeredSliceMesh::Corners LayeredSliceMesh::darcy_corners(int e) const {
    int c = e / darcy_layers;
    int k = e % darcy_layers;
    int ln = c, rn = c + 1;
    return {surface.node_x[ln],               surface.node_x[rn],
            zdar[ln * (darcy_layers + 1) + k], zdar[rn * (darcy_layers + 1) + k],
            zdar[ln * (darcy_layers + 1) + k + 1], zdar[rn * (darcy_layers + 1) + k + 1]};
}

void LayeredSliceMesh::build_faces() {
    const int C = n_columns();
    const int L = layers, LD = darcy_layers;
    ff_faces.clear();
    darcy_faces.clear();
    interface_ff.assign(C, -1);
    interface_darcy.assign(C, -1);

    // Free-flow vertical faces: one stack per surface node.
    for (int i = 0; i <= C; ++i) {
        for (int k = 0; k < L; ++k) {
            Face f;
            f.x0 = f.x1 = surface.node_x[i];
            f.nx = 1.0;
            f.nz = 0.0;
            if (i == 0) {
                f.owner = ff_elem(0, k);
                f.owner_face = face_left;
                f.nx = -1.0;
                f.cls = spec.left == LateralPolicy::inflow ? FaceClass::inflow
                                                           : FaceClass::outflow;
                f.side = 0;
                f.column = 0;
            } else if (i == C) {
                f.owner = ff_elem(C - 1, k);
                f.owner_face = face_right;
                f.cls = spec.right == LateralPolicy::inflow ? FaceClass::inflow
                                                            : FaceClass::outflow;
                f.side = 1;
                f.column = C - 1;
            } else {
                f.owner = ff_elem(i - 1, k);
                f.owner_face = face_right;
                f.neighbor = ff_elem(i, k);
                f.neighbor_face = face_left;
                f.cls = FaceClass::interior_lateral;
                f.column = i - 1;
            }
            ff_faces.push_back(f);
        }
    }
    // Free-flow horizontal faces: per column, levels 0..L.
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k <= L; ++k) {
            Face f;
            f.column = c;
            if (k == 0) {
                f.owner = ff_elem(c, 0);
                f.owner_face = face_bottom;
                f.cls = FaceClass::bottom;
                interface_ff[c] = static_cast<int>(ff_faces.size());
            } else if (k == L) {
                f.owner = ff_elem(c, L - 1);
                f.owner_face = face_top;
                f.cls = FaceClass::top;
            } else {
                f.owner = ff_elem(c, k - 1);
                f.owner_face = face_top;
                f.neighbor = ff_elem(c, k);
                f.neighbor_face = face_bottom;
                f.cls = FaceClass::interior_horizontal;
            }
            ff_faces.push_back(f);
        }
    }
    update_ff_face_geometry();

    // Darcy vertical faces.
    for (int i = 0; i <= C; ++i) {
        for (int k = 0; k < LD; ++k) {
            Face f;
            f.x0 = f.x1 = surface.node_x[i];
            f.z0 = zdar[i * (LD + 1) + k];
            f.z1 = zdar[i * (LD + 1) + k + 1];
            f.length = f.z1 - f.z0;
            f.nx = 1.0;
            f.nz = 0.0;
            if (i == 0) {
                f.owner = darcy_elem(0, k);
                f.owner_face = face_left;
                f.nx = -1.0;
                f.cls = spec.darcy_left == DarcyBoundary::dirichlet
                            ? FaceClass::darcy_dirichlet
                            : FaceClass::darcy_neumann;
                f.side = 0;
                f.column = 0;
            } else if (i == C) {
                f.owner = darcy_elem(C - 1, k);
                f.owner_face = face_right;
                f.cls = spec.darcy_right == DarcyBoundary::dirichlet
                            ? FaceClass::darcy_dirichlet
                            : FaceClass::darcy_neumann;
                f.side = 1;
                f.column = C - 1;
            } else {
                f.owner = darcy_elem(i - 1, k);
                f.owner_face = face_right;
                f.neighbor = darcy_elem(i, k);
                f.neighbor_face = face_left;
                f.cls = FaceClass::darcy_interior;
                f.column = i - 1;
            }
            darcy_faces.push_back(f);
        }
    }
    // Darcy horizontal faces.
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k <= LD; ++k) {
            Face f;
            f.column = c;
            f.x0 = surface.node_x[c];
            f.x1 = surface.node_x[c + 1];
            f.z0 = zdar[c * (LD + 1) + k];
            f.z1 = zdar[(c + 1) * (LD + 1) + k];
            if (k == 0) {
                f.owner = darcy_elem(c, 0);
                f.owner_face = face_bottom;
                f.cls = spec.darcy_bottom_bc == DarcyBoundary::dirichlet
                            ? FaceClass::darcy_dirichlet
                            : FaceClass::darcy_neumann;
                set_segment_geometry(f, true); // outward = down
            } else if (k == LD) {
                f.owner = darcy_elem(c, LD - 1);
                f.owner_face = face_top;
                f.cls = FaceClass::darcy_top;
                set_segment_geometry(f, false); // outward = up
                interface_darcy[c] = static_cast<int>(darcy_faces.size());
            } else {
                f.owner = darcy_elem(c, k - 1);
                f.owner_face = face_top;
                f.neighbor = darcy_elem(c, k);
                f.neighbor_face = face_bottom;
                f.cls = FaceClass::darcy_interior;
                set_segment_geometry(f, false);
            }
            darcy_faces.push_back(f);
        }
    }
}

void LayeredSliceMesh::update_ff_face_geometry() {
    const int C = n_columns();
    const int L = layers;
    // Vertical faces (first (C+1)*L entries): z extents from the column nodes.
    int idx = 0;
    for (int i = 0; i <= C; ++i) {
        for (int k = 0; k < L; ++k, ++idx) {
            Face& f = ff_faces[idx];
            f.z0 = zcol[i * (L + 1) + k];
            f.z1 = zcol[i * (L + 1) + k + 1];
            f.length = f.z1 - f.z0;
        }
    }
    // Horizontal faces.
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k <= L; ++k, ++idx) {
            Face& f = ff_faces[idx];
            f.x0 = surface.node_x[c];
            f.x1 = surface.node_x[c + 1];
            f.z0 = zcol[c * (L + 1) + k];
            f.z1 = zcol[(c + 1) * (L + 1) + k];
            set_segment_geometry(f, k == 0); // bottom boundary points down
        }
    }
}

void LayeredSliceMesh::move(const std::vector<double>& new_xis) {
    const int C = n_columns();
    if (static_cast<int>(new_xis.size()) != C + 1)
        throw std::invalid_argument("move: nodal elevation size mismatch");
    const double tol = 1e-12 * domain_height;
    for (int i = 0; i <= C; ++i) {
        if (!(new_xis[i] - zb_node[i] > tol))
            throw std::runtime_error("move: free surface at or below bathymetry at x=" +
                                     std::to_string(surface.node_x[i]));
    }
    xis_node = new_xis;
    for (int i = 0; i <= C; ++i) {
        const double depth = xis_node[i] - zb_node[i];
        for (int k = 0; k <= layers; ++k)
            zcol[i * (layers + 1) + k] =
                zb_node[i] + depth * static_cast<double>(k) / layers;
    }
    update_ff_face_geometry();
}

LayeredSliceMesh build_layered_mesh(const MeshSpec& spec,
                                    const std::function<double(double)>& initial_xi) {
    if (spec.layers <= 0 || spec.darcy_layers <= 0)
        throw std::invalid_argument("build_layered_mesh: layer count must be positive");
    if (spec.columns <= 0)
        throw std::invalid_argument("build_layered_mesh: need at least one column");

    LayeredSliceMesh mesh;
    mesh.spec = spec;
    mesh.id = next_mesh_id.fetch_add(1);
    mesh.layers = spec.layers;
    mesh.darcy_layers = spec.darcy_layers;

    const int C = spec.columns;
    mesh.surface.n_elem = C;
    mesh.surface.node_x.resize(C + 1);
    for (int i = 0; i <= C; ++i)
        mesh.surface.node_x[i] = spec.x0 + (spec.x1 - spec.x0) * i / C;

    mesh.zb_node.resize(C + 1);
    mesh.xis_node.resize(C + 1);
    double xi_max = -1e300;
    for (int i = 0; i <= C; ++i) {
        mesh.zb_node[i] = spec.zb(mesh.surface.node_x[i]);
        mesh.xis_node[i] = initial_xi(mesh.surface.node_x[i]);
        xi_max = std::max(xi_max, mesh.xis_node[i]);
        if (!(mesh.xis_node[i] > mesh.zb_node[i]))
            throw std::runtime_error("build_layered_mesh: elevation below bathymetry");
    }
    mesh.domain_height = xi_max - spec.darcy_bottom;

    mesh.zcol.assign((C + 1) * (mesh.layers + 1), 0.0);
    for (int i = 0; i <= C; ++i) {
        const double depth = mesh.xis_node[i] - mesh.zb_node[i];
        for (int k = 0; k <= mesh.layers; ++k)
            mesh.zcol[i * (mesh.layers + 1) + k] =
                mesh.zb_node[i] + depth * static_cast<double>(k) / mesh.layers;
    }
    mesh.zdar.assign((C + 1) * (mesh.darcy_layers + 1), 0.0);
    for (int i = 0; i <= C; ++i) {
        const double thick = mesh.zb_node[i] - spec.darcy_bottom;
        if (!(thick > 0))
            throw std::runtime_error("build_layered_mesh: bathymetry below aquifer bottom");
        for (int k = 0; k <= mesh.darcy_layers; ++k)
            mesh.zdar[i * (mesh.darcy_layers + 1) + k] =
                spec.darcy_bottom + thick * static_cast<double>(k) / mesh.darcy_layers;
    }
    mesh.build_faces();
    return mesh;
}

std::vector<double> smooth_free_surface(const DGField& xi, const SurfaceMesh1D& surface,
                                        const std::vector<bool>& node_is_inflow,
                                        const std::function<double(double)>& inflow_xi) {
    if (xi.component != MeshComponent::surface)
        throw std::invalid_argument("smooth_free_surface: not a surface field");
    if (xi.n_elem != surface.n_elem)
        throw std::invalid_argument("smooth_free_surface: element count mismatch");

    const int nm = xi.n_modes;
    std::vector<double> end_lo(nm), end_hi(nm);
    legendre_ortho_all(xi.order, -1.0, end_lo.data());
    legendre_ortho_all(xi.order, 1.0, end_hi.data());

    auto trace = [&](int e, bool right_end) {
        const double* c = xi.elem(e);
        const double* b = right_end ? end_hi.data() : end_lo.data();
        double v = 0.0;
        for (int m = 0; m < nm; ++m) v += c[m] * b[m];
        return v;
    };

    const int n_nodes = surface.n_elem + 1;
    std::vector<double> xis(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
        const bool has_left = i > 0;
        const bool has_right = i < surface.n_elem;
        if (has_left && has_right) {
            xis[i] = 0.5 * (trace(i - 1, true) + trace(i, false));
        } else if (node_is_inflow[i] && inflow_xi) {
            xis[i] = inflow_xi(surface.node_x[i]);
        } else {
            xis[i] = has_left ? trace(i - 1, true) : trace(0, false);
        }
    }
    return xis;
}

void LayeredSliceMesh::dump_csv(const std::string& path) const {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) throw std::runtime_error("dump_csv: cannot open " + path);
    std::fprintf(fp, "block,element,xl,xr,zbl,zbr,ztl,ztr\n");
    for (int e = 0; e < n_ff_elem(); ++e) {
        Corners c = ff_corners(e);
        std::fprintf(fp, "freeflow,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e, c.xl, c.xr,
                     c.zbl, c.zbr, c.ztl, c.ztr);
    }
    for (int e = 0; e < n_darcy_elem(); ++e) {
        Corners c = darcy_corners(e);
        std::fprintf(fp, "darcy,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", e, c.xl, c.xr,
                     c.zbl, c.zbr, c.ztl, c.ztr);
    }
    std::fprintf(fp, "block,face,class,owner,neighbor,x0,z0,x1,z1,nx,nz,length\n");
    auto dump_faces = [&](const char* block, const std::vector<Face>& faces) {
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const Face& f = faces[i];
            std::fprintf(fp, "%s,%zu,%s,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                         block, i, face_class_name(f.cls), f.owner, f.neighbor, f.x0, f.z0,
                         f.x1, f.z1, f.nx, f.nz, f.length);
        }
    };
    dump_faces("freeflow", ff_faces);
    dump_faces("darcy", darcy_faces);
    std::fclose(fp);
}

} // namespace ldgflow
