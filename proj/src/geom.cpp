#include "ldgflow/geom.hpp"

#include <stdexcept>

namespace ldgflow {

void build_volume_geom(const LayeredSliceMesh& mesh, bool darcy, const QuadRule1D& rule,
                       VolumeGeom& out) {
    const int n_elem = darcy ? mesh.n_darcy_elem() : mesh.n_ff_elem();
    const int nq1 = rule.size();
    const int nq2 = nq1 * nq1;
    out.n_elem = n_elem;
    out.nq1 = nq1;
    out.nq2 = nq2;
    out.x.resize(static_cast<std::size_t>(n_elem) * nq2);
    out.z.resize(out.x.size());
    out.wdet.resize(out.x.size());
    out.bx.resize(out.x.size());
    out.cz.resize(out.x.size());
    out.ax.resize(n_elem);

    for (int e = 0; e < n_elem; ++e) {
        const auto c = darcy ? mesh.darcy_corners(e) : mesh.ff_corners(e);
        const double dx = c.xr - c.xl;
        const double xm = 0.5 * (c.xl + c.xr);
        const double zb_m = 0.5 * (c.zbl + c.zbr), zb_s = 0.5 * (c.zbr - c.zbl);
        const double zt_m = 0.5 * (c.ztl + c.ztr), zt_s = 0.5 * (c.ztr - c.ztl);
        out.ax[e] = 2.0 / dx;
        double* X = &out.x[static_cast<std::size_t>(e) * nq2];
        double* Z = &out.z[static_cast<std::size_t>(e) * nq2];
        double* W = &out.wdet[static_cast<std::size_t>(e) * nq2];
        double* BX = &out.bx[static_cast<std::size_t>(e) * nq2];
        double* CZ = &out.cz[static_cast<std::size_t>(e) * nq2];
        for (int qx = 0; qx < nq1; ++qx) {
            const double xi = rule.points[qx];
            const double zbot = zb_m + zb_s * xi;
            const double ztop = zt_m + zt_s * xi;
            const double zeta_half = 0.5 * (ztop - zbot); // z_eta
            if (!(zeta_half > 0.0))
                throw std::runtime_error("geometry: degenerate element depth");
            for (int qz = 0; qz < nq1; ++qz) {
                const int q = qx * nq1 + qz;
                const double eta = rule.points[qz];
                const double zxi = zb_s + 0.5 * (1.0 + eta) * (zt_s - zb_s);
                X[q] = xm + 0.5 * dx * xi;
                Z[q] = zbot + zeta_half * (1.0 + eta);
                W[q] = rule.weights[qx] * rule.weights[qz] * 0.5 * dx * zeta_half;
                BX[q] = -zxi / zeta_half * (2.0 / dx);
                CZ[q] = 1.0 / zeta_half;
            }
        }
    }
}

void build_face_geom(const std::vector<Face>& faces, const QuadRule1D& rule,
                     FaceQuadGeom& out) {
    const int nq1 = rule.size();
    out.n_faces = static_cast<int>(faces.size());
    out.nq1 = nq1;
    const std::size_t total = faces.size() * static_cast<std::size_t>(nq1);
    out.x.resize(total);
    out.z.resize(total);
    out.wds.resize(total);
    out.wnx.resize(total);
    out.wnz.resize(total);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        const double xm = 0.5 * (face.x0 + face.x1), xs = 0.5 * (face.x1 - face.x0);
        const double zm = 0.5 * (face.z0 + face.z1), zs = 0.5 * (face.z1 - face.z0);
        for (int q = 0; q < nq1; ++q) {
            const std::size_t i = f * nq1 + q;
            const double t = rule.points[q];
            out.x[i] = xm + xs * t;
            out.z[i] = zm + zs * t;
            const double wds = rule.weights[q] * 0.5 * face.length;
            out.wds[i] = wds;
            out.wnx[i] = wds * face.nx;
            out.wnz[i] = wds * face.nz;
        }
    }
}

void build_surface_geom(const SurfaceMesh1D& surface, const QuadRule1D& rule,
                        SurfaceGeom& out) {
    const int nq1 = rule.size();
    out.n_elem = surface.n_elem;
    out.nq1 = nq1;
    out.x.resize(static_cast<std::size_t>(surface.n_elem) * nq1);
    out.wdx.resize(out.x.size());
    out.inv_mass.resize(surface.n_elem);
    for (int e = 0; e < surface.n_elem; ++e) {
        const double xm = 0.5 * (surface.node_x[e] + surface.node_x[e + 1]);
        const double xs = 0.5 * surface.dx(e);
        for (int q = 0; q < nq1; ++q) {
            out.x[e * nq1 + q] = xm + xs * rule.points[q];
            out.wdx[e * nq1 + q] = rule.weights[q] * xs;
        }
        out.inv_mass[e] = 1.0 / xs; // reference-orthonormal basis, affine map
    }
}

std::vector<double> element_mass(const BasisTables& tab, const VolumeGeom& vol, int e) {
    const int nm = tab.n_modes;
    const int nq2 = vol.nq2;
    std::vector<double> m(static_cast<std::size_t>(nm) * nm, 0.0);
    const double* w = &vol.wdet[static_cast<std::size_t>(e) * nq2];
    for (int q = 0; q < nq2; ++q) {
        const double* phi = &tab.val[static_cast<std::size_t>(q) * nm];
        const double wq = w[q];
        for (int i = 0; i < nm; ++i) {
            const double pwi = wq * phi[i];
            for (int j = 0; j <= i; ++j) m[i * nm + j] += pwi * phi[j];
        }
    }
    for (int i = 0; i < nm; ++i)
        for (int j = i + 1; j < nm; ++j) m[i * nm + j] = m[j * nm + i];
    return m;
}

void MassCache::build(const BasisTables& tab, const VolumeGeom& vol) {
    n_modes = tab.n_modes;
    chol.resize(vol.n_elem);
    for (int e = 0; e < vol.n_elem; ++e) chol[e].factor(element_mass(tab, vol, e), n_modes);
}

} // namespace ldgflow
