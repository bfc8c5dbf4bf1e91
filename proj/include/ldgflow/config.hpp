/**
 * @file config.hpp
 * @brief Flat key-value run configuration (dotted sections) and its mapping
 *        onto the simulation setup.
 */
#pragma once

#include "ldgflow/coupling.hpp"
#include "ldgflow/problem.hpp"

#include <memory>
#include <string>

namespace ldgflow {

struct RunConfig {
    // domain and mesh
    double x0 = 0.0, x1 = 100.0;
    double zb_offset = 0.0, zb_slope = 0.005;
    double darcy_bottom = -5.0;
    int refinement = 1; // level j: 2^{j+1} columns, 2^j layers per block
    int columns = 0, layers = 0, darcy_layers = 0; // optional explicit overrides

    // orders (negative -> the stable pairing: elevation and w at 2p, rest at p)
    int p = 1;
    int order_xi = -1, order_w = -1, order_u = -1, order_head = -1, order_flux = -1;

    // time stepping (negative -> reference step sizes (1/50), (1/5) * 2^-p 4^-j)
    double dt = -1.0, dt_darcy = -1.0;
    double t_end = 10.0, t0 = 0.0;

    // physics
    double g = 1.0;
    double viscosity = 0.05, viscosity_xz = 0.0, viscosity_zz = -1.0;
    double conductivity = 0.01, conductivity_xz = 0.0, conductivity_zz = -1.0;
    std::string friction_model = "linear";
    double friction_coefficient = 0.01;
    double eta = 1.0;
    std::string pce_penalty = "on"; // elevation-jump stabilization of R_H

    // boundary setup
    std::string bc_mode = "mms";                  // mms | physical
    std::string bc_left = "auto", bc_right = "auto"; // auto|inflow|outflow|wall
    std::string darcy_left = "dirichlet", darcy_right = "dirichlet",
                darcy_bottom_bc = "dirichlet"; // dirichlet|neumann

    // physical-mode data and initial state
    double u_hat = 0.0, xi_hat = 5.0, head_hat = 5.0, flux_hat = 0.0;
    double init_xi = 5.0, init_xi_bump = 0.0, init_u = 0.0, init_head = 5.0;

    std::string output_dir = "out";
    double max_coefficient = 1e12;
    unsigned long seed = 12345;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);
    void set(const std::string& key, const std::string& value);
    void validate() const;

    int effective_columns() const;
    int effective_layers() const;
    int effective_darcy_layers() const;
    double effective_dt() const;       // (1/50) 2^-p 4^-j unless overridden
    double effective_dt_darcy() const; // (1/5)  2^-p 4^-j unless overridden
    int subcycles() const;

    SimulationConfig simulation_config() const;
    std::shared_ptr<const ProblemData> make_problem() const;
};

} // namespace ldgflow
