/**
 * @file ldgflow_main.cpp
 * @brief Command line driver: run one simulation, run the convergence study,
 *        or run the built-in invariant checks.
 */
#include "ldgflow/config.hpp"
#include "ldgflow/coupling.hpp"
#include "ldgflow/dgops.hpp"
#include "ldgflow/driver.hpp"
#include "ldgflow/freeflow.hpp"
#include "ldgflow/kernels.hpp"
#include "ldgflow/mms.hpp"
#include "ldgflow/quadrature.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace ldgflow;

int cmd_run(const std::string& config_path) {
    RunConfig cfg = RunConfig::from_file(config_path);
    std::cout << "kernels: " << kernels::active_name() << "\n";
    const RunResult res = run_simulation(cfg, true);
    std::cout << "completed " << res.coupled_steps << " coupled steps, t = "
              << res.final_time << "\n";
    const EnergyBudget& b = res.final_budget;
    std::cout << "energy: ||xi||^2 = " << b.xi_sq << ", ||u||^2 = " << b.u_sq
              << ", ||head||^2 = " << b.head_sq << "\n";
    std::cout << "wrote " << cfg.output_dir << "/energy.csv, final_state.csv, mesh.csv\n";
    return 0;
}

int cmd_converge(const std::string& config_path, int levels,
                 const std::string& orders_arg) {
    RunConfig cfg = RunConfig::from_file(config_path);
    std::vector<int> orders;
    std::stringstream ss(orders_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) orders.push_back(std::stoi(tok));
    if (orders.empty()) throw std::invalid_argument("no orders given");

    const ConvergenceReport report = converge(cfg, levels, orders, std::cout);
    std::filesystem::create_directories(cfg.output_dir);
    write_errors_csv(cfg.output_dir + "/errors.csv", report, orders, levels);
    print_convergence_table(std::cout, report, orders, levels);
    std::cout << "wrote " << cfg.output_dir << "/errors.csv\n";
    return 0;
}

int check(bool ok, const std::string& name, int& failures) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
    return failures;
}

/// Condensed invariant suite (quadrature exactness, jump identities, penalty
/// bound, manufactured-solution identities, rest lake, conservation).
int cmd_selftest(unsigned long seed) {
    int failures = 0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    { // Gauss rule integrates x^2 exactly
        const QuadRule1D r = gauss_legendre(4);
        double acc = 0.0;
        for (int q = 0; q < r.size(); ++q)
            acc += r.weights[q] * r.points[q] * r.points[q];
        check(std::abs(acc - 2.0 / 3.0) < 1e-15, "quadrature: int x^2 = 2/3", failures);
    }
    { // jump/average product identities
        bool ok = true;
        for (int it = 0; it < 1000; ++it) {
            const double a1 = unit(rng), a2 = unit(rng), b1 = unit(rng), b2 = unit(rng);
            const double nx = 0.6, nz = 0.8;
            const auto ja = jump_avg_scalar(a1, a2, nx, nz);
            const auto jb = jump_avg_scalar(b1, b2, nx, nz);
            const auto jab = jump_avg_scalar(a1 * b1, a2 * b2, nx, nz);
            ok = ok && std::abs(jab.jump_x - (ja.avg * jb.jump_x + ja.jump_x * jb.avg)) < 1e-13;
            ok = ok && std::abs(jab.avg - (ja.avg * jb.avg +
                                           0.25 * (ja.jump_x * jb.jump_x +
                                                   ja.jump_z * jb.jump_z))) < 1e-13;
        }
        check(ok, "jump/average product identities", failures);
    }
    { // penalty lower bound
        std::uniform_real_distribution<double> wide(-1e3, 1e3);
        bool ok = true;
        for (int it = 0; it < 100000; ++it) {
            const double a = wide(rng), b = wide(rng);
            const double lam = flux::lambda_interior(a, b);
            ok = ok && lam >= flux::lambda_lower_bound(0.5 * (std::abs(a) + std::abs(b)));
            const double li = flux::lambda_inflow(a);
            ok = ok && li >= flux::lambda_lower_bound(a);
        }
        check(ok, "lambda_U lower bound (randomized)", failures);
    }
    { // manufactured solution identities
        std::uniform_real_distribution<double> xr(0.0, 100.0), tr(0.0, 10.0);
        bool ok = true;
        for (int it = 0; it < 1000; ++it) {
            const double t = tr(rng), x = xr(rng);
            const double z = mms::zb(x) + (5.0 - mms::zb(x)) * 0.5 * (unit(rng) + 1.0);
            ok = ok && std::abs(mms::u_x(t, x, z) + mms::w_z(t, x, z)) < 1e-10;
            ok = ok && std::abs(mms::u(t, x, mms::zb(x))) < 1e-12;
        }
        check(ok, "manufactured solution: divergence-free, u(z_b) = 0", failures);
    }
    { // rest lake over a closed box
        RunConfig cfg;
        cfg.bc_mode = "physical";
        cfg.bc_left = cfg.bc_right = "wall";
        cfg.darcy_left = cfg.darcy_right = cfg.darcy_bottom_bc = "neumann";
        cfg.refinement = 1;
        cfg.p = 1;
        cfg.dt = 1e-3;
        cfg.dt_darcy = 1e-2;
        cfg.t_end = 0.0;
        cfg.seed = seed;
        Simulation sim(cfg.simulation_config(), cfg.make_problem());
        const CoupledState initial = sim.state();
        for (int s = 0; s < 20; ++s) sim.coupled_step();
        double dmax = 0.0;
        for (std::size_t i = 0; i < initial.xi.coef.size(); ++i)
            dmax = std::max(dmax, std::abs(initial.xi.coef[i] - sim.state().xi.coef[i]));
        for (std::size_t i = 0; i < initial.u.coef.size(); ++i)
            dmax = std::max(dmax, std::abs(initial.u.coef[i] - sim.state().u.coef[i]));
        check(dmax < 1e-12, "rest lake preserved over 20 coupled steps", failures);
    }
    { // closed-box volume conservation with a perturbed surface
        RunConfig cfg;
        cfg.bc_mode = "physical";
        cfg.bc_left = cfg.bc_right = "wall";
        cfg.darcy_left = cfg.darcy_right = cfg.darcy_bottom_bc = "neumann";
        cfg.refinement = 1;
        cfg.p = 1;
        cfg.dt = 1e-3;
        cfg.dt_darcy = 1e-2;
        cfg.t_end = 0.0;
        cfg.init_xi_bump = 0.01;
        cfg.seed = seed;
        Simulation sim(cfg.simulation_config(), cfg.make_problem());
        const double v0 = sim.xi_volume() + sim.head_volume();
        bool ok = true;
        for (int s = 0; s < 20; ++s) {
            sim.coupled_step();
            ok = ok && std::abs(sim.xi_volume() + sim.head_volume() - v0) < 1e-12 * v0;
        }
        check(ok, "closed-box coupled volume conservation", failures);
    }

    std::cout << (failures == 0 ? "selftest: all checks passed"
                                : "selftest: FAILURES detected")
              << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled hydrostatic free-surface / Darcy LDG solver"};
    app.require_subcommand(1);

    std::string config_path;
    int levels = 5;
    std::string orders = "1,2";
    unsigned long seed = 12345;

    CLI::App* run = app.add_subcommand("run", "run one simulation");
    run->add_option("--config", config_path, "configuration file")->required();

    CLI::App* conv = app.add_subcommand("converge", "manufactured-solution study");
    conv->add_option("--config", config_path, "configuration file")->required();
    conv->add_option("--levels", levels, "number of refinement levels (j = 0..n-1)");
    conv->add_option("--orders", orders, "comma-separated polynomial orders");

    CLI::App* st = app.add_subcommand("selftest", "run the invariant suite");
    st->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (conv->parsed()) return cmd_converge(config_path, levels, orders);
        return cmd_selftest(seed);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
