#include "ldgflow/driver.hpp"

#include "ldgflow/mms.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <stdexcept>

namespace ldgflow {

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir);
}

void dump_state_csv(const std::string& path, const CoupledState& s) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) throw std::runtime_error("cannot open " + path);
    std::fprintf(fp, "field,element,mode,coef\n");
    auto dump = [&](const DGField& f) {
        for (int e = 0; e < f.n_elem; ++e)
            for (int m = 0; m < f.n_modes; ++m)
                std::fprintf(fp, "%s,%d,%d,%.17g\n", f.name.c_str(), e, m,
                             f.elem(e)[m]);
    };
    dump(s.xi);
    dump(s.u);
    dump(s.w);
    dump(s.qx);
    dump(s.qz);
    dump(s.head);
    dump(s.darcy_ux);
    dump(s.darcy_uz);
    std::fclose(fp);
}

} // namespace

void write_energy_csv(const std::string& path, const std::vector<EnergyBudget>& rows) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) throw std::runtime_error("cannot open " + path);
    std::fprintf(fp, "time,xi_sq,u_sq,head_sq,q_diss,lambda_jump,friction,darcy_diss,"
                     "head_jump,transfer\n");
    for (const auto& b : rows)
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     b.time, b.xi_sq, b.u_sq, b.head_sq, b.q_diss, b.lambda_jump, b.friction,
                     b.darcy_diss, b.head_jump, b.transfer);
    std::fclose(fp);
}

RunResult run_simulation(const RunConfig& cfg, bool write_output) {
    cfg.validate();
    Simulation sim(cfg.simulation_config(), cfg.make_problem());
    const double dt_darcy = cfg.effective_dt_darcy();
    const long n_steps = cfg.t_end > 0.0
                             ? static_cast<long>(std::llround(cfg.t_end / dt_darcy))
                             : 0;

    RunResult res;
    res.history.reserve(n_steps + 1);
    res.history.push_back(sim.energy_budget());
    for (long s = 0; s < n_steps; ++s) res.history.push_back(sim.coupled_step());
    res.coupled_steps = sim.coupled_steps_taken();
    res.final_time = sim.time();
    res.final_budget = res.history.back();

    if (write_output) {
        ensure_dir(cfg.output_dir);
        write_energy_csv(cfg.output_dir + "/energy.csv", res.history);
        dump_state_csv(cfg.output_dir + "/final_state.csv", sim.state());
        sim.mesh().dump_csv(cfg.output_dir + "/mesh.csv");
    }
    return res;
}

MmsErrors mms_errors(Simulation& sim) {
    const double t = sim.time();
    MmsErrors e;
    e.xi = sim.error_vs_surface([t](double x) { return mms::xi(t, x); });
    e.u = sim.error_vs([t](double x, double z) { return mms::u(t, x, z); }, sim.state().u);
    e.w = sim.error_vs([t](double x, double z) { return mms::w(t, x, z); }, sim.state().w);
    e.head = sim.error_vs([t](double x, double z) { return mms::head(t, x, z); },
                          sim.state().head);
    // Darcy flux errors are reported for the conductivity-normalized flux,
    // the auxiliary gradient variable of the mixed solve.
    const double kappa = sim.config().darcy.d[0];
    e.darcy_u = sim.error_vs([t](double x, double z) { return mms::darcy_u(t, x, z); },
                             sim.state().darcy_ux) /
                kappa;
    e.darcy_w = sim.error_vs([t](double x, double z) { return mms::darcy_w(t, x, z); },
                             sim.state().darcy_uz) /
                kappa;
    return e;
}

double ConvergenceReport::dx(int j) const { return 100.0 / (2 << j); }

const ConvergenceCell* ConvergenceReport::find(int p, int j) const {
    for (const auto& c : cells)
        if (c.p == p && c.j == j) return &c;
    return nullptr;
}

ConvergenceReport converge(const RunConfig& base, int levels, const std::vector<int>& orders,
                           std::ostream& out) {
    if (levels < 2) throw std::invalid_argument("converge: need at least two levels");
    ConvergenceReport report;
    for (int p : orders) {
        for (int j = 0; j < levels; ++j) {
            RunConfig cfg = base;
            cfg.p = p;
            cfg.refinement = j;
            cfg.bc_mode = "mms";
            ConvergenceCell cell;
            cell.p = p;
            cell.j = j;
            const auto tic = std::chrono::steady_clock::now();
            try {
                cfg.validate();
                Simulation sim(cfg.simulation_config(), cfg.make_problem());
                const double dt_darcy = cfg.effective_dt_darcy();
                const long n = static_cast<long>(std::llround(cfg.t_end / dt_darcy));
                for (long s = 0; s < n; ++s) sim.coupled_step();
                cell.err = mms_errors(sim);
            } catch (const std::exception& ex) {
                cell.failed = true;
                cell.failure = ex.what();
            }
            cell.runtime_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - tic)
                    .count();
            out << "converge: p=" << p << " j=" << j
                << (cell.failed ? std::string(" FAILED: ") + cell.failure
                                : std::string(" done"))
                << " (" << cell.runtime_seconds << " s)\n";
            out.flush();
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

namespace {
const char* kFieldNames[6] = {"xi", "u", "w", "head", "darcy_u", "darcy_w"};

double field_err(const MmsErrors& e, int f) {
    switch (f) {
        case 0: return e.xi;
        case 1: return e.u;
        case 2: return e.w;
        case 3: return e.head;
        case 4: return e.darcy_u;
        default: return e.darcy_w;
    }
}
} // namespace

void write_errors_csv(const std::string& path, const ConvergenceReport& report,
                      const std::vector<int>& orders, int levels) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp == nullptr) throw std::runtime_error("cannot open " + path);
    std::fprintf(fp, "field,j,err,eoc\n");
    for (int p : orders) {
        for (int f = 0; f < 6; ++f) {
            for (int j = 0; j < levels; ++j) {
                const ConvergenceCell* cell = report.find(p, j);
                if (cell == nullptr || cell->failed) continue;
                const double err = field_err(cell->err, f);
                const ConvergenceCell* prev = j > 0 ? report.find(p, j - 1) : nullptr;
                if (prev != nullptr && !prev->failed && field_err(prev->err, f) > 0.0 &&
                    err > 0.0) {
                    const double rate = eoc(field_err(prev->err, f), err, report.dx(j - 1),
                                            report.dx(j));
                    std::fprintf(fp, "%s,%d,%.17g,%.17g\n", kFieldNames[f], j, err, rate);
                } else {
                    std::fprintf(fp, "%s,%d,%.17g,\n", kFieldNames[f], j, err);
                }
            }
        }
    }
    std::fclose(fp);
}

void print_convergence_table(std::ostream& out, const ConvergenceReport& report,
                             const std::vector<int>& orders, int levels) {
    char buf[256];
    for (int p : orders) {
        out << "p = " << p << "\n";
        out << "  j";
        for (int f = 0; f < 6; ++f) {
            std::snprintf(buf, sizeof buf, " %12s(%s) %5s", "Err", kFieldNames[f], "EOC");
            out << buf;
        }
        out << "\n";
        for (int j = 0; j < levels; ++j) {
            const ConvergenceCell* cell = report.find(p, j);
            if (cell == nullptr) continue;
            if (cell->failed) {
                out << "  " << j << "  FAILED: " << cell->failure << "\n";
                continue;
            }
            std::snprintf(buf, sizeof buf, "  %d", j);
            out << buf;
            for (int f = 0; f < 6; ++f) {
                const double err = field_err(cell->err, f);
                const ConvergenceCell* prev = j > 0 ? report.find(p, j - 1) : nullptr;
                if (prev != nullptr && !prev->failed && field_err(prev->err, f) > 0.0 &&
                    err > 0.0) {
                    const double rate = eoc(field_err(prev->err, f), err, report.dx(j - 1),
                                            report.dx(j));
                    std::snprintf(buf, sizeof buf, " %12.3e      %5.2f", err, rate);
                } else {
                    std::snprintf(buf, sizeof buf, " %12.3e      %5s", err, "---");
                }
                out << buf;
            }
            out << "\n";
        }
    }
}

} // namespace ldgflow
