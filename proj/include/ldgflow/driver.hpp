/**
 * @file driver.hpp
 * @brief Simulation driver: time loop with energy logging, manufactured-
 *        solution convergence study, CSV emission.
 */
#pragma once

#include "ldgflow/config.hpp"
#include "ldgflow/coupling.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ldgflow {

struct RunResult {
    long coupled_steps = 0;
    double final_time = 0.0;
    EnergyBudget final_budget;
    std::vector<EnergyBudget> history;
};

/// Run a configuration to its end time; writes energy.csv (one row per
/// coupled step) and a final-state coefficient dump under output.dir when
/// write_output is set.
RunResult run_simulation(const RunConfig& cfg, bool write_output = true);

/// Errors of all six unknowns against the manufactured solution at the
/// simulation's current time.
struct MmsErrors {
    double xi = 0, u = 0, w = 0, head = 0, darcy_u = 0, darcy_w = 0;
};
MmsErrors mms_errors(Simulation& sim);

struct ConvergenceCell {
    int p = 0, j = 0;
    MmsErrors err;
    double runtime_seconds = 0.0;
    bool failed = false;
    std::string failure;
};

struct ConvergenceReport {
    std::vector<ConvergenceCell> cells; // ordered by (p, j)
    double dx(int j) const;             // element size at level j
    const ConvergenceCell* find(int p, int j) const;
};

/// Run the manufactured-solution study for each order and level; emits
/// errors.csv (columns field,j,err,eoc) plus a table on out.
ConvergenceReport converge(const RunConfig& base, int levels, const std::vector<int>& orders,
                           std::ostream& out);

void write_energy_csv(const std::string& path, const std::vector<EnergyBudget>& rows);
void write_errors_csv(const std::string& path, const ConvergenceReport& report,
                      const std::vector<int>& orders, int levels);
void print_convergence_table(std::ostream& out, const ConvergenceReport& report,
                             const std::vector<int>& orders, int levels);

} // namespace ldgflow
