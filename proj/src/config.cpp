#include "ldgflow/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ldgflow {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

LateralPolicy parse_policy(const std::string& v, const std::string& key) {
    if (v == "auto") return LateralPolicy::auto_classify;
    if (v == "inflow") return LateralPolicy::inflow;
    if (v == "outflow" || v == "wall") return LateralPolicy::outflow;
    throw std::invalid_argument("config: bad value '" + v + "' for " + key);
}

DarcyBoundary parse_darcy_bc(const std::string& v, const std::string& key) {
    if (v == "dirichlet") return DarcyBoundary::dirichlet;
    if (v == "neumann") return DarcyBoundary::neumann;
    throw std::invalid_argument("config: bad value '" + v + "' for " + key);
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    auto d = [&] { return std::stod(value); };
    auto i = [&] { return std::stoi(value); };
    if (key == "domain.x0") x0 = d();
    else if (key == "domain.x1") x1 = d();
    else if (key == "domain.zb_offset") zb_offset = d();
    else if (key == "domain.zb_slope") zb_slope = d();
    else if (key == "domain.darcy_bottom") darcy_bottom = d();
    else if (key == "mesh.refinement") refinement = i();
    else if (key == "mesh.columns") columns = i();
    else if (key == "mesh.layers") layers = i();
    else if (key == "mesh.darcy_layers") darcy_layers = i();
    else if (key == "orders.p") p = i();
    else if (key == "orders.xi") order_xi = i();
    else if (key == "orders.w") order_w = i();
    else if (key == "orders.u") order_u = i();
    else if (key == "orders.head") order_head = i();
    else if (key == "orders.flux") order_flux = i();
    else if (key == "time.dt") dt = d();
    else if (key == "time.dt_darcy") dt_darcy = d();
    else if (key == "time.end") t_end = d();
    else if (key == "time.start") t0 = d();
    else if (key == "physics.g") g = d();
    else if (key == "physics.viscosity") viscosity = d();
    else if (key == "physics.viscosity_xz") viscosity_xz = d();
    else if (key == "physics.viscosity_zz") viscosity_zz = d();
    else if (key == "physics.conductivity") conductivity = d();
    else if (key == "physics.conductivity_xz") conductivity_xz = d();
    else if (key == "physics.conductivity_zz") conductivity_zz = d();
    else if (key == "physics.friction_model") friction_model = value;
    else if (key == "physics.friction_coefficient") friction_coefficient = d();
    else if (key == "physics.eta") eta = d();
    else if (key == "flux.pce_penalty") pce_penalty = value;
    else if (key == "bc.mode") bc_mode = value;
    else if (key == "bc.left") bc_left = value;
    else if (key == "bc.right") bc_right = value;
    else if (key == "bc.darcy_left") darcy_left = value;
    else if (key == "bc.darcy_right") darcy_right = value;
    else if (key == "bc.darcy_bottom") darcy_bottom_bc = value;
    else if (key == "data.u_hat") u_hat = d();
    else if (key == "data.xi_hat") xi_hat = d();
    else if (key == "data.head_hat") head_hat = d();
    else if (key == "data.flux_hat") flux_hat = d();
    else if (key == "init.xi") init_xi = d();
    else if (key == "init.xi_bump") init_xi_bump = d();
    else if (key == "init.u") init_u = d();
    else if (key == "init.head") init_head = d();
    else if (key == "output.dir") output_dir = value;
    else if (key == "guard.max_coefficient") max_coefficient = d();
    else if (key == "seed") seed = std::stoul(value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' on line " +
                                        std::to_string(lineno));
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

int RunConfig::effective_columns() const {
    return columns > 0 ? columns : 2 << refinement; // 2^{j+1}
}
int RunConfig::effective_layers() const {
    return layers > 0 ? layers : 1 << refinement; // 2^j
}
int RunConfig::effective_darcy_layers() const {
    return darcy_layers > 0 ? darcy_layers : 1 << refinement;
}

double RunConfig::effective_dt() const {
    if (dt > 0.0) return dt;
    return 0.02 * std::pow(2.0, -p) * std::pow(4.0, -refinement);
}
double RunConfig::effective_dt_darcy() const {
    if (dt_darcy > 0.0) return dt_darcy;
    return 0.2 * std::pow(2.0, -p) * std::pow(4.0, -refinement);
}

int RunConfig::subcycles() const {
    const double ratio = effective_dt_darcy() / effective_dt();
    const int n = static_cast<int>(std::lround(ratio));
    if (n < 1 || std::abs(ratio - n) > 1e-9 * ratio)
        throw std::invalid_argument(
            "config: dt_darcy / dt must be a positive integer (got " +
            std::to_string(ratio) + ")");
    return n;
}

void RunConfig::validate() const {
    if (!(x1 > x0)) throw std::invalid_argument("config: domain extent must be positive");
    if (refinement < 0) throw std::invalid_argument("config: refinement must be >= 0");
    if (p < 0) throw std::invalid_argument("config: order p must be >= 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("config: end time must be >= 0");
    if (!(g > 0.0)) throw std::invalid_argument("config: g must be positive");
    if (friction_coefficient < 0.0)
        throw std::invalid_argument("config: friction coefficient must be >= 0");
    if (!(eta > 0.0)) throw std::invalid_argument("config: eta must be positive");
    if (friction_model != "linear" && friction_model != "quadratic")
        throw std::invalid_argument("config: friction_model must be linear or quadratic");
    if (bc_mode != "mms" && bc_mode != "physical")
        throw std::invalid_argument("config: bc.mode must be mms or physical");
    if (pce_penalty != "on" && pce_penalty != "off")
        throw std::invalid_argument("config: flux.pce_penalty must be on or off");
    subcycles(); // throws on a non-integer ratio
}

SimulationConfig RunConfig::simulation_config() const {
    SimulationConfig sc;
    sc.mesh.x0 = x0;
    sc.mesh.x1 = x1;
    sc.mesh.zb_offset = zb_offset;
    sc.mesh.zb_slope = zb_slope;
    sc.mesh.darcy_bottom = darcy_bottom;
    sc.mesh.columns = effective_columns();
    sc.mesh.layers = effective_layers();
    sc.mesh.darcy_layers = effective_darcy_layers();
    sc.mesh.left = parse_policy(bc_left, "bc.left");
    sc.mesh.right = parse_policy(bc_right, "bc.right");
    sc.mesh.darcy_left = parse_darcy_bc(darcy_left, "bc.darcy_left");
    sc.mesh.darcy_right = parse_darcy_bc(darcy_right, "bc.darcy_right");
    sc.mesh.darcy_bottom_bc = parse_darcy_bc(darcy_bottom_bc, "bc.darcy_bottom");

    sc.order_u = order_u >= 0 ? order_u : p;
    sc.order_w = order_w >= 0 ? order_w : 2 * p;
    sc.order_xi = order_xi >= 0 ? order_xi : 2 * p;
    sc.order_head = order_head >= 0 ? order_head : p;
    sc.order_flux = order_flux >= 0 ? order_flux : p;

    sc.dt = effective_dt();
    sc.subcycles = subcycles();
    sc.t0 = t0;

    sc.hydro.g = g;
    sc.hydro.d = {viscosity, viscosity_xz, viscosity_zz >= 0.0 ? viscosity_zz : viscosity};
    sc.hydro.friction.law = friction_model == "linear" ? FrictionSpec::Law::linear
                                                       : FrictionSpec::Law::quadratic;
    sc.hydro.friction.coefficient = friction_coefficient;
    sc.darcy.d = {conductivity, conductivity_xz,
                  conductivity_zz >= 0.0 ? conductivity_zz : conductivity};
    sc.darcy.eta = eta;
    sc.max_coefficient = max_coefficient;
    sc.pce_xi_penalty = pce_penalty == "on";
    return sc;
}

std::shared_ptr<const ProblemData> RunConfig::make_problem() const {
    if (bc_mode == "mms") {
        const SimulationConfig sc = simulation_config();
        return std::make_shared<MmsProblem>(sc.hydro, sc.darcy, t0);
    }
    PhysicalProblem::Spec spec;
    spec.u_hat = u_hat;
    spec.xi_hat = xi_hat;
    spec.head_hat = head_hat;
    spec.flux_hat = flux_hat;
    spec.init_xi = init_xi;
    spec.init_xi_bump = init_xi_bump;
    spec.init_u = init_u;
    spec.init_head = init_head;
    spec.x0 = x0;
    spec.x1 = x1;
    return std::make_shared<PhysicalProblem>(spec);
}

} // namespace ldgflow
