#include "parastab/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "parastab/constants.hpp"
#include "parastab/io_util.hpp"

namespace parastab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHbar = 1.054571817e-34;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

const json& child(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required key");
    return *it;
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
    }
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::string str_at(const json& obj, const std::string& path, const char* key) {
    const json& v = child(obj, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double num(const json& obj, const std::string& path, const char* key) {
    return as_number(child(obj, path, key), path + "." + key);
}

double num_or(json& obj, const std::string& path, const char* key, double def) {
    if (!obj.contains(key)) obj[key] = def;
    return as_number(obj[key], path + "." + key);
}

int int_or(json& obj, const std::string& path, const char* key, int def) {
    if (!obj.contains(key)) obj[key] = def;
    const json& v = obj[key];
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::string str_or(json& obj, const std::string& path, const char* key,
                   const std::string& def) {
    if (!obj.contains(key)) obj[key] = def;
    const json& v = obj[key];
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

bool bool_or(json& obj, const std::string& path, const char* key, bool def) {
    if (!obj.contains(key)) obj[key] = def;
    const json& v = obj[key];
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    return v.get<bool>();
}

void require_nonnegative(double v, const std::string& path) {
    if (!(v >= 0.0) || !std::isfinite(v)) fail(path, "must be a finite number >= 0");
}

void require_positive(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(path, "must be a finite number > 0");
}

struct Units {
    double freq_to_si = 0.0;   // linear MHz/GHz -> rad/s
    double time_to_si = 0.0;
    double phase_to_rad = 0.0;
};

Units parse_units(const json& top) {
    if (!top.contains("units")) fail("units", "missing required key");
    const json& u = top["units"];
    check_keys(u, "units", {"frequency", "time", "phase"});
    Units units;

    const std::string f = str_at(u, "units", "frequency");
    if (f == "MHz") units.freq_to_si = kTwoPi * 1e6;
    else if (f == "GHz") units.freq_to_si = kTwoPi * 1e9;
    else fail("units.frequency", "must be 'MHz' or 'GHz'");

    const std::string t = str_at(u, "units", "time");
    if (t == "us") units.time_to_si = 1e-6;
    else if (t == "ns") units.time_to_si = 1e-9;
    else if (t == "s") units.time_to_si = 1.0;
    else fail("units.time", "must be 'us', 'ns' or 's'");

    const std::string p = str_at(u, "units", "phase");
    if (p == "rad") units.phase_to_rad = 1.0;
    else if (p == "deg") units.phase_to_rad = std::numbers::pi / 180.0;
    else fail("units.phase", "must be 'rad' or 'deg'");

    return units;
}

TargetSpec parse_target(json& j, const Units& u) {
    check_keys(j, "target", {"parity", "psi"});
    const std::string parity = str_or(j, "target", "parity", "even");
    const double psi = num_or(j, "target", "psi", 0.0) * u.phase_to_rad;
    try {
        return TargetSpec(parity_from_string(parity), psi);
    } catch (const std::invalid_argument& e) {
        fail("target.parity", e.what());
    }
}

SystemConfig parse_system(json& j, const Units& u) {
    check_keys(j, "system",
               {"g", "ratio_policy", "g_r", "kappa", "g12_plus_factor", "g12_minus_factor",
                "g1r_factor", "g2r_factor", "T1", "T2", "n_res", "chi1", "chi2", "delta1",
                "delta2", "delta_r"});
    SystemConfig s;
    s.g = num(j, "system", "g") * u.freq_to_si;
    require_nonnegative(s.g, "system.g");

    const std::string policy = str_or(j, "system", "ratio_policy", "optimal");
    if (policy == "optimal") {
        s.ratio_optimal = true;
        if (j.contains("g_r") || j.contains("kappa")) {
            fail("system.ratio_policy", "'optimal' forbids explicit g_r/kappa");
        }
        s.g_r = 0.75 * s.g;
        s.kappa = 1.5 * s.g;
    } else if (policy == "explicit") {
        s.ratio_optimal = false;
        s.g_r = num(j, "system", "g_r") * u.freq_to_si;
        s.kappa = num(j, "system", "kappa") * u.freq_to_si;
        require_nonnegative(s.g_r, "system.g_r");
        require_nonnegative(s.kappa, "system.kappa");
    } else {
        fail("system.ratio_policy", "must be 'optimal' or 'explicit'");
    }

    s.f12_plus = num_or(j, "system", "g12_plus_factor", 1.0);
    s.f12_minus = num_or(j, "system", "g12_minus_factor", 1.0);
    s.f1r = num_or(j, "system", "g1r_factor", 1.0);
    s.f2r = num_or(j, "system", "g2r_factor", 1.0);
    require_positive(s.f12_plus, "system.g12_plus_factor");
    require_positive(s.f12_minus, "system.g12_minus_factor");
    require_positive(s.f1r, "system.g1r_factor");
    require_positive(s.f2r, "system.g2r_factor");

    s.t1 = num(j, "system", "T1") * u.time_to_si;
    s.t2 = num(j, "system", "T2") * u.time_to_si;
    require_positive(s.t1, "system.T1");
    require_positive(s.t2, "system.T2");
    if (s.t2 > 2.0 * s.t1 * (1.0 + 1e-12)) fail("system.T2", "must not exceed 2*T1");

    s.n_res = int_or(j, "system", "n_res", 3);
    if (s.n_res < 2 || s.n_res > 16) fail("system.n_res", "must be in [2, 16]");

    s.chi1 = num_or(j, "system", "chi1", 0.0) * u.freq_to_si;
    s.chi2 = num_or(j, "system", "chi2", 0.0) * u.freq_to_si;
    s.delta1 = num_or(j, "system", "delta1", 0.0) * u.freq_to_si;
    s.delta2 = num_or(j, "system", "delta2", 0.0) * u.freq_to_si;
    s.delta_r = num_or(j, "system", "delta_r", 0.0) * u.freq_to_si;
    return s;
}

std::vector<double> grid_from(json& j, const std::string& path, const char* min_key,
                              const char* max_key, const char* points_key,
                              double to_si, bool log_spacing) {
    const double lo = num(j, path, min_key) * to_si;
    const double hi = num(j, path, max_key) * to_si;
    const int n = int_or(j, path, points_key, 9);
    if (n < 2 || n > 20000) fail(path + "." + points_key, "must be in [2, 20000]");
    if (!(lo < hi)) fail(path + "." + min_key, "grid bounds must satisfy min < max");
    if (log_spacing) {
        if (!(lo > 0.0)) fail(path + "." + min_key, "log grid requires min > 0");
        return logspace(lo, hi, n);
    }
    return linspace(lo, hi, n);
}

std::vector<double> list_or(json& j, const std::string& path, const char* key,
                            std::vector<double> def, double to_si) {
    if (!j.contains(key)) j[key] = def;
    const json& v = j[key];
    if (!v.is_array()) fail(path + "." + key, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_number(v[i], path + "." + key + "[" + std::to_string(i) + "]") *
                      to_si);
    }
    if (out.empty()) fail(path + "." + key, "must not be empty");
    return out;
}

SweepConfig parse_sweep(json& j, const Units& u) {
    check_keys(j, "sweep",
               {"kind", "spacing", "g_min", "g_max", "g_points", "factor_min", "factor_max",
                "factor_points", "delta_sum", "delta_diff", "delta_r", "omega_chi",
                "error_thresholds"});
    SweepConfig s;
    const std::string kind = str_at(j, "sweep", "kind");

    const auto parse_g_grid = [&]() {
        const std::string spacing = str_or(j, "sweep", "spacing", "log");
        if (spacing != "log" && spacing != "linear") {
            fail("sweep.spacing", "must be 'log' or 'linear'");
        }
        s.g_grid = grid_from(j, "sweep", "g_min", "g_max", "g_points", u.freq_to_si,
                             spacing == "log");
    };
    const auto parse_factor_grids = [&]() {
        const double lo = num_or(j, "sweep", "factor_min", 0.5);
        const double hi = num_or(j, "sweep", "factor_max", 1.5);
        const int n = int_or(j, "sweep", "factor_points", 11);
        require_positive(lo, "sweep.factor_min");
        if (!(lo < hi)) fail("sweep.factor_min", "grid bounds must satisfy min < max");
        if (n < 2 || n > 201) fail("sweep.factor_points", "must be in [2, 201]");
        s.factors_a = linspace(lo, hi, n);
        s.factors_b = s.factors_a;
    };

    if (kind == "g_scan") {
        s.kind = SweepKind::GScan;
        parse_g_grid();
    } else if (kind == "asymmetry_qq" || kind == "asymmetry_qr") {
        s.kind = (kind == "asymmetry_qq") ? SweepKind::AsymmetryQubitQubit
                                          : SweepKind::AsymmetryQubitResonator;
        parse_factor_grids();
    } else if (kind == "coupling_deviation") {
        s.kind = SweepKind::CouplingDeviation;
        parse_factor_grids();
    } else if (kind == "detuning") {
        s.kind = SweepKind::Detuning;
        s.delta_sum = list_or(j, "sweep", "delta_sum", {0.0}, u.freq_to_si);
        s.delta_diff = list_or(j, "sweep", "delta_diff", {0.0}, u.freq_to_si);
        s.delta_r = list_or(j, "sweep", "delta_r", {0.0}, u.freq_to_si);
    } else if (kind == "counter_rotating") {
        s.kind = SweepKind::CounterRotating;
        s.omega_chi = num(j, "sweep", "omega_chi") * u.freq_to_si;
        require_positive(s.omega_chi, "sweep.omega_chi");
        parse_g_grid();
        s.error_thresholds = list_or(j, "sweep", "error_thresholds", {0.05, 0.02, 0.01}, 1.0);
    } else {
        fail("sweep.kind", "unknown sweep kind '" + kind + "'");
    }
    return s;
}

EvolveConfig parse_evolve(json& j, const Units& u) {
    check_keys(j, "evolve",
               {"t_final", "n_points", "initial_state", "counter_rotating", "omega_chi"});
    EvolveConfig e;
    e.t_final = num_or(j, "evolve", "t_final", 0.0) * u.time_to_si;
    require_nonnegative(e.t_final, "evolve.t_final");
    e.n_points = int_or(j, "evolve", "n_points", 400);
    if (e.n_points < 20 || e.n_points > 100000) fail("evolve.n_points", "must be in [20, 100000]");
    e.initial_state = str_or(j, "evolve", "initial_state", "eg0");
    const std::set<std::string> states = {"eg0", "ge0", "gg0", "ee0", "mixed"};
    if (!states.count(e.initial_state)) {
        fail("evolve.initial_state", "must be one of eg0|ge0|gg0|ee0|mixed");
    }
    e.counter_rotating = bool_or(j, "evolve", "counter_rotating", false);
    if (e.counter_rotating) {
        e.omega_chi = num(j, "evolve", "omega_chi") * u.freq_to_si;
        require_positive(e.omega_chi, "evolve.omega_chi");
    } else {
        e.omega_chi = num_or(j, "evolve", "omega_chi", 0.0) * u.freq_to_si;
    }
    return e;
}

OptimizeConfig parse_optimize(json& j, const Units&) {
    check_keys(j, "optimize", {"gr_lo", "gr_hi", "kappa_lo", "kappa_hi", "coarse_points"});
    OptimizeConfig o;
    o.box.gr_lo = num_or(j, "optimize", "gr_lo", 0.25);
    o.box.gr_hi = num_or(j, "optimize", "gr_hi", 2.5);
    o.box.kappa_lo = num_or(j, "optimize", "kappa_lo", 0.3);
    o.box.kappa_hi = num_or(j, "optimize", "kappa_hi", 5.0);
    require_positive(o.box.gr_lo, "optimize.gr_lo");
    require_positive(o.box.gr_hi, "optimize.gr_hi");
    require_positive(o.box.kappa_lo, "optimize.kappa_lo");
    require_positive(o.box.kappa_hi, "optimize.kappa_hi");
    o.coarse_points = int_or(j, "optimize", "coarse_points", 21);
    if (o.coarse_points < 21 || o.coarse_points > 101) {
        fail("optimize.coarse_points", "must be in [21, 101]");
    }
    return o;
}

PhaseConfig parse_phase(json& j, const Units& u) {
    check_keys(j, "phase", {"psi_points", "tomogram_psi"});
    PhaseConfig p;
    p.psi_points = int_or(j, "phase", "psi_points", 32);
    if (p.psi_points < 4 || p.psi_points > 4096) fail("phase.psi_points", "must be in [4, 4096]");
    const double pi_u = std::numbers::pi / u.phase_to_rad;  // pi in user phase units
    p.tomogram_psi =
        list_or(j, "phase", "tomogram_psi", {0.0, 0.5 * pi_u, pi_u, 1.5 * pi_u},
                u.phase_to_rad);
    return p;
}

CircuitRunConfig parse_circuit(json& j, const Units& u) {
    check_keys(j, "circuit",
               {"I_c_uA", "L_r_nH", "omega_1", "omega_2", "omega_r", "L_j1_nH", "L_j2_nH",
                "Ej_over_Ec_1", "Ej_over_Ec_2", "delta_Phi", "L_0_nH", "M_pH", "Z_0",
                "A_flux_uPhi0", "f_min_Hz", "f_max_Hz", "phi_bias", "flux_max",
                "flux_points"});
    CircuitRunConfig c;
    c.params.I_c = num_or(j, "circuit", "I_c_uA", 1.0) * 1e-6;
    c.params.L_r = num_or(j, "circuit", "L_r_nH", 5.0) * 1e-9;
    c.params.omega_1 = num(j, "circuit", "omega_1") * u.freq_to_si;
    c.params.omega_2 = num(j, "circuit", "omega_2") * u.freq_to_si;
    c.params.omega_r = num(j, "circuit", "omega_r") * u.freq_to_si;

    // Transmon relations when E_J/E_C is given instead of L_j:
    // E_J = hbar * omega_j * sqrt(r/8), L_j = (Phi_0/2pi)^2 / E_J.
    const auto qubit_inductance = [&](const char* l_key, const char* r_key,
                                      double omega_j) -> double {
        const bool has_l = j.contains(l_key), has_r = j.contains(r_key);
        if (has_l == has_r) {
            fail(std::string("circuit.") + l_key,
                 std::string("exactly one of ") + l_key + " / " + r_key + " is required");
        }
        if (has_l) return num(j, "circuit", l_key) * 1e-9;
        const double ratio = num(j, "circuit", r_key);
        require_positive(ratio, std::string("circuit.") + r_key);
        const double ej = kHbar * omega_j * std::sqrt(ratio / 8.0);
        const double phi0_red = kFluxQuantum / kTwoPi;
        return phi0_red * phi0_red / ej;
    };
    c.params.L_j1 = qubit_inductance("L_j1_nH", "Ej_over_Ec_1", c.params.omega_1);
    c.params.L_j2 = qubit_inductance("L_j2_nH", "Ej_over_Ec_2", c.params.omega_2);

    c.params.delta_Phi = num_or(j, "circuit", "delta_Phi", 0.1) * kFluxQuantum;
    c.params.L_0 = num_or(j, "circuit", "L_0_nH", 0.1) * 1e-9;
    c.params.M = num_or(j, "circuit", "M_pH", 2.0) * 1e-12;
    c.params.Z_0 = num_or(j, "circuit", "Z_0", 50.0);
    c.params.A_flux = num_or(j, "circuit", "A_flux_uPhi0", 2.0) * 1e-6;
    c.params.f_min = num_or(j, "circuit", "f_min_Hz", 1.0);
    c.params.f_max = num_or(j, "circuit", "f_max_Hz", 1e9);
    c.phi_bias = num_or(j, "circuit", "phi_bias", 0.15) * kFluxQuantum;
    c.flux_max = num_or(j, "circuit", "flux_max", 0.45) * kFluxQuantum;
    c.flux_points = int_or(j, "circuit", "flux_points", 91);
    if (c.flux_points < 2 || c.flux_points > 100000) {
        fail("circuit.flux_points", "must be in [2, 100000]");
    }
    try {
        c.params.validate();
    } catch (const std::invalid_argument& e) {
        fail("circuit", e.what());
    }
    return c;
}

}  // namespace

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::Steady: return "steady";
        case RunMode::Evolve: return "evolve";
        case RunMode::Gap: return "gap";
        case RunMode::Optimize: return "optimize";
        case RunMode::Sweep: return "sweep";
        case RunMode::Phase: return "phase";
        case RunMode::Circuit: return "circuit";
    }
    throw std::logic_error("bad RunMode");
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "steady") return RunMode::Steady;
    if (s == "evolve") return RunMode::Evolve;
    if (s == "gap") return RunMode::Gap;
    if (s == "optimize") return RunMode::Optimize;
    if (s == "sweep") return RunMode::Sweep;
    if (s == "phase") return RunMode::Phase;
    if (s == "circuit") return RunMode::Circuit;
    throw ConfigError("mode: unknown mode '" + s + "'");
}

SystemParams SystemConfig::to_params() const {
    const QubitDecoherence dec = decoherence();
    SystemParams p = SystemParams::symmetric(g, g_r, kappa, dec.gamma1, dec.gammaphi, n_res);
    p.g12_plus *= f12_plus;
    p.g12_minus *= f12_minus;
    p.g1r *= f1r;
    p.g2r *= f2r;
    p.chi1 = chi1;
    p.chi2 = chi2;
    p.delta1 = delta1;
    p.delta2 = delta2;
    p.delta_r = delta_r;
    p.validate();
    return p;
}

QubitDecoherence SystemConfig::decoherence() const {
    return QubitDecoherence::from_t1_t2(t1, t2);
}

RatioPolicy SystemConfig::ratios() const {
    if (!ratio_optimal) {
        if (!(g > 0.0)) throw ConfigError("system.g: ratio policy requires g > 0");
        return RatioPolicy{g_r / g, kappa / g};
    }
    return RatioPolicy{};
}

RunConfig parse_config_json(const json& j, std::optional<RunMode> cli_mode) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    json cfg = j;
    check_keys(cfg, "config",
               {"mode", "units", "target", "system", "expert_phases", "evolve", "optimize",
                "sweep", "phase", "circuit", "output"});

    RunConfig rc;
    if (cfg.contains("mode")) {
        const json& m = cfg["mode"];
        if (!m.is_string()) fail("mode", "expected a string");
        rc.mode = run_mode_from_string(m.get<std::string>());
        if (cli_mode && *cli_mode != rc.mode) {
            fail("mode", "config mode '" + to_string(rc.mode) +
                             "' does not match requested mode '" + to_string(*cli_mode) + "'");
        }
    } else if (cli_mode) {
        rc.mode = *cli_mode;
        cfg["mode"] = to_string(rc.mode);
    } else {
        fail("mode", "missing required key");
    }

    const Units units = parse_units(cfg);

    const bool needs_system = rc.mode != RunMode::Circuit;
    if (needs_system) {
        if (!cfg.contains("system")) fail("system", "missing required key");
        rc.system = parse_system(cfg["system"], units);
        if (!cfg.contains("target")) cfg["target"] = json::object();
        rc.target = parse_target(cfg["target"], units);
        if (cfg.contains("expert_phases")) {
            json& e = cfg["expert_phases"];
            check_keys(e, "expert_phases",
                       {"phi12_plus", "phi12_minus", "phi1r", "phi2r"});
            PumpPhases ph;
            ph.phi12_plus = num(e, "expert_phases", "phi12_plus") * units.phase_to_rad;
            ph.phi12_minus = num(e, "expert_phases", "phi12_minus") * units.phase_to_rad;
            ph.phi1r = num(e, "expert_phases", "phi1r") * units.phase_to_rad;
            ph.phi2r = num(e, "expert_phases", "phi2r") * units.phase_to_rad;
            rc.expert_phases = ph;
        }
    } else if (cfg.contains("target") || cfg.contains("system") ||
               cfg.contains("expert_phases")) {
        fail("circuit", "circuit mode takes no target/system/expert_phases blocks");
    }

    switch (rc.mode) {
        case RunMode::Evolve:
            if (!cfg.contains("evolve")) cfg["evolve"] = json::object();
            rc.evolve = parse_evolve(cfg["evolve"], units);
            break;
        case RunMode::Optimize:
            if (!cfg.contains("optimize")) cfg["optimize"] = json::object();
            rc.optimize = parse_optimize(cfg["optimize"], units);
            break;
        case RunMode::Sweep:
            if (!cfg.contains("sweep")) fail("sweep", "missing required key");
            rc.sweep = parse_sweep(cfg["sweep"], units);
            break;
        case RunMode::Phase:
            if (!cfg.contains("phase")) cfg["phase"] = json::object();
            rc.phase = parse_phase(cfg["phase"], units);
            break;
        case RunMode::Circuit:
            if (!cfg.contains("circuit")) fail("circuit", "missing required key");
            rc.circuit = parse_circuit(cfg["circuit"], units);
            break;
        default:
            break;
    }

    // Blocks irrelevant to the mode are rejected (they would silently do nothing).
    const std::set<std::string> relevant = {"mode", "units", "target", "system",
                                            "expert_phases", "output",
                                            to_string(rc.mode)};
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (it.key() == "evolve" || it.key() == "optimize" || it.key() == "sweep" ||
            it.key() == "phase" || it.key() == "circuit") {
            if (!relevant.count(it.key())) {
                fail(it.key(), "block not applicable to mode '" + to_string(rc.mode) + "'");
            }
        }
    }

    if (!cfg.contains("output")) cfg["output"] = json::object();
    json& out = cfg["output"];
    check_keys(out, "output", {"dir", "prefix"});
    rc.out_dir = str_or(out, "output", "dir", "out");
    rc.prefix = str_or(out, "output", "prefix", "run");

    rc.raw = std::move(cfg);
    return rc;
}

RunConfig parse_config(const std::string& path, std::optional<RunMode> cli_mode) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config_json(j, cli_mode);
}

json serialize(const RunConfig& cfg) { return cfg.raw; }

}  // namespace parastab
