#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "parastab/circuit.hpp"
#include "parastab/hamiltonian.hpp"
#include "parastab/metrics.hpp"

namespace parastab {

/// Schema violation; the message carries the JSON field path.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { Steady, Evolve, Gap, Optimize, Sweep, Phase, Circuit };

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

enum class SweepKind {
    GScan,
    AsymmetryQubitQubit,
    AsymmetryQubitResonator,
    CouplingDeviation,
    Detuning,
    CounterRotating
};

struct SystemConfig {
    double g = 0.0;             // rad/s
    bool ratio_optimal = true;  // kappa = 1.5 g, g_r = 0.75 g
    double g_r = 0.0;           // rad/s, when explicit
    double kappa = 0.0;         // rad/s, when explicit
    double f12_plus = 1.0, f12_minus = 1.0, f1r = 1.0, f2r = 1.0;
    double t1 = 0.0, t2 = 0.0;  // seconds
    int n_res = 3;
    double chi1 = 0.0, chi2 = 0.0;                       // rad/s
    double delta1 = 0.0, delta2 = 0.0, delta_r = 0.0;    // rad/s

    SystemParams to_params() const;
    QubitDecoherence decoherence() const;
    RatioPolicy ratios() const;  // throws when explicit ratios are in use
};

struct EvolveConfig {
    double t_final = 0.0;  // seconds; 0 -> auto (12 tau)
    int n_points = 400;
    std::string initial_state = "eg0";  // eg0|ge0|gg0|ee0|mixed
    bool counter_rotating = false;
    double omega_chi = 0.0;  // rad/s, used when counter_rotating
};

struct OptimizeConfig {
    OptimizeBox box;
    int coarse_points = 21;
};

struct SweepConfig {
    SweepKind kind = SweepKind::GScan;
    std::vector<double> g_grid;           // rad/s
    std::vector<double> factors_a;        // asymmetry / deviation grids
    std::vector<double> factors_b;
    std::vector<double> delta_sum;        // rad/s
    std::vector<double> delta_diff;
    std::vector<double> delta_r;
    double omega_chi = 0.0;               // rad/s
    std::vector<double> error_thresholds;
};

struct PhaseConfig {
    int psi_points = 32;
    std::vector<double> tomogram_psi;  // radians
};

struct CircuitRunConfig {
    CircuitParams params;
    double phi_bias = 0.0;   // Wb
    double flux_max = 0.0;   // Wb, sweep upper edge
    int flux_points = 91;
};

struct RunConfig {
    RunMode mode = RunMode::Steady;
    TargetSpec target;
    SystemConfig system;
    std::optional<PumpPhases> expert_phases;  // raw-phase override
    EvolveConfig evolve;
    OptimizeConfig optimize;
    SweepConfig sweep;
    PhaseConfig phase;
    CircuitRunConfig circuit;
    std::string out_dir = "out";
    std::string prefix = "run";
    json raw;  // normalized user-unit snapshot (defaults materialized)
};

RunConfig parse_config_json(const json& j, std::optional<RunMode> cli_mode = std::nullopt);
RunConfig parse_config(const std::string& path, std::optional<RunMode> cli_mode = std::nullopt);

/// User-unit JSON snapshot; parse_config_json(serialize(cfg)) == cfg.
json serialize(const RunConfig& cfg);

}  // namespace parastab
