#include "parastab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "parastab/circuit.hpp"
#include "parastab/constants.hpp"
#include "parastab/io_util.hpp"
#include "parastab/phase_control.hpp"

namespace parastab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class OutputWriter {
  public:
    OutputWriter(std::string dir, std::string prefix)
        : dir_(std::move(dir)), prefix_(std::move(prefix)) {}

    std::string write_text(const std::string& suffix, const std::string& content) {
        const std::string path = path_for(suffix);
        write_file_atomic(path, content);
        entries_.push_back({path, fnv1a64_hex(content), content.size()});
        return path;
    }

    std::string write_json(const std::string& suffix, const json& j) {
        return write_text(suffix, j.dump(2) + "\n");
    }

    std::string write_manifest(const json& config_snapshot, double wall_seconds) {
        json m;
        m["config"] = config_snapshot;
        m["version"] = kVersion;
        m["wall_time_s"] = wall_seconds;
        m["checksum_algorithm"] = "fnv1a64";
        m["outputs"] = json::array();
        for (const auto& e : entries_) {
            m["outputs"].push_back({{"path", std::filesystem::path(e.path).filename().string()},
                                    {"checksum", e.checksum},
                                    {"bytes", e.bytes}});
        }
        const std::string path = path_for("manifest.json");
        write_file_atomic(path, m.dump(2) + "\n");
        return path;
    }

    std::vector<std::string> files() const {
        std::vector<std::string> out;
        for (const auto& e : entries_) out.push_back(e.path);
        return out;
    }

  private:
    std::string path_for(const std::string& suffix) const {
        return (std::filesystem::path(dir_) / (prefix_ + "_" + suffix)).string();
    }
    struct Entry {
        std::string path, checksum;
        std::size_t bytes;
    };
    std::string dir_, prefix_;
    std::vector<Entry> entries_;
};

OpMatrix initial_state(const std::string& name, const HilbertSpec& spec) {
    const int d = spec.dim();
    OpMatrix rho = OpMatrix::Zero(d, d);
    if (name == "mixed") {
        rho = OpMatrix::Identity(d, d) / double(d);
        return rho;
    }
    int q1 = 0, q2 = 0;
    if (name == "eg0") q1 = 1;
    else if (name == "ge0") q2 = 1;
    else if (name == "ee0") q1 = q2 = 1;
    else if (name != "gg0") throw std::invalid_argument("unknown initial state " + name);
    const int idx = spec.index(q1, q2, 0);
    rho(idx, idx) = 1.0;
    return rho;
}

json point_json(const PointMetrics& m) {
    json j;
    j["eps_inf"] = m.eps_inf;
    j["tau_s"] = m.tau;
    j["fidelity"] = m.fidelity;
    j["purity"] = m.purity;
    j["photon"] = m.photon;
    j["converged"] = m.converged;
    if (!m.note.empty()) j["note"] = m.note;
    return j;
}

json run_steady(const RunConfig& cfg, OutputWriter& out, unsigned) {
    SystemParams params = cfg.system.to_params();
    if (cfg.expert_phases) {
        params.phi12_plus = cfg.expert_phases->phi12_plus;
        params.phi12_minus = cfg.expert_phases->phi12_minus;
        params.phi1r = cfg.expert_phases->phi1r;
        params.phi2r = cfg.expert_phases->phi2r;
    }
    const PointMetrics m =
        solve_point(params, cfg.target, true, cfg.expert_phases.has_value());
    if (!m.converged) throw ConvergenceError("steady: " + m.note);

    // Recompute the state for the tomogram and manifold diagnostics.
    const HilbertSpec spec(params.n_res);
    const OpMatrix h = cfg.expert_phases
                           ? build_h_eff_raw(params, cfg.target.parity, spec)
                           : build_h_eff(params, cfg.target);
    const Liouvillian L = build_liouvillian(h, params, spec);
    DensityMatrix rho = steady_state(L);
    const double fid = fidelity_to_target(rho.mat(), target_state(cfg.target), spec);
    const StabilizedState st{std::move(rho), fid};
    const Tomogram tomo = tomogram(st.rho_ss, spec);
    const ManifoldMetrics mm = manifold_metrics(st.rho_ss.mat(), cfg.target.parity, spec);

    json result = point_json(m);
    result["manifold_population"] = mm.population;
    result["manifold_purity"] = mm.purity;
    result["coherence_phase"] = coherence_phase(tomo, cfg.target.parity);
    out.write_json("steady.json", result);
    out.write_json("tomogram.json", tomo.to_json());
    return result;
}

json run_gap(const RunConfig& cfg, OutputWriter& out, unsigned) {
    const SystemParams params = cfg.system.to_params();
    const HilbertSpec spec(params.n_res);
    const OpMatrix h = build_h_eff(params, cfg.target);
    const Liouvillian L = build_liouvillian(h, params, spec);
    const SpectralGap gap = spectral_gap(L);

    json result;
    result["tau_s"] = gap.tau;
    result["lambda1_re"] = gap.lambda1.real();
    result["lambda1_im"] = gap.lambda1.imag();
    if (cfg.system.g > 0.0 && params.kappa > 0.0) {
        const double geff = analytic_rate(cfg.system.g, params.kappa);
        result["gamma_eff"] = geff;
        result["gap_over_gamma_eff"] = (1.0 / gap.tau) / geff;
    }
    out.write_json("gap.json", result);
    return result;
}

json run_evolve(const RunConfig& cfg, OutputWriter& out, unsigned) {
    const SystemParams params = cfg.system.to_params();
    const HilbertSpec spec(params.n_res);
    const OpMatrix h = build_h_eff(params, cfg.target);
    const Liouvillian L = build_liouvillian(h, params, spec);
    const OpMatrix rho0 = initial_state(cfg.evolve.initial_state, spec);
    const Observables obs{target_state(cfg.target), spec};

    double t_final = cfg.evolve.t_final;
    if (t_final <= 0.0) t_final = 12.0 * spectral_gap(L).tau;
    const std::vector<double> grid = linspace(0.0, t_final, cfg.evolve.n_points);

    Trajectory traj;
    if (cfg.evolve.counter_rotating) {
        const CounterRotatingTerm cr =
            make_counter_rotating(params, cfg.target, cfg.evolve.omega_chi);
        traj = evolve_with_leakage(L, cr, rho0, grid, obs);
    } else {
        traj = evolve(L, rho0, grid, obs);
    }

    std::ostringstream csv;
    csv << "t [s],error,fidelity,purity,photon\r\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        csv << format_double(traj.times[i]) << ',' << format_double(traj.error[i]) << ','
            << format_double(traj.fidelity[i]) << ',' << format_double(traj.purity[i])
            << ',' << format_double(traj.photon[i]) << "\r\n";
    }
    out.write_text("trajectory.csv", csv.str());

    json result;
    result["t_final_s"] = t_final;
    result["final_error"] = traj.error.back();
    result["final_fidelity"] = traj.fidelity.back();
    try {
        const DecayFit fit = fit_error_decay(traj);
        result["fit"] = {{"eps_inf", fit.eps_inf},
                         {"eps_tilde", fit.eps_tilde},
                         {"tau_s", fit.tau},
                         {"residual", fit.residual}};
    } catch (const std::exception& e) {
        result["fit"] = {{"error", e.what()}};
    }
    out.write_json("evolve.json", result);
    return result;
}

json run_optimize(const RunConfig& cfg, OutputWriter& out, unsigned threads) {
    const OptimizeResult res = optimize_couplings(
        cfg.system.g, cfg.optimize.box, cfg.system.decoherence(), cfg.target,
        cfg.optimize.coarse_points, cfg.system.n_res, threads);
    json result;
    result["gr_over_g"] = res.gr_over_g;
    result["kappa_over_g"] = res.kappa_over_g;
    result["eps_inf"] = res.eps_inf;
    result["on_boundary"] = res.on_boundary;
    result["sensitivity"] = {{"eps_gr_minus10", res.eps_gr_minus},
                             {"eps_gr_plus10", res.eps_gr_plus},
                             {"eps_kappa_minus10", res.eps_kappa_minus},
                             {"eps_kappa_plus10", res.eps_kappa_plus}};
    out.write_json("optimize.json", result);
    out.write_text("landscape.csv", res.coarse.to_csv());
    out.write_json("landscape.json", res.coarse.to_json());
    return result;
}

json run_sweep(const RunConfig& cfg, OutputWriter& out, unsigned threads) {
    const QubitDecoherence dec = cfg.system.decoherence();
    const RatioPolicy ratios = cfg.system.ratios();
    const int n_res = cfg.system.n_res;
    SweepResult sweep;
    switch (cfg.sweep.kind) {
        case SweepKind::GScan:
            sweep = scan_error_and_rate(cfg.sweep.g_grid, ratios, dec, cfg.target, n_res,
                                        threads);
            break;
        case SweepKind::AsymmetryQubitQubit:
            sweep = sweep_asymmetry(AsymmetryKind::QubitQubit, cfg.sweep.factors_a,
                                    cfg.sweep.factors_b, cfg.system.g, ratios, dec,
                                    cfg.target, n_res, threads);
            break;
        case SweepKind::AsymmetryQubitResonator:
            sweep = sweep_asymmetry(AsymmetryKind::QubitResonator, cfg.sweep.factors_a,
                                    cfg.sweep.factors_b, cfg.system.g, ratios, dec,
                                    cfg.target, n_res, threads);
            break;
        case SweepKind::CouplingDeviation:
            sweep = sweep_coupling_deviation(cfg.sweep.factors_a, cfg.sweep.factors_b,
                                             cfg.system.g, ratios, dec, cfg.target, n_res,
                                             threads);
            break;
        case SweepKind::Detuning:
            sweep = sweep_detuning(cfg.target.parity, cfg.sweep.delta_sum,
                                   cfg.sweep.delta_diff, cfg.sweep.delta_r, cfg.system.g,
                                   ratios, dec, n_res, threads);
            break;
        case SweepKind::CounterRotating:
            sweep = sweep_counter_rotating(cfg.sweep.omega_chi, cfg.sweep.g_grid,
                                           cfg.sweep.error_thresholds, ratios, dec,
                                           cfg.target, n_res, threads);
            break;
    }
    out.write_text("sweep.csv", sweep.to_csv());
    out.write_json("sweep.json", sweep.to_json());

    json result;
    result["kind"] = cfg.raw["sweep"]["kind"];
    result["records"] = sweep.records.size();
    int failed = 0;
    for (const auto& r : sweep.records) {
        if (!r.metrics.converged) ++failed;
    }
    result["not_converged"] = failed;
    return result;
}

json run_phase(const RunConfig& cfg, OutputWriter& out, unsigned threads) {
    const SystemParams params = cfg.system.to_params();
    const HilbertSpec spec(params.n_res);
    const int n = cfg.phase.psi_points;

    std::vector<double> psis(n);
    for (int i = 0; i < n; ++i) psis[i] = kTwoPi * i / n;

    std::vector<StabilizedState> states;
    states.reserve(n);
    // stabilize_rotated is pure; parallelizing here would need a prior
    // resize-with-default, so the psi grid just runs serially (it is cheap).
    (void)threads;
    for (double psi : psis) {
        states.push_back(stabilize_rotated(params, cfg.target.parity, psi));
    }

    std::ostringstream csv;
    csv << "psi [rad],fidelity,manifold_population,manifold_purity,coherence_phase [rad]\r\n";
    double fmin = 1.0, fmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const Tomogram tomo = tomogram(states[i].rho_ss, spec);
        const ManifoldMetrics mm =
            manifold_metrics(states[i].rho_ss.mat(), cfg.target.parity, spec);
        fmin = std::min(fmin, states[i].fidelity);
        fmax = std::max(fmax, states[i].fidelity);
        csv << format_double(psis[i]) << ',' << format_double(states[i].fidelity) << ','
            << format_double(mm.population) << ',' << format_double(mm.purity) << ','
            << format_double(coherence_phase(tomo, cfg.target.parity)) << "\r\n";
    }
    out.write_text("phase.csv", csv.str());

    json tomos = json::array();
    for (double psi : cfg.phase.tomogram_psi) {
        const StabilizedState st = stabilize_rotated(params, cfg.target.parity, psi);
        json entry;
        entry["psi"] = psi;
        entry["fidelity"] = st.fidelity;
        entry["tomogram"] = tomogram(st.rho_ss, spec).to_json();
        tomos.push_back(std::move(entry));
    }
    out.write_json("tomograms.json", tomos);

    json result;
    result["psi_points"] = n;
    result["fidelity_min"] = fmin;
    result["fidelity_max"] = fmax;
    result["fidelity_spread"] = fmax - fmin;
    return result;
}

json run_circuit(const RunConfig& cfg, OutputWriter& out, unsigned) {
    const CircuitParams& c = cfg.circuit.params;
    const double phi0 = kFluxQuantum;
    const double mhz = kTwoPi * 1e6;

    std::ostringstream csv;
    csv << "phi_over_phi0,L_sq [nH],g_1r [MHz],g_2r [MHz],g_12 [MHz],"
           "g_1r_parametric [MHz],g_2r_parametric [MHz],g_12_parametric [MHz]\r\n";
    const std::vector<double> fluxes = linspace(0.0, cfg.circuit.flux_max, cfg.circuit.flux_points);
    double g1r_min = 0.0, g1r_max = 0.0;
    bool first = true;
    for (double phi : fluxes) {
        const double g1 = static_coupling(c, phi, 1);
        const double g2 = static_coupling(c, phi, 2);
        const double g12 = qubit_qubit_static_coupling(c, phi);
        const double p1 = parametric_rate(c, phi, c.delta_Phi, 1);
        const double p2 = parametric_rate(c, phi, c.delta_Phi, 2);
        const double p12 = qubit_qubit_parametric_rate(c, phi, c.delta_Phi);
        if (first) {
            g1r_min = g1r_max = g1;
            first = false;
        }
        g1r_min = std::min(g1r_min, g1);
        g1r_max = std::max(g1r_max, g1);
        csv << format_double(phi / phi0) << ',' << format_double(squid_inductance(c, phi) * 1e9)
            << ',' << format_double(g1 / mhz) << ',' << format_double(g2 / mhz) << ','
            << format_double(g12 / mhz) << ',' << format_double(p1 / mhz) << ','
            << format_double(p2 / mhz) << ',' << format_double(p12 / mhz) << "\r\n";
    }
    out.write_text("flux_sweep.csv", csv.str());

    json result;
    result["T1_coupler_1_s"] = coupler_t1(c, 1);
    result["T1_coupler_2_s"] = coupler_t1(c, 2);
    result["T1_impedance_1_s"] = coupler_t1_from_impedance(c, 1);
    result["T1_impedance_2_s"] = coupler_t1_from_impedance(c, 2);
    const double t2s = flux_dephasing_estimate(c, cfg.circuit.phi_bias);
    result["T2_star_s"] = std::isfinite(t2s) ? json(t2s) : json("inf");
    const auto zin = input_impedance(c, c.omega_1, cfg.circuit.phi_bias);
    result["Zin_re_ohm"] = zin.real();
    result["Zin_im_ohm"] = zin.imag();
    result["g_1r_tuning_range_MHz"] = (g1r_max - g1r_min) / mhz;
    out.write_json("circuit.json", result);
    return result;
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const DegenerateSteadyStateError*>(&e)) return "degenerate_steady_state";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const std::domain_error*>(&e)) return "domain";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid_argument";
    return "runtime";
}

}  // namespace

RunOutcome run(const RunConfig& cfg, unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    OutputWriter out(cfg.out_dir, cfg.prefix);
    RunOutcome outcome;
    try {
        json result;
        switch (cfg.mode) {
            case RunMode::Steady: result = run_steady(cfg, out, threads); break;
            case RunMode::Gap: result = run_gap(cfg, out, threads); break;
            case RunMode::Evolve: result = run_evolve(cfg, out, threads); break;
            case RunMode::Optimize: result = run_optimize(cfg, out, threads); break;
            case RunMode::Sweep: result = run_sweep(cfg, out, threads); break;
            case RunMode::Phase: result = run_phase(cfg, out, threads); break;
            case RunMode::Circuit: result = run_circuit(cfg, out, threads); break;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string manifest_path = out.write_manifest(serialize(cfg), wall);
        outcome.output_files = out.files();
        outcome.output_files.push_back(manifest_path);
        outcome.summary = result;
        outcome.summary["outputs"] = outcome.output_files;
        outcome.exit_code = 0;
    } catch (const std::exception& e) {
        json err;
        err["error"] = {{"type", error_type(e)}, {"message", e.what()}};
        try {
            out.write_json("error.json", err);
        } catch (...) {
        }
        outcome.summary = err;
        outcome.exit_code = 2;
    }
    return outcome;
}

}  // namespace parastab
