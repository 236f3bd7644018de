#include "parastab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parastab/io_util.hpp"
#include "parastab/threading.hpp"

namespace parastab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Closed-form coefficients quoted for g_r/g = 3/4.
constexpr double kEpsKappaCoeff = 12.6;
constexpr double kEpsCoopCoeff = 22.4;
constexpr double kEpsOptCoeff = 16.8;
constexpr double kRateKappaCoeff = 0.49;

void require_positive_rates(double g, double g_r, double kappa, double gamma1) {
    if (!(g > 0.0) || !(g_r > 0.0) || !(kappa > 0.0) || !(gamma1 > 0.0)) {
        throw std::invalid_argument("analytic formulas require positive rates");
    }
}

}  // namespace

AnalyticEstimates analytic_estimates(double g, double g_r, double kappa, double gamma1) {
    require_positive_rates(g, g_r, kappa, gamma1);
    AnalyticEstimates e;
    e.cooperativity = 4.0 * g * g / (kappa * gamma1);
    e.eps_kappa_dom = kEpsKappaCoeff * gamma1 / kappa;
    e.eps_g_dom = kEpsCoopCoeff / e.cooperativity;
    e.eps_min = kEpsOptCoeff * gamma1 / g;
    e.gamma_c0_strong = kRateKappaCoeff * g * g / kappa;
    e.gamma_c0_weak = 0.5 * kappa;
    e.gamma_eff = analytic_rate(g, kappa);
    return e;
}

double analytic_error(double g, double g_r, double kappa, double gamma1, Regime regime) {
    require_positive_rates(g, g_r, kappa, gamma1);
    if (std::abs(g_r / g - 0.75) > 1e-9) {
        throw std::domain_error("analytic_error: formulas are derived at g_r/g = 3/4");
    }
    switch (regime) {
        case Regime::KappaDominated: return kEpsKappaCoeff * gamma1 / kappa;
        case Regime::GDominated: return kEpsCoopCoeff * kappa * gamma1 / (4.0 * g * g);
        case Regime::Optimal: return kEpsOptCoeff * gamma1 / g;
    }
    throw std::logic_error("analytic_error: bad regime");
}

double analytic_rate(double g, double kappa) {
    if (!(g > 0.0) || !(kappa > 0.0)) {
        throw std::invalid_argument("analytic_rate: rates must be positive");
    }
    return kappa * g * g / (2.0 * (g * g + kappa * kappa));
}

PointMetrics solve_point(const SystemParams& params, const TargetSpec& target,
                         bool compute_tau, bool raw_phases) {
    PointMetrics m;
    m.eps_inf = m.tau = m.fidelity = m.purity = m.photon =
        std::numeric_limits<double>::quiet_NaN();
    try {
        params.validate();
        const HilbertSpec spec(params.n_res);
        const OpMatrix h = raw_phases
                               ? build_h_eff_raw(params, target.parity, spec)
                               : build_h_eff(params, target);
        const Liouvillian L = build_liouvillian(h, params, spec);
        const DensityMatrix rho = steady_state(L);
        const Ket xi = target_state(target);
        m.fidelity = fidelity_to_target(rho.mat(), xi, spec);
        m.eps_inf = 1.0 - m.fidelity;
        m.purity = purity(rho.mat());
        m.photon = real_expectation(
            rho.mat(), embed(number_operator(spec.n_res), Slot::Resonator, spec));
        if (compute_tau) m.tau = spectral_gap(L).tau;
        m.converged = true;
    } catch (const std::exception& e) {
        m.converged = false;
        m.note = e.what();
    }
    return m;
}

// --- SweepResult serialization ----------------------------------------------

std::string SweepResult::to_csv() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& ax : axes) {
        if (!first) out << ',';
        first = false;
        out << csv_field(ax.unit.empty() ? ax.name : ax.name + " [" + ax.unit + "]");
    }
    out << ",eps_inf,tau [s],fidelity,purity,photon,converged";
    if (!records.empty()) {
        for (const auto& kv : records.front().diagnostics) {
            out << ',' << csv_field(kv.first);
        }
    }
    out << "\r\n";
    for (const auto& rec : records) {
        first = true;
        for (double c : rec.coords) {
            if (!first) out << ',';
            first = false;
            out << format_double(c);
        }
        out << ',' << format_double(rec.metrics.eps_inf)
            << ',' << format_double(rec.metrics.tau)
            << ',' << format_double(rec.metrics.fidelity)
            << ',' << format_double(rec.metrics.purity)
            << ',' << format_double(rec.metrics.photon)
            << ',' << (rec.metrics.converged ? '1' : '0');
        for (const auto& kv : rec.diagnostics) {
            out << ',' << format_double(kv.second);
        }
        out << "\r\n";
    }
    return out.str();
}

json SweepResult::to_json() const {
    json j;
    j["metadata"] = metadata;
    j["axes"] = json::array();
    for (const auto& ax : axes) {
        j["axes"].push_back({{"name", ax.name}, {"unit", ax.unit}, {"grid", ax.grid}});
    }
    j["records"] = json::array();
    for (const auto& rec : records) {
        json r;
        r["coords"] = rec.coords;
        r["eps_inf"] = rec.metrics.eps_inf;
        r["tau"] = rec.metrics.tau;
        r["fidelity"] = rec.metrics.fidelity;
        r["purity"] = rec.metrics.purity;
        r["photon"] = rec.metrics.photon;
        r["converged"] = rec.metrics.converged;
        if (!rec.metrics.note.empty()) r["note"] = rec.metrics.note;
        if (!rec.diagnostics.empty()) {
            json d;
            for (const auto& kv : rec.diagnostics) d[kv.first] = kv.second;
            r["diagnostics"] = d;
        }
        j["records"].push_back(std::move(r));
    }
    return j;
}

namespace {

json sweep_metadata(const std::string& name, const json& extra) {
    json meta;
    meta["sweep"] = name;
    meta["version"] = kVersion;
    meta["timestamp"] = iso8601_utc_now();
    meta["params"] = extra;
    return meta;
}

json decoherence_json(const QubitDecoherence& dec) {
    return json{{"gamma1", dec.gamma1}, {"gammaphi", dec.gammaphi}};
}

SystemParams base_params(double g, const RatioPolicy& ratios, const QubitDecoherence& dec,
                         int n_res) {
    return SystemParams::symmetric(g, ratios.gr_over_g * g, ratios.kappa_over_g * g,
                                   dec.gamma1, dec.gammaphi, n_res);
}

// Row-major index -> per-axis grid values.
std::vector<double> coords_for(const std::vector<SweepAxis>& axes, std::size_t flat) {
    std::vector<double> c(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t n = axes[a].grid.size();
        c[a] = axes[a].grid[flat % n];
        flat /= n;
    }
    return c;
}

std::size_t grid_product(const std::vector<SweepAxis>& axes) {
    std::size_t n = 1;
    for (const auto& ax : axes) n *= ax.grid.size();
    return n;
}

SweepResult run_sweep(std::vector<SweepAxis> axes, const std::string& name,
                      const json& param_meta, unsigned threads,
                      const std::function<SweepRecord(const std::vector<double>&)>& eval) {
    SweepResult result;
    result.axes = std::move(axes);
    result.metadata = sweep_metadata(name, param_meta);
    const std::size_t total = grid_product(result.axes);
    result.records.resize(total);
    auto* recs = &result.records;
    const auto& ax = result.axes;
    parallel_for(total, threads, [&](std::size_t i) {
        const auto coords = coords_for(ax, i);
        (*recs)[i] = eval(coords);
        (*recs)[i].coords = coords;
    });
    return result;
}

double mhz(double omega) { return omega / (kTwoPi * 1e6); }

}  // namespace

SweepResult scan_error_and_rate(const std::vector<double>& g_grid, const RatioPolicy& ratios,
                                const QubitDecoherence& dec, const TargetSpec& target,
                                int n_res, unsigned threads) {
    std::vector<double> g_mhz(g_grid.size());
    std::transform(g_grid.begin(), g_grid.end(), g_mhz.begin(), mhz);
    json meta = decoherence_json(dec);
    meta["gr_over_g"] = ratios.gr_over_g;
    meta["kappa_over_g"] = ratios.kappa_over_g;
    meta["parity"] = to_string(target.parity);
    meta["psi"] = target.psi;
    meta["n_res"] = n_res;

    return run_sweep({{"g", "MHz", g_mhz}}, "error_and_rate", meta, threads,
                     [&](const std::vector<double>& c) {
                         const double g = c[0] * kTwoPi * 1e6;
                         SweepRecord rec;
                         rec.metrics = solve_point(base_params(g, ratios, dec, n_res), target);
                         if (rec.metrics.converged) {
                             rec.diagnostics.emplace_back("rate", 1.0 / rec.metrics.tau);
                         } else {
                             rec.diagnostics.emplace_back(
                                 "rate", std::numeric_limits<double>::quiet_NaN());
                         }
                         return rec;
                     });
}

namespace {

double golden_section_min(double lo, double hi,
                          const std::function<double(double)>& f, int iters) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

OptimizeResult optimize_couplings(double g, const OptimizeBox& box,
                                  const QubitDecoherence& dec, const TargetSpec& target,
                                  int coarse_n, int n_res, unsigned threads) {
    if (coarse_n < 21) coarse_n = 21;
    if (!(box.gr_lo < 0.75 && 0.75 < box.gr_hi && box.kappa_lo < 1.5 && 1.5 < box.kappa_hi)) {
        throw std::invalid_argument("optimize_couplings: box must contain (0.75, 1.5)");
    }

    const auto eval = [&](double gr_ratio, double kappa_ratio) -> double {
        SystemParams p = SystemParams::symmetric(g, gr_ratio * g, kappa_ratio * g,
                                                 dec.gamma1, dec.gammaphi, n_res);
        const PointMetrics m = solve_point(p, target, /*compute_tau=*/false);
        return m.converged ? m.eps_inf : std::numeric_limits<double>::infinity();
    };

    json meta = decoherence_json(dec);
    meta["g_MHz"] = mhz(g);
    meta["n_res"] = n_res;

    const std::vector<double> gr_grid = logspace(box.gr_lo, box.gr_hi, coarse_n);
    const std::vector<double> kappa_grid = logspace(box.kappa_lo, box.kappa_hi, coarse_n);
    SweepResult coarse = run_sweep(
        {{"gr_over_g", "", gr_grid}, {"kappa_over_g", "", kappa_grid}}, "optimize_coarse",
        meta, threads, [&](const std::vector<double>& c) {
            SweepRecord rec;
            rec.metrics = solve_point(
                SystemParams::symmetric(g, c[0] * g, c[1] * g, dec.gamma1, dec.gammaphi, n_res),
                target, false);
            return rec;
        });

    std::size_t best = 0;
    double best_eps = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coarse.records.size(); ++i) {
        const auto& m = coarse.records[i].metrics;
        if (m.converged && m.eps_inf < best_eps) {
            best_eps = m.eps_inf;
            best = i;
        }
    }
    if (!std::isfinite(best_eps)) {
        throw ConvergenceError("optimize_couplings: no converged grid point");
    }
    const int n = coarse_n;
    const int i_gr = static_cast<int>(best) / n;
    const int i_k = static_cast<int>(best) % n;

    OptimizeResult result;
    result.on_boundary = (i_gr == 0 || i_gr == n - 1 || i_k == 0 || i_k == n - 1);
    double gr = gr_grid[i_gr];
    double kp = kappa_grid[i_k];

    // Per-axis golden-section refinement in log coordinates, two rounds.
    const double cell = std::log(gr_grid[1] / gr_grid[0]);
    for (int round = 0; round < 2; ++round) {
        const double w = cell * (round == 0 ? 1.0 : 0.35);
        gr = std::exp(golden_section_min(
            std::max(std::log(gr) - w, std::log(box.gr_lo)),
            std::min(std::log(gr) + w, std::log(box.gr_hi)),
            [&](double x) { return eval(std::exp(x), kp); }, 24));
        kp = std::exp(golden_section_min(
            std::max(std::log(kp) - w, std::log(box.kappa_lo)),
            std::min(std::log(kp) + w, std::log(box.kappa_hi)),
            [&](double x) { return eval(gr, std::exp(x)); }, 24));
    }

    result.gr_over_g = gr;
    result.kappa_over_g = kp;
    result.eps_inf = eval(gr, kp);
    result.eps_gr_minus = eval(0.9 * gr, kp);
    result.eps_gr_plus = eval(1.1 * gr, kp);
    result.eps_kappa_minus = eval(gr, 0.9 * kp);
    result.eps_kappa_plus = eval(gr, 1.1 * kp);
    result.coarse = std::move(coarse);
    return result;
}

SweepResult sweep_asymmetry(AsymmetryKind kind, const std::vector<double>& factors_a,
                            const std::vector<double>& factors_b, double g,
                            const RatioPolicy& ratios, const QubitDecoherence& dec,
                            const TargetSpec& target, int n_res, unsigned threads) {
    for (const auto* grid : {&factors_a, &factors_b}) {
        for (double f : *grid) {
            if (!(f > 0.0)) {
                throw std::invalid_argument("sweep_asymmetry: factors must be > 0");
            }
        }
    }
    const bool qq = (kind == AsymmetryKind::QubitQubit);
    json meta = decoherence_json(dec);
    meta["g_MHz"] = mhz(g);
    meta["kind"] = qq ? "qubit_qubit" : "qubit_resonator";
    meta["n_res"] = n_res;

    const std::string name_a = qq ? "g12_plus_factor" : "g1r_factor";
    const std::string name_b = qq ? "g12_minus_factor" : "g2r_factor";
    return run_sweep({{name_a, "", factors_a}, {name_b, "", factors_b}}, "asymmetry", meta,
                     threads, [&, qq](const std::vector<double>& c) {
                         SystemParams p = base_params(g, ratios, dec, n_res);
                         if (qq) {
                             p.g12_plus *= c[0];
                             p.g12_minus *= c[1];
                         } else {
                             p.g1r *= c[0];
                             p.g2r *= c[1];
                         }
                         SweepRecord rec;
                         rec.metrics = solve_point(p, target, false);
                         return rec;
                     });
}

SweepResult sweep_coupling_deviation(const std::vector<double>& kappa_factors,
                                     const std::vector<double>& gr_factors, double g,
                                     const RatioPolicy& ratios, const QubitDecoherence& dec,
                                     const TargetSpec& target, int n_res, unsigned threads) {
    json meta = decoherence_json(dec);
    meta["g_MHz"] = mhz(g);
    meta["n_res"] = n_res;
    return run_sweep({{"kappa_factor", "", kappa_factors}, {"gr_factor", "", gr_factors}},
                     "coupling_deviation", meta, threads,
                     [&](const std::vector<double>& c) {
                         SystemParams p = base_params(g, ratios, dec, n_res);
                         p.kappa *= c[0];
                         p.g1r *= c[1];
                         p.g2r *= c[1];
                         SweepRecord rec;
                         rec.metrics = solve_point(p, target, false);
                         return rec;
                     });
}

SweepResult sweep_detuning(Parity parity, const std::vector<double>& sum_grid,
                           const std::vector<double>& diff_grid,
                           const std::vector<double>& dr_grid, double g,
                           const RatioPolicy& ratios, const QubitDecoherence& dec,
                           int n_res, unsigned threads) {
    std::vector<double> sum_mhz(sum_grid.size()), diff_mhz(diff_grid.size()),
        dr_mhz(dr_grid.size());
    std::transform(sum_grid.begin(), sum_grid.end(), sum_mhz.begin(), mhz);
    std::transform(diff_grid.begin(), diff_grid.end(), diff_mhz.begin(), mhz);
    std::transform(dr_grid.begin(), dr_grid.end(), dr_mhz.begin(), mhz);

    const TargetSpec target(parity, 0.0);
    json meta = decoherence_json(dec);
    meta["g_MHz"] = mhz(g);
    meta["parity"] = to_string(parity);
    meta["n_res"] = n_res;

    return run_sweep({{"delta_sum", "MHz", sum_mhz},
                      {"delta_diff", "MHz", diff_mhz},
                      {"delta_r", "MHz", dr_mhz}},
                     "detuning", meta, threads, [&](const std::vector<double>& c) {
                         SystemParams p = base_params(g, ratios, dec, n_res);
                         const double sum = c[0] * kTwoPi * 1e6;
                         const double diff = c[1] * kTwoPi * 1e6;
                         p.delta1 = 0.5 * (sum + diff);
                         p.delta2 = 0.5 * (sum - diff);
                         p.delta_r = c[2] * kTwoPi * 1e6;
                         SweepRecord rec;
                         rec.metrics = solve_point(p, target, false);
                         return rec;
                     });
}

// --- counter-rotating sweep ---------------------------------------------------

LeakageMetrics solve_point_with_leakage(const SystemParams& params, const TargetSpec& target,
                                        double omega_chi,
                                        const std::vector<double>& error_thresholds) {
    constexpr int kWindows = 40;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    LeakageMetrics out;
    out.eps_inf = nan;
    out.tau = nan;
    out.t_eps.assign(error_thresholds.size(), nan);

    params.validate();
    const HilbertSpec spec(params.n_res);
    const OpMatrix h = build_h_eff(params, target);
    const Liouvillian L0 = build_liouvillian(h, params, spec);
    const CounterRotatingTerm cr = make_counter_rotating(params, target, omega_chi);
    const Ket xi = target_state(target);

    const double tau_res = spectral_gap(L0).tau;
    const double period = cr.period();
    const auto props = leakage_window_propagators(L0, cr, kWindows);
    OpMatrix period_map = props[0];
    for (int k = 1; k < kWindows; ++k) period_map = props[k] * period_map;

    // Stroboscopic stride (power of two): resolve tau without walking every
    // period; the stride map is built by repeated squaring.
    const double stride_want = tau_res / (10.0 * period);
    long stride = 1;
    OpMatrix stride_map = period_map;
    while (2 * stride <= stride_want && stride < 4096) {
        stride *= 2;
        stride_map = (stride_map * stride_map).eval();
    }

    // Initial state |eg, 0>.
    OpMatrix rho0 = OpMatrix::Zero(spec.dim(), spec.dim());
    const int eg0 = spec.index(1, 0, 0);
    rho0(eg0, eg0) = 1.0;
    Ket v = vectorize(rho0);

    const auto error_of = [&](const Ket& vec) {
        return 1.0 - fidelity_to_target(devectorize(vec), xi, spec);
    };

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.error.push_back(error_of(v));

    // Fine phase: every window for the first periods (threshold crossings and
    // fast decays live here).
    const long fine_periods = 100;
    long periods_done = 0;
    double t = 0.0;
    const long horizon0 = std::max<long>(stride * 60,
                                         static_cast<long>(std::ceil(25.0 * tau_res / period)));
    long horizon = horizon0;

    for (; periods_done < std::min(fine_periods, horizon); ++periods_done) {
        for (int k = 0; k < kWindows; ++k) {
            v = props[k] * v;
            t += period / kWindows;
            traj.times.push_back(t);
            traj.error.push_back(error_of(v));
        }
    }

    // Stroboscopic phase with adaptive horizon extension.
    bool settled = false;
    for (int extension = 0; extension <= 6 && !settled; ++extension) {
        while (periods_done < horizon) {
            v = stride_map * v;
            periods_done += stride;
            t += stride * period;
            traj.times.push_back(t);
            traj.error.push_back(error_of(v));
        }
        // Drift check: compare the means of the last two 10% blocks.
        const std::size_t n = traj.error.size();
        const std::size_t blk = std::max<std::size_t>(4, n / 10);
        if (n < 2 * blk) break;
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t i = n - blk; i < n; ++i) m1 += traj.error[i];
        for (std::size_t i = n - 2 * blk; i < n - blk; ++i) m2 += traj.error[i];
        m1 /= blk;
        m2 /= blk;
        const double ref = std::max(std::abs(m1), 1e-12);
        if (std::abs(m1 - m2) <= 2e-3 * ref) {
            settled = true;
        } else {
            horizon *= 2;
        }
    }
    out.converged = settled;

    // Cycle-average of the error over one final period.
    double cycle_sum = 0.0;
    Ket w = v;
    for (int k = 0; k < kWindows; ++k) {
        w = props[k] * w;
        cycle_sum += error_of(w);
    }
    out.eps_inf = cycle_sum / kWindows;

    // Threshold crossings on the sampled trajectory.
    for (std::size_t j = 0; j < error_thresholds.size(); ++j) {
        for (std::size_t i = 0; i < traj.error.size(); ++i) {
            if (traj.error[i] <= error_thresholds[j]) {
                out.t_eps[j] = traj.times[i];
                break;
            }
        }
    }

    try {
        out.tau = fit_error_decay(traj).tau;
    } catch (const std::exception&) {
        out.tau = nan;
    }
    return out;
}

SweepResult sweep_counter_rotating(double omega_chi, const std::vector<double>& g_grid,
                                   const std::vector<double>& error_thresholds,
                                   const RatioPolicy& ratios, const QubitDecoherence& dec,
                                   const TargetSpec& target, int n_res, unsigned threads) {
    if (!(omega_chi > 0.0)) {
        throw std::invalid_argument("sweep_counter_rotating: Omega_chi must be > 0");
    }
    std::vector<double> g_mhz(g_grid.size());
    std::transform(g_grid.begin(), g_grid.end(), g_mhz.begin(), mhz);
    json meta = decoherence_json(dec);
    meta["omega_chi_MHz"] = mhz(omega_chi);
    meta["gr_over_g"] = ratios.gr_over_g;
    meta["kappa_over_g"] = ratios.kappa_over_g;
    meta["parity"] = to_string(target.parity);
    meta["n_res"] = n_res;

    return run_sweep(
        {{"g", "MHz", g_mhz}}, "counter_rotating", meta, threads,
        [&](const std::vector<double>& c) {
            const double g = c[0] * kTwoPi * 1e6;
            SystemParams p = base_params(g, ratios, dec, n_res);
            // chi bookkeeping consistent with the requested Omega_chi
            if (target.parity == Parity::Even) {
                p.chi1 = p.chi2 = 0.5 * omega_chi;
            } else {
                p.chi1 = omega_chi;
                p.chi2 = 0.0;
            }
            SweepRecord rec;
            try {
                const LeakageMetrics lm =
                    solve_point_with_leakage(p, target, omega_chi, error_thresholds);
                rec.metrics.eps_inf = lm.eps_inf;
                rec.metrics.fidelity = 1.0 - lm.eps_inf;
                rec.metrics.tau = lm.tau;
                rec.metrics.purity = std::numeric_limits<double>::quiet_NaN();
                rec.metrics.photon = std::numeric_limits<double>::quiet_NaN();
                rec.metrics.converged = lm.converged;
                for (std::size_t j = 0; j < error_thresholds.size(); ++j) {
                    rec.diagnostics.emplace_back(
                        "t_eps_" + format_double(error_thresholds[j]), lm.t_eps[j]);
                }
            } catch (const std::exception& e) {
                rec.metrics.converged = false;
                rec.metrics.note = e.what();
            }
            return rec;
        });
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_loglog_slope: need matched grids, n >= 2");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("fit_loglog_slope: too few positive samples");
    const double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

}  // namespace parastab
