#include "parastab/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace parastab {

double Liouvillian::scale() const {
    if (scale_ < 0.0) scale_ = max_abs(superop);
    return scale_;
}

Ket vectorize(const OpMatrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("vectorize: matrix must be square");
    }
    return Eigen::Map<const Ket>(rho.data(), rho.size());
}

OpMatrix devectorize(const Ket& v) {
    const auto n = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n) {
        throw std::invalid_argument("devectorize: length is not a perfect square");
    }
    return Eigen::Map<const OpMatrix>(v.data(), d, d);
}

Liouvillian build_liouvillian(const OpMatrix& h, const std::vector<Channel>& channels) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("build_liouvillian: hamiltonian is not hermitian");
    }
    const auto d = h.rows();
    const OpMatrix id = OpMatrix::Identity(d, d);

    OpMatrix L = -kI * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& ch : channels) {
        if (ch.op.rows() != d || ch.op.cols() != d) {
            throw std::invalid_argument("build_liouvillian: channel dimension mismatch");
        }
        const OpMatrix odo = ch.op.adjoint() * ch.op;
        L += ch.rate * (kron(ch.op.conjugate(), ch.op)
                        - 0.5 * kron(id, odo)
                        - 0.5 * kron(odo.transpose(), id));
    }

    Liouvillian out;
    out.dim = static_cast<int>(d);
    out.superop = std::move(L);
    out.hamiltonian = h;
    out.channels = channels;
    return out;
}

Liouvillian build_liouvillian(const OpMatrix& h, const SystemParams& p,
                              const HilbertSpec& spec) {
    p.validate();
    std::vector<Channel> channels;
    channels.push_back({embed(annihilation(spec.n_res), Slot::Resonator, spec), p.kappa});
    channels.push_back({embed(sigma_lower(), Slot::Qubit1, spec), p.gamma1_1});
    channels.push_back({embed(sigma_lower(), Slot::Qubit2, spec), p.gamma1_2});
    channels.push_back({embed(pauli_z(), Slot::Qubit1, spec), 2.0 * p.gammaphi_1});
    channels.push_back({embed(pauli_z(), Slot::Qubit2, spec), 2.0 * p.gammaphi_2});
    return build_liouvillian(h, channels);
}

namespace {

DensityMatrix finalize_steady(const Ket& v, int d) {
    OpMatrix rho = devectorize(v);
    rho = hermitize(rho);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12 * rho.cwiseAbs().maxCoeff() * d) {
        throw DegenerateSteadyStateError(
            "steady_state: null vector is traceless; steady-state manifold degenerate");
    }
    rho /= tr;
    return DensityMatrix::validated(rho);
}

// Full eigendecomposition path: also used to certify uniqueness of the null
// space. Returns the null vector.
Ket null_vector_by_eigensolve(const Liouvillian& L, bool check_degenerate) {
    Eigen::ComplexEigenSolver<OpMatrix> es(L.superop);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("steady_state: eigensolver failed");
    }
    const auto& vals = es.eigenvalues();
    double max_mod = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        max_mod = std::max(max_mod, std::abs(vals(i)));
    }
    Eigen::Index zero_idx = -1;
    int zero_count = 0;
    double best = std::numeric_limits<double>::max();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        const double m = std::abs(vals(i));
        if (m <= kDegenerateNullTol * max_mod) ++zero_count;
        if (m < best) {
            best = m;
            zero_idx = i;
        }
    }
    if (check_degenerate && zero_count > 1) {
        throw DegenerateSteadyStateError("steady_state: null space dimension > 1");
    }
    if (zero_idx < 0 || best > kDegenerateNullTol * max_mod) {
        throw ConvergenceError("steady_state: no eigenvalue near zero");
    }
    return es.eigenvectors().col(zero_idx);
}

}  // namespace

DensityMatrix steady_state(const Liouvillian& L) {
    const int d = L.dim;
    const auto n = L.superop.rows();
    const double scale = L.scale();
    if (scale == 0.0) {
        throw DegenerateSteadyStateError("steady_state: zero generator");
    }

    // Shifted-inverse iteration; the tiny shift keeps the LU nonsingular.
    const double mu = 1e-12 * scale;
    OpMatrix shifted = L.superop;
    shifted.diagonal().array() -= mu;
    Eigen::PartialPivLU<OpMatrix> lu(shifted);

    OpMatrix id = OpMatrix::Identity(d, d);
    Ket v = vectorize(id) / std::sqrt(double(d));
    bool converged = false;
    for (int it = 0; it < 30; ++it) {
        Ket w = lu.solve(v);
        const double nw = w.norm();
        if (!std::isfinite(nw) || nw == 0.0) break;
        v = w / nw;
        const double residual = (L.superop * v).norm();
        if (residual <= 1e-12 * scale) {
            converged = true;
            if (it >= 1) break;  // one extra sweep once converged
        }
    }

    if (!converged) {
        if (n <= 4096) {
            v = null_vector_by_eigensolve(L, true);
            return finalize_steady(v, d);
        }
        throw ConvergenceError("steady_state: inverse iteration did not converge");
    }

    // Degeneracy probe: a second, deflated inverse iteration. If an
    // orthogonal direction also lies in the numerical null space, the
    // steady-state manifold is not unique.
    Ket u = Ket::Zero(n);
    u(0) = 1.0;
    u -= v * (v.dot(u));
    if (u.norm() < 0.5) {
        u = Ket::Zero(n);
        u(n / 2) = 1.0;
        u -= v * (v.dot(u));
    }
    u.normalize();
    bool degenerate = false;
    for (int it = 0; it < 12; ++it) {
        Ket w = lu.solve(u);
        w -= v * (v.dot(w));
        const double nw = w.norm();
        if (!std::isfinite(nw) || nw == 0.0) break;
        u = w / nw;
        const double residual = (L.superop * u).norm();
        if (residual <= kDegenerateNullTol * scale) {
            degenerate = true;
            break;
        }
        if (residual > 1e-3 * scale && it >= 4) break;  // clearly gapped
    }
    if (degenerate) {
        throw DegenerateSteadyStateError("steady_state: null space dimension > 1");
    }
    return finalize_steady(v, d);
}

SpectralGap spectral_gap(const Liouvillian& L) {
    Eigen::ComplexEigenSolver<OpMatrix> es(L.superop, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("spectral_gap: eigensolver failed");
    }
    std::vector<Complex> vals(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
    double max_mod = 0.0;
    for (const auto& v : vals) max_mod = std::max(max_mod, std::abs(v));
    if (max_mod == 0.0) throw ConvergenceError("spectral_gap: zero generator");

    // The stationary eigenvalue is the (unique) one with |lambda| ~ 0.
    auto zero_it = std::min_element(vals.begin(), vals.end(),
                                    [](const Complex& a, const Complex& b) {
                                        return std::abs(a) < std::abs(b);
                                    });
    if (std::abs(*zero_it) > kDegenerateNullTol * max_mod) {
        throw ConvergenceError("spectral_gap: cannot identify zero eigenvalue");
    }
    int zero_count = 0;
    for (const auto& v : vals) {
        if (std::abs(v) <= kDegenerateNullTol * max_mod) ++zero_count;
    }
    if (zero_count > 1) {
        throw DegenerateSteadyStateError("spectral_gap: ambiguous zero eigenvalue");
    }

    SpectralGap gap;
    gap.lambda0 = *zero_it;
    vals.erase(zero_it);
    std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
        return a.real() > b.real();
    });
    gap.lambda1 = vals.front();
    if (!(gap.lambda1.real() < 0.0)) {
        throw ConvergenceError("spectral_gap: nonnegative subdominant eigenvalue");
    }
    gap.tau = -1.0 / gap.lambda1.real();
    return gap;
}

namespace {

void record_point(Trajectory& traj, double t, const OpMatrix& rho, const Observables& obs,
                  const OpMatrix& number_full, bool store) {
    traj.times.push_back(t);
    const double f = fidelity_to_target(rho, obs.xi, obs.spec);
    traj.fidelity.push_back(f);
    traj.error.push_back(1.0 - f);
    traj.purity.push_back(purity(rho));
    traj.photon.push_back(real_expectation(rho, number_full));
    if (store) traj.states.push_back(rho);
}

void check_state_sanity(const OpMatrix& rho, double t) {
    const double tr_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (tr_dev > kTraceDriftTol) {
        throw ConvergenceError("evolve: trace drift " + std::to_string(tr_dev) +
                               " at t = " + std::to_string(t));
    }
}

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("evolve: empty time grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("evolve: time grid must be strictly increasing");
        }
    }
    if (t_grid.front() < 0.0) throw std::invalid_argument("evolve: negative start time");
}

}  // namespace

Trajectory evolve(const Liouvillian& L, const OpMatrix& rho0,
                  const std::vector<double>& t_grid, const Observables& obs,
                  bool store_states) {
    check_grid(t_grid);
    if (rho0.rows() != L.dim || rho0.cols() != L.dim) {
        throw std::invalid_argument("evolve: rho0 dimension mismatch");
    }
    const OpMatrix number_full =
        embed(number_operator(obs.spec.n_res), Slot::Resonator, obs.spec);

    Trajectory traj;
    Ket v = vectorize(rho0);

    // Uniform grids need a single propagator; general grids one per distinct step.
    OpMatrix propagator;
    double cached_dt = -1.0;
    double t_prev = 0.0;
    if (t_grid.front() == 0.0) {
        record_point(traj, 0.0, rho0, obs, number_full, store_states);
    }

    for (double t : t_grid) {
        if (t == 0.0) continue;
        const double dt = t - t_prev;
        if (std::abs(dt - cached_dt) > 1e-12 * std::abs(dt)) {
            propagator = (L.superop * dt).exp();
            cached_dt = dt;
        }
        v = propagator * v;
        t_prev = t;
        const OpMatrix rho = devectorize(v);
        check_state_sanity(rho, t);
        record_point(traj, t, rho, obs, number_full, store_states);
    }
    return traj;
}

Trajectory evolve_with_leakage(const Liouvillian& L0, const CounterRotatingTerm& cr,
                               const OpMatrix& rho0, const std::vector<double>& t_grid,
                               const Observables& obs, int min_samples_per_period) {
    check_grid(t_grid);
    if (rho0.rows() != L0.dim || rho0.cols() != L0.dim) {
        throw std::invalid_argument("evolve: rho0 dimension mismatch");
    }
    if (min_samples_per_period < 40) min_samples_per_period = 40;

    const OpMatrix number_full =
        embed(number_operator(obs.spec.n_res), Slot::Resonator, obs.spec);

    // Step cap: resolve both the leakage oscillation and the static rates.
    const double rate_scale = L0.scale() + 2.0 * cr.amplitude;
    double dt_max = 0.15 / rate_scale;
    if (std::isfinite(cr.period())) {
        dt_max = std::min(dt_max, cr.period() / min_samples_per_period);
    }
    if (!(dt_max > 0.0)) throw ConvergenceError("evolve: step size underflow");

    Trajectory traj;
    OpMatrix rho = rho0;
    double t = 0.0;
    if (t_grid.front() == 0.0) {
        record_point(traj, 0.0, rho, obs, number_full, false);
    }

    const auto rhs = [&](const OpMatrix& state, double time) -> OpMatrix {
        OpMatrix out = devectorize(Ket(L0.superop * vectorize(state)));
        const OpMatrix h = cr.at(time);
        out -= kI * (h * state - state * h);
        return out;
    };

    for (double t_target : t_grid) {
        if (t_target == 0.0) continue;
        const double span = t_target - t;
        const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt_max)));
        const double h = span / n_steps;
        if (!(h > 0.0) || !std::isfinite(h)) {
            throw ConvergenceError("evolve: step size underflow");
        }
        for (int s = 0; s < n_steps; ++s) {
            // classic RK4; H_CR sampled at the stage times (midpoint rule inside)
            const double t0 = t + s * h;
            const OpMatrix k1 = rhs(rho, t0);
            const OpMatrix k2 = rhs(rho + 0.5 * h * k1, t0 + 0.5 * h);
            const OpMatrix k3 = rhs(rho + 0.5 * h * k2, t0 + 0.5 * h);
            const OpMatrix k4 = rhs(rho + h * k3, t0 + h);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = t_target;
        check_state_sanity(rho, t);
        record_point(traj, t, rho, obs, number_full, false);
    }
    return traj;
}

std::vector<OpMatrix> leakage_window_propagators(const Liouvillian& L0,
                                                 const CounterRotatingTerm& cr,
                                                 int windows_per_period) {
    if (windows_per_period < 40) windows_per_period = 40;
    const double period = cr.period();
    if (!std::isfinite(period)) {
        throw std::invalid_argument("leakage_window_propagators: Omega_chi must be nonzero");
    }
    const double dt = period / windows_per_period;
    const auto d = L0.hamiltonian.rows();
    const OpMatrix id = OpMatrix::Identity(d, d);
    std::vector<OpMatrix> props;
    props.reserve(windows_per_period);
    for (int k = 0; k < windows_per_period; ++k) {
        const double t_mid = (k + 0.5) * dt;
        const OpMatrix h = cr.at(t_mid);
        const OpMatrix lk =
            L0.superop - kI * (kron(id, h) - kron(h.transpose(), id));
        props.push_back((lk * dt).exp());
    }
    return props;
}

DecayFit fit_error_decay(const Trajectory& traj) {
    const auto& ts = traj.times;
    const auto& err = traj.error;
    const std::size_t n = ts.size();
    if (n < 20) throw std::invalid_argument("fit_error_decay: trajectory too short");

    // Tail = last 10% of samples; it must have settled.
    const std::size_t tail_begin = n - std::max<std::size_t>(2, n / 10);
    double tail_min = err[tail_begin], tail_max = err[tail_begin], tail_sum = 0.0;
    for (std::size_t i = tail_begin; i < n; ++i) {
        tail_min = std::min(tail_min, err[i]);
        tail_max = std::max(tail_max, err[i]);
        tail_sum += err[i];
    }
    const double eps_inf = tail_sum / double(n - tail_begin);
    const double tail_ref = std::max(std::abs(eps_inf), 1e-12);
    if ((tail_max - tail_min) > 0.01 * tail_ref) {
        throw ConvergenceError("fit_error_decay: trajectory not converged in tail");
    }

    const double q0 = err.front() - eps_inf;
    if (!(q0 > 0.0)) {
        throw ConvergenceError("fit_error_decay: non-decaying error signal");
    }
    const double hi = q0 * std::exp(-1.0), lo = q0 * std::exp(-4.0);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tail_begin; ++i) {
        const double q = err[i] - eps_inf;
        if (q >= lo && q <= hi) {
            if (q <= 0.0) {
                throw ConvergenceError("fit_error_decay: non-positive transient in window");
            }
            xs.push_back(ts[i]);
            ys.push_back(std::log(q));
        }
    }
    if (xs.size() < 5) {
        throw ConvergenceError("fit_error_decay: too few samples in fit window");
    }

    // least squares y = a + b x
    const double m = double(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom <= 0.0) throw ConvergenceError("fit_error_decay: singular regression");
    const double b = (m * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / m;
    if (!(b < 0.0)) throw ConvergenceError("fit_error_decay: non-decaying fit");

    DecayFit fit;
    fit.tau = -1.0 / b;
    fit.eps_tilde = std::exp(a);
    fit.eps_inf = eps_inf;
    double resid = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double model = fit.eps_inf + fit.eps_tilde * std::exp(-xs[i] / fit.tau);
        // recover data value from stored log
        const double data = fit.eps_inf + std::exp(ys[i]);
        resid = std::max(resid, std::abs(model - data));
    }
    fit.residual = resid;
    return fit;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("linspace: need n >= 2");
    std::vector<double> out(n);
    const double step = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = a + i * step;
    out.back() = b;
    return out;
}

std::vector<double> logspace(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("logspace: bounds must be > 0");
    if (n < 2) throw std::invalid_argument("logspace: need n >= 2");
    std::vector<double> out(n);
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
    out.back() = b;
    return out;
}

}  // namespace parastab
