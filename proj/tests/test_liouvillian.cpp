#include <doctest.h>

#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "parastab/liouvillian.hpp"

using namespace parastab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mt19937 rng(3111);

OpMatrix random_complex(int n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    OpMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    return m;
}

OpMatrix random_density(int n) {
    OpMatrix a = random_complex(n);
    OpMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

struct FullSystem {
    SystemParams params;
    TargetSpec target;
    HilbertSpec spec;
    Liouvillian liouv;
    Observables obs;
};

FullSystem make_fig_system(double t1 = 100e-6, double t2 = 200e-6, int n_res = 3) {
    const double g = kTwoPi * 50e6;
    const auto dec = QubitDecoherence::from_t1_t2(t1, t2);
    SystemParams p =
        SystemParams::symmetric(g, 0.75 * g, 1.5 * g, dec.gamma1, dec.gammaphi, n_res);
    TargetSpec t(Parity::Even, 0.0);
    HilbertSpec spec(n_res);
    Liouvillian L = build_liouvillian(build_h_eff(p, t), p, spec);
    Observables obs{target_state(t), spec};
    return {p, t, spec, std::move(L), obs};
}

}  // namespace

TEST_CASE("vectorization conventions") {
    CHECK((vectorize(OpMatrix::Identity(2, 2)) - Ket(Eigen::Vector4cd(1, 0, 0, 1))).norm() ==
          0.0);

    const OpMatrix a = random_complex(3), b = random_complex(3), rho = random_complex(3);
    const Ket lhs = vectorize(a * rho * b);
    const Ket rhs = kron(b.transpose(), a) * vectorize(rho);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());

    const OpMatrix m = random_complex(4);
    CHECK(max_abs(devectorize(vectorize(m)) - m) == 0.0);
    CHECK_THROWS_AS(devectorize(Ket::Zero(5)), std::invalid_argument);
}

TEST_CASE("liouvillian trace preservation and basic decay") {
    SUBCASE("photon number decays at kappa") {
        const double kappa = 2.0e6;
        const OpMatrix a = annihilation(2);
        const Liouvillian L =
            build_liouvillian(OpMatrix::Zero(2, 2), {Channel{a, kappa}});
        OpMatrix rho = OpMatrix::Zero(2, 2);
        rho(1, 1) = 1.0;
        for (double t : {0.2e-6, 1.0e-6}) {
            const OpMatrix prop = (L.superop * t).exp();
            const OpMatrix rt = devectorize(Ket(prop * vectorize(rho)));
            CHECK(rt(1, 1).real() == doctest::Approx(std::exp(-kappa * t)).epsilon(1e-9));
        }
    }

    SUBCASE("Z channel at rate 2*gammaphi decays coherences as exp(-4 gammaphi t)") {
        // analytic 2x2 oracle: rho01(t) = rho01(0) exp(-2 r t) for channel (Z, r)
        const double gammaphi = 1.0e5;
        const Liouvillian L =
            build_liouvillian(OpMatrix::Zero(2, 2), {Channel{pauli_z(), 2.0 * gammaphi}});
        OpMatrix rho(2, 2);
        rho << 0.5, 0.5, 0.5, 0.5;
        const double t = 3.0e-6;
        const OpMatrix rt = devectorize(Ket((L.superop * t).exp() * vectorize(rho)));
        CHECK(rt(0, 1).real() ==
              doctest::Approx(0.5 * std::exp(-4.0 * gammaphi * t)).epsilon(1e-9));
        CHECK(rt(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("row vec(I)^H L vanishes for the full system") {
        const FullSystem sys = make_fig_system();
        CHECK(sys.liouv.superop.rows() == 144);
        const Ket row = sys.liouv.superop.adjoint() * vectorize(OpMatrix::Identity(12, 12));
        CHECK(row.norm() <= 1e-10 * sys.liouv.scale());
    }

    SUBCASE("n_res = 2 gives the 64x64 superoperator") {
        const FullSystem sys = make_fig_system(100e-6, 200e-6, 2);
        CHECK(sys.liouv.superop.rows() == 64);
    }

    CHECK_THROWS_AS(build_liouvillian(random_complex(3), {}), std::invalid_argument);
}

TEST_CASE("steady states") {
    SUBCASE("pure relaxation ends in the ground state") {
        SystemParams p;
        p.n_res = 2;
        p.kappa = 1e6;
        p.gamma1_1 = 1e4;
        p.gamma1_2 = 2e4;
        const HilbertSpec spec(2);
        const Liouvillian L =
            build_liouvillian(OpMatrix::Zero(8, 8), p, spec);
        const DensityMatrix rho = steady_state(L);
        CHECK(rho.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("kappa-only system has a degenerate steady manifold") {
        SystemParams p;
        p.n_res = 2;
        p.kappa = 1e6;
        const HilbertSpec spec(2);
        const Liouvillian L = build_liouvillian(OpMatrix::Zero(8, 8), p, spec);
        CHECK_THROWS_AS(steady_state(L), DegenerateSteadyStateError);
    }

    SUBCASE("full scheme reaches > 0.99 fidelity at the optimal point") {
        const FullSystem sys = make_fig_system();
        const DensityMatrix rho = steady_state(sys.liouv);
        const double f = fidelity_to_target(rho.mat(), sys.obs.xi, sys.spec);
        CHECK(f > 0.99);
        CHECK(f < 1.0);
    }

    SUBCASE("steady state is independent of initialization") {
        const FullSystem sys = make_fig_system();
        const DensityMatrix rho_ns = steady_state(sys.liouv);
        const double tau = spectral_gap(sys.liouv).tau;

        const int d = sys.spec.dim();
        OpMatrix from_eg = OpMatrix::Zero(d, d);
        from_eg(sys.spec.index(1, 0, 0), sys.spec.index(1, 0, 0)) = 1.0;
        const OpMatrix mixed = OpMatrix::Identity(d, d) / d;

        for (const OpMatrix& rho0 : {from_eg, mixed}) {
            const auto traj =
                evolve(sys.liouv, rho0, {50.0 * tau}, sys.obs, /*store_states=*/true);
            const OpMatrix diff = traj.states.back() - rho_ns.mat();
            Eigen::SelfAdjointEigenSolver<OpMatrix> es(hermitize(diff));
            const double trace_distance = 0.5 * es.eigenvalues().cwiseAbs().sum();
            CHECK(trace_distance <= 1e-8);
        }
    }
}

TEST_CASE("spectral gap") {
    SUBCASE("single decaying mode: analytic spectrum") {
        // eigenvalues of the 2-level kappa-decay generator are -kappa(n+m)/2
        const double kappa = 3.0e6;
        const Liouvillian L =
            build_liouvillian(OpMatrix::Zero(2, 2), {Channel{annihilation(2), kappa}});
        const SpectralGap gap = spectral_gap(L);
        CHECK(gap.tau == doctest::Approx(2.0 / kappa).epsilon(1e-9));
        CHECK(std::abs(gap.lambda0) <= 1e-9 * kappa);
    }

    SUBCASE("gap is bounded by the analytic preparation rate at the optimum") {
        const FullSystem sys = make_fig_system();
        const SpectralGap gap = spectral_gap(sys.liouv);
        const double g = kTwoPi * 50e6;
        const double gamma_eff = 1.5 * g * g * g / (2.0 * (g * g + 2.25 * g * g));
        const double ratio = (1.0 / gap.tau) / gamma_eff;
        CHECK(ratio >= 0.3);
        CHECK(ratio <= 1.0);
    }
}

TEST_CASE("time evolution") {
    SUBCASE("zero generator keeps the state constant") {
        const HilbertSpec spec(2);
        const Liouvillian L = build_liouvillian(OpMatrix::Zero(8, 8),
                                                std::vector<Channel>{});
        TargetSpec t(Parity::Even, 0.0);
        const OpMatrix rho0 = random_density(8);
        const auto traj = evolve(L, rho0, linspace(0.0, 1e-6, 21),
                                 Observables{target_state(t), spec});
        for (std::size_t i = 1; i < traj.error.size(); ++i) {
            CHECK(traj.error[i] == doctest::Approx(traj.error[0]).epsilon(1e-12));
        }
    }

    SUBCASE("relaxation toward |gg,0> is monotone from |eg,0>") {
        SystemParams p;
        p.n_res = 2;
        p.kappa = 5e6;
        p.gamma1_1 = 1e6;
        p.gamma1_2 = 1e6;
        const HilbertSpec spec(2);
        const Liouvillian L = build_liouvillian(OpMatrix::Zero(8, 8), p, spec);
        OpMatrix rho0 = OpMatrix::Zero(8, 8);
        rho0(spec.index(1, 0, 0), spec.index(1, 0, 0)) = 1.0;
        Ket gg = Ket::Zero(4);
        gg(0) = 1.0;
        const auto traj = evolve(L, rho0, linspace(0.0, 4e-6, 60), Observables{gg, spec});
        for (std::size_t i = 1; i < traj.fidelity.size(); ++i) {
            CHECK(traj.fidelity[i] >= traj.fidelity[i - 1] - 1e-12);
        }
    }

    SUBCASE("hermiticity, trace and positivity hold along the full-scheme trajectory") {
        const FullSystem sys = make_fig_system();
        const double tau = spectral_gap(sys.liouv).tau;
        const int d = sys.spec.dim();
        OpMatrix rho0 = OpMatrix::Zero(d, d);
        rho0(sys.spec.index(1, 0, 0), sys.spec.index(1, 0, 0)) = 1.0;
        const auto traj = evolve(sys.liouv, rho0, linspace(0.0, 12.0 * tau, 100), sys.obs,
                                 /*store_states=*/true);
        for (const OpMatrix& rho : traj.states) {
            CHECK(max_abs(rho - rho.adjoint()) <= 1e-9);
            CHECK(std::abs(rho.trace() - Complex(1, 0)) <= 1e-8);
            Eigen::SelfAdjointEigenSolver<OpMatrix> es(hermitize(rho));
            CHECK(es.eigenvalues().minCoeff() >= -1e-8);
        }
        for (double f : traj.fidelity) {
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
    }
}

TEST_CASE("error-decay fitting") {
    SUBCASE("synthetic single exponential is recovered within 1%") {
        Trajectory traj;
        const double eps_inf = 0.01, amp = 0.5, tau = 100e-9;
        for (int i = 0; i <= 1200; ++i) {
            const double t = i * 1e-9;
            traj.times.push_back(t);
            traj.error.push_back(eps_inf + amp * std::exp(-t / tau));
        }
        const DecayFit fit = fit_error_decay(traj);
        CHECK(fit.eps_inf == doctest::Approx(eps_inf).epsilon(0.01));
        CHECK(fit.eps_tilde == doctest::Approx(amp).epsilon(0.01));
        CHECK(fit.tau == doctest::Approx(tau).epsilon(0.01));
    }

    SUBCASE("two-exponential input with separated scales recovers the slow component") {
        Trajectory traj;
        const double tau_slow = 100e-9;
        for (int i = 0; i <= 3000; ++i) {
            const double t = i * 0.5e-9;
            traj.times.push_back(t);
            traj.error.push_back(0.02 + 0.3 * std::exp(-t / tau_slow) +
                                 0.3 * std::exp(-10.0 * t / tau_slow));
        }
        const DecayFit fit = fit_error_decay(traj);
        CHECK(fit.tau == doctest::Approx(tau_slow).epsilon(0.05));
    }

    SUBCASE("non-converged trajectories are rejected") {
        Trajectory traj;
        for (int i = 0; i <= 100; ++i) {
            const double t = i * 1e-9;
            traj.times.push_back(t);
            traj.error.push_back(1.0 - 0.5 * t / 100e-9);  // still falling linearly
        }
        CHECK_THROWS_AS(fit_error_decay(traj), ConvergenceError);
    }

    SUBCASE("full-scheme fit matches the spectral gap within 20%") {
        const FullSystem sys = make_fig_system();
        const double tau = spectral_gap(sys.liouv).tau;
        const int d = sys.spec.dim();
        OpMatrix rho0 = OpMatrix::Zero(d, d);
        rho0(sys.spec.index(1, 0, 0), sys.spec.index(1, 0, 0)) = 1.0;
        const auto traj =
            evolve(sys.liouv, rho0, linspace(0.0, 14.0 * tau, 700), sys.obs);
        const DecayFit fit = fit_error_decay(traj);
        CHECK(std::abs(fit.tau - tau) / tau <= 0.20);

        // residual against the fitted model stays below 5% of the amplitude
        // over t in [tau, 5 tau]
        double worst = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            if (t < tau || t > 5.0 * tau) continue;
            const double model = fit.eps_inf + fit.eps_tilde * std::exp(-t / fit.tau);
            worst = std::max(worst, std::abs(model - traj.error[i]));
        }
        CHECK(worst <= 0.05 * fit.eps_tilde);
    }
}

TEST_CASE("periodic leakage propagator agrees with direct integration") {
    const double g = kTwoPi * 30e6;
    const auto dec = QubitDecoherence::from_t1_t2(100e-6, 200e-6);
    SystemParams p = SystemParams::symmetric(g, 0.75 * g, 1.5 * g, dec.gamma1,
                                             dec.gammaphi, 2);
    const TargetSpec t(Parity::Even, 0.0);
    const HilbertSpec spec(2);
    const Liouvillian L = build_liouvillian(build_h_eff(p, t), p, spec);
    const CounterRotatingTerm cr = make_counter_rotating(p, t, kTwoPi * 20e6);

    OpMatrix rho0 = OpMatrix::Zero(8, 8);
    rho0(spec.index(1, 0, 0), spec.index(1, 0, 0)) = 1.0;
    const Observables obs{target_state(t), spec};

    const auto props = leakage_window_propagators(L, cr, 40);
    Ket v = vectorize(rho0);
    const int periods = 8;
    for (int rep = 0; rep < periods; ++rep) {
        for (const auto& e : props) v = e * v;
    }
    const OpMatrix rho_fast = devectorize(v);

    const double t_end = periods * cr.period();
    const auto traj = evolve_with_leakage(L, cr, rho0, {t_end}, obs, 80);
    const double eps_fast = 1.0 - fidelity_to_target(rho_fast, obs.xi, spec);
    CHECK(traj.error.back() == doctest::Approx(eps_fast).epsilon(5e-4));
}
