#include <doctest.h>

#include <numbers>
#include <random>

#include "parastab/metrics.hpp"

using namespace parastab;

// Randomized structural checks over the Liouvillian builder and solvers.
// The acceptance suite runs the full 200-draw version of this suite; this is
// a faster spot check with a different seed.
TEST_CASE("liouvillian property suite (randomized)") {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::mt19937 rng(991);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    int degenerate = 0;
    for (int draw = 0; draw < 40; ++draw) {
        const double g = kTwoPi * 50e6 * std::pow(10.0, uni(rng) * 1.3 - 1.0);
        const double gr = g * (0.3 + uni(rng) * 1.2);
        const double kappa = g * std::pow(10.0, uni(rng) * 2.0 - 1.0);
        const double gamma1 = std::pow(10.0, 2.0 + 3.0 * uni(rng));
        const double gammaphi = uni(rng) < 0.3 ? 0.0 : gamma1 * uni(rng) * 0.25;
        const int n_res = (draw % 3 == 0) ? 2 : 3;
        const Parity parity = (draw % 2 == 0) ? Parity::Even : Parity::Odd;
        const TargetSpec target(parity, kTwoPi * uni(rng));

        SystemParams p = SystemParams::symmetric(g, gr, kappa, gamma1, gammaphi, n_res);
        p.delta1 = (uni(rng) - 0.5) * 0.1 * g;
        p.delta2 = (uni(rng) - 0.5) * 0.1 * g;
        p.delta_r = (uni(rng) - 0.5) * 0.2 * g;

        const HilbertSpec spec(n_res);
        const OpMatrix h = build_h_eff(p, target);
        const Liouvillian L = build_liouvillian(h, p, spec);

        // trace preservation
        const Ket row =
            L.superop.adjoint() * vectorize(OpMatrix::Identity(spec.dim(), spec.dim()));
        CHECK(row.norm() <= 1e-10 * L.scale());

        // spectral stability
        Eigen::ComplexEigenSolver<OpMatrix> es(L.superop, false);
        REQUIRE(es.info() == Eigen::Success);
        CHECK(es.eigenvalues().real().maxCoeff() <= 1e-9 * L.scale());

        // steady state positivity (validated() enforces hermiticity/PSD/trace)
        try {
            const DensityMatrix rho = steady_state(L);
            Eigen::SelfAdjointEigenSolver<OpMatrix> ses(hermitize(rho.mat()));
            CHECK(ses.eigenvalues().minCoeff() >= -1e-9);
        } catch (const DegenerateSteadyStateError&) {
            ++degenerate;  // legal outcome for pathological draws, but must be rare
        }

        // hermiticity preservation along a short trajectory
        if (draw % 8 == 0) {
            OpMatrix rho0 = OpMatrix::Zero(spec.dim(), spec.dim());
            rho0(spec.index(1, 0, 0), spec.index(1, 0, 0)) = 1.0;
            const Observables obs{target_state(target), spec};
            const auto traj = evolve(L, rho0, linspace(0.0, 10.0 / kappa, 5), obs, true);
            for (const auto& rho : traj.states) {
                CHECK(max_abs(rho - rho.adjoint()) <= 1e-9);
            }
        }
    }
    CHECK(degenerate <= 2);
}
