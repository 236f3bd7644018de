#pragma once

#include <optional>
#include <vector>

#include "parastab/hamiltonian.hpp"
#include "parastab/quantum.hpp"

namespace parastab {

struct DegenerateSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Channel {
    OpMatrix op;
    double rate = 0.0;
};

/// Lindblad generator in column-stacking vectorization:
///   L = -i(I (x) H - H^T (x) I)
///       + sum_k r_k [ conj(o_k) (x) o_k - 1/2 I (x) o_k^+ o_k - 1/2 (o_k^+ o_k)^T (x) I ]
struct Liouvillian {
    int dim = 0;                   // Hilbert-space dimension d; superop is d^2 x d^2
    OpMatrix superop;
    OpMatrix hamiltonian;
    std::vector<Channel> channels;

    double scale() const;          // max-abs entry, cached
    mutable double scale_ = -1.0;
};

Ket vectorize(const OpMatrix& rho);
OpMatrix devectorize(const Ket& v);

Liouvillian build_liouvillian(const OpMatrix& h, const std::vector<Channel>& channels);

/// Channels per the master equation: (a, kappa), (sigma_j, gamma1_j), (Z_j, 2*gammaphi_j).
Liouvillian build_liouvillian(const OpMatrix& h, const SystemParams& p, const HilbertSpec& spec);

/// Null-space solve by shifted-inverse iteration with trace normalization;
/// falls back to full eigendecomposition for d^2 <= 4096. Throws
/// DegenerateSteadyStateError when the null space is not one-dimensional at
/// the kDegenerateNullTol relative threshold.
DensityMatrix steady_state(const Liouvillian& L);

struct SpectralGap {
    double tau = 0.0;              // -1 / Re(lambda1), seconds
    Complex lambda1{0.0, 0.0};     // slowest nonzero eigenvalue
    Complex lambda0{0.0, 0.0};     // the identified zero eigenvalue
};

SpectralGap spectral_gap(const Liouvillian& L);

struct Observables {
    Ket xi;            // two-qubit target for fidelity/error
    HilbertSpec spec;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<double> error;
    std::vector<double> purity;
    std::vector<double> photon;
    std::vector<OpMatrix> states;  // populated only when store_states
};

/// Time-independent evolution via matrix-exponential checkpoints on vec(rho).
Trajectory evolve(const Liouvillian& L, const OpMatrix& rho0,
                  const std::vector<double>& t_grid, const Observables& obs,
                  bool store_states = false);

/// Evolution with the time-dependent leakage term added to a static
/// Liouvillian: piecewise-constant midpoint sampling of H_CR(t) with at
/// least min_samples_per_period steps per pi/Omega_chi, integrated by RK4.
Trajectory evolve_with_leakage(const Liouvillian& L0, const CounterRotatingTerm& cr,
                               const OpMatrix& rho0, const std::vector<double>& t_grid,
                               const Observables& obs, int min_samples_per_period = 40);

/// Midpoint-sampled window propagators exp((L0 + L_cr(t_k)) dt) covering one
/// period of the leakage term, t_k = (k + 1/2) dt with dt = period/windows.
/// The leakage term is pi/Omega_chi periodic, so long evolutions reduce to
/// repeated application of these windows.
std::vector<OpMatrix> leakage_window_propagators(const Liouvillian& L0,
                                                 const CounterRotatingTerm& cr,
                                                 int windows_per_period);

struct DecayFit {
    double eps_inf = 0.0;
    double eps_tilde = 0.0;
    double tau = 0.0;
    double residual = 0.0;  // max |model - data| over the fit window
};

/// eps(t) ~ eps_inf + eps_tilde exp(-t/tau): tail mean plus log-linear
/// regression over the window where the transient spans [e^-4, e^-1] of its
/// initial value.
DecayFit fit_error_decay(const Trajectory& traj);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // geometric, a,b > 0

}  // namespace parastab
