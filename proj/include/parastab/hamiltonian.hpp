#pragma once

#include <string>

#include "parastab/quantum.hpp"

namespace parastab {

enum class Parity { Even, Odd };

std::string to_string(Parity p);
Parity parity_from_string(const std::string& s);

/// Which maximally-entangled state to stabilize: parity manifold plus the
/// continuous phase psi of the target (|gg> - e^{i psi}|ee>)/sqrt(2) or
/// (|ge> - e^{i psi}|eg>)/sqrt(2).
struct TargetSpec {
    Parity parity = Parity::Even;
    double psi = 0.0;  // reduced to [0, 2pi)

    TargetSpec() = default;
    TargetSpec(Parity p, double psi_raw);
};

struct PumpPhases {
    double phi12_plus = 0.0;
    double phi12_minus = 0.0;
    double phi1r = 0.0;
    double phi2r = 0.0;
};

/// All physical rates and phases of the scheme, in SI angular units [rad/s].
struct SystemParams {
    double g12_plus = 0.0;
    double g12_minus = 0.0;
    double phi12_plus = 0.0;
    double phi12_minus = 0.0;
    double g1r = 0.0;
    double g2r = 0.0;
    double phi1r = 0.0;
    double phi2r = 0.0;
    double kappa = 0.0;
    double gamma1_1 = 0.0;
    double gamma1_2 = 0.0;
    // Dephasing-channel rates in the master-equation convention used here:
    // the Z_j channel enters with rate 2*gammaphi_j, so qubit coherences
    // decay at 4*gammaphi_j (= Gamma_phi when set via from_t1_t2).
    double gammaphi_1 = 0.0;
    double gammaphi_2 = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double delta_r = 0.0;
    int n_res = 3;

    void validate() const;  // throws on negative rates or n_res < 2

    /// Symmetric couplings g12+- = g, g_{jr} = g_r, identical qubits.
    static SystemParams symmetric(double g, double g_r, double kappa,
                                  double gamma1, double gammaphi, int n_res = 3);
};

/// gamma1 = 1/T1, pure dephasing Gamma_phi = 1/T2 - 1/(2 T1); the returned
/// gammaphi field is Gamma_phi/4 so that coherences decay at exactly
/// Gamma_phi. Throws if T2 > 2*T1.
struct QubitDecoherence {
    double gamma1 = 0.0;
    double gammaphi = 0.0;
    static QubitDecoherence from_t1_t2(double t1, double t2);
};

/// Static couplings and bare resonances entering the dispersive shift.
struct DispersiveInputs {
    double g_bar_1r = 0.0;
    double g_bar_2r = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double omega_r = 0.0;
};

/// chi_j = g_bar_jr^2 / (omega_r - omega_j); throws on degeneracy.
double dispersive_shift(const DispersiveInputs& in, int j);

/// Two-qubit target ket (4-dim, basis gg, ge, eg, ee).
Ket target_state(const TargetSpec& t);
/// The phase-flipped partner |xi_bar> in the same parity manifold.
Ket complement_state(const TargetSpec& t);
/// Engineered collapse operator on the two-qubit space (4x4).
OpMatrix collapse_operator(const TargetSpec& t);
/// Pump-phase assignment inducing the target.
PumpPhases pump_phases(const TargetSpec& t);
/// Copy of params with the four pump phases set from the target.
SystemParams with_pump_phases(const SystemParams& p, const TargetSpec& t);

/// Effective interaction-frame Hamiltonian on the full space. Uses the pump
/// phases stored in params (expert path); structure is set by the parity.
OpMatrix build_h_eff_raw(const SystemParams& p, Parity parity, const HilbertSpec& spec);

/// Standard path: stamps the Table-derived pump phases for the target, then
/// builds. H_eff |xi, 0> = 0 for symmetric couplings and zero detunings.
OpMatrix build_h_eff(const SystemParams& p, const TargetSpec& t);

/// chi1 + chi2 (even) or chi1 - chi2 (odd).
double omega_chi_for(const SystemParams& p, Parity parity);

/// Time-dependent leakage term g e^{i phi} e^{i 2 Omega_chi t}|xi_bar,0><xi,0| + h.c.
/// capturing the dominant counter-rotating effect in the zero-photon manifold.
struct CounterRotatingTerm {
    OpMatrix coupling;   // |xi_bar,0><xi,0| on the full space
    double amplitude = 0.0;
    double phase = 0.0;
    double omega_chi = 0.0;

    OpMatrix at(double time) const;
    double period() const;  // pi / Omega_chi
};

CounterRotatingTerm make_counter_rotating(const SystemParams& p, const TargetSpec& t,
                                          double omega_chi);

OpMatrix build_h_counter_rotating(const SystemParams& p, const TargetSpec& t,
                                  double omega_chi, double time);

}  // namespace parastab
