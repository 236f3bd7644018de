#pragma once

#include <complex>

namespace parastab {

/// Physical coupler parameters, SI units throughout (fluxes in Wb except
/// where noted). A_flux is the 1/f flux-noise amplitude in units of Phi_0.
struct CircuitParams {
    double I_c = 1e-6;       // junction critical current [A]
    double L_r = 5e-9;       // resonator inductance [H]
    double L_j1 = 20e-9;     // qubit inductances [H]
    double L_j2 = 20e-9;
    double omega_1 = 0.0;    // qubit/resonator resonances [rad/s]
    double omega_2 = 0.0;
    double omega_r = 0.0;
    double delta_Phi = 0.0;  // flux modulation amplitude [Wb]
    double L_0 = 0.1e-9;     // flux-line termination inductance [H]
    double M = 2e-12;        // mutual inductance to the SQUID loop [H]
    double Z_0 = 50.0;       // flux-line characteristic impedance [Ohm]
    double A_flux = 2e-6;    // flux-noise amplitude [Phi_0]
    double f_min = 1.0;      // noise-integration band [Hz]
    double f_max = 1e9;

    void validate() const;
};

/// L_sq(Phi) = Phi_0 / (2 pi I_c cos(pi Phi/Phi_0)); domain error near the
/// half flux quantum where the cosine vanishes.
double squid_inductance(const CircuitParams& c, double phi);

/// g_jr(Phi) = [L_sq/(2 sqrt(L_r L_j))] sqrt(omega_j omega_r), j in {1,2}.
double static_coupling(const CircuitParams& c, double phi, int j);

/// Qubit-qubit analog via the same participation-ratio form with the two
/// qubit inductances/frequencies.
double qubit_qubit_static_coupling(const CircuitParams& c, double phi);

/// (d g_jr/d Phi) * delta_Phi = (pi/Phi_0) tan(pi Phi/Phi_0) g_jr(Phi) delta_Phi.
double parametric_rate(const CircuitParams& c, double phi_bias, double delta_phi, int j);
double qubit_qubit_parametric_rate(const CircuitParams& c, double phi_bias, double delta_phi);

/// Z_in = i w (L_sq - M) + i w M (i w (L_0 - M) + Z_0) / (i w L_0 + Z_0).
/// Re(Z_in) is independent of L_sq (and hence of the bias).
std::complex<double> input_impedance(const CircuitParams& c, double omega,
                                     double phi_bias = 0.0);

/// Closed form L_j (w_j^2 L_0^2 + Z_0^2) / (w_j^2 M^2 Z_0); returns +inf when
/// M = 0. (The denominator frequency is read as the qubit frequency.)
double coupler_t1(const CircuitParams& c, int j);
/// General form L_j / Re(Z_in[w_j]).
double coupler_t1_from_impedance(const CircuitParams& c, int j);

/// T2* = 1/Delta_omega with DeltaPhi = A sqrt(2 pi ln(f_max/f_min));
/// +inf at the Phi = 0 sweet spot.
double flux_dephasing_estimate(const CircuitParams& c, double phi_bias, int j = 1);

}  // namespace parastab
