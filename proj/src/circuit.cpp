#include "parastab/circuit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parastab/constants.hpp"

namespace parastab {

namespace {

constexpr double kPi = std::numbers::pi;

double qubit_inductance(const CircuitParams& c, int j) {
    if (j == 1) return c.L_j1;
    if (j == 2) return c.L_j2;
    throw std::invalid_argument("circuit: qubit index must be 1 or 2");
}

double qubit_frequency(const CircuitParams& c, int j) {
    return (j == 1) ? c.omega_1 : c.omega_2;
}

}  // namespace

void CircuitParams::validate() const {
    const double positives[] = {I_c, L_r, L_j1, L_j2, omega_1, omega_2, omega_r,
                                L_0, M, Z_0, f_min, f_max};
    for (double v : positives) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("CircuitParams: all parameters must be positive");
        }
    }
    if (!(f_min < f_max)) {
        throw std::invalid_argument("CircuitParams: need f_min < f_max");
    }
    if (!(A_flux >= 0.0)) {
        throw std::invalid_argument("CircuitParams: A_flux must be >= 0");
    }
}

double squid_inductance(const CircuitParams& c, double phi) {
    const double cosine = std::cos(kPi * phi / kFluxQuantum);
    if (std::abs(cosine) <= 1e-6) {
        throw std::domain_error("squid_inductance: flux too close to half flux quantum");
    }
    return kFluxQuantum / (2.0 * kPi * c.I_c * cosine);
}

double static_coupling(const CircuitParams& c, double phi, int j) {
    const double lsq = squid_inductance(c, phi);
    const double lj = qubit_inductance(c, j);
    const double wj = qubit_frequency(c, j);
    return lsq / (2.0 * std::sqrt(c.L_r * lj)) * std::sqrt(wj * c.omega_r);
}

double qubit_qubit_static_coupling(const CircuitParams& c, double phi) {
    const double lsq = squid_inductance(c, phi);
    return lsq / (2.0 * std::sqrt(c.L_j1 * c.L_j2)) * std::sqrt(c.omega_1 * c.omega_2);
}

namespace {

double parametric_prefactor(double phi_bias, double delta_phi) {
    if (std::abs(delta_phi) > 0.15 * kFluxQuantum) {
        // formula is a first-order expansion in delta_Phi
        throw std::domain_error("parametric_rate: delta_Phi beyond linear-response range");
    }
    return (kPi / kFluxQuantum) * std::tan(kPi * phi_bias / kFluxQuantum) * delta_phi;
}

}  // namespace

double parametric_rate(const CircuitParams& c, double phi_bias, double delta_phi, int j) {
    return parametric_prefactor(phi_bias, delta_phi) * static_coupling(c, phi_bias, j);
}

double qubit_qubit_parametric_rate(const CircuitParams& c, double phi_bias,
                                   double delta_phi) {
    return parametric_prefactor(phi_bias, delta_phi) * qubit_qubit_static_coupling(c, phi_bias);
}

std::complex<double> input_impedance(const CircuitParams& c, double omega, double phi_bias) {
    if (!(omega > 0.0)) throw std::invalid_argument("input_impedance: omega must be > 0");
    const std::complex<double> iw(0.0, omega);
    const double lsq = squid_inductance(c, phi_bias);
    return iw * (lsq - c.M) +
           iw * c.M * (iw * (c.L_0 - c.M) + c.Z_0) / (iw * c.L_0 + c.Z_0);
}

double coupler_t1(const CircuitParams& c, int j) {
    const double lj = qubit_inductance(c, j);
    const double wj = qubit_frequency(c, j);
    if (c.M == 0.0) return std::numeric_limits<double>::infinity();
    return lj * (wj * wj * c.L_0 * c.L_0 + c.Z_0 * c.Z_0) / (wj * wj * c.M * c.M * c.Z_0);
}

double coupler_t1_from_impedance(const CircuitParams& c, int j) {
    const double wj = qubit_frequency(c, j);
    const double re = input_impedance(c, wj).real();
    if (re <= 0.0) return std::numeric_limits<double>::infinity();
    return qubit_inductance(c, j) / re;
}

double flux_dephasing_estimate(const CircuitParams& c, double phi_bias, int j) {
    c.validate();
    const double x = kPi * phi_bias / kFluxQuantum;
    const double tan_x = std::tan(x);
    if (tan_x == 0.0) return std::numeric_limits<double>::infinity();  // sweet spot
    const double lsq = squid_inductance(c, phi_bias);
    const double lj = qubit_inductance(c, j);
    const double wj = qubit_frequency(c, j);
    // Average flux fluctuation over the band, in units of Phi_0 (the
    // log-divergent 1/f integral).
    const double dphi = c.A_flux * std::sqrt(2.0 * kPi * std::log(c.f_max / c.f_min));
    const double domega = (kPi * wj / 2.0) * (lsq / (lj + lsq)) * std::abs(tan_x) /
                          std::abs(std::cos(x)) * dphi;
    if (domega <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / domega;
}

}  // namespace parastab
