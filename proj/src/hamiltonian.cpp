#include "parastab/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace parastab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0) w += kTwoPi;
    return w;
}

}  // namespace

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parity_from_string(const std::string& s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw std::invalid_argument("parity must be 'even' or 'odd', got '" + s + "'");
}

TargetSpec::TargetSpec(Parity p, double psi_raw) : parity(p), psi(wrap_phase(psi_raw)) {}

void SystemParams::validate() const {
    const double rates[] = {g12_plus, g12_minus, g1r, g2r, kappa,
                            gamma1_1, gamma1_2, gammaphi_1, gammaphi_2};
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw std::invalid_argument("SystemParams: rates must be finite and >= 0");
        }
    }
    if (!std::isfinite(delta1) || !std::isfinite(delta2) || !std::isfinite(delta_r) ||
        !std::isfinite(chi1) || !std::isfinite(chi2)) {
        throw std::invalid_argument("SystemParams: non-finite parameter");
    }
    if (n_res < 2) throw std::invalid_argument("SystemParams: n_res must be >= 2");
}

SystemParams SystemParams::symmetric(double g, double g_r, double kappa,
                                     double gamma1, double gammaphi, int n_res) {
    SystemParams p;
    p.g12_plus = g;
    p.g12_minus = g;
    p.g1r = g_r;
    p.g2r = g_r;
    p.kappa = kappa;
    p.gamma1_1 = gamma1;
    p.gamma1_2 = gamma1;
    p.gammaphi_1 = gammaphi;
    p.gammaphi_2 = gammaphi;
    p.n_res = n_res;
    p.validate();
    return p;
}

QubitDecoherence QubitDecoherence::from_t1_t2(double t1, double t2) {
    if (!(t1 > 0.0) || !(t2 > 0.0)) {
        throw std::invalid_argument("T1 and T2 must be positive");
    }
    const double gamma_phi_pure = 1.0 / t2 - 0.5 / t1;
    if (gamma_phi_pure < -1e-12 / t1) {
        throw std::invalid_argument("T2 must not exceed 2*T1");
    }
    QubitDecoherence d;
    d.gamma1 = 1.0 / t1;
    d.gammaphi = std::max(gamma_phi_pure, 0.0) / 4.0;
    return d;
}

double dispersive_shift(const DispersiveInputs& in, int j) {
    const double gbar = (j == 1) ? in.g_bar_1r : in.g_bar_2r;
    const double omega_j = (j == 1) ? in.omega_1 : in.omega_2;
    if (j != 1 && j != 2) throw std::invalid_argument("dispersive_shift: j must be 1 or 2");
    const double det = in.omega_r - omega_j;
    if (det == 0.0) throw std::domain_error("dispersive_shift: omega_r equals omega_j");
    return gbar * gbar / det;
}

Ket target_state(const TargetSpec& t) {
    Ket xi = Ket::Zero(4);
    const Complex ph = std::exp(kI * t.psi);
    if (t.parity == Parity::Even) {
        xi(0) = 1.0;        // |gg>
        xi(3) = -ph;        // -e^{i psi}|ee>
    } else {
        xi(1) = 1.0;        // |ge>
        xi(2) = -ph;        // -e^{i psi}|eg>
    }
    return xi / std::sqrt(2.0);
}

Ket complement_state(const TargetSpec& t) {
    Ket xb = Ket::Zero(4);
    const Complex ph = std::exp(kI * t.psi);
    if (t.parity == Parity::Even) {
        xb(0) = 1.0;
        xb(3) = ph;
    } else {
        xb(1) = 1.0;
        xb(2) = ph;
    }
    return xb / std::sqrt(2.0);
}

OpMatrix collapse_operator(const TargetSpec& t) {
    const OpMatrix id2 = OpMatrix::Identity(2, 2);
    const OpMatrix s1 = kron(sigma_lower(), id2);
    const Complex ph = std::exp(kI * t.psi);
    if (t.parity == Parity::Even) {
        return s1 + ph * kron(id2, sigma_raise());
    }
    return s1 + ph * kron(id2, sigma_lower());
}

PumpPhases pump_phases(const TargetSpec& t) {
    PumpPhases ph;
    const double half_pi = std::numbers::pi / 2.0;
    if (t.parity == Parity::Even) {
        ph.phi12_plus = wrap_phase(half_pi - t.psi);
        ph.phi12_minus = 0.0;
    } else {
        ph.phi12_plus = 0.0;
        ph.phi12_minus = wrap_phase(half_pi - t.psi);
    }
    ph.phi1r = 0.0;
    ph.phi2r = wrap_phase(t.psi);
    return ph;
}

SystemParams with_pump_phases(const SystemParams& p, const TargetSpec& t) {
    SystemParams out = p;
    const PumpPhases ph = pump_phases(t);
    out.phi12_plus = ph.phi12_plus;
    out.phi12_minus = ph.phi12_minus;
    out.phi1r = ph.phi1r;
    out.phi2r = ph.phi2r;
    return out;
}

// Structure per parity, with the pump-frequency bookkeeping of the
// interaction frame:
//
//  - The sum-frequency qubit-qubit drive is photon-number selective (its
//    resonance shifts by 2n(chi1+chi2)), so sigma1*sigma2 carries a Fock
//    projector: n=0 for odd parity, n=1 for even.
//  - The difference-frequency drive resonance shifts by 2n(chi1-chi2). Even
//    parity operates at symmetric dispersive shifts (chi1 = chi2), where
//    every photon sector is resonant: sigma1*sigma2^+ is unconditioned. Odd
//    parity requires chi1 != chi2, which pins that drive to the n=1 sector.
//  - Qubit-resonator terms use the full truncated ladder (sqrt(n) matrix
//    elements). At the symmetric-shift operating point the second sideband
//    tone of each pump is resonant with the n=1 -> 2 transition, so the
//    upper levels are coupled, not merely decay-connected.
//  - Phases attach to the lowering direction of each product (sigma1 sigma2,
//    sigma1 sigma2^+, sigma_j a for odd, sigma1 a^+/sigma2^+ a^+ for even);
//    this is the assignment under which the tabulated pump phases make
//    |xi,0> dark for every psi. The raising-direction placement fails that
//    condition for general psi.
OpMatrix build_h_eff_raw(const SystemParams& p, Parity parity, const HilbertSpec& spec) {
    p.validate();
    const int d = spec.dim();

    const OpMatrix s1 = embed(sigma_lower(), Slot::Qubit1, spec);
    const OpMatrix s2 = embed(sigma_lower(), Slot::Qubit2, spec);
    const OpMatrix z1 = embed(pauli_z(), Slot::Qubit1, spec);
    const OpMatrix z2 = embed(pauli_z(), Slot::Qubit2, spec);
    const OpMatrix p0 = embed(fock_projector(spec.n_res, 0), Slot::Resonator, spec);
    const OpMatrix p1 = embed(fock_projector(spec.n_res, 1), Slot::Resonator, spec);
    const OpMatrix adag = embed(annihilation(spec.n_res).adjoint().eval(),
                                Slot::Resonator, spec);
    const OpMatrix nres = embed(number_operator(spec.n_res), Slot::Resonator, spec);

    const Complex e12p = p.g12_plus * std::exp(kI * p.phi12_plus);
    const Complex e12m = p.g12_minus * std::exp(kI * p.phi12_minus);
    const Complex e1r = p.g1r * std::exp(kI * p.phi1r);
    const Complex e2r = p.g2r * std::exp(kI * p.phi2r);

    OpMatrix h = OpMatrix::Zero(d, d);
    if (parity == Parity::Even) {
        h += e12m * (s1 * s2.adjoint());               // |ge,n><eg,n|, all n
        h += e12p * (s1 * s2 * p1);                    // |gg,1><ee,1|
        h += e1r * (s1 * adag);                        // sigma1 a^+
        h += e2r * (s2.adjoint() * adag);              // sigma2^+ a^+
    } else {
        h += e12p * (s1 * s2 * p0);                    // |gg,0><ee,0|
        h += e12m * (s1 * s2.adjoint() * p1);          // |ge,1><eg,1|
        h += e1r * (s1 * adag.adjoint());              // sigma1 a
        h += e2r * (s2 * adag.adjoint());              // sigma2 a
    }
    h += h.adjoint().eval();

    h += 0.5 * p.delta1 * z1 + 0.5 * p.delta2 * z2 + p.delta_r * nres;
    return h;
}

OpMatrix build_h_eff(const SystemParams& p, const TargetSpec& t) {
    return build_h_eff_raw(with_pump_phases(p, t), t.parity, HilbertSpec(p.n_res));
}

double omega_chi_for(const SystemParams& p, Parity parity) {
    return parity == Parity::Even ? p.chi1 + p.chi2 : p.chi1 - p.chi2;
}

OpMatrix CounterRotatingTerm::at(double time) const {
    const Complex c = amplitude * std::exp(kI * (phase + 2.0 * omega_chi * time));
    OpMatrix h = c * coupling;
    h += h.adjoint().eval();
    return h;
}

double CounterRotatingTerm::period() const {
    if (omega_chi == 0.0) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / std::abs(omega_chi);
}

CounterRotatingTerm make_counter_rotating(const SystemParams& p, const TargetSpec& t,
                                          double omega_chi) {
    const HilbertSpec spec(p.n_res);
    const Ket xi = target_state(t);
    const Ket xb = complement_state(t);
    Ket vac = Ket::Zero(spec.n_res);
    vac(0) = 1.0;

    Ket xi_full = Ket::Zero(spec.dim());
    Ket xb_full = Ket::Zero(spec.dim());
    for (int q = 0; q < 4; ++q) {
        xi_full(spec.n_res * q) = xi(q);
        xb_full(spec.n_res * q) = xb(q);
    }

    CounterRotatingTerm cr;
    cr.coupling = xb_full * xi_full.adjoint();
    const PumpPhases ph = pump_phases(t);
    if (t.parity == Parity::Even) {
        cr.amplitude = p.g12_plus;
        cr.phase = ph.phi12_plus;
    } else {
        cr.amplitude = p.g12_minus;
        cr.phase = ph.phi12_minus;
    }
    cr.omega_chi = omega_chi;
    return cr;
}

OpMatrix build_h_counter_rotating(const SystemParams& p, const TargetSpec& t,
                                  double omega_chi, double time) {
    return make_counter_rotating(p, t, omega_chi).at(time);
}

}  // namespace parastab
