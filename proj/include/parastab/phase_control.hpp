#pragma once

#include <array>
#include <string>

#include <nlohmann/json.hpp>

#include "parastab/liouvillian.hpp"

namespace parastab {

/// Two-qubit steady-state tomogram. Element phases are reported as
/// arg(rho_ij) directly; the tracked coherence (see coherence_phase) is the
/// lower-triangle element whose row is the phase-flipped component, so that
/// it reads psi + pi for the ideal target.
struct Tomogram {
    Eigen::Matrix4cd rho;
    static const std::array<const char*, 4> kBasisLabels;  // gg, ge, eg, ee

    double magnitude(int i, int j) const { return std::abs(rho(i, j)); }
    double phase(int i, int j) const { return std::arg(rho(i, j)); }
    nlohmann::json to_json() const;
};

struct StabilizedState {
    DensityMatrix rho_ss;
    double fidelity = 0.0;
};

/// Table-derived pump phases for (parity, psi), steady state, and fidelity
/// to the rotated target.
StabilizedState stabilize_rotated(const SystemParams& params, Parity parity, double psi);

Tomogram tomogram(const OpMatrix& rho_full, const HilbertSpec& spec);
Tomogram tomogram(const DensityMatrix& rho_full, const HilbertSpec& spec);

/// arg of the coherence between the target's two basis components:
/// rho(ee,gg) for even parity, rho(eg,ge) for odd.
double coherence_phase(const Tomogram& t, Parity parity);

struct ManifoldMetrics {
    double population = 0.0;  // weight in the parity manifold
    double purity = 0.0;      // purity of the reduced two-qubit state
};

ManifoldMetrics manifold_metrics(const OpMatrix& rho_full, Parity parity,
                                 const HilbertSpec& spec);

}  // namespace parastab
