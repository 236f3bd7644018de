#pragma once

#include <complex>
#include <Eigen/Dense>

#include "parastab/constants.hpp"
#include "parastab/hilbert.hpp"

namespace parastab {

using OpMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

enum class Slot { Qubit1, Qubit2, Resonator };

// --- elementary operators -------------------------------------------------

/// Convention Z|g> = +|g>, Z|e> = -|e>; sigma = |g><e| lowers.
OpMatrix pauli_z();
OpMatrix sigma_lower();
OpMatrix sigma_raise();
OpMatrix annihilation(int n_levels);
OpMatrix number_operator(int n_levels);
OpMatrix fock_projector(int n_levels, int n);
/// a^dagger restricted to the 0 <-> 1 transition (resonant sideband only).
OpMatrix raise_01(int n_levels);

// --- tensor algebra -------------------------------------------------------

OpMatrix kron(const OpMatrix& a, const OpMatrix& b);
OpMatrix embed(const OpMatrix& op, Slot slot, const HilbertSpec& spec);

double max_abs(const OpMatrix& m);
bool is_hermitian(const OpMatrix& m, double rel_tol = kOperatorHermTol);
OpMatrix hermitize(const OpMatrix& m);

// --- states ---------------------------------------------------------------

/// Validated density matrix: hermitian within kHermitianTol after trace
/// normalization, unit trace within kTraceTol, eigenvalues >= kPsdFloor.
class DensityMatrix {
  public:
    static DensityMatrix validated(const OpMatrix& rho);
    const OpMatrix& mat() const { return rho_; }
    int dim() const { return static_cast<int>(rho_.rows()); }

  private:
    explicit DensityMatrix(OpMatrix rho) : rho_(std::move(rho)) {}
    OpMatrix rho_;
};

Ket basis_ket(int dim, int index);
void check_unit_norm(const Ket& psi);

// --- metrics ---------------------------------------------------------------

/// Trace over the resonator; returns the reduced 4x4 two-qubit matrix.
OpMatrix partial_trace_resonator(const OpMatrix& rho, const HilbertSpec& spec);

/// Tr[rho (|xi><xi| (x) I_res)] for a two-qubit ket xi; error = 1 - fidelity.
double fidelity_to_target(const OpMatrix& rho, const Ket& xi, const HilbertSpec& spec);

double purity(const OpMatrix& rho);

double real_expectation(const OpMatrix& rho, const OpMatrix& op);

}  // namespace parastab
