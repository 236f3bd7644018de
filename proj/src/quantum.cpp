#include "parastab/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace parastab {

OpMatrix pauli_z() {
    OpMatrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
}

OpMatrix sigma_lower() {
    OpMatrix s = OpMatrix::Zero(2, 2);
    s(0, 1) = 1.0;  // |g><e|
    return s;
}

OpMatrix sigma_raise() { return sigma_lower().adjoint(); }

OpMatrix annihilation(int n_levels) {
    OpMatrix a = OpMatrix::Zero(n_levels, n_levels);
    for (int n = 1; n < n_levels; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

OpMatrix number_operator(int n_levels) {
    OpMatrix n = OpMatrix::Zero(n_levels, n_levels);
    for (int k = 0; k < n_levels; ++k) n(k, k) = k;
    return n;
}

OpMatrix fock_projector(int n_levels, int n) {
    OpMatrix p = OpMatrix::Zero(n_levels, n_levels);
    p(n, n) = 1.0;
    return p;
}

OpMatrix raise_01(int n_levels) {
    OpMatrix r = OpMatrix::Zero(n_levels, n_levels);
    r(1, 0) = 1.0;  // |1><0|
    return r;
}

OpMatrix kron(const OpMatrix& a, const OpMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols();
    const Eigen::Index rb = b.rows(), cb = b.cols();
    OpMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ca; ++j) {
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
        }
    }
    return out;
}

OpMatrix embed(const OpMatrix& op, Slot slot, const HilbertSpec& spec) {
    const int expected = (slot == Slot::Resonator) ? spec.n_res : 2;
    if (op.rows() != expected || op.cols() != expected) {
        throw std::invalid_argument("embed: operator dimension does not match slot");
    }
    const OpMatrix iq = OpMatrix::Identity(2, 2);
    const OpMatrix ir = OpMatrix::Identity(spec.n_res, spec.n_res);
    switch (slot) {
        case Slot::Qubit1: return kron(op, kron(iq, ir));
        case Slot::Qubit2: return kron(iq, kron(op, ir));
        case Slot::Resonator: return kron(iq, kron(iq, op));
    }
    throw std::logic_error("embed: bad slot");
}

double max_abs(const OpMatrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const OpMatrix& m, double rel_tol) {
    const double scale = max_abs(m);
    if (scale == 0.0) return true;
    return max_abs(m - m.adjoint()) <= rel_tol * scale;
}

OpMatrix hermitize(const OpMatrix& m) { return 0.5 * (m + m.adjoint()); }

DensityMatrix DensityMatrix::validated(const OpMatrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (!rho.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-14) {
        throw std::invalid_argument("DensityMatrix: vanishing trace");
    }
    OpMatrix normalized = rho / tr;
    if (max_abs(normalized - normalized.adjoint()) > kHermitianTol) {
        throw std::invalid_argument("DensityMatrix: not hermitian within tolerance");
    }
    if (std::abs(normalized.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace not normalizable");
    }
    Eigen::SelfAdjointEigenSolver<OpMatrix> es(hermitize(normalized));
    if (es.eigenvalues().minCoeff() < kPsdFloor) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
    return DensityMatrix(std::move(normalized));
}

Ket basis_ket(int dim, int index) {
    Ket k = Ket::Zero(dim);
    k(index) = 1.0;
    return k;
}

void check_unit_norm(const Ket& psi) {
    if (std::abs(psi.norm() - 1.0) > kKetNormTol) {
        throw std::invalid_argument("ket is not normalized");
    }
}

OpMatrix partial_trace_resonator(const OpMatrix& rho, const HilbertSpec& spec) {
    const int d = spec.dim();
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("partial_trace_resonator: dimension mismatch");
    }
    OpMatrix reduced = OpMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex sum = 0.0;
            for (int n = 0; n < spec.n_res; ++n) {
                sum += rho(spec.n_res * i + n, spec.n_res * j + n);
            }
            reduced(i, j) = sum;
        }
    }
    return reduced;
}

double fidelity_to_target(const OpMatrix& rho, const Ket& xi, const HilbertSpec& spec) {
    if (xi.size() != 4) {
        throw std::invalid_argument("fidelity_to_target: xi must be a two-qubit ket");
    }
    check_unit_norm(xi);
    const OpMatrix reduced = partial_trace_resonator(rho, spec);
    const Complex f = xi.adjoint() * reduced * xi;
    return f.real();
}

double purity(const OpMatrix& rho) { return (rho * rho).trace().real(); }

double real_expectation(const OpMatrix& rho, const OpMatrix& op) {
    return (rho * op).trace().real();
}

}  // namespace parastab
