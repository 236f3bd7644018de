#pragma once

#include <stdexcept>

namespace parastab {

/// Composite Hilbert space qubit1 (x) qubit2 (x) resonator.
///
/// Basis ordering is fixed project-wide: |q1, q2, n> with q in {g=0, e=1},
/// n in {0 .. n_res-1}, flattened as index = 2*n_res*q1 + n_res*q2 + n.
struct HilbertSpec {
    int n_res;

    explicit HilbertSpec(int n_res_levels) : n_res(n_res_levels) {
        if (n_res < 2) {
            throw std::invalid_argument("HilbertSpec: n_res must be >= 2");
        }
    }

    int dim() const { return 4 * n_res; }

    int index(int q1, int q2, int n) const {
        if (q1 < 0 || q1 > 1 || q2 < 0 || q2 > 1 || n < 0 || n >= n_res) {
            throw std::out_of_range("HilbertSpec::index: label out of range");
        }
        return 2 * n_res * q1 + n_res * q2 + n;
    }
};

}  // namespace parastab
