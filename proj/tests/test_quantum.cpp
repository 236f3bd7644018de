#include <doctest.h>

#include <random>

#include "parastab/quantum.hpp"

using namespace parastab;

namespace {

std::mt19937 rng(20240811);

OpMatrix random_complex(int rows, int cols) {
    std::normal_distribution<double> dist(0.0, 1.0);
    OpMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
    }
    return m;
}

OpMatrix random_density(int dim) {
    OpMatrix a = random_complex(dim, dim);
    OpMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

// index-summation oracle, independent of partial_trace_resonator
OpMatrix trace_out_resonator_oracle(const OpMatrix& rho, int n_res) {
    OpMatrix out = OpMatrix::Zero(4, 4);
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int p1 = 0; p1 < 2; ++p1)
                for (int p2 = 0; p2 < 2; ++p2)
                    for (int n = 0; n < n_res; ++n)
                        out(2 * q1 + q2, 2 * p1 + p2) +=
                            rho(2 * n_res * q1 + n_res * q2 + n,
                                2 * n_res * p1 + n_res * p2 + n);
    return out;
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
    const OpMatrix i2 = OpMatrix::Identity(2, 2);
    CHECK(max_abs(kron(i2, i2) - OpMatrix::Identity(4, 4)) == 0.0);

    const OpMatrix zi = kron(pauli_z(), i2);
    Eigen::Vector4cd expected(1, 1, -1, -1);
    CHECK(max_abs(zi - OpMatrix(expected.asDiagonal())) == 0.0);
}

TEST_CASE("kron mixed-product property on random matrices") {
    for (int dim : {2, 3}) {
        const OpMatrix a = random_complex(dim, dim), b = random_complex(dim, dim);
        const OpMatrix c = random_complex(dim, dim), d = random_complex(dim, dim);
        const OpMatrix lhs = kron(a, b) * kron(c, d);
        const OpMatrix rhs = kron(OpMatrix(a * c), OpMatrix(b * d));
        CHECK(max_abs(lhs - rhs) <= 1e-12 * max_abs(rhs));
    }
}

TEST_CASE("kron associativity and bilinearity") {
    const OpMatrix a = random_complex(2, 2), b = random_complex(3, 3), c = random_complex(2, 2);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) <=
          1e-12 * max_abs(kron(a, kron(b, c))));
    const Complex alpha(0.7, -1.3);
    CHECK(max_abs(kron(OpMatrix(alpha * a), b) - alpha * kron(a, b)) <=
          1e-12 * max_abs(kron(a, b)) * std::abs(alpha));
    CHECK(max_abs(kron(OpMatrix(a + c), b) - (kron(a, b) + kron(c, b))) <=
          1e-12 * (max_abs(kron(a, b)) + max_abs(kron(c, b))));
}

TEST_CASE("embed places operators in the fixed basis ordering") {
    const HilbertSpec spec(2);
    const OpMatrix i2 = OpMatrix::Identity(2, 2);
    const OpMatrix s = sigma_lower();

    CHECK(max_abs(embed(s, Slot::Qubit1, spec) - kron(s, kron(i2, i2))) == 0.0);
    CHECK(max_abs(embed(annihilation(2), Slot::Resonator, spec) -
                  kron(i2, kron(i2, annihilation(2)))) == 0.0);

    // disjoint slots commute
    const OpMatrix x1 = embed(OpMatrix(s + s.adjoint()), Slot::Qubit1, spec);
    const OpMatrix x2 = embed(OpMatrix(s + s.adjoint()), Slot::Qubit2, spec);
    CHECK(max_abs(x1 * x2 - x2 * x1) == 0.0);

    CHECK_THROWS_AS(embed(random_complex(3, 3), Slot::Qubit1, spec), std::invalid_argument);
}

TEST_CASE("embed preserves spectra with multiplicity") {
    const HilbertSpec spec(3);
    const OpMatrix op = hermitize(random_complex(2, 2));
    const OpMatrix lifted = embed(op, Slot::Qubit2, spec);

    Eigen::SelfAdjointEigenSolver<OpMatrix> small(op), big(lifted);
    std::vector<double> expected;
    for (int rep = 0; rep < spec.dim() / 2; ++rep) {
        expected.push_back(small.eigenvalues()(0));
        expected.push_back(small.eigenvalues()(1));
    }
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < spec.dim(); ++i) {
        CHECK(big.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("partial trace over the resonator") {
    const HilbertSpec spec(3);
    const OpMatrix rho_q = random_density(4);

    SUBCASE("product state returns the qubit factor") {
        OpMatrix vac = OpMatrix::Zero(3, 3);
        vac(0, 0) = 1.0;
        const OpMatrix rho = kron(rho_q, vac);
        CHECK(max_abs(partial_trace_resonator(rho, spec) - rho_q) <= 1e-14);
    }
    SUBCASE("maximally mixed state reduces to I/4") {
        const OpMatrix rho = OpMatrix::Identity(12, 12) / 12.0;
        CHECK(max_abs(partial_trace_resonator(rho, spec) - OpMatrix::Identity(4, 4) / 4.0) <=
              1e-14);
    }
    SUBCASE("random state: trace one, PSD, matches the index-summation oracle") {
        const OpMatrix rho = random_density(12);
        const OpMatrix red = partial_trace_resonator(rho, spec);
        CHECK(std::abs(red.trace() - Complex(1, 0)) <= 1e-12);
        Eigen::SelfAdjointEigenSolver<OpMatrix> es(hermitize(red));
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        CHECK(max_abs(red - trace_out_resonator_oracle(rho, 3)) <= 1e-13);
    }
    SUBCASE("partial trace is independent of the resonator factor") {
        const OpMatrix sigma_res = random_density(3);
        const OpMatrix rho = kron(rho_q, sigma_res);
        CHECK(max_abs(partial_trace_resonator(rho, spec) - rho_q) <= 1e-13);
    }
    CHECK_THROWS_AS(partial_trace_resonator(random_density(8), spec), std::invalid_argument);
}

TEST_CASE("fidelity against a two-qubit target") {
    const HilbertSpec spec(2);
    Ket xi = Ket::Zero(4);
    xi(0) = 1.0 / std::sqrt(2.0);
    xi(3) = -1.0 / std::sqrt(2.0);
    Ket xibar = Ket::Zero(4);
    xibar(0) = 1.0 / std::sqrt(2.0);
    xibar(3) = 1.0 / std::sqrt(2.0);

    OpMatrix vac = OpMatrix::Zero(2, 2);
    vac(0, 0) = 1.0;

    CHECK(fidelity_to_target(kron(OpMatrix(xi * xi.adjoint()), vac), xi, spec) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_to_target(kron(OpMatrix(xibar * xibar.adjoint()), vac), xi, spec) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity_to_target(OpMatrix::Identity(8, 8) / 8.0, xi, spec) ==
          doctest::Approx(0.25).epsilon(1e-12));

    SUBCASE("completeness over an orthonormal two-qubit basis") {
        const OpMatrix rho = random_density(8);
        OpMatrix basis = OpMatrix::Identity(4, 4);  // columns form a basis
        double total = 0.0;
        for (int k = 0; k < 4; ++k) total += fidelity_to_target(rho, basis.col(k), spec);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("non-normalized target is rejected") {
        Ket bad = 2.0 * xi;
        CHECK_THROWS_AS(fidelity_to_target(random_density(8), bad, spec),
                        std::invalid_argument);
    }
}

TEST_CASE("purity") {
    Ket psi = random_complex(5, 1);
    psi.normalize();
    CHECK(purity(psi * psi.adjoint()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(purity(OpMatrix::Identity(6, 6) / 6.0) == doctest::Approx(1.0 / 6.0));
    OpMatrix mix = OpMatrix::Zero(2, 2);
    mix(0, 0) = 0.75;
    mix(1, 1) = 0.25;
    CHECK(purity(mix) == doctest::Approx(0.625));
}

TEST_CASE("density-matrix validation") {
    CHECK_NOTHROW(DensityMatrix::validated(random_density(6)));
    // trace normalization happens inside the factory
    CHECK_NOTHROW(DensityMatrix::validated(3.0 * random_density(6)));

    OpMatrix nonherm = random_density(4);
    nonherm(0, 1) += Complex(0.1, 0.2);
    CHECK_THROWS_AS(DensityMatrix::validated(nonherm), std::invalid_argument);

    OpMatrix indefinite = OpMatrix::Zero(2, 2);
    indefinite(0, 0) = 1.2;
    indefinite(1, 1) = -0.2;
    CHECK_THROWS_AS(DensityMatrix::validated(indefinite), std::invalid_argument);
}

TEST_CASE("hilbert index follows the declared ordering") {
    const HilbertSpec spec(3);
    CHECK(spec.dim() == 12);
    CHECK(spec.index(0, 0, 0) == 0);
    CHECK(spec.index(0, 1, 2) == 5);
    CHECK(spec.index(1, 0, 1) == 7);
    CHECK(spec.index(1, 1, 2) == 11);
    CHECK_THROWS_AS(spec.index(0, 0, 3), std::out_of_range);
    CHECK_THROWS_AS(HilbertSpec(1), std::invalid_argument);
}
