#include "singlet/linalg.hpp"

#include "gtest/gtest.h"
#include "singlet/random.hpp"
#include "singlet/states.hpp"
#include "test_util.hpp"

using namespace singlet;
using singlet::testing::determinant;
using singlet::testing::max_abs_diff;
using singlet::testing::shift;

TEST(linalg, kron_identity_and_diagonal) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
    EXPECT_EQ(kron(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::identity(2)),
              ComplexMatrix::diagonal({1.0, 1.0, 2.0, 2.0}));
}

TEST(linalg, kron_sigma_x_flips_both_qubits) {
    const ComplexMatrix xx = kron(pauli::x(), pauli::x());
    ASSERT_EQ(xx.rows(), 4u);
    EXPECT_EQ(matmul(xx, basis_ket(4, 0)), basis_ket(4, 3));
}

TEST(linalg, kron_is_associative) {
    Engine rng = make_engine(11);
    for (int i = 0; i < 200; ++i) {
        const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng), c = ginibre(2, 2, rng);
        EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
    }
}

TEST(linalg, dagger) {
    EXPECT_EQ(dagger(ComplexMatrix::identity(4)), ComplexMatrix::identity(4));
    const ComplexMatrix m{{0.0, Complex(0, 1)}, {0.0, 0.0}};
    const ComplexMatrix expected{{0.0, 0.0}, {Complex(0, -1), 0.0}};
    EXPECT_EQ(dagger(m), expected);

    Engine rng = make_engine(3);
    const ComplexMatrix r = ginibre(3, 5, rng);
    EXPECT_EQ(dagger(dagger(r)), r);
    EXPECT_EQ(dagger(r).rows(), 5u);
}

TEST(linalg, arithmetic) {
    Engine rng = make_engine(5);
    const ComplexMatrix m = ginibre(4, 4, rng);
    EXPECT_EQ(matmul(ComplexMatrix::identity(4), m), m);
    EXPECT_EQ(scale(m, 0.0), ComplexMatrix(4, 4));
    EXPECT_EQ(matmul(pauli::y(), pauli::y()), ComplexMatrix::identity(2));
    EXPECT_LE(max_abs_diff(sub(add(m, m), m), m), 1e-15);
    EXPECT_THROW(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DimensionError);
    EXPECT_THROW(add(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DimensionError);
    EXPECT_THROW(sub(ComplexMatrix(2, 2), ComplexMatrix(2, 1)), DimensionError);
}

TEST(linalg, construction_invariants) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
    EXPECT_THROW(ComplexMatrix(0, 2), DimensionError);
    EXPECT_THROW((ComplexMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0.0, INFINITY)}), std::invalid_argument);
}

TEST(linalg, trace) {
    EXPECT_EQ(trace(ComplexMatrix::identity(4)), Complex(4.0));
    EXPECT_THROW(trace(ComplexMatrix(2, 3)), DimensionError);
    EXPECT_NEAR(trace(maximally_mixed().matrix()).real(), 1.0, 1e-15);

    Engine rng = make_engine(8);
    for (int i = 0; i < 200; ++i) {
        const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
        EXPECT_LE(std::abs(trace(kron(a, b)) - trace(a) * trace(b)), 1e-12);
        const ComplexMatrix c = ginibre(4, 4, rng), d = ginibre(4, 4, rng);
        EXPECT_LE(std::abs(trace(matmul(c, d)) - trace(matmul(d, c))), 1e-12);
    }
}

TEST(hermitian_eigen, diagonal_and_pauli) {
    const EigenDecomposition d = hermitian_eigen(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
    EXPECT_EQ(d.eigenvalues, (std::vector<double>{1.0, 2.0, 3.0}));
    EXPECT_EQ(d.vector(0), basis_ket(3, 1));

    const EigenDecomposition x = hermitian_eigen(pauli::x());
    EXPECT_NEAR(x.eigenvalues[0], -1.0, 1e-15);
    EXPECT_NEAR(x.eigenvalues[1], 1.0, 1e-15);
}

TEST(hermitian_eigen, zero_matrix) {
    const EigenDecomposition z = hermitian_eigen(ComplexMatrix(4, 4));
    for (double v : z.eigenvalues) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(hermitian_eigen, errors) {
    EXPECT_THROW(hermitian_eigen(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitianError);
    EXPECT_THROW(hermitian_eigen(ComplexMatrix(2, 3)), DimensionError);
    JacobiOptions no_sweeps;
    no_sweeps.max_sweeps = 0;
    EXPECT_THROW(hermitian_eigen(pauli::x(), no_sweeps), ConvergenceError);
    // Tiny anti-Hermitian noise is symmetrized away.
    const ComplexMatrix nearly{{1.0, Complex(0.0, 1e-13)}, {0.0, 2.0}};
    EXPECT_NO_THROW(hermitian_eigen(nearly));
}

TEST(hermitian_eigen, deterministic) {
    Engine rng = make_engine(21);
    const ComplexMatrix h = random_hermitian(4, rng);
    const EigenDecomposition a = hermitian_eigen(h), b = hermitian_eigen(h);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

// Residual, reconstruction, orthonormality and sorting over many random inputs.
TEST(hermitian_eigen, random_hermitian_property) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Engine rng = make_engine(derive_seed(99, 0, i));
        const ComplexMatrix h = random_hermitian(4, rng);
        const EigenDecomposition eig = hermitian_eigen(h);
        const double scale_ref = std::max(1.0, frobenius_norm(h));
        ASSERT_TRUE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));

        const ComplexMatrix rebuilt =
            matmul(matmul(eig.eigenvectors, ComplexMatrix::diagonal(eig.eigenvalues)), dagger(eig.eigenvectors));
        ASSERT_LE(frobenius_norm(sub(h, rebuilt)), 1e-10) << "trial " << i;

        const ComplexMatrix gram = matmul(dagger(eig.eigenvectors), eig.eigenvectors);
        ASSERT_LE(max_abs_diff(gram, ComplexMatrix::identity(4)), 1e-10) << "trial " << i;

        for (std::size_t k = 0; k < 4; ++k) {
            const ComplexMatrix v = eig.vector(k);
            ASSERT_LE(frobenius_norm(sub(matmul(h, v), scale(v, eig.eigenvalues[k]))), 1e-10 * scale_ref);
        }
    }
}

// Eigenvalues are roots of det(M - lambda I), checked by cofactor expansion.
TEST(hermitian_eigen, eigenvalues_are_characteristic_roots) {
    Engine rng = make_engine(4);
    for (int i = 0; i < 50; ++i) {
        const ComplexMatrix h = random_hermitian(4, rng);
        for (double lambda : hermitian_eigenvalues(h)) {
            EXPECT_LE(std::abs(determinant(shift(h, lambda))), 1e-9);
        }
    }
}

TEST(partial_transpose, basics) {
    EXPECT_EQ(partial_transpose(ComplexMatrix::identity(4), Subsystem::B), ComplexMatrix::identity(4));
    EXPECT_THROW(partial_transpose(ComplexMatrix::identity(2), Subsystem::A), DimensionError);

    Engine rng = make_engine(17);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix m = ginibre(4, 4, rng);
        EXPECT_EQ(partial_transpose(partial_transpose(m, Subsystem::B), Subsystem::B), m);
        EXPECT_EQ(partial_transpose(partial_transpose(m, Subsystem::A), Subsystem::A), m);
        // Transposing both factors is the full transpose.
        EXPECT_EQ(partial_transpose(partial_transpose(m, Subsystem::A), Subsystem::B), transpose(m));

        const ComplexMatrix h = random_hermitian(4, rng);
        const ComplexMatrix pt = partial_transpose(h, Subsystem::B);
        EXPECT_LE(std::abs(trace(pt) - trace(h)), 1e-12);
        EXPECT_TRUE(is_hermitian(pt, 1e-14));
    }
}

TEST(partial_transpose, on_product_operators) {
    Engine rng = make_engine(23);
    const ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
    EXPECT_LE(max_abs_diff(partial_transpose(kron(a, b), Subsystem::B), kron(a, transpose(b))), 1e-15);
    EXPECT_LE(max_abs_diff(partial_transpose(kron(a, b), Subsystem::A), kron(transpose(a), b)), 1e-15);
}

TEST(partial_transpose, singlet_spectrum) {
    const ComplexMatrix pt = partial_transpose(bell_state(BellKind::PsiMinus).matrix(), Subsystem::B);
    const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
    const std::vector<double> got = hermitian_eigenvalues(pt);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(got[k], expected[k], 1e-12);
    }
    // Oracle: -1/2 is a root of the characteristic polynomial, and 1/2 has
    // a three-dimensional eigenspace (PT - I/2 has rank 1: all 2x2 minors vanish).
    EXPECT_LE(std::abs(determinant(shift(pt, -0.5))), 1e-15);
    const ComplexMatrix d = shift(pt, 0.5);
    for (std::size_t r0 = 0; r0 < 4; ++r0)
        for (std::size_t r1 = r0 + 1; r1 < 4; ++r1)
            for (std::size_t c0 = 0; c0 < 4; ++c0)
                for (std::size_t c1 = c0 + 1; c1 < 4; ++c1) {
                    EXPECT_LE(std::abs(d(r0, c0) * d(r1, c1) - d(r0, c1) * d(r1, c0)), 1e-15);
                }
}

TEST(hermitian_function, square_root_squares_back) {
    Engine rng = make_engine(31);
    const ComplexMatrix p = random_psd(4, rng);
    const ComplexMatrix root = hermitian_function(p, [](double x) { return std::sqrt(std::max(0.0, x)); });
    EXPECT_LE(max_abs_diff(matmul(root, root), p), 1e-10 * frobenius_norm(p));
}
