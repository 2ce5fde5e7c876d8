#include "singlet/bounds.hpp"

#include "gtest/gtest.h"
#include "singlet/fidelity.hpp"
#include "test_util.hpp"

using namespace singlet;
using singlet::testing::max_abs_diff;

namespace {

Filter random_filter(Engine &rng) {
    for (;;) {
        try {
            return Filter(ginibre(2, 2, rng));
        } catch (const InvalidFilterError &) {
        }
    }
}

}  // namespace

TEST(construct_X, identity_filter_gives_singlet_projector) {
    EXPECT_LE(max_abs_diff(construct_X(Filter::identity()), bell_state(BellKind::PsiMinus).matrix()), 1e-15);
}

TEST(construct_X, trace_and_rank) {
    Engine rng = make_engine(40);
    for (int i = 0; i < 200; ++i) {
        const Filter f = random_filter(rng);
        const ComplexMatrix x = construct_X(f);
        const double expected_trace = 0.5 * trace(matmul(f.matrix(), dagger(f.matrix()))).real();
        EXPECT_NEAR(trace(x).real(), expected_trace, 1e-13);
        const std::vector<double> spectrum = hermitian_eigenvalues(x);
        EXPECT_NEAR(spectrum[3], expected_trace, 1e-12);
        for (int k = 0; k < 3; ++k) {
            EXPECT_NEAR(spectrum[k], 0.0, 1e-12);
        }
    }
}

TEST(construct_C, identity_filter_gives_phi_plus_projector) {
    EXPECT_LE(max_abs_diff(construct_C(Filter::identity()), bell_state(BellKind::PhiPlus).matrix()), 1e-15);
    for (std::uint64_t i = 0; i < 100; ++i) {
        const DensityMatrix rho = random_density_matrix(derive_seed(41, 0, i));
        EXPECT_NEAR(trace(matmul(construct_C(Filter::identity()), rho.matrix())).real(), overlap_phi_plus(rho),
                    1e-14);
    }
}

// tr(C(A^dagger) rho) = p F_Phi+(rho_A) + (1 - p)/2 for the filtered state rho_A.
TEST(construct_C, trace_equals_protocol_value) {
    Engine rng = make_engine(42);
    for (int i = 0; i < 500; ++i) {
        const Filter f = random_filter(rng);
        const DensityMatrix rho = random_density_matrix(rng);
        const FilterOutcome out = apply_filter(rho, f);
        const double lhs = trace(matmul(construct_C(f.adjoint()), rho.matrix())).real();
        const double rhs = protocol_singlet_fraction(out.success_probability, overlap_phi_plus(out.filtered_state));
        EXPECT_NEAR(lhs, rhs, 1e-12);
        EXPECT_TRUE(is_hermitian(construct_C(f), 1e-14));
    }
}

TEST(construct_C, positive_semidefinite_for_normalized_filters) {
    Engine rng = make_engine(43);
    for (int i = 0; i < 2000; ++i) {
        EXPECT_GE(hermitian_eigen(construct_C(random_filter(rng))).min(), -1e-12);
    }
}

TEST(fang_bounds, reference_values) {
    const FangBracket a = fang_bounds(ComplexMatrix::identity(4), bell_state(BellKind::PhiPlus).matrix());
    EXPECT_NEAR(a.lower, 1.0, 1e-15);
    EXPECT_NEAR(a.value, 1.0, 1e-15);
    EXPECT_NEAR(a.upper, 1.0, 1e-15);

    const FangBracket b = fang_bounds(bell_state(BellKind::PhiPlus).matrix(), rho_family(0.5).matrix());
    EXPECT_NEAR(b.lower, 0.0, 1e-15);
    EXPECT_NEAR(b.value, 0.5, 1e-15);
    EXPECT_NEAR(b.upper, 1.0, 1e-15);
}

TEST(fang_bounds, errors) {
    EXPECT_THROW(fang_bounds(ComplexMatrix::identity(4), ComplexMatrix::diagonal({1.0, -1.0, 0.0, 0.0})),
                 NotPSDError);
    EXPECT_THROW(fang_bounds(ComplexMatrix::identity(4), ComplexMatrix::identity(2)), DimensionError);
}

TEST(fang_bounds, sandwich_holds_on_random_pairs) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Engine rng = make_engine(derive_seed(44, 0, i));
        const ComplexMatrix c = random_hermitian(4, rng);
        const ComplexMatrix b = random_psd(4, rng);
        const FangBracket fb = fang_bounds(c, b);
        // Oracle: tr(CB) = sum_ij C_ij B_ji, summed directly.
        Complex direct{};
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t k = 0; k < 4; ++k) direct += c(r, k) * b(k, r);
        ASSERT_NEAR(fb.value, direct.real(), 1e-12);
        ASSERT_LE(fb.lower, fb.value + 1e-10 * std::max(1.0, std::abs(fb.value))) << "trial " << i;
        ASSERT_LE(fb.value, fb.upper + 1e-10 * std::max(1.0, std::abs(fb.value))) << "trial " << i;
    }
}

TEST(partition, blocks_and_reassembly) {
    const BlockPartition p = partition(ComplexMatrix::diagonal({1.0, 2.0, 3.0, 4.0}));
    EXPECT_EQ(p.leading, ComplexMatrix::diagonal({1.0, 2.0, 3.0}));
    EXPECT_EQ(p.edge_norm_squared(), 0.0);
    EXPECT_EQ(p.corner, 4.0);

    Engine rng = make_engine(45);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix h = random_hermitian(4, rng);
        EXPECT_LE(max_abs_diff(partition(h).reassemble(), h), 1e-15);
    }
    EXPECT_THROW(partition(ComplexMatrix::identity(1)), DimensionError);
    EXPECT_THROW(partition(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitianError);
}

TEST(dembo, diagonal_reference) {
    const ComplexMatrix m = ComplexMatrix::diagonal({1.0, 2.0, 3.0, 4.0});
    EXPECT_NEAR(dembo_upper(m, DemboVariant::Classic), 4.0, 1e-15);
    EXPECT_NEAR(dembo_upper(m, DemboVariant::PaperPrinted), 3.5 + std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(dembo_lower(m), 4.0, 1e-15);
}

TEST(dembo, rank_one_upper_is_exact) {
    Engine rng = make_engine(46);
    for (int i = 0; i < 100; ++i) {
        const ComplexMatrix v = ginibre(4, 1, rng);
        const ComplexMatrix m = matmul(v, dagger(v));
        const double norm2 = inner(v, v).real();
        EXPECT_NEAR(dembo_upper(m, DemboVariant::Classic), norm2, 1e-12 * norm2);
        EXPECT_LE(dembo_lower(m), norm2 * (1 + 1e-12));
    }
}

TEST(dembo, errors) {
    EXPECT_THROW(dembo_upper(ComplexMatrix::diagonal({1.0, -1.0}), DemboVariant::Classic), NotPSDError);
    EXPECT_THROW(dembo_lower(ComplexMatrix::diagonal({1.0, -1.0})), NotPSDError);
    EXPECT_THROW(dembo_upper(ComplexMatrix(2, 3), DemboVariant::Classic), DimensionError);
}

TEST(dembo, brackets_largest_eigenvalue_on_random_psd) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Engine rng = make_engine(derive_seed(47, 0, i));
        const ComplexMatrix m = random_psd(4, rng);
        const double lmax = hermitian_eigen(m).max();
        const double tol = 1e-10 * std::max(1.0, lmax);
        const double lower = dembo_lower(m);
        const double classic = dembo_upper(m, DemboVariant::Classic);
        const double printed = dembo_upper(m, DemboVariant::PaperPrinted);
        const double recursive = dembo_upper(m, DemboVariant::Classic, EtaMode::Recursive);
        ASSERT_LE(lower, lmax + tol) << "trial " << i;
        ASSERT_LE(lmax, classic + tol) << "trial " << i;
        ASSERT_LE(classic, printed + tol) << "trial " << i;
        ASSERT_LE(classic, recursive + tol) << "trial " << i;
    }
}

TEST(dembo, chain_on_filter_operator) {
    Engine rng = make_engine(48);
    for (int i = 0; i < 1000; ++i) {
        const Filter f = random_filter(rng);
        const DensityMatrix rho = random_density_matrix(rng);
        const ComplexMatrix c = construct_C(f);
        const double value = trace(matmul(c, rho.matrix())).real();
        const double lmax = hermitian_eigen(c).max();
        EXPECT_LE(value, lmax + 1e-12);
        EXPECT_LE(lmax, dembo_bound_for_state(rho, f, DemboVariant::Classic) + 1e-10);
        EXPECT_LE(dembo_bound_for_state(rho, f, DemboVariant::Classic),
                  dembo_bound_for_state(rho, f, DemboVariant::PaperPrinted) + 1e-12);
    }
    EXPECT_GE(dembo_bound_for_state(maximally_mixed(), Filter::identity(), DemboVariant::Classic), 1.0 - 1e-12);
}

TEST(f_d_closed, reference_values) {
    EXPECT_DOUBLE_EQ(f_d_closed(0.5).value(), 0.75);
    EXPECT_EQ(f_d_closed(0.5).branch(), DemboBranch::Low);
    EXPECT_NEAR(f_d_closed(1.0 / 3.0).value(), 0.625, 1e-15);
    EXPECT_EQ(f_d_closed(0.8).value(), 0.8);
    EXPECT_EQ(f_d_closed(0.8).branch(), DemboBranch::High);
    EXPECT_FALSE(f_d_closed(0.8).low.has_value());
    EXPECT_THROW(f_d_closed(0.2), DomainError);
}

TEST(f_d_closed, both_branches_at_two_thirds) {
    const DemboClosedForm at = f_d_closed(2.0 / 3.0);
    ASSERT_TRUE(at.at_branch_boundary());
    EXPECT_NEAR(*at.low, 1.0, 1e-12);
    EXPECT_NEAR(*at.high, 2.0 / 3.0, 1e-15);
}

// With the optimal filter, lambda_max(C) equals (2-F)/(4(1-F)) on [1/3, 2/3].
TEST(f_d_closed, low_branch_is_lambda_max_of_optimal_operator) {
    for (double f : {0.34, 0.4, 0.5, 0.6, 0.66}) {
        const FilterOptimum opt = optimize_filter(rho_family(f), 8, 1);
        const double lmax = hermitian_eigen(construct_C(opt.filter.adjoint())).max();
        EXPECT_NEAR(lmax, f_d_closed(f).value(), 1e-6) << f;
    }
}

TEST(curves, ordering_on_fine_grid) {
    for (int i = 0; i <= 1000; ++i) {
        const double f = 1.0 / 3.0 + i * (1.0 / 3.0) / 1000.0;
        const double fs = f_star_closed(f);
        const double fd = f_d_closed(f).value();
        const double sf = std::max(f, 0.5 * (1 - f));
        EXPECT_LE(sf, fs + 1e-12) << f;
        EXPECT_LE(fs, fd + 1e-12) << f;
        EXPECT_LE(fd, 1.0 + 1e-12) << f;
    }
}
