#pragma once

// Full bound analysis of one state: fidelity figures, optimized filter,
// Fang bracket and Dembo bounds of C, and the double-filter quantities.
// Inconsistencies are collected as flags rather than corrected.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "singlet/bounds.hpp"
#include "singlet/fidelity.hpp"
#include "singlet/filtering.hpp"
#include "singlet/states.hpp"

namespace singlet {

namespace flag {
inline constexpr const char *kCNotPsd = "C_not_psd";
inline constexpr const char *kPabMinOutOfRange = "p_ab_min_out_of_range";
inline constexpr const char *kImpliedOverlapOutOfRange = "implied_overlap_out_of_range";
inline constexpr const char *kBranchBoundary = "f_d_closed_branch_boundary";
inline constexpr const char *kBelowStatedRegime = "family_below_stated_regime";
inline constexpr const char *kClosedFormNotReproduced = "f_d_closed_differs_from_lambda_max_C";
}  // namespace flag

struct AnalyzeOptions {
    int restarts = 32;
    std::uint64_t seed = 1;
    BellKind target = BellKind::PhiPlus;  // |psi> in the double-filter trace term
};

struct DoubleFilterReport {
    double f_d;              // F*_D fed into p_AB^min
    bool f_d_from_closed_form;
    double trace_term;       // tr[(A (x) I) rho (A^dagger (x) I)|psi><psi|]
    double f_star_filtered;  // F*(rho_f), taken as the optimized protocol value
    SuccessProbability p_ab_min;
    double implied_overlap;  // trace_term / p_AB^min, must be <= 1 for a physical rho_f
    double f_opt;            // F*_opt at p_AB^min
};

struct BoundReport {
    double overlap;
    double singlet_fraction;
    FidelityResult fidelity;
    double concurrence;
    bool entangled_ppt;

    FilterOptimum optimum;
    double f_star_numeric;

    // Fang bracket for C = construct_C(A*^dagger), B = rho.
    double fang_lower;
    double fang_value;
    double fang_upper;
    double c_lambda_min;
    double c_lambda_max;
    double dembo_lower;
    double dembo_upper_classic;
    double dembo_upper_printed;

    std::optional<double> family_f;
    std::optional<DemboClosedForm> f_d_closed;
    std::optional<double> f_star_closed;
    std::optional<double> f_d_reconstruction_residual;  // lambda_max(C) - f_d_closed

    DoubleFilterReport double_filter;
    std::vector<std::string> flags;

    bool has_flag(const std::string &name) const {
        for (const auto &f : flags) {
            if (f == name) {
                return true;
            }
        }
        return false;
    }
};

// tr(C rho) with C built from A^dagger equals p F_Phi+(rho_f) + (1-p)/2 for
// filter A, so the operator bounded here is the adjoint of the optimum.
inline BoundReport analyze(const DensityMatrix &rho, std::optional<double> family_f, const AnalyzeOptions &options = {}) {
    BoundReport r{.overlap = overlap_phi_plus(rho),
                  .singlet_fraction = singlet_fraction(rho),
                  .fidelity = teleportation_fidelity(rho),
                  .concurrence = concurrence(rho),
                  .entangled_ppt = is_entangled_ppt(rho),
                  .optimum = optimize_filter(rho, options.restarts, options.seed),
                  .f_star_numeric = 0.0,
                  .fang_lower = 0.0,
                  .fang_value = 0.0,
                  .fang_upper = 0.0,
                  .c_lambda_min = 0.0,
                  .c_lambda_max = 0.0,
                  .dembo_lower = 0.0,
                  .dembo_upper_classic = 0.0,
                  .dembo_upper_printed = 0.0,
                  .family_f = family_f,
                  .f_d_closed = std::nullopt,
                  .f_star_closed = std::nullopt,
                  .f_d_reconstruction_residual = std::nullopt,
                  .double_filter = {},
                  .flags = {}};
    r.f_star_numeric = r.optimum.value;

    const Filter bound_filter = r.optimum.filter.adjoint();
    const ComplexMatrix c = construct_C(bound_filter);
    const FangBracket fang = fang_bounds(c, rho.matrix());
    r.fang_lower = fang.lower;
    r.fang_value = fang.value;
    r.fang_upper = fang.upper;
    const EigenDecomposition c_eig = hermitian_eigen(c);
    r.c_lambda_min = c_eig.min();
    r.c_lambda_max = c_eig.max();
    r.dembo_lower = dembo_lower_hermitian(c);
    r.dembo_upper_classic = dembo_bound_for_state(rho, bound_filter, DemboVariant::Classic);
    r.dembo_upper_printed = dembo_bound_for_state(rho, bound_filter, DemboVariant::PaperPrinted);
    if (r.dembo_upper_printed < r.dembo_upper_classic) {
        throw std::logic_error("analyze: printed Dembo variant below the classic one");
    }
    if (r.c_lambda_min < -kStateTolerance) {
        r.flags.emplace_back(flag::kCNotPsd);
    }

    if (family_f) {
        const double f = *family_f;
        if (!family_in_stated_regime(f)) {
            r.flags.emplace_back(flag::kBelowStatedRegime);
        } else {
            r.f_d_closed = f_d_closed(f);
            r.f_star_closed = f_star_closed(f);
            r.f_d_reconstruction_residual = r.c_lambda_max - r.f_d_closed->value();
            if (r.f_d_closed->at_branch_boundary()) {
                r.flags.emplace_back(flag::kBranchBoundary);
            }
            if (std::abs(*r.f_d_reconstruction_residual) > 1e-6) {
                r.flags.emplace_back(flag::kClosedFormNotReproduced);
            }
        }
    }

    DoubleFilterReport &d = r.double_filter;
    d.f_d_from_closed_form = r.f_d_closed.has_value();
    d.f_d = d.f_d_from_closed_form ? r.f_d_closed->value() : r.dembo_upper_printed;
    d.trace_term = filtered_overlap(rho, r.optimum.filter, options.target);
    d.f_star_filtered = r.f_star_numeric;
    d.p_ab_min = p_ab_min(d.f_d, d.trace_term, d.f_star_filtered);
    d.implied_overlap = d.trace_term / d.p_ab_min.value;
    d.f_opt = f_opt(d.p_ab_min.value, d.f_star_filtered, d.trace_term);
    if (d.p_ab_min.out_of_range) {
        r.flags.emplace_back(flag::kPabMinOutOfRange);
    }
    if (!(d.implied_overlap >= 0.0 && d.implied_overlap <= 1.0)) {
        r.flags.emplace_back(flag::kImpliedOverlapOutOfRange);
    }
    return r;
}

}  // namespace singlet
