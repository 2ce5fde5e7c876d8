#pragma once

// Randomized verification suites. Every trial draws its inputs from a seed
// derived from (base seed, suite, trial index), so results do not depend on
// evaluation order. The first failing trial of each suite is kept with enough
// detail to reproduce it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "singlet/bounds.hpp"
#include "singlet/fidelity.hpp"
#include "singlet/filtering.hpp"
#include "singlet/states.hpp"

namespace singlet {

// Deliberate defects used to check that the suites can fail.
enum class Mutation { None, DemboDropSqrt, IdentityDropTraceTerm };

inline std::optional<Mutation> parse_mutation(std::string_view name) {
    if (name == "none") return Mutation::None;
    if (name == "dembo-drop-sqrt") return Mutation::DemboDropSqrt;
    if (name == "identity-drop-trace-term") return Mutation::IdentityDropTraceTerm;
    return std::nullopt;
}

struct VerifyOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::size_t oracle_samples = 2000;
    Mutation mutation = Mutation::None;
};

struct SuiteResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::optional<std::string> first_failure;

    bool passed() const { return failures == 0; }
};

inline std::string describe_matrix(const ComplexMatrix &m) {
    std::ostringstream out;
    out.precision(17);
    out << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << (r ? ",[" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out << (c ? ",[" : "[") << m(r, c).real() << ',' << m(r, c).imag() << ']';
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

namespace detail {

enum SuiteStream : std::uint64_t {
    kFangStream = 1,
    kDemboStream = 2,
    kOracleStream = 3,
    kFamilyStream = 4,
    kIdentityStream = 5,
    kFilterStream = 6,
};

// check(trial, trial_seed) returns an empty string on success, otherwise a
// description of the violation.
template <typename Check>
SuiteResult run_suite(std::string name, std::size_t trials, std::uint64_t seed, std::uint64_t stream, Check &&check) {
    SuiteResult result{std::move(name), trials, 0, std::nullopt};
    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t trial_seed = derive_seed(seed, stream, i);
        std::string problem;
        try {
            problem = check(i, trial_seed);
        } catch (const std::exception &e) {
            problem = std::string("exception: ") + e.what();
        }
        if (!problem.empty()) {
            ++result.failures;
            if (!result.first_failure) {
                std::ostringstream out;
                out << "trial " << i << " (base seed " << seed << ", trial seed " << trial_seed << "): " << problem;
                result.first_failure = out.str();
            }
        }
    }
    return result;
}

inline std::string violation(const char *what, double lhs, double rhs) {
    std::ostringstream out;
    out.precision(17);
    out << what << " (" << lhs << " vs " << rhs << ")";
    return out.str();
}

inline double dembo_upper_under_test(const ComplexMatrix &m, DemboVariant v, EtaMode mode, Mutation mutation) {
    if (mutation == Mutation::DemboDropSqrt) {
        const BlockPartition parts = partition(m);
        const double eta = hermitian_eigen(parts.leading).max();
        return 0.5 * (parts.corner + eta);
    }
    return dembo_upper(m, v, mode);
}

inline double f_opt_under_test(double p_ab, double f_star_filtered, double trace_term, Mutation mutation) {
    if (mutation == Mutation::IdentityDropTraceTerm) {
        return (1.0 - p_ab) * f_star_filtered;
    }
    return f_opt(p_ab, f_star_filtered, trace_term);
}

}  // namespace detail

// Re Tr(CB) within [l_min(C_sym) tr B, l_max(C_sym) tr B] for random
// Hermitian C and PSD B.
inline SuiteResult verify_fang(const VerifyOptions &o) {
    return detail::run_suite("fang_sandwich", o.trials, o.seed, detail::kFangStream, [&](std::size_t, std::uint64_t s) {
        Engine rng = make_engine(s);
        const ComplexMatrix c = random_hermitian(4, rng);
        const ComplexMatrix b = random_psd(4, rng);
        const FangBracket fb = fang_bounds(c, b);
        // Independent route for the middle term: sum_ij C_ij B_ji.
        Complex direct{};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                direct += c(i, j) * b(j, i);
            }
        }
        if (std::abs(direct.real() - fb.value) > 1e-10) {
            return detail::violation("Tr(CB) mismatch", fb.value, direct.real());
        }
        if (fb.lower - fb.value > 1e-10) {
            return detail::violation("lower > value", fb.lower, fb.value) + " C=" + describe_matrix(c) +
                   " B=" + describe_matrix(b);
        }
        if (fb.value - fb.upper > 1e-10) {
            return detail::violation("value > upper", fb.value, fb.upper) + " C=" + describe_matrix(c) +
                   " B=" + describe_matrix(b);
        }
        return std::string();
    });
}

// dembo_lower <= l_max <= Classic <= PaperPrinted, and Recursive >= Exact.
inline SuiteResult verify_dembo(const VerifyOptions &o) {
    return detail::run_suite("dembo_bracket", o.trials, o.seed, detail::kDemboStream, [&](std::size_t, std::uint64_t s) {
        Engine rng = make_engine(s);
        const ComplexMatrix m = random_psd(4, rng);
        const double tol = 1e-10 * std::max(1.0, frobenius_norm(m));
        const double lmax = hermitian_eigen(m).max();
        const double lower = dembo_lower(m);
        const double classic = detail::dembo_upper_under_test(m, DemboVariant::Classic, EtaMode::Exact, o.mutation);
        const double printed =
            detail::dembo_upper_under_test(m, DemboVariant::PaperPrinted, EtaMode::Exact, o.mutation);
        const double recursive =
            detail::dembo_upper_under_test(m, DemboVariant::Classic, EtaMode::Recursive, o.mutation);
        const std::string where = " M=" + describe_matrix(m);
        if (lower > lmax + tol) return detail::violation("dembo_lower > lambda_max", lower, lmax) + where;
        if (lmax > classic + tol) return detail::violation("lambda_max > classic upper", lmax, classic) + where;
        if (classic > printed + tol) return detail::violation("classic > printed upper", classic, printed) + where;
        if (recursive < classic - 1e-12) return detail::violation("recursive < exact", recursive, classic) + where;
        return std::string();
    });
}

// Brute-force maximization never beats the magic-basis value and gets within 1e-3 of it.
inline SuiteResult verify_singlet_oracle(const VerifyOptions &o) {
    return detail::run_suite(
        "singlet_fraction_oracle", o.trials, o.seed, detail::kOracleStream, [&](std::size_t, std::uint64_t s) {
            const DensityMatrix rho = random_density_matrix(s);
            const double closed = singlet_fraction(rho);
            const double brute = singlet_fraction_bruteforce(rho, o.oracle_samples, mix64(s));
            const std::string where = " rho=" + describe_matrix(rho.matrix());
            if (brute > closed + 1e-9) return detail::violation("oracle exceeds magic-basis value", brute, closed) + where;
            if (closed - brute > 1e-3) return detail::violation("oracle far below magic-basis value", brute, closed) + where;
            return std::string();
        });
}

// Certificates and closed forms on rho(F).
inline SuiteResult verify_family(const VerifyOptions &o) {
    return detail::run_suite("family_closed_forms", o.trials, o.seed, detail::kFamilyStream,
                             [&](std::size_t, std::uint64_t s) {
                                 Engine rng = make_engine(s);
                                 std::uniform_real_distribution<double> unit(0.0, 1.0);
                                 const double f = unit(rng);
                                 const DensityMatrix rho = rho_family(f);
                                 const double sf = singlet_fraction(rho);
                                 const double expected_sf = std::max(f, 0.5 * (1.0 - f));
                                 std::ostringstream where;
                                 where.precision(17);
                                 where << " F=" << f;
                                 if (std::abs(sf - expected_sf) > 1e-10)
                                     return detail::violation("singlet fraction", sf, expected_sf) + where.str();
                                 const double c = concurrence(rho);
                                 if (std::abs(c - f) > 1e-10) return detail::violation("concurrence", c, f) + where.str();
                                 if (is_entangled_ppt(rho) != (f > 0.0)) return "PPT verdict disagrees" + where.str();

                                 const double g = 1.0 / 3.0 + unit(rng) / 3.0;
                                 const double low = *f_d_closed(g).low;
                                 where << " G=" << g;
                                 if (std::abs(f_opt_closed(g) - low) > 1e-12)
                                     return detail::violation("F_opt_closed != F_D_closed", f_opt_closed(g), low) + where.str();
                                 if (!(f_star_closed(g) < low))
                                     return detail::violation("F* >= F*_D", f_star_closed(g), low) + where.str();
                                 return std::string();
                             });
}

// f_opt(p_ab_min(f_d, t, fs), fs, t) == f_d.
inline SuiteResult verify_double_filter_identity(const VerifyOptions &o) {
    return detail::run_suite(
        "double_filter_identity", o.trials, o.seed, detail::kIdentityStream, [&](std::size_t, std::uint64_t s) {
            Engine rng = make_engine(s);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double f_d = unit(rng);
            const double trace_term = unit(rng);
            const double f_star_filtered = 0.01 + 0.99 * unit(rng);
            const double p = p_ab_min(f_d, trace_term, f_star_filtered).value;
            const double back = detail::f_opt_under_test(p, f_star_filtered, trace_term, o.mutation);
            if (std::abs(back - f_d) > 1e-12) {
                std::ostringstream where;
                where.precision(17);
                where << " f_d=" << f_d << " trace_term=" << trace_term << " f_star_filtered=" << f_star_filtered;
                return detail::violation("F*_opt != F*_D", back, f_d) + where.str();
            }
            return std::string();
        });
}

inline constexpr std::array<double, 10> kFilterCheckpoints{0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.80, 0.90};

// Optimized filter against the closed-form F* on the family (at most ten points).
inline SuiteResult verify_filter_optimum(const VerifyOptions &o) {
    const std::size_t points = std::min(o.trials, kFilterCheckpoints.size());
    return detail::run_suite("filter_optimum", points, o.seed, detail::kFilterStream, [&](std::size_t i, std::uint64_t s) {
        const double f = kFilterCheckpoints[i];
        const double found = optimize_filter(rho_family(f), 32, s).value;
        const double expected = f_star_closed(f);
        if (std::abs(found - expected) > 1e-3) {
            std::ostringstream where;
            where << " F=" << f;
            return detail::violation("optimized F* off closed form", found, expected) + where.str();
        }
        return std::string();
    });
}

inline std::vector<SuiteResult> verify_all(const VerifyOptions &o) {
    return {verify_fang(o),   verify_dembo(o),
            verify_singlet_oracle(o), verify_family(o),
            verify_double_filter_identity(o), verify_filter_optimum(o)};
}

}  // namespace singlet
