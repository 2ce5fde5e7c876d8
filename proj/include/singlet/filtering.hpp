#pragma once

// One-sided local filters A (x) I, numerical search for the best filter, and
// the double-filter relations between F*, F*_D, p_AB and F*_opt.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "singlet/fidelity.hpp"
#include "singlet/linalg.hpp"
#include "singlet/nelder_mead.hpp"
#include "singlet/random.hpp"
#include "singlet/states.hpp"

namespace singlet {

inline constexpr double kFilterDeterminantFloor = 1e-12;
inline constexpr double kAnnihilationFloor = 1e-12;

// Singular values of a 2x2 matrix from the closed-form spectrum of A^dagger A.
inline std::pair<double, double> singular_values_2x2(const ComplexMatrix &a) {
    // H = A^dagger A; its eigenvalues are mean +- sqrt(((h11 - h22)/2)^2 + |h12|^2).
    const double h11 = std::norm(a(0, 0)) + std::norm(a(1, 0));
    const double h22 = std::norm(a(0, 1)) + std::norm(a(1, 1));
    const Complex h12 = std::conj(a(0, 0)) * a(0, 1) + std::conj(a(1, 0)) * a(1, 1);
    const double det = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    const double hi = 0.5 * (h11 + h22) + std::hypot(0.5 * (h11 - h22), std::abs(h12));
    // det = s_max * s_min avoids cancellation in the small singular value.
    const double s_max = std::sqrt(hi);
    const double s_min = s_max > 0.0 ? det / s_max : 0.0;
    return {s_max, s_min};
}

// An invertible 2x2 filter scaled so its largest singular value is 1, which
// keeps every success probability in (0, 1].
class Filter {
 public:
    explicit Filter(const ComplexMatrix &a) : a_(normalize(a)) {}

    static Filter identity() { return Filter(ComplexMatrix::identity(2)); }

    const ComplexMatrix &matrix() const { return a_; }
    Filter adjoint() const { return Filter(dagger(a_)); }

    // A (x) I
    ComplexMatrix lifted() const { return kron(a_, ComplexMatrix::identity(2)); }

 private:
    static ComplexMatrix normalize(const ComplexMatrix &a) {
        if (a.rows() != 2 || a.cols() != 2) {
            throw DimensionError("Filter expects a 2x2 matrix");
        }
        const auto [s_max, s_min] = singular_values_2x2(a);
        if (!(s_max > 0.0)) {
            throw InvalidFilterError("Filter: zero matrix");
        }
        const ComplexMatrix n = scale(a, 1.0 / s_max);
        const double det = std::abs(n(0, 0) * n(1, 1) - n(0, 1) * n(1, 0));
        if (!(det > kFilterDeterminantFloor)) {
            throw InvalidFilterError("Filter: |det| = " + std::to_string(det) + " after normalization");
        }
        return n;
    }

    ComplexMatrix a_;
};

struct FilterOutcome {
    DensityMatrix filtered_state;  // (A (x) I) rho (A (x) I)^dagger / p
    double success_probability;    // tr[(A (x) I) rho (A (x) I)^dagger]
};

// Unnormalized (A (x) I) rho (A (x) I)^dagger.
inline ComplexMatrix filter_sandwich(const DensityMatrix &rho, const Filter &filter) {
    const ComplexMatrix k = filter.lifted();
    return hermitian_part(matmul(matmul(k, rho.matrix()), dagger(k)));
}

inline FilterOutcome apply_filter(const DensityMatrix &rho, const Filter &filter) {
    const ComplexMatrix sandwich = filter_sandwich(rho, filter);
    const double p = trace(sandwich).real();
    if (!(p > kAnnihilationFloor)) {
        throw AnnihilatedStateError("apply_filter: success probability " + std::to_string(p));
    }
    return {validate(scale(sandwich, 1.0 / p)), p};
}

// tr[(A (x) I) rho (A^dagger (x) I) |psi><psi|] for a Bell target |psi>.
inline double filtered_overlap(const DensityMatrix &rho, const Filter &filter, BellKind target = BellKind::PhiPlus) {
    return expectation(filter_sandwich(rho, filter), bell_ket(target)).real();
}

// Singlet fraction delivered by "filter, and on failure emit a separable
// state with singlet fraction 1/2": p F(rho_f) + (1 - p)/2. This is the
// figure of merit of trace-preserving filtering protocols.
inline double protocol_singlet_fraction(double success_probability, double filtered_singlet_fraction) {
    return success_probability * filtered_singlet_fraction + 0.5 * (1.0 - success_probability);
}

// ---------------------------------------------------------------------------
// Filter optimization
// ---------------------------------------------------------------------------

struct FilterSearchOptions {
    int restarts = 32;
    int iterations = 500;
    double diameter_tolerance = 1e-10;
    double initial_step = 0.1;
};

struct FilterOptimum {
    Filter filter;                     // rotated so <Phi+|rho_f|Phi+> = F(rho_f)
    double value;                      // p F(rho_f) + (1 - p)/2
    double filtered_singlet_fraction;  // F(rho_f)
    double success_probability;        // p
    int restart;                       // index of the winning restart
};

namespace detail {

inline ComplexMatrix filter_from_chart(const Point<8> &p) {
    return ComplexMatrix{{Complex(p[0], p[1]), Complex(p[2], p[3])}, {Complex(p[4], p[5]), Complex(p[6], p[7])}};
}

inline double filter_chart_objective(const DensityMatrix &rho, const Point<8> &p) {
    const ComplexMatrix a = filter_from_chart(p);
    const auto [s_max, s_min] = singular_values_2x2(a);
    if (!(s_max > 0.0) || !(s_min / s_max > kFilterDeterminantFloor)) {
        return -std::numeric_limits<double>::infinity();
    }
    const ComplexMatrix k = kron(scale(a, 1.0 / s_max), ComplexMatrix::identity(2));
    const ComplexMatrix sandwich = matmul(matmul(k, rho.matrix()), dagger(k));
    const double p_success = trace(sandwich).real();
    if (!(p_success > kAnnihilationFloor)) {
        return -std::numeric_limits<double>::infinity();
    }
    // p F(rho_f) is the top eigenvalue of the unnormalized state's magic real part.
    const ComplexMatrix m = magic_basis();
    const ComplexMatrix in_magic = matmul(matmul(dagger(m), sandwich), m);
    const ComplexMatrix real_part = ComplexMatrix::generate(4, 4, [&](std::size_t r, std::size_t c) {
        return Complex(0.5 * (in_magic(r, c).real() + in_magic(c, r).real()), 0.0);
    });
    return hermitian_eigen(real_part).max() + 0.5 * (1.0 - p_success);
}

inline Point<8> random_filter_start(std::uint64_t seed) {
    Engine rng = make_engine(seed);
    for (;;) {
        const ComplexMatrix g = ginibre(2, 2, rng);
        const auto [s_max, s_min] = singular_values_2x2(g);
        if (s_max > 0.0 && s_min / s_max > 1e-6) {
            Point<8> p;
            for (std::size_t k = 0; k < 4; ++k) {
                p[2 * k] = g.entries()[k].real() / s_max;
                p[2 * k + 1] = g.entries()[k].imag() / s_max;
            }
            return p;
        }
    }
}

}  // namespace detail

// Multi-start simplex search over the 8 real parameters of A. Restart 0
// starts from the identity, so the result never falls below F(rho).
inline FilterOptimum optimize_filter(const DensityMatrix &rho, int restarts, std::uint64_t seed,
                                     const FilterSearchOptions &options = {}) {
    if (restarts < 1) {
        throw std::invalid_argument("optimize_filter: restarts must be >= 1");
    }
    SimplexOptions simplex;
    simplex.max_iterations = options.iterations;
    simplex.diameter_tolerance = options.diameter_tolerance;
    simplex.initial_step = options.initial_step;

    Point<8> best_point{};
    double best_value = -std::numeric_limits<double>::infinity();
    int best_restart = -1;
    for (int r = 0; r < restarts; ++r) {
        const Point<8> start = r == 0 ? Point<8>{1, 0, 0, 0, 0, 0, 1, 0}
                                      : detail::random_filter_start(derive_seed(seed, 0xf117e5, std::uint64_t(r)));
        const auto result = nelder_mead_maximize<8>(
            [&](const Point<8> &p) { return detail::filter_chart_objective(rho, p); }, start, simplex);
        if (result.value > best_value) {
            best_value = result.value;
            best_point = result.argmax;
            best_restart = r;
        }
    }

    const Filter raw(detail::filter_from_chart(best_point));
    const FilterOutcome raw_outcome = apply_filter(rho, raw);
    const Filter aligned(matmul(dagger(alignment_unitary(raw_outcome.filtered_state)), raw.matrix()));
    const FilterOutcome outcome = apply_filter(rho, aligned);
    const double filtered_sf = singlet_fraction(outcome.filtered_state);
    return {aligned, protocol_singlet_fraction(outcome.success_probability, filtered_sf), filtered_sf,
            outcome.success_probability, best_restart};
}

// ---------------------------------------------------------------------------
// Closed forms on rho(F) and the double-filter algebra
// ---------------------------------------------------------------------------

inline constexpr double kClosedFormSlack = 1e-12;

inline void require_in_range(double f, double lo, double hi, const char *what) {
    if (!(f >= lo - kClosedFormSlack && f <= hi + kClosedFormSlack)) {
        throw DomainError(std::string(what) + ": F = " + std::to_string(f) + " outside [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
}

// Best singlet fraction of rho(F) under trace-preserving local operations:
// (1/2)[1 + F^2/(4(1-F))] on [1/3, 2/3], F above.
inline double f_star_closed(double f) {
    require_in_range(f, 1.0 / 3.0, 1.0, "f_star_closed");
    if (f >= 2.0 / 3.0) {
        return f;
    }
    return 0.5 * (1.0 + f * f / (4.0 * (1.0 - f)));
}

struct SuccessProbability {
    double value;
    bool out_of_range;  // value outside [0, 1]; reported, never clamped
};

// p_AB^min = 1 - (F*_D - trace_term) / F*(rho_f)
inline SuccessProbability p_ab_min(double f_d, double trace_term, double f_star_filtered) {
    if (f_star_filtered == 0.0) {
        throw ZeroDivisionError("p_ab_min: F*(rho_f) is zero");
    }
    if (!(f_star_filtered > 0.0)) {
        throw DomainError("p_ab_min: F*(rho_f) must be positive");
    }
    const double value = 1.0 - (f_d - trace_term) / f_star_filtered;
    return {value, !(value >= 0.0 && value <= 1.0)};
}

// F^2 / (2(1-F)(2-F)) on [1/3, 2/3].
inline double p_ab_min_closed(double f) {
    require_in_range(f, 1.0 / 3.0, 2.0 / 3.0, "p_ab_min_closed");
    return f * f / (2.0 * (1.0 - f) * (2.0 - f));
}

// F*_opt = (1 - p_AB) F*(rho_f) + trace_term
inline double f_opt(double p_ab, double f_star_filtered, double trace_term) {
    return (1.0 - p_ab) * f_star_filtered + trace_term;
}

// (2-F) / (4(1-F)) on [1/3, 2/3].
inline double f_opt_closed(double f) {
    require_in_range(f, 1.0 / 3.0, 2.0 / 3.0, "f_opt_closed");
    return (2.0 - f) / (4.0 * (1.0 - f));
}

}  // namespace singlet
