#pragma once

// Trace and eigenvalue bounds behind the singlet-fraction bound:
//   * Fang:  l_min(C_sym) tr(B) <= Re Tr(CB) <= l_max(C_sym) tr(B), B PSD
//   * Dembo: bracket on l_max of a Hermitian matrix from its block partition
//            [[R, b], [b^dagger, c]] and bounds on the spectrum of R.
// plus the C = I/2 - X^T_B operator built from a filter.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "singlet/filtering.hpp"
#include "singlet/linalg.hpp"
#include "singlet/states.hpp"

namespace singlet {

// X = (A (x) I)|Psi-><Psi-|(A^dagger (x) I)
inline ComplexMatrix construct_X(const Filter &filter) {
    const ComplexMatrix k = filter.lifted();
    return matmul(matmul(k, projector(bell_ket(BellKind::PsiMinus))), dagger(k));
}

// C = I/2 - X^T_B
inline ComplexMatrix construct_C(const Filter &filter) {
    return hermitian_part(
        sub(scale(ComplexMatrix::identity(4), 0.5), partial_transpose(construct_X(filter), Subsystem::B)));
}

// ---------------------------------------------------------------------------
// Fang trace inequality
// ---------------------------------------------------------------------------

struct FangBracket {
    double lower;
    double value;
    double upper;
};

inline void require_psd(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw DimensionError(std::string(what) + ": matrix is not square");
    }
    const double scale_ref = std::max(1.0, frobenius_norm(m));
    if (!is_hermitian(m)) {
        throw NotPSDError(std::string(what) + ": matrix is not Hermitian");
    }
    const double lowest = hermitian_eigen(m).min();
    if (lowest < -1e-10 * scale_ref) {
        throw NotPSDError(std::string(what) + ": smallest eigenvalue " + std::to_string(lowest));
    }
}

inline FangBracket fang_bounds(const ComplexMatrix &c_mat, const ComplexMatrix &b_mat) {
    if (!c_mat.is_square() || c_mat.rows() != b_mat.rows() || c_mat.cols() != b_mat.cols()) {
        throw DimensionError("fang_bounds: C and B must be square of equal size");
    }
    require_psd(b_mat, "fang_bounds");
    const EigenDecomposition eig = hermitian_eigen(hermitian_part(c_mat));
    const double tr_b = trace(b_mat).real();
    const FangBracket out{eig.min() * tr_b, trace(matmul(c_mat, b_mat)).real(), eig.max() * tr_b};
    const double slack = 1e-10 * std::max(1.0, std::abs(out.value));
    if (out.lower > out.value + slack || out.value > out.upper + slack) {
        throw std::logic_error("fang_bounds: sandwich violated");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Block partition and Dembo's bounds
// ---------------------------------------------------------------------------

struct BlockPartition {
    ComplexMatrix leading;      // R_{n-1}
    std::vector<Complex> edge;  // b, the first n-1 entries of the last column
    double corner;              // c

    double edge_norm_squared() const {
        double acc = 0.0;
        for (const Complex &z : edge) {
            acc += std::norm(z);
        }
        return acc;
    }

    ComplexMatrix reassemble() const {
        const std::size_t n = leading.rows() + 1;
        return ComplexMatrix::generate(n, n, [&](std::size_t r, std::size_t c) {
            if (r + 1 < n && c + 1 < n) {
                return leading(r, c);
            }
            if (r + 1 < n) {
                return edge[r];
            }
            if (c + 1 < n) {
                return std::conj(edge[c]);
            }
            return Complex(corner);
        });
    }
};

inline BlockPartition partition(const ComplexMatrix &m) {
    if (!m.is_square() || m.rows() < 2) {
        throw DimensionError("partition: need a square matrix with n >= 2");
    }
    if (!is_hermitian(m)) {
        throw NotHermitianError("partition: matrix is not Hermitian");
    }
    const ComplexMatrix h = hermitian_part(m);
    const std::size_t k = h.rows() - 1;
    std::vector<Complex> edge(k);
    for (std::size_t r = 0; r < k; ++r) {
        edge[r] = h(r, k);
    }
    return {ComplexMatrix::generate(k, k, [&](std::size_t r, std::size_t c) { return h(r, c); }), std::move(edge),
            h(k, k).real()};
}

// Classic uses (c - eta)^2/4 under the root; PaperPrinted uses /2, which is
// looser but still valid.
enum class DemboVariant { Classic, PaperPrinted };

// Exact: eta is the true l_max of the leading block. Recursive: eta is itself
// a Dembo bound of the leading block, down to the 1x1 case.
enum class EtaMode { Exact, Recursive };

inline double dembo_denominator(DemboVariant v) { return v == DemboVariant::Classic ? 4.0 : 2.0; }

inline double dembo_formula(double corner, double eta, double edge_norm_squared, double denominator) {
    const double gap = corner - eta;
    return 0.5 * (corner + eta) + std::sqrt(gap * gap / denominator + edge_norm_squared);
}

// Upper bound on l_max for any Hermitian matrix (no PSD requirement).
inline double dembo_upper_hermitian(const ComplexMatrix &m, DemboVariant variant, EtaMode mode) {
    const BlockPartition parts = partition(m);
    double eta;
    if (parts.leading.rows() == 1) {
        eta = parts.leading(0, 0).real();
    } else if (mode == EtaMode::Exact) {
        eta = hermitian_eigen(parts.leading).max();
    } else {
        eta = dembo_upper_hermitian(parts.leading, variant, mode);
    }
    return dembo_formula(parts.corner, eta, parts.edge_norm_squared(), dembo_denominator(variant));
}

inline double dembo_upper(const ComplexMatrix &m, DemboVariant variant, EtaMode mode = EtaMode::Exact) {
    require_psd(m, "dembo_upper");
    return dembo_upper_hermitian(m, variant, mode);
}

inline double dembo_lower_hermitian(const ComplexMatrix &m) {
    const BlockPartition parts = partition(m);
    const double eta = hermitian_eigen(parts.leading).min();
    return dembo_formula(parts.corner, eta, parts.edge_norm_squared(), 4.0);
}

// Lower bound on l_max from the exact l_min of the leading block.
inline double dembo_lower(const ComplexMatrix &m) {
    require_psd(m, "dembo_lower");
    return dembo_lower_hermitian(m);
}

// Dembo upper bound of C = construct_C(filter). C may be indefinite, so the
// bound is evaluated in Hermitian mode; it bounds l_max(C) >= tr(C rho).
inline double dembo_bound_for_state(const DensityMatrix &rho, const Filter &filter, DemboVariant variant) {
    (void)rho;
    return dembo_upper_hermitian(construct_C(filter), variant, EtaMode::Exact);
}

// ---------------------------------------------------------------------------
// Closed-form F*_D on rho(F)
// ---------------------------------------------------------------------------

enum class DemboBranch { Low, High };

// (2-F)/(4(1-F)) on [1/3, 2/3] and F on [2/3, 1]. At F = 2/3 the two
// expressions disagree (1 vs 2/3) and both are populated.
struct DemboClosedForm {
    std::optional<double> low;
    std::optional<double> high;

    DemboBranch branch() const { return low ? DemboBranch::Low : DemboBranch::High; }
    double value() const { return low ? *low : *high; }
    bool at_branch_boundary() const { return low.has_value() && high.has_value(); }
};

inline constexpr double kBranchPoint = 2.0 / 3.0;

inline DemboClosedForm f_d_closed(double f) {
    require_in_range(f, 1.0 / 3.0, 1.0, "f_d_closed");
    DemboClosedForm out;
    if (f <= kBranchPoint + kClosedFormSlack) {
        out.low = (2.0 - f) / (4.0 * (1.0 - f));
    }
    if (f >= kBranchPoint - kClosedFormSlack) {
        out.high = f;
    }
    return out;
}

}  // namespace singlet
