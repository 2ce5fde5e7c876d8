#pragma once

// Dense complex matrices sized for two-qubit work (n <= 8 in practice), with
// a cyclic complex Jacobi eigensolver for Hermitian input.
//
// Basis convention used everywhere in the library: computational order
// |00>, |01>, |10>, |11>, qubit A is the left tensor factor, so the row
// index of a 4x4 operator is 2*a + b.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "singlet/errors.hpp"

namespace singlet {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class ComplexMatrix {
 public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows_ == 0 || cols_ == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
        if (entries_.size() != rows_ * cols_) {
            throw DimensionError(
                "expected " + std::to_string(rows_ * cols_) + " entries, got " + std::to_string(entries_.size()));
        }
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            if (!is_finite(entries_[k])) {
                throw std::invalid_argument(
                    "non-finite matrix entry at (" + std::to_string(k / cols_) + ", " + std::to_string(k % cols_) +
                    ")");
            }
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), flatten(rows)) {}

    // Builds a matrix from entry(r, c).
    template <typename Fn>
    static ComplexMatrix generate(std::size_t rows, std::size_t cols, Fn &&entry) {
        std::vector<Complex> out;
        out.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                out.emplace_back(entry(r, c));
            }
        }
        return ComplexMatrix(rows, cols, std::move(out));
    }

    static ComplexMatrix identity(std::size_t n) {
        return generate(n, n, [](std::size_t r, std::size_t c) { return Complex(r == c ? 1.0 : 0.0); });
    }

    static ComplexMatrix diagonal(std::initializer_list<Complex> diag) {
        std::vector<Complex> d(diag);
        return generate(d.size(), d.size(), [&](std::size_t r, std::size_t c) { return r == c ? d[r] : Complex{}; });
    }

    static ComplexMatrix diagonal(const std::vector<double> &diag) {
        return generate(
            diag.size(), diag.size(), [&](std::size_t r, std::size_t c) { return Complex(r == c ? diag[r] : 0.0); });
    }

    // Column vector from amplitudes.
    static ComplexMatrix column(std::vector<Complex> amplitudes) {
        const std::size_t n = amplitudes.size();
        return ComplexMatrix(n, 1, std::move(amplitudes));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<Complex> &entries() const { return entries_; }

    bool operator==(const ComplexMatrix &other) const = default;

 private:
    static std::vector<Complex> flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
        std::vector<Complex> out;
        const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
        for (const auto &row : rows) {
            if (row.size() != width) {
                throw DimensionError("ragged matrix literal");
            }
            out.insert(out.end(), row.begin(), row.end());
        }
        return out;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError(
            "matmul: inner dimensions " + std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + " differ");
    }
    return ComplexMatrix::generate(a.rows(), b.cols(), [&](std::size_t r, std::size_t c) {
        Complex acc{};
        for (std::size_t k = 0; k < a.cols(); ++k) {
            acc += a(r, k) * b(k, c);
        }
        return acc;
    });
}

inline void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shapes differ");
    }
}

inline ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "add");
    return ComplexMatrix::generate(a.rows(), a.cols(), [&](std::size_t r, std::size_t c) { return a(r, c) + b(r, c); });
}

inline ComplexMatrix sub(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "sub");
    return ComplexMatrix::generate(a.rows(), a.cols(), [&](std::size_t r, std::size_t c) { return a(r, c) - b(r, c); });
}

inline ComplexMatrix scale(const ComplexMatrix &m, Complex s) {
    return ComplexMatrix::generate(m.rows(), m.cols(), [&](std::size_t r, std::size_t c) { return s * m(r, c); });
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) { return matmul(a, b); }
inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) { return sub(a, b); }
inline ComplexMatrix operator*(Complex s, const ComplexMatrix &m) { return scale(m, s); }
inline ComplexMatrix operator*(double s, const ComplexMatrix &m) { return scale(m, Complex(s)); }

inline ComplexMatrix dagger(const ComplexMatrix &m) {
    return ComplexMatrix::generate(m.cols(), m.rows(), [&](std::size_t r, std::size_t c) { return std::conj(m(c, r)); });
}

inline ComplexMatrix transpose(const ComplexMatrix &m) {
    return ComplexMatrix::generate(m.cols(), m.rows(), [&](std::size_t r, std::size_t c) { return m(c, r); });
}

inline ComplexMatrix conjugate(const ComplexMatrix &m) {
    return ComplexMatrix::generate(m.rows(), m.cols(), [&](std::size_t r, std::size_t c) { return std::conj(m(r, c)); });
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    return ComplexMatrix::generate(a.rows() * b.rows(), a.cols() * b.cols(), [&](std::size_t r, std::size_t c) {
        return a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
    });
}

inline Complex trace(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("trace of a non-square matrix");
    }
    Complex acc{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        acc += m(i, i);
    }
    return acc;
}

inline double frobenius_norm(const ComplexMatrix &m) {
    double acc = 0.0;
    for (const Complex &z : m.entries()) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

// <u|v> for column vectors.
inline Complex inner(const ComplexMatrix &u, const ComplexMatrix &v) {
    require_same_shape(u, v, "inner");
    Complex acc{};
    for (std::size_t k = 0; k < u.entries().size(); ++k) {
        acc += std::conj(u.entries()[k]) * v.entries()[k];
    }
    return acc;
}

// |v><v|
inline ComplexMatrix projector(const ComplexMatrix &v) { return matmul(v, dagger(v)); }

// <v|M|v> for a column vector v.
inline Complex expectation(const ComplexMatrix &m, const ComplexMatrix &v) { return inner(v, matmul(m, v)); }

// ---------------------------------------------------------------------------
// Hermiticity and the eigensolver
// ---------------------------------------------------------------------------

inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("Hermiticity is defined for square matrices only");
    }
    return frobenius_norm(sub(m, dagger(m)));
}

inline bool is_hermitian(const ComplexMatrix &m, double rel_tol = 1e-10) {
    return hermiticity_defect(m) <= rel_tol * std::max(1.0, frobenius_norm(m));
}

// (M + M^dagger)/2
inline ComplexMatrix hermitian_part(const ComplexMatrix &m) { return scale(add(m, dagger(m)), 0.5); }

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }

    ComplexMatrix vector(std::size_t k) const {
        return ComplexMatrix::generate(eigenvectors.rows(), 1, [&](std::size_t r, std::size_t) {
            return eigenvectors(r, k);
        });
    }
};

struct JacobiOptions {
    int max_sweeps = 100;
    double relative_threshold = 1e-14;
};

namespace detail {

// Rotates the (p, q) plane of the row-major Hermitian work matrix a so that
// a(p, q) vanishes, accumulating the unitary into v.
inline void jacobi_rotate(std::vector<Complex> &a, std::vector<Complex> &v, std::size_t n, std::size_t p, std::size_t q) {
    const Complex apq = a[p * n + q];
    const double magnitude = std::abs(apq);
    if (magnitude == 0.0) {
        return;
    }
    const Complex phase = apq / magnitude;
    const double app = a[p * n + p].real();
    const double aqq = a[q * n + q].real();

    // Real Jacobi rotation for [[app, |apq|], [|apq|, aqq]].
    const double theta = (aqq - app) / (2.0 * magnitude);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // U = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a[k * n + p];
        const Complex akq = a[k * n + q];
        a[k * n + p] = akp * u_pp + akq * u_qp;
        a[k * n + q] = akp * u_pq + akq * u_qq;
        const Complex vkp = v[k * n + p];
        const Complex vkq = v[k * n + q];
        v[k * n + p] = vkp * u_pp + vkq * u_qp;
        v[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a[p * n + k];
        const Complex aqk = a[q * n + k];
        a[p * n + k] = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a[q * n + k] = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    a[p * n + p] = a[p * n + p].real();
    a[q * n + q] = a[q * n + q].real();
}

inline double off_diagonal_norm(const std::vector<Complex> &a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (r != c) {
                acc += std::norm(a[r * n + c]);
            }
        }
    }
    return std::sqrt(acc);
}

}  // namespace detail

// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.
// Input within 1e-10 (relative Frobenius) of Hermitian is symmetrized first;
// anything further away is rejected.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix &m, const JacobiOptions &options = {}) {
    if (!m.is_square()) {
        throw DimensionError("hermitian_eigen: matrix is not square");
    }
    const double norm = frobenius_norm(m);
    const double defect = hermiticity_defect(m);
    if (defect > 1e-10 * std::max(1.0, norm)) {
        throw NotHermitianError("hermitian_eigen: ||M - M^dagger||_F = " + std::to_string(defect));
    }

    const std::size_t n = m.rows();
    std::vector<Complex> a = hermitian_part(m).entries();
    std::vector<Complex> v = ComplexMatrix::identity(n).entries();

    const double threshold = options.relative_threshold * norm;
    int sweep = 0;
    while (detail::off_diagonal_norm(a, n) > threshold) {
        if (sweep == options.max_sweeps) {
            throw ConvergenceError(
                "hermitian_eigen: no convergence after " + std::to_string(options.max_sweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                detail::jacobi_rotate(a, v, n, p, q);
            }
        }
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i * n + i].real() < a[j * n + j].real();
    });

    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a[order[k] * n + order[k]].real();
    }
    auto vectors =
        ComplexMatrix::generate(n, n, [&](std::size_t r, std::size_t c) { return v[r * n + order[c]]; });
    return {std::move(values), std::move(vectors)};
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) { return hermitian_eigen(m).eigenvalues; }

// Applies a real function to the spectrum: V f(diag) V^dagger.
template <typename Fn>
ComplexMatrix hermitian_function(const ComplexMatrix &m, Fn &&fn) {
    const EigenDecomposition eig = hermitian_eigen(m);
    const std::size_t n = m.rows();
    std::vector<double> mapped(n);
    for (std::size_t k = 0; k < n; ++k) {
        mapped[k] = fn(eig.eigenvalues[k]);
    }
    return ComplexMatrix::generate(n, n, [&](std::size_t r, std::size_t c) {
        Complex acc{};
        for (std::size_t k = 0; k < n; ++k) {
            acc += eig.eigenvectors(r, k) * mapped[k] * std::conj(eig.eigenvectors(c, k));
        }
        return acc;
    });
}

// ---------------------------------------------------------------------------
// Two-qubit structure
// ---------------------------------------------------------------------------

enum class Subsystem { A, B };

// Transpose on one tensor factor of a 4x4 operator.
inline ComplexMatrix partial_transpose(const ComplexMatrix &m, Subsystem which) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw DimensionError("partial_transpose expects a 4x4 matrix");
    }
    return ComplexMatrix::generate(4, 4, [&](std::size_t r, std::size_t c) {
        const std::size_t ra = r / 2, rb = r % 2, ca = c / 2, cb = c % 2;
        if (which == Subsystem::B) {
            return m(2 * ra + cb, 2 * ca + rb);
        }
        return m(2 * ca + rb, 2 * ra + cb);
    });
}

namespace pauli {

inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return ComplexMatrix{{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline ComplexMatrix z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace pauli

// Computational basis ket |index> in dimension n.
inline ComplexMatrix basis_ket(std::size_t n, std::size_t index) {
    return ComplexMatrix::generate(n, 1, [&](std::size_t r, std::size_t) { return Complex(r == index ? 1.0 : 0.0); });
}

}  // namespace singlet
