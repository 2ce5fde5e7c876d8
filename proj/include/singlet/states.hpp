#pragma once

// Two-qubit density matrices: validation, Bell states, the rho(F) family,
// and entanglement certificates (Wootters concurrence, PPT).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "singlet/linalg.hpp"
#include "singlet/random.hpp"

namespace singlet {

inline constexpr double kStateTolerance = 1e-10;

enum class StateViolation { NotSquare4, NotHermitian, NotUnitTrace, NotPSD };

inline std::string_view to_string(StateViolation v) {
    switch (v) {
        case StateViolation::NotSquare4:
            return "NotSquare4";
        case StateViolation::NotHermitian:
            return "NotHermitian";
        case StateViolation::NotUnitTrace:
            return "NotUnitTrace";
        case StateViolation::NotPSD:
            return "NotPSD";
    }
    return "unknown";
}

// Names the violated density-matrix invariant and by how much it is violated.
class InvalidStateError : public std::invalid_argument {
 public:
    InvalidStateError(StateViolation violation, double magnitude)
        : std::invalid_argument(
              std::string(to_string(violation)) + ": violation magnitude " + std::to_string(magnitude)),
          violation_(violation),
          magnitude_(magnitude) {}

    StateViolation violation() const { return violation_; }
    double magnitude() const { return magnitude_; }

 private:
    StateViolation violation_;
    double magnitude_;
};

class DensityMatrix;
DensityMatrix validate(const ComplexMatrix &m);

// A 4x4 Hermitian, unit-trace, PSD matrix. Only obtainable through validate().
class DensityMatrix {
 public:
    const ComplexMatrix &matrix() const { return mat_; }
    Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    friend DensityMatrix validate(const ComplexMatrix &m);

    ComplexMatrix mat_;
};

// Checks, in order, shape, Hermiticity, unit trace and PSD (each to 1e-10).
// The stored matrix is the Hermitian part of the input.
inline DensityMatrix validate(const ComplexMatrix &m) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw InvalidStateError(StateViolation::NotSquare4, std::abs(double(m.rows()) - 4) + std::abs(double(m.cols()) - 4));
    }
    const double defect = hermiticity_defect(m);
    if (defect > kStateTolerance * std::max(1.0, frobenius_norm(m))) {
        throw InvalidStateError(StateViolation::NotHermitian, defect);
    }
    ComplexMatrix h = hermitian_part(m);
    const double trace_error = std::abs(trace(h) - Complex(1.0));
    if (trace_error > kStateTolerance) {
        throw InvalidStateError(StateViolation::NotUnitTrace, trace_error);
    }
    const double lowest = hermitian_eigen(h).min();
    if (lowest < -kStateTolerance) {
        throw InvalidStateError(StateViolation::NotPSD, -lowest);
    }
    return DensityMatrix(std::move(h));
}

inline DensityMatrix maximally_mixed() { return validate(scale(ComplexMatrix::identity(4), 0.25)); }

// Convex combination p*a + (1-p)*b.
inline DensityMatrix mix(double p, const DensityMatrix &a, const DensityMatrix &b) {
    return validate(add(scale(a.matrix(), p), scale(b.matrix(), 1.0 - p)));
}

// (U (x) V) rho (U (x) V)^dagger
inline DensityMatrix local_unitary(const DensityMatrix &rho, const ComplexMatrix &u, const ComplexMatrix &v) {
    const ComplexMatrix k = kron(u, v);
    return validate(matmul(matmul(k, rho.matrix()), dagger(k)));
}

// ---------------------------------------------------------------------------
// Bell states
// ---------------------------------------------------------------------------

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline ComplexMatrix bell_ket(BellKind kind) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PhiPlus:
            return ComplexMatrix::column({h, 0.0, 0.0, h});
        case BellKind::PhiMinus:
            return ComplexMatrix::column({h, 0.0, 0.0, -h});
        case BellKind::PsiPlus:
            return ComplexMatrix::column({0.0, h, h, 0.0});
        case BellKind::PsiMinus:
            return ComplexMatrix::column({0.0, h, -h, 0.0});
    }
    throw std::invalid_argument("unknown BellKind");
}

inline DensityMatrix bell_state(BellKind kind) { return validate(projector(bell_ket(kind))); }

// ---------------------------------------------------------------------------
// rho(F) = F |Phi+><Phi+| + (1 - F) |01><01|
// ---------------------------------------------------------------------------

inline constexpr double kFamilyRegimeStart = 1.0 / 3.0;

inline DensityMatrix rho_family(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw DomainError("rho_family: F = " + std::to_string(f) + " outside [0, 1]");
    }
    const ComplexMatrix phi = projector(bell_ket(BellKind::PhiPlus));
    const ComplexMatrix ket01 = projector(basis_ket(4, 1));
    return validate(add(scale(phi, f), scale(ket01, 1.0 - f)));
}

// The family's closed forms are only claimed for F >= 1/3; smaller F still
// gives a valid state, flagged by this predicate.
inline bool family_in_stated_regime(double f) { return f >= kFamilyRegimeStart - 1e-12; }

// ---------------------------------------------------------------------------
// Entanglement certificates
// ---------------------------------------------------------------------------

// rho~ = (sy (x) sy) rho* (sy (x) sy)
inline ComplexMatrix spin_flip(const DensityMatrix &rho) {
    const ComplexMatrix yy = kron(pauli::y(), pauli::y());
    return matmul(matmul(yy, conjugate(rho.matrix())), yy);
}

// Wootters concurrence. The spectrum of rho*rho~ is read from the Hermitian
// matrix sqrt(rho) rho~ sqrt(rho), which has the same eigenvalues.
inline double concurrence(const DensityMatrix &rho) {
    const ComplexMatrix root = hermitian_function(rho.matrix(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const ComplexMatrix proxy = hermitian_part(matmul(matmul(root, spin_flip(rho)), root));
    std::vector<double> lambdas = hermitian_eigenvalues(proxy);
    for (double &l : lambdas) {
        l = std::sqrt(std::max(l, 0.0));
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

inline double min_partial_transpose_eigenvalue(const DensityMatrix &rho) {
    return hermitian_eigen(partial_transpose(rho.matrix(), Subsystem::B)).min();
}

// Peres-Horodecki: for two qubits a negative partial transpose is necessary
// and sufficient for entanglement.
inline bool is_entangled_ppt(const DensityMatrix &rho) {
    return min_partial_transpose_eigenvalue(rho) < -kStateTolerance;
}

// Hilbert-Schmidt random state G G^dagger / tr(G G^dagger), G Ginibre 4x4.
inline DensityMatrix random_density_matrix(Engine &rng) {
    const ComplexMatrix g = ginibre(4, 4, rng);
    const ComplexMatrix gg = hermitian_part(matmul(g, dagger(g)));
    return validate(scale(gg, 1.0 / trace(gg).real()));
}

inline DensityMatrix random_density_matrix(std::uint64_t seed) {
    Engine rng = make_engine(seed);
    return random_density_matrix(rng);
}

}  // namespace singlet
