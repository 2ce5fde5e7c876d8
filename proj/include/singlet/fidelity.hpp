#pragma once

// Singlet fraction (fully entangled fraction) and teleportation fidelity.
//
// The fully entangled fraction is max <e|rho|e> over maximally entangled |e>.
// In the magic basis {|Phi+>, i|Phi->, i|Psi+>, |Psi->} maximally entangled
// states are exactly the real unit vectors up to a global phase, so the
// maximum is the top eigenvalue of Re(M^dagger rho M).

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "singlet/linalg.hpp"
#include "singlet/nelder_mead.hpp"
#include "singlet/random.hpp"
#include "singlet/states.hpp"

namespace singlet {

// Columns are the magic basis vectors in the computational basis.
inline ComplexMatrix magic_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return ComplexMatrix{
        {h, i * h, 0.0, 0.0},
        {0.0, 0.0, i * h, h},
        {0.0, 0.0, i * h, -h},
        {h, -i * h, 0.0, 0.0},
    };
}

// Real part of rho expressed in the magic basis (a real symmetric matrix).
inline ComplexMatrix magic_real_part(const DensityMatrix &rho) {
    const ComplexMatrix m = magic_basis();
    const ComplexMatrix in_magic = matmul(matmul(dagger(m), rho.matrix()), m);
    return ComplexMatrix::generate(4, 4, [&](std::size_t r, std::size_t c) {
        return Complex(0.5 * (in_magic(r, c).real() + in_magic(c, r).real()), 0.0);
    });
}

// <Phi+|rho|Phi+>, the overlap before any maximization.
inline double overlap_phi_plus(const DensityMatrix &rho) {
    return expectation(rho.matrix(), bell_ket(BellKind::PhiPlus)).real();
}

inline double overlap_with(const DensityMatrix &rho, BellKind target) {
    return expectation(rho.matrix(), bell_ket(target)).real();
}

inline double singlet_fraction(const DensityMatrix &rho) { return hermitian_eigen(magic_real_part(rho)).max(); }

// A maximally entangled state attaining the singlet fraction.
inline ComplexMatrix best_entangled_ket(const DensityMatrix &rho) {
    const EigenDecomposition eig = hermitian_eigen(magic_real_part(rho));
    std::vector<Complex> coeffs(4);
    double norm = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        coeffs[k] = eig.eigenvectors(k, 3).real();
        norm += std::norm(coeffs[k]);
    }
    for (Complex &z : coeffs) {
        z /= std::sqrt(norm);
    }
    return matmul(magic_basis(), ComplexMatrix::column(coeffs));
}

// Unitary U with (U (x) I)|Phi+> equal to best_entangled_ket(rho); rotating
// the state by U^dagger on qubit A makes <Phi+|.|Phi+> equal the singlet
// fraction.
inline ComplexMatrix alignment_unitary(const DensityMatrix &rho) {
    const ComplexMatrix e = best_entangled_ket(rho);
    const double r2 = std::sqrt(2.0);
    return ComplexMatrix::generate(2, 2, [&](std::size_t a, std::size_t b) { return r2 * e(2 * a + b, 0); });
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

// U(2) chart: e^{i alpha} [[e^{i beta} cos t, e^{i gamma} sin t],
//                          [-e^{-i gamma} sin t, e^{-i beta} cos t]].
inline ComplexMatrix unitary_from_chart(const Point<4> &p) {
    const double alpha = p[0], beta = p[1], gamma = p[2], t = p[3];
    const Complex g = std::polar(1.0, alpha);
    return ComplexMatrix{
        {g * std::polar(std::cos(t), beta), g * std::polar(std::sin(t), gamma)},
        {-g * std::polar(std::sin(t), -gamma), g * std::polar(std::cos(t), -beta)},
    };
}

// <Phi+|(U (x) I)^dagger rho (U (x) I)|Phi+>; the ket has amplitudes U_ab/sqrt(2).
inline double single_sided_overlap(const DensityMatrix &rho, const Point<4> &chart) {
    const ComplexMatrix u = unitary_from_chart(chart);
    std::array<Complex, 4> e;
    for (std::size_t k = 0; k < 4; ++k) {
        e[k] = u(k / 2, k % 2) / std::sqrt(2.0);
    }
    Complex acc{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            acc += std::conj(e[r]) * rho(r, c) * e[c];
        }
    }
    return acc.real();
}

struct BruteForceOptions {
    std::size_t chunk_size = 250;
    int refine_iterations = 200;
    double refine_tolerance = 1e-10;
};

// Haar sampling of U (cos^2 t uniform, phases uniform) in independently
// seeded chunks, then a simplex refinement from the best sample.
inline double singlet_fraction_bruteforce(const DensityMatrix &rho, std::size_t samples, std::uint64_t seed,
                                          const BruteForceOptions &options = {}) {
    if (samples == 0) {
        throw std::invalid_argument("singlet_fraction_bruteforce: samples must be >= 1");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    Point<4> best_point{};
    double best_value = -std::numeric_limits<double>::infinity();
    const std::size_t chunks = (samples + options.chunk_size - 1) / options.chunk_size;
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
        Engine rng = make_engine(derive_seed(seed, 0x5f0f, chunk));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::size_t count = std::min(options.chunk_size, samples - chunk * options.chunk_size);
        for (std::size_t s = 0; s < count; ++s) {
            Point<4> p;
            p[0] = two_pi * unit(rng);
            p[1] = two_pi * unit(rng);
            p[2] = two_pi * unit(rng);
            p[3] = std::acos(std::sqrt(unit(rng)));
            const double v = single_sided_overlap(rho, p);
            if (v > best_value) {
                best_value = v;
                best_point = p;
            }
        }
    }
    SimplexOptions simplex;
    simplex.max_iterations = options.refine_iterations;
    simplex.diameter_tolerance = options.refine_tolerance;
    simplex.initial_step = 0.05;
    const auto refined = nelder_mead_maximize<4>(
        [&](const Point<4> &p) { return single_sided_overlap(rho, p); }, best_point, simplex);
    return std::max(best_value, refined.value);
}

// ---------------------------------------------------------------------------
// Teleportation
// ---------------------------------------------------------------------------

struct FidelityResult {
    double singlet_fraction;
    double teleportation_fidelity;  // (2F + 1)/3
    bool useful_for_teleportation;  // F > 1/2
};

inline FidelityResult fidelity_from_singlet_fraction(double f) { return {f, (2.0 * f + 1.0) / 3.0, f > 0.5}; }

inline FidelityResult teleportation_fidelity(const DensityMatrix &rho) {
    return fidelity_from_singlet_fraction(singlet_fraction(rho));
}

}  // namespace singlet
