#pragma once

// Seeded sampling helpers. There is no global generator: every sampler takes
// an engine or a seed, and per-trial seeds are derived by hashing so a trial's
// inputs depend only on (base seed, stream, index).

#include <cmath>
#include <cstdint>
#include <random>

#include "singlet/linalg.hpp"

namespace singlet {

using Engine = std::mt19937_64;

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    return mix64(mix64(mix64(base) ^ stream) ^ index);
}

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

// Matrix of i.i.d. standard complex Gaussians (Ginibre ensemble).
inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Engine &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return ComplexMatrix::generate(rows, cols, [&](std::size_t, std::size_t) {
        const double re = normal(rng);
        const double im = normal(rng);
        return Complex(re, im);
    });
}

inline ComplexMatrix random_hermitian(std::size_t n, Engine &rng) { return hermitian_part(ginibre(n, n, rng)); }

// G G^dagger, Hermitian PSD and almost surely full rank.
inline ComplexMatrix random_psd(std::size_t n, Engine &rng) {
    const ComplexMatrix g = ginibre(n, n, rng);
    return hermitian_part(matmul(g, dagger(g)));
}

// Haar-distributed unitary: Gram-Schmidt on a Ginibre matrix, which equals
// QR with a positive-real R diagonal.
inline ComplexMatrix haar_unitary(std::size_t n, Engine &rng) {
    const ComplexMatrix g = ginibre(n, n, rng);
    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            cols[c][r] = g(r, c);
        }
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex proj{};
            for (std::size_t r = 0; r < n; ++r) {
                proj += std::conj(cols[prev][r]) * cols[c][r];
            }
            for (std::size_t r = 0; r < n; ++r) {
                cols[c][r] -= proj * cols[prev][r];
            }
        }
        double norm = 0.0;
        for (const Complex &z : cols[c]) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        for (Complex &z : cols[c]) {
            z /= norm;
        }
    }
    return ComplexMatrix::generate(n, n, [&](std::size_t r, std::size_t c) { return cols[c][r]; });
}

}  // namespace singlet
