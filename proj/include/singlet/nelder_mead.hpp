#pragma once

// Derivative-free maximization over R^N with the Nelder-Mead simplex
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace singlet {

template <std::size_t N>
using Point = std::array<double, N>;

template <std::size_t N>
struct SimplexResult {
    Point<N> argmax;
    double value;
    int iterations;
    bool converged;  // simplex diameter fell below the tolerance
};

struct SimplexOptions {
    int max_iterations = 500;
    double diameter_tolerance = 1e-10;
    double initial_step = 0.1;
};

template <std::size_t N, typename Objective>
SimplexResult<N> nelder_mead_maximize(Objective &&objective, const Point<N> &start, const SimplexOptions &options = {}) {
    std::array<Point<N>, N + 1> vertex;
    std::array<double, N + 1> value;
    vertex[0] = start;
    for (std::size_t k = 0; k < N; ++k) {
        vertex[k + 1] = start;
        vertex[k + 1][k] += options.initial_step;
    }
    for (std::size_t k = 0; k <= N; ++k) {
        value[k] = objective(vertex[k]);
    }

    auto combine = [](const Point<N> &from, const Point<N> &to, double t) {
        Point<N> out;
        for (std::size_t d = 0; d < N; ++d) {
            out[d] = from[d] + t * (to[d] - from[d]);
        }
        return out;
    };

    std::array<std::size_t, N + 1> order;
    int iteration = 0;
    bool converged = false;
    for (; iteration < options.max_iterations; ++iteration) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Best first; ties keep vertex index order.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return value[i] > value[j]; });

        double diameter = 0.0;
        for (std::size_t k = 1; k <= N; ++k) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < N; ++d) {
                const double delta = vertex[order[k]][d] - vertex[order[0]][d];
                d2 += delta * delta;
            }
            diameter = std::max(diameter, std::sqrt(d2));
        }
        if (diameter < options.diameter_tolerance) {
            converged = true;
            break;
        }

        const std::size_t worst = order[N];
        const std::size_t second_worst = order[N - 1];
        const std::size_t best = order[0];

        Point<N> centroid{};
        for (std::size_t k = 0; k < N; ++k) {
            for (std::size_t d = 0; d < N; ++d) {
                centroid[d] += vertex[order[k]][d] / static_cast<double>(N);
            }
        }

        const Point<N> reflected = combine(centroid, vertex[worst], -1.0);
        const double reflected_value = objective(reflected);
        if (reflected_value > value[best]) {
            const Point<N> expanded = combine(centroid, vertex[worst], -2.0);
            const double expanded_value = objective(expanded);
            if (expanded_value > reflected_value) {
                vertex[worst] = expanded;
                value[worst] = expanded_value;
            } else {
                vertex[worst] = reflected;
                value[worst] = reflected_value;
            }
            continue;
        }
        if (reflected_value > value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = reflected_value;
            continue;
        }

        const bool outside = reflected_value > value[worst];
        const Point<N> contracted =
            outside ? combine(centroid, reflected, 0.5) : combine(centroid, vertex[worst], 0.5);
        const double contracted_value = objective(contracted);
        if (contracted_value > std::max(value[worst], outside ? reflected_value : value[worst])) {
            vertex[worst] = contracted;
            value[worst] = contracted_value;
            continue;
        }

        for (std::size_t k = 1; k <= N; ++k) {
            const std::size_t idx = order[k];
            vertex[idx] = combine(vertex[best], vertex[idx], 0.5);
            value[idx] = objective(vertex[idx]);
        }
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k <= N; ++k) {
        if (value[k] > value[best]) {
            best = k;
        }
    }
    return {vertex[best], value[best], iteration, converged};
}

}  // namespace singlet
