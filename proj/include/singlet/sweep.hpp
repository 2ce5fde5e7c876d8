#pragma once

// Tabulation of F* and F*_D (and the double-filter closed forms) over the
// rho(F) family, written as CSV for plotting.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "singlet/bounds.hpp"
#include "singlet/fidelity.hpp"
#include "singlet/filtering.hpp"
#include "singlet/states.hpp"

namespace singlet {

inline constexpr const char *kSweepHeader =
    "F,overlap,singlet_fraction,F_star_closed,F_star_numeric,F_D_closed_low,F_D_closed_high,f_T,p_ab_min_closed,"
    "F_opt_closed,concurrence";

struct SweepRecord {
    double f;
    double overlap;
    double singlet_fraction;
    double f_star_closed;
    std::optional<double> f_star_numeric;
    std::optional<double> f_d_closed_low;
    std::optional<double> f_d_closed_high;
    double f_t;
    std::optional<double> p_ab_min_closed;  // only on [1/3, 2/3]
    std::optional<double> f_opt_closed;     // only on [1/3, 2/3]
    double concurrence;
};

struct SweepOptions {
    bool numeric = false;
    int restarts = 32;
    std::uint64_t seed = 1;
};

// from + k*step for k = 0, 1, ... while <= to, then to itself if the last
// step falls short of it, with the branch point 2/3 inserted when it lies
// inside the range and off the grid. Requires
// 1/3 <= from < to <= 1 and step > 0 (each to 1e-9).
inline std::vector<double> sweep_grid(double from, double to, double step) {
    constexpr double slack = 1e-9;
    if (!(step > 0.0) || !(from < to) || !(from >= 1.0 / 3.0 - slack) || !(to <= 1.0 + slack)) {
        throw DomainError("sweep: need 1/3 <= from < to <= 1 and step > 0");
    }
    from = std::max(from, 1.0 / 3.0);
    to = std::min(to, 1.0);
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    grid.reserve(count + 2);
    for (std::size_t k = 0; k <= count; ++k) {
        grid.push_back(std::min(from + static_cast<double>(k) * step, to));
    }
    if (to - grid.back() > slack) {
        grid.push_back(to);
    }
    if (kBranchPoint >= from && kBranchPoint <= to) {
        const bool on_grid = std::any_of(grid.begin(), grid.end(), [](double f) {
            return std::abs(f - kBranchPoint) <= kClosedFormSlack;
        });
        if (!on_grid) {
            grid.insert(std::upper_bound(grid.begin(), grid.end(), kBranchPoint), kBranchPoint);
        }
    }
    return grid;
}

inline SweepRecord make_sweep_record(double f, const SweepOptions &options = {}) {
    const DensityMatrix rho = rho_family(f);
    const DemboClosedForm fd = f_d_closed(f);
    SweepRecord rec{};
    rec.f = f;
    rec.overlap = overlap_phi_plus(rho);
    rec.singlet_fraction = singlet_fraction(rho);
    rec.f_star_closed = f_star_closed(f);
    if (options.numeric) {
        rec.f_star_numeric = optimize_filter(rho, options.restarts, options.seed).value;
    }
    rec.f_d_closed_low = fd.low;
    rec.f_d_closed_high = fd.high;
    rec.f_t = fidelity_from_singlet_fraction(rec.singlet_fraction).teleportation_fidelity;
    if (f <= kBranchPoint + kClosedFormSlack) {
        rec.p_ab_min_closed = p_ab_min_closed(f);
        rec.f_opt_closed = f_opt_closed(f);
    }
    rec.concurrence = concurrence(rho);
    return rec;
}

inline std::vector<SweepRecord> run_sweep(double from, double to, double step, const SweepOptions &options = {}) {
    std::vector<SweepRecord> rows;
    for (double f : sweep_grid(from, to, step)) {
        rows.push_back(make_sweep_record(f, options));
    }
    return rows;
}

// 12 significant digits, shortest form.
inline std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_optional(const std::optional<double> &x) { return x ? format_number(*x) : std::string(); }

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRecord> &rows) {
    out << kSweepHeader << '\n';
    for (const SweepRecord &r : rows) {
        out << format_number(r.f) << ',' << format_number(r.overlap) << ',' << format_number(r.singlet_fraction)
            << ',' << format_number(r.f_star_closed) << ',' << format_optional(r.f_star_numeric) << ','
            << format_optional(r.f_d_closed_low) << ',' << format_optional(r.f_d_closed_high) << ','
            << format_number(r.f_t) << ',' << format_optional(r.p_ab_min_closed) << ','
            << format_optional(r.f_opt_closed) << ',' << format_number(r.concurrence) << '\n';
    }
}

}  // namespace singlet
