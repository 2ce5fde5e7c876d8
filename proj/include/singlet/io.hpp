#pragma once

// JSON forms of states, filters and reports.
//
// State file: {"matrix": [[[re, im], x4], x4]} in the order |00>,|01>,|10>,|11>.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "singlet/report.hpp"
#include "singlet/states.hpp"

namespace singlet {

using Json = nlohmann::ordered_json;

class StateFormatError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string cell_name(std::size_t r, std::size_t c) {
    return "row " + std::to_string(r) + ", column " + std::to_string(c);
}

}  // namespace detail

inline ComplexMatrix parse_matrix_json(const Json &doc) {
    if (!doc.is_object() || !doc.contains("matrix")) {
        throw StateFormatError("state JSON: expected an object with a \"matrix\" key");
    }
    const Json &rows = doc.at("matrix");
    if (!rows.is_array() || rows.size() != 4) {
        throw StateFormatError("state JSON: \"matrix\" must be an array of 4 rows");
    }
    std::vector<Complex> entries;
    entries.reserve(16);
    for (std::size_t r = 0; r < 4; ++r) {
        const Json &row = rows[r];
        if (!row.is_array() || row.size() != 4) {
            throw StateFormatError("state JSON: row " + std::to_string(r) + " must hold 4 entries");
        }
        for (std::size_t c = 0; c < 4; ++c) {
            const Json &cell = row[c];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number()) {
                throw StateFormatError("state JSON: " + detail::cell_name(r, c) + " must be [re, im]");
            }
            const Complex z(cell[0].get<double>(), cell[1].get<double>());
            if (!is_finite(z)) {
                throw StateFormatError("state JSON: " + detail::cell_name(r, c) + " is not finite");
            }
            entries.push_back(z);
        }
    }
    return ComplexMatrix(4, 4, std::move(entries));
}

inline DensityMatrix parse_state_json(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw StateFormatError(std::string("state JSON: ") + e.what());
    }
    return validate(parse_matrix_json(doc));
}

inline DensityMatrix load_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw StateFormatError("cannot read state file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_state_json(buffer.str());
}

inline Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json state_to_json(const DensityMatrix &rho) { return Json{{"matrix", matrix_to_json(rho.matrix())}}; }

inline Json optional_to_json(const std::optional<double> &x) { return x ? Json(*x) : Json(nullptr); }

inline Json report_to_json(const BoundReport &r) {
    Json out;
    if (r.family_f) {
        out["family_F"] = *r.family_f;
    }
    out["overlap"] = r.overlap;
    out["singlet_fraction"] = r.singlet_fraction;
    out["teleportation_fidelity"] = r.fidelity.teleportation_fidelity;
    out["useful_for_teleportation"] = r.fidelity.useful_for_teleportation;
    out["concurrence"] = r.concurrence;
    out["entangled_ppt"] = r.entangled_ppt;
    out["f_star_numeric"] = r.f_star_numeric;
    out["filter"] = {
        {"matrix", matrix_to_json(r.optimum.filter.matrix())},
        {"success_probability", r.optimum.success_probability},
        {"filtered_singlet_fraction", r.optimum.filtered_singlet_fraction},
        {"restart", r.optimum.restart},
    };
    out["fang"] = {{"lower", r.fang_lower}, {"value", r.fang_value}, {"upper", r.fang_upper}};
    out["C_spectrum"] = {{"lambda_min", r.c_lambda_min}, {"lambda_max", r.c_lambda_max}};
    out["dembo"] = {
        {"lower", r.dembo_lower},
        {"upper_classic", r.dembo_upper_classic},
        {"upper_printed", r.dembo_upper_printed},
    };
    if (r.f_d_closed) {
        out["f_d_closed"] = r.f_d_closed->value();
        out["f_d_closed_branches"] = {{"low", optional_to_json(r.f_d_closed->low)},
                                      {"high", optional_to_json(r.f_d_closed->high)}};
        out["f_star_closed"] = optional_to_json(r.f_star_closed);
        out["f_d_reconstruction_residual"] = optional_to_json(r.f_d_reconstruction_residual);
    }
    const DoubleFilterReport &d = r.double_filter;
    out["double_filter"] = {
        {"f_d", d.f_d},
        {"f_d_source", d.f_d_from_closed_form ? "closed_form" : "dembo_upper_printed"},
        {"trace_term", d.trace_term},
        {"f_star_filtered", d.f_star_filtered},
        {"p_ab_min", d.p_ab_min.value},
        {"p_ab_min_in_range", !d.p_ab_min.out_of_range},
        {"implied_overlap", d.implied_overlap},
        {"f_opt", d.f_opt},
    };
    out["flags"] = r.flags;
    return out;
}

}  // namespace singlet
