#pragma once

// Feasibility sweep over the reduction-factor grid, boundary extraction by
// bisection, the quadratic-root cross-check, and deterministic CSV / JSON
// serialization of sweep records.

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloner.hpp"

namespace cloneray {

struct GridSpec {
    double s_min = 0.0;
    double s_max = 1.0;
    double s_step = 0.005;
    double t_scan_step = 0.002;
    double t_xy = 0.0;
    double psd_tol = 1e-10;

    void validate() const {
        if (s_step <= 0.0 || t_scan_step <= 0.0) throw std::invalid_argument("GridSpec: steps must be positive");
        if (s_max < s_min) throw std::invalid_argument("GridSpec: empty range");
        if (psd_tol <= 0.0) throw std::invalid_argument("GridSpec: tolerance must be positive");
    }
};

struct FeasibilityRecord {
    double s0 = 0.0;
    double s1 = 0.0;
    double t_used = 0.0;
    double t_xy = 0.0;
    double min_eigenvalue = 0.0;
    bool feasible = false;
    double frontier_value = 0.0;
};

enum class SweepMode { eq12_rule, full_t_scan };

inline std::vector<double> grid_values(double lo, double hi, double step) {
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> values;
    values.reserve(count + 1);
    for (int k = 0; k <= count; ++k) values.push_back(lo + k * step);
    return values;
}

// [-1, 1/3] with the upper endpoint always included exactly; the maximal
// admissible t sits exactly at 1/3 for the symmetric optimum, so the scan
// must not stop one step short of it.
inline std::vector<double> t_scan_values(double step) {
    std::vector<double> values = grid_values(-1.0, 1.0 / 3.0, step);
    if (std::abs(values.back() - 1.0 / 3.0) > 1e-15) values.push_back(1.0 / 3.0);
    return values;
}

// One record per (s0, s1) grid point, s0 outer, s1 inner, both ascending.
// eq12_rule fixes t = s0 + s1 - 1 (clamped); full_t_scan marks a point
// feasible when any scanned t is, and reports the feasible t with the
// largest minimum eigenvalue.
inline std::vector<FeasibilityRecord> sweep(const GridSpec& grid, SweepMode mode) {
    grid.validate();
    const std::vector<double> s_values = grid_values(grid.s_min, grid.s_max, grid.s_step);
    const std::vector<double> t_values =
        mode == SweepMode::full_t_scan ? t_scan_values(grid.t_scan_step) : std::vector<double>{};

    std::vector<FeasibilityRecord> records;
    records.reserve(s_values.size() * s_values.size());
    for (double s0 : s_values) {
        for (double s1 : s_values) {
            FeasibilityRecord rec;
            rec.s0 = s0;
            rec.s1 = s1;
            rec.t_xy = grid.t_xy;
            rec.frontier_value = frontier_lhs(s0, s1, grid.t_xy);
            if (mode == SweepMode::eq12_rule) {
                rec.t_used = maximality_t(s0, s1);
                const CloneFamilyParams p{s0, s1, rec.t_used, grid.t_xy};
                rec.min_eigenvalue = min_eigenvalue_closed_form(p);
                rec.feasible = feasible(p, grid.psd_tol).ok;
            } else {
                double best_any = -1.0, best_any_t = 0.0;
                double best_ok = -1.0, best_ok_t = 0.0;
                bool any_ok = false;
                bool first = true;
                // the scan lattice plus this point's own rule candidate;
                // near the frontier the feasible t window is narrower than
                // any fixed scan step
                const double candidate = maximality_t(s0, s1);
                for (std::size_t k = 0; k <= t_values.size(); ++k) {
                    const double t = k < t_values.size() ? t_values[k] : candidate;
                    const CloneFamilyParams p{s0, s1, t, grid.t_xy};
                    const double min_ev = min_eigenvalue_closed_form(p);
                    if (first || min_ev > best_any) {
                        best_any = min_ev;
                        best_any_t = t;
                        first = false;
                    }
                    if (feasible(p, grid.psd_tol).ok && (!any_ok || min_ev > best_ok)) {
                        best_ok = min_ev;
                        best_ok_t = t;
                        any_ok = true;
                    }
                }
                rec.feasible = any_ok;
                rec.t_used = any_ok ? best_ok_t : best_any_t;
                rec.min_eigenvalue = any_ok ? best_ok : best_any;
            }
            records.push_back(rec);
        }
    }
    return records;
}

struct BoundaryResult {
    bool exists = false;  // false: t_xy too large for this s0, no feasible s1
    double s1 = 0.0;
};

// Largest feasible s1 for fixed s0 under the t = s0 + s1 - 1 rule, located
// by bisection from the most feasible point (the vertex of the frontier
// quadratic) up to the first infeasible value.
inline BoundaryResult boundary(double s0, double t_xy) {
    if (s0 < 0.0 || s0 > 1.0) throw std::invalid_argument("boundary: s0 must lie in [0, 1]");
    // The inequalities are evaluated slack-free in extended precision: where
    // the frontier quadratic has a double root (s0 = 1, t_xy = 0), a margin
    // of tol would widen the located boundary by sqrt(tol).
    const auto feasible_at = [&](double s1) {
        const long double s0l = s0, s1l = s1, txyl = t_xy;
        const long double t = std::clamp(s0l + s1l - 1.0L, -1.0L, 1.0L / 3.0L);
        if (s0l + s1l > 1.0L + t) return false;
        const long double cross = (s0l - s1l) * (s0l - s1l) + 4.0L * txyl * txyl;
        return cross <= (1.0L + t) * (1.0L - 3.0L * t);
    };
    const double vertex = 0.5 * (1.0 - s0);
    if (!feasible_at(vertex)) return {false, 0.0};
    if (feasible_at(1.0)) return {true, 1.0};
    double lo = vertex, hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (feasible_at(mid) ? lo : hi) = mid;
    }
    return {true, 0.5 * (lo + hi)};
}

// Quadratic-root cross-check for the same boundary:
// s1 = [(1 - s0) + sqrt((1 - s0)(1 + 3 s0) - 4 t_xy^2)] / 2.
inline BoundaryResult boundary_closed_form(double s0, double t_xy) {
    if (s0 < 0.0 || s0 > 1.0) throw std::invalid_argument("boundary_closed_form: s0 must lie in [0, 1]");
    const double disc = (1.0 - s0) * (1.0 + 3.0 * s0) - 4.0 * t_xy * t_xy;
    if (disc < 0.0) return {false, 0.0};
    return {true, 0.5 * ((1.0 - s0) + std::sqrt(disc))};
}

enum class TableFormat { csv, json };

inline std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CSV schema: fixed header, 17 significant digits, "true"/"false" booleans,
// '\n' line endings; byte-identical across runs for identical inputs.
inline std::string to_csv(const std::vector<FeasibilityRecord>& records) {
    std::string out = "s0,s1,t_used,t_xy,min_eigenvalue,feasible,frontier_value\n";
    for (const auto& r : records) {
        out += format_g17(r.s0);
        out += ',';
        out += format_g17(r.s1);
        out += ',';
        out += format_g17(r.t_used);
        out += ',';
        out += format_g17(r.t_xy);
        out += ',';
        out += format_g17(r.min_eigenvalue);
        out += ',';
        out += r.feasible ? "true" : "false";
        out += ',';
        out += format_g17(r.frontier_value);
        out += '\n';
    }
    return out;
}

inline std::string to_json(const std::vector<FeasibilityRecord>& records) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out += "{\"s0\":" + format_g17(r.s0) + ",\"s1\":" + format_g17(r.s1) +
               ",\"t_used\":" + format_g17(r.t_used) + ",\"t_xy\":" + format_g17(r.t_xy) +
               ",\"min_eigenvalue\":" + format_g17(r.min_eigenvalue) +
               ",\"feasible\":" + (r.feasible ? "true" : "false") +
               ",\"frontier_value\":" + format_g17(r.frontier_value) + "}";
        if (i + 1 < records.size()) out += ',';
        out += '\n';
    }
    out += "]\n";
    return out;
}

inline std::string emit_frontier(const std::vector<FeasibilityRecord>& records, TableFormat format) {
    if (records.empty()) throw std::invalid_argument("emit_frontier: no records");
    return format == TableFormat::csv ? to_csv(records) : to_json(records);
}

}  // namespace cloneray
