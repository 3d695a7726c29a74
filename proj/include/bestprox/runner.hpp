#pragma once

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bestprox/contraction.hpp"
#include "bestprox/errors.hpp"
#include "bestprox/f_family.hpp"
#include "bestprox/metric.hpp"
#include "bestprox/proximity.hpp"
#include "bestprox/scenario.hpp"
#include "bestprox/solver.hpp"

namespace bestprox {

/// Which parts of a scenario to execute. Maps onto the CLI verbs.
enum class RunMode { check, solve, run, compare_routes };

struct CheckVerdict {
    CheckName name;
    bool passed = false;
    ordered_json detail;
};

struct StartResult {
    std::size_t start;  ///< position in A
    IterationTrace trace;
    /// Present in run / compare-routes modes when the induced map exists.
    std::optional<RouteComparison> routes;
};

struct RunReport {
    std::string scenario;
    RunMode mode = RunMode::run;
    double dAB = 0;
    std::vector<std::size_t> A0_index;
    std::vector<CheckVerdict> checks;
    /// Induced self-map as positions in A (x -> S x), or the reason it does not exist.
    std::vector<std::pair<std::size_t, std::size_t>> induced_map;
    std::optional<std::string> induced_map_error;
    std::vector<StartResult> starts;
    /// Copy of the scenario's A, for resolving positions.
    std::vector<Point> A;

    bool checks_passed() const {
        for (const auto& c : checks) {
            if (!c.passed) return false;
        }
        return true;
    }

    bool runs_converged() const {
        for (const auto& s : starts) {
            if (!s.trace.converged()) return false;
        }
        return true;
    }

    /// nullopt when no comparison was possible.
    std::optional<bool> routes_equal() const {
        if (induced_map_error || starts.empty()) return std::nullopt;
        for (const auto& s : starts) {
            if (!s.routes || !s.routes->equal) return false;
        }
        return true;
    }

    /// Distinct limits among converged starts.
    std::vector<Point> limits() const {
        std::vector<Point> out;
        for (const auto& s : starts) {
            if (!s.trace.converged()) continue;
            if (std::find(out.begin(), out.end(), s.trace.final_point()) == out.end()) {
                out.push_back(s.trace.final_point());
            }
        }
        return out;
    }

    /// 0 success, 1 check or convergence failure. Input errors (2) never reach a report.
    int exit_code() const {
        switch (mode) {
            case RunMode::check: return checks_passed() ? 0 : 1;
            case RunMode::solve: return runs_converged() ? 0 : 1;
            case RunMode::compare_routes: return routes_equal().value_or(false) ? 0 : 1;
            case RunMode::run: {
                const bool routes_ok = routes_equal().value_or(true);
                return checks_passed() && runs_converged() && routes_ok ? 0 : 1;
            }
        }
        return 1;
    }
};

namespace detail {

// JSON has no infinities; they are written as strings.
inline ordered_json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

inline ordered_json violation_json(const Violation& v) {
    ordered_json out;
    out["indices"] = v.indices;
    out["points"] = ordered_json::array();
    for (const auto& p : v.points) out["points"].push_back(point_json(p));
    out["lhs"] = num(v.lhs);
    out["rhs"] = num(v.rhs);
    out["slack"] = num(v.slack);
    return out;
}

inline std::vector<Point> distinct_points(const ScenarioFile& sc) {
    std::vector<Point> out;
    auto add = [&out](const std::vector<Point>& pts) {
        for (const auto& p : pts) {
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    };
    add(sc.pool);
    add(sc.A);
    add(sc.B);
    return out;
}

inline CheckVerdict run_check(CheckName name, const ScenarioFile& sc, const ProximalSets& sets,
                              const std::optional<InducedMap>& induced) {
    CheckVerdict v{name, false, ordered_json::object()};
    const ProximityPair pair = sc.pair();
    switch (name) {
        case CheckName::metric_axioms: {
            const auto pool = distinct_points(sc);
            const AxiomReport r = check_metric_axioms_on(sc.space, pool);
            v.passed = r.passed();
            v.detail["triples_checked"] = r.triples_checked;
            if (r.witness) {
                v.detail["witness"] = {{"axiom", to_string(r.witness->axiom)},
                                       {"indices", r.witness->indices},
                                       {"lhs", num(r.witness->lhs)},
                                       {"rhs", num(r.witness->rhs)}};
            }
            break;
        }
        case CheckName::omega: {
            const OmegaReport r = check_omega_membership(sc.f);
            v.passed = r.passed();
            v.detail["monotone"] = r.passed_monotone;
            v.detail["divergence"] = r.passed_divergence;
            v.detail["decay"] = r.passed_decay;
            if (r.witness) {
                ordered_json w{{"condition", to_string(r.witness->condition)},
                               {"alpha", num(r.witness->alpha)},
                               {"value", num(r.witness->value)}};
                if (r.witness->partner) {
                    w["partner_alpha"] = num(r.witness->partner->first);
                    w["partner_value"] = num(r.witness->partner->second);
                }
                v.detail["witness"] = std::move(w);
            }
            break;
        }
        case CheckName::proximal_image: {
            // A0 nonempty and T(A0) inside B0.
            v.passed = !sets.A0.empty();
            const MappingTable T = sc.mapping();
            for (std::size_t i : sets.A0_index) {
                if (!sets.contains_B0(T(sc.A[i]))) {
                    v.passed = false;
                    v.detail["witness"] = {{"x", i}, {"image", point_json(T(sc.A[i]))}};
                    break;
                }
            }
            v.detail["A0_size"] = sets.A0.size();
            v.detail["B0_size"] = sets.B0.size();
            break;
        }
        case CheckName::p_property: {
            const PPropertyReport r = check_p_property(pair);
            v.passed = r.passed();
            v.detail["quadruples_checked"] = r.quadruples_checked;
            if (r.precondition_failed) v.detail["error"] = "A0 is empty";
            if (r.witness) {
                v.detail["witness"] = {{"u1", r.witness->u1},
                                       {"u2", r.witness->u2},
                                       {"v1", r.witness->v1},
                                       {"v2", r.witness->v2},
                                       {"within_A", num(r.witness->within_A)},
                                       {"within_B", num(r.witness->within_B)}};
            }
            break;
        }
        case CheckName::approx_compactness: {
            const CompactnessReport r = check_approx_compactness(pair);
            v.passed = r.passed;
            v.detail["justification"] = r.justification;
            break;
        }
        case CheckName::contraction: {
            ContractionReport r;
            if (const auto* p = std::get_if<ProximalCoefficients>(&sc.coefficients)) {
                v.detail["form"] = "proximal_first_kind";
                r = check_f_proximal_first_kind(sc.mapping(), pair, sc.f, *p);
            } else {
                v.detail["form"] = "hardy_rogers_induced";
                if (!induced) {
                    v.detail["error"] = "induced self-map unavailable";
                    break;
                }
                r = check_hardy_rogers(induced->S, sc.f, std::get<HRCoefficients>(sc.coefficients), sc.space);
            }
            v.passed = r.passed();
            v.detail["instances_checked"] = r.instances_checked;
            if (r.violation) v.detail["violation"] = violation_json(*r.violation);
            break;
        }
    }
    return v;
}

inline std::size_t position_in(const std::vector<Point>& pts, const Point& p) {
    return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), p) - pts.begin());
}

inline ordered_json trace_summary(const IterationTrace& t, const std::vector<Point>& A) {
    ordered_json out;
    out["final"] = point_json(t.final_point());
    out["final_index"] = position_in(A, t.final_point());
    out["iterations"] = t.iterations();
    out["status"] = to_string(t.status);
    out["residual"] = num(t.final_residual());
    if (!t.failure.empty()) out["failure"] = t.failure;
    return out;
}

}  // namespace detail

/// Checks in fixed order, then one solver run per start, then the route comparison.
inline RunReport run_scenario(const ScenarioFile& sc, RunMode mode) {
    sc.validate();
    RunReport report;
    report.scenario = sc.name;
    report.mode = mode;
    report.A = sc.A;
    const ProximityPair pair = sc.pair();
    const MappingTable T = sc.mapping();
    const ProximalSets sets = proximal_sets(pair);
    report.dAB = sets.dAB;
    report.A0_index = sets.A0_index;

    std::optional<InducedMap> induced;
    try {
        induced = induced_self_map(T, pair);
        for (std::size_t i = 0; i < induced->S.size(); ++i) {
            report.induced_map.emplace_back(detail::position_in(sc.A, induced->S.domain()[i]),
                                            detail::position_in(sc.A, induced->S.image()[i]));
        }
    } catch (const HypothesisError& err) {
        report.induced_map_error = err.what();
    }

    if (mode == RunMode::check || mode == RunMode::run) {
        for (CheckName c : kAllChecks) {
            if (std::find(sc.checks.begin(), sc.checks.end(), c) != sc.checks.end()) {
                report.checks.push_back(detail::run_check(c, sc, sets, induced));
            }
        }
    }
    if (mode == RunMode::check) return report;

    std::vector<std::size_t> starts = sc.starts.value_or(sets.A0_index);
    for (std::size_t s : starts) {
        if (!sets.contains_A0(sc.A[s])) {
            throw InputError("start A[" + std::to_string(s) + "] is not in A0");
        }
    }
    for (std::size_t s : starts) {
        StartResult r{s, {}, std::nullopt};
        if ((mode == RunMode::run || mode == RunMode::compare_routes) && induced) {
            r.routes = verify_route_equivalence(T, pair, sc.A[s], sc.stop);
            r.trace = r.routes->direct;
        } else {
            r.trace = best_proximity_direct(T, pair, sc.A[s], sc.stop);
        }
        report.starts.push_back(std::move(r));
    }
    return report;
}

inline ordered_json report_to_json(const RunReport& r) {
    static const char* mode_names[] = {"check", "solve", "run", "compare-routes"};
    ordered_json out;
    out["scenario"] = r.scenario;
    out["mode"] = mode_names[static_cast<int>(r.mode)];
    out["d_AB"] = detail::num(r.dAB);
    out["A0"] = r.A0_index;
    if (r.mode == RunMode::check || r.mode == RunMode::run) {
        out["checks"] = ordered_json::array();
        for (const auto& c : r.checks) {
            ordered_json entry{{"name", to_string(c.name)}, {"passed", c.passed}};
            for (auto it = c.detail.begin(); it != c.detail.end(); ++it) entry[it.key()] = it.value();
            out["checks"].push_back(std::move(entry));
        }
    }
    if (r.induced_map_error) {
        out["induced_map"] = {{"error", *r.induced_map_error}};
    } else {
        ordered_json table = ordered_json::array();
        for (auto [x, y] : r.induced_map) table.push_back({x, y});
        out["induced_map"] = {{"table", std::move(table)}};
    }
    if (r.mode != RunMode::check) {
        const auto& A = r.A;
        out["starts"] = ordered_json::array();
        for (std::size_t k = 0; k < r.starts.size(); ++k) {
            const auto& s = r.starts[k];
            ordered_json entry{{"start", s.start}, {"x0", detail::point_json(A[s.start])}};
            const ordered_json summary = detail::trace_summary(s.trace, A);
            for (auto it = summary.begin(); it != summary.end(); ++it) entry[it.key()] = it.value();
            if (s.routes) {
                entry["routes_equal"] = s.routes->equal;
                if (s.routes->first_divergence) entry["first_divergence"] = *s.routes->first_divergence;
            }
            entry["trace_file"] = "trace_" + std::to_string(k) + ".csv";
            out["starts"].push_back(std::move(entry));
        }
        const auto limits = r.limits();
        out["limits"] = ordered_json::array();
        for (const auto& p : limits) out["limits"].push_back(detail::point_json(p));
        if (r.mode != RunMode::solve) {
            const auto eq = r.routes_equal();
            out["route_equivalence"] = eq ? ordered_json(*eq) : ordered_json(nullptr);
        }
    }
    out["exit_code"] = r.exit_code();
    return out;
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// iter,<coords...>,step,residual with 17 significant digits; step is empty on row 0.
inline std::string trace_to_csv(const IterationTrace& t) {
    std::string out = "iter";
    const Point& first = t.iterates.front();
    const std::size_t dim = first.is_indexed() ? 0 : first.coords().size();
    if (first.is_indexed()) {
        out += ",index";
    } else {
        for (std::size_t d = 0; d < dim; ++d) out += ",c" + std::to_string(d);
    }
    out += ",step,residual\n";
    for (std::size_t i = 0; i < t.iterates.size(); ++i) {
        out += std::to_string(i);
        const Point& p = t.iterates[i];
        if (p.is_indexed()) {
            out += "," + std::to_string(p.index());
        } else {
            for (double c : p.coords()) out += "," + format_number(c);
        }
        out += ",";
        if (i > 0) out += format_number(t.steps[i - 1]);
        out += "," + format_number(t.residuals[i]) + "\n";
    }
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

/// Writes report.json and trace_<k>.csv for the k-th start.
inline void write_outputs(const RunReport& r, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_text(out_dir / "report.json", report_to_json(r).dump(2) + "\n");
    for (std::size_t k = 0; k < r.starts.size(); ++k) {
        write_text(out_dir / ("trace_" + std::to_string(k) + ".csv"), trace_to_csv(r.starts[k].trace));
    }
}

inline RunReport run_scenario(const std::string& path, const std::filesystem::path& out_dir, RunMode mode) {
    RunReport r = run_scenario(load_scenario(path), mode);
    write_outputs(r, out_dir);
    return r;
}

}  // namespace bestprox
