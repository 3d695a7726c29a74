#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bestprox/errors.hpp"
#include "bestprox/mapping.hpp"
#include "bestprox/metric.hpp"
#include "bestprox/proximity.hpp"

namespace bestprox {

struct StopRule {
    /// Threshold on d(x_{n+1}, x_n) below which a run that has not met the
    /// residual test is declared stalled.
    double tol_step = 1e-9;
    /// |d(x, Tx) - d(A, B)| for proximity runs, d(x, Sx) for fixed-point runs.
    double tol_residual = 1e-9;
    std::size_t max_iter = 10000;

    void validate() const {
        if (max_iter < 1) throw InputError("max_iter must be at least 1");
        if (!(tol_step >= 0) || !(tol_residual >= 0)) throw InputError("tolerances must be nonnegative");
    }
};

enum class TraceStatus { converged, max_iter_reached, stalled, step_failed };

inline const char* to_string(TraceStatus s) {
    switch (s) {
        case TraceStatus::converged: return "converged";
        case TraceStatus::max_iter_reached: return "max_iter_reached";
        case TraceStatus::stalled: return "stalled";
        case TraceStatus::step_failed: return "step_failed";
    }
    return "?";
}

/// iterates x_0..x_n, residuals r_0..r_n, steps d(x_1,x_0)..d(x_n,x_{n-1}).
struct IterationTrace {
    std::vector<Point> iterates;
    std::vector<double> steps;
    std::vector<double> residuals;
    TraceStatus status = TraceStatus::max_iter_reached;
    /// step_failed: why the step out of the final iterate could not be taken.
    std::string failure;

    std::size_t iterations() const noexcept { return steps.size(); }
    const Point& final_point() const { return iterates.back(); }
    double final_residual() const { return residuals.back(); }
    bool converged() const noexcept { return status == TraceStatus::converged; }
};

namespace detail {

// Shared by both routes: each run records x_0 and stops as soon as an iterate
// meets the residual threshold. Convergence also requires the step out of the
// final iterate to be well defined, so an ambiguous proximity equation at a
// residual-zero point is still reported as step_failed.
template <class Step, class Residual>
IterationTrace run_iteration(const Point& x0, Step&& step, Residual&& residual, const StopRule& stop,
                             const MetricSpace& space, double threshold) {
    stop.validate();
    IterationTrace trace;
    trace.iterates.push_back(x0);
    trace.residuals.push_back(residual(x0));
    for (;;) {
        if (trace.residuals.back() <= threshold) {
            try {
                (void)step(trace.iterates.back());
                trace.status = TraceStatus::converged;
            } catch (const HypothesisError& err) {
                trace.status = TraceStatus::step_failed;
                trace.failure = err.what();
            }
            break;
        }
        if (trace.iterations() >= stop.max_iter) {
            trace.status = TraceStatus::max_iter_reached;
            break;
        }
        std::optional<Point> next;
        try {
            next = step(trace.iterates.back());
        } catch (const HypothesisError& err) {
            trace.status = TraceStatus::step_failed;
            trace.failure = err.what();
            break;
        }
        const double moved = space.distance(*next, trace.iterates.back());
        trace.steps.push_back(moved);
        trace.residuals.push_back(residual(*next));
        trace.iterates.push_back(std::move(*next));
        if (moved <= stop.tol_step && trace.residuals.back() > threshold) {
            trace.status = TraceStatus::stalled;
            break;
        }
    }
    return trace;
}

}  // namespace detail

/// Solves d(y, target) = d(A, B) for y in A0. Several numerically admissible
/// candidates are accepted only if they are the same point.
inline Point solve_proximity_equation(const ProximityPair& pair, const ProximalSets& sets, const Point& target) {
    std::optional<Point> found;
    for (const auto& y : sets.A0) {
        if (!pair.realizes(y, target, sets.dAB)) continue;
        if (found && *found != y) {
            throw HypothesisError(HypothesisError::Kind::multiple_candidates,
                                  "p-property violated numerically: " + found->to_string() + " and " +
                                      y.to_string() + " both realize d(A,B) against " + target.to_string());
        }
        found = y;
    }
    if (!found) {
        throw HypothesisError(HypothesisError::Kind::no_candidate,
                              "T(A0) not contained in B0 effectively: no point of A0 realizes d(A,B) against " +
                                  target.to_string());
    }
    return *found;
}

/// S : A0 -> A0 with d(Sx, Tx) = d(A, B).
struct InducedMap {
    MappingTable S;
    ProximalSets sets;
};

inline InducedMap induced_self_map(const MappingTable& T, const ProximityPair& pair) {
    InducedMap out{{}, proximal_sets(pair)};
    const auto& sets = out.sets;
    if (sets.A0.empty()) throw InputError("A0 is empty");
    T.require_maps(sets.A0, pair.B);
    std::vector<Point> image;
    image.reserve(sets.A0.size());
    for (const auto& x : sets.A0) image.push_back(solve_proximity_equation(pair, sets, T(x)));
    out.S = MappingTable(sets.A0, std::move(image));
    return out;
}

/// x_{n+1} = S(x_n) with residual d(x_n, S x_n).
inline IterationTrace picard_fixed_point(const MappingTable& S, const Point& x0, const StopRule& stop,
                                         const MetricSpace& space) {
    if (!S.defined_at(x0)) throw InputError("start " + x0.to_string() + " is outside the domain of S");
    if (!S.is_self_map()) throw InputError("S does not map its domain into itself");
    S.require_in(space);
    return detail::run_iteration(
        x0, [&](const Point& x) { return S(x); },
        [&](const Point& x) { return space.distance(x, S(x)); }, stop, space, stop.tol_residual);
}

/// |d(x, Tx) - d(A, B)|.
inline double verify_best_proximity(const Point& x, const MappingTable& T, const ProximityPair& pair) {
    if (std::find(pair.A.begin(), pair.A.end(), x) == pair.A.end()) {
        throw InputError(x.to_string() + " is not a point of A");
    }
    return std::abs(pair.space.distance(x, T(x)) - pair_distance(pair));
}

/// x_{n+1} is the unique y in A0 with d(y, T x_n) = d(A, B). The residual
/// threshold is max(tol_residual, eps_prox), the resolution at which the
/// proximity equation itself is decided.
inline IterationTrace best_proximity_direct(const MappingTable& T, const ProximityPair& pair, const Point& x0,
                                            const StopRule& stop) {
    const ProximalSets sets = proximal_sets(pair);
    if (!sets.contains_A0(x0)) throw InputError("start " + x0.to_string() + " is not in A0");
    T.require_maps(pair.A, pair.B);
    return detail::run_iteration(
        x0, [&](const Point& x) { return solve_proximity_equation(pair, sets, T(x)); },
        [&](const Point& x) { return std::abs(pair.space.distance(x, T(x)) - sets.dAB); }, stop, pair.space,
        std::max(stop.tol_residual, pair.eps_prox));
}

struct RouteComparison {
    bool equal = false;
    /// First iterate index at which the traces differ (or the shorter length).
    std::optional<std::size_t> first_divergence;
    IterationTrace direct;
    IterationTrace reduced;
};

inline std::optional<std::size_t> first_divergence(const IterationTrace& lhs, const IterationTrace& rhs) {
    const std::size_t n = std::min(lhs.iterates.size(), rhs.iterates.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (lhs.iterates[i] != rhs.iterates[i]) return i;
    }
    if (lhs.iterates.size() != rhs.iterates.size()) return n;
    return std::nullopt;
}

/// Runs the direct proximity iteration and Picard iteration of the induced
/// self-map from the same start; equal iff the iterates coincide exactly.
/// Throws HypothesisError when the induced map does not exist.
inline RouteComparison verify_route_equivalence(const MappingTable& T, const ProximityPair& pair, const Point& x0,
                                                const StopRule& stop) {
    const InducedMap induced = induced_self_map(T, pair);
    RouteComparison cmp;
    cmp.direct = best_proximity_direct(T, pair, x0, stop);
    cmp.reduced = picard_fixed_point(induced.S, x0, stop, pair.space);
    cmp.first_divergence = first_divergence(cmp.direct, cmp.reduced);
    cmp.equal = !cmp.first_divergence.has_value();
    return cmp;
}

}  // namespace bestprox
