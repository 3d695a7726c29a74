#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bestprox/errors.hpp"

namespace bestprox {

enum class FKind { ln, ln_plus_alpha, neg_inv_sqrt, identity, table };

inline const char* to_string(FKind kind) {
    switch (kind) {
        case FKind::ln: return "ln";
        case FKind::ln_plus_alpha: return "ln_plus_alpha";
        case FKind::neg_inv_sqrt: return "neg_inv_sqrt";
        case FKind::identity: return "identity";
        case FKind::table: return "table";
    }
    return "?";
}

/// A candidate member of the class of strictly increasing F : (0, inf) -> R with
/// F(a_n) -> -inf iff a_n -> 0 and a^k F(a) -> 0 as a -> 0+.
///
/// Built-in formulas:
///   ln             F(a) = ln a
///   ln_plus_alpha  F(a) = ln a + a
///   neg_inv_sqrt   F(a) = -1 / sqrt(a)
///   identity       F(a) = a + params[0]   (not a member; used to exercise rejection)
///   table          piecewise-linear interpolation through (alpha, value) knots
///
/// The exponent k for the decay condition is declared by the caller, not searched for.
class FFunction {
public:
    static FFunction ln(double k) { return FFunction(FKind::ln, k, {}, {}); }
    static FFunction ln_plus_alpha(double k) { return FFunction(FKind::ln_plus_alpha, k, {}, {}); }
    static FFunction neg_inv_sqrt(double k) { return FFunction(FKind::neg_inv_sqrt, k, {}, {}); }
    static FFunction identity(double k, double shift = 0.0) {
        return FFunction(FKind::identity, k, {shift}, {});
    }

    /// Knots must have strictly increasing positive abscissae; evaluation outside
    /// [first, last] is a domain error.
    static FFunction tabulated(double k, std::vector<std::pair<double, double>> knots) {
        if (knots.size() < 2) throw InputError("tabulated F needs at least two knots");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (!(knots[i].first > 0.0)) throw InputError("tabulated F knots must be positive");
            if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
                throw InputError("tabulated F knots must be strictly increasing");
            }
        }
        return FFunction(FKind::table, k, {}, std::move(knots));
    }

    /// Looks up a built-in formula by its scenario-file tag.
    static FFunction from_tag(std::string_view tag, double k, std::vector<double> params = {}) {
        if (tag == "ln") return ln(k);
        if (tag == "ln_plus_alpha") return ln_plus_alpha(k);
        if (tag == "neg_inv_sqrt") return neg_inv_sqrt(k);
        if (tag == "identity") return identity(k, params.empty() ? 0.0 : params.front());
        throw InputError("unknown F tag '" + std::string(tag) + "'");
    }

    FKind kind() const noexcept { return kind_; }
    double k() const noexcept { return k_; }
    const std::vector<double>& params() const noexcept { return params_; }
    const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

    /// Closed interval on which evaluation is defined (the whole positive axis for formulas).
    std::pair<double, double> support() const noexcept {
        if (kind_ == FKind::table) return {knots_.front().first, knots_.back().first};
        return {0.0, INFINITY};
    }

    double operator()(double alpha) const {
        if (!(alpha > 0.0)) {
            throw DomainError("F is defined on positive reals only, got " + std::to_string(alpha));
        }
        switch (kind_) {
            case FKind::ln: return std::log(alpha);
            case FKind::ln_plus_alpha: return std::log(alpha) + alpha;
            case FKind::neg_inv_sqrt: return -1.0 / std::sqrt(alpha);
            case FKind::identity: return alpha + params_.front();
            case FKind::table: return interpolate(alpha);
        }
        return 0.0;
    }

private:
    FFunction(FKind kind, double k, std::vector<double> params, std::vector<std::pair<double, double>> knots)
        : kind_(kind), k_(k), params_(std::move(params)), knots_(std::move(knots)) {
        if (!(k_ > 0.0 && k_ < 1.0)) {
            throw InputError("exponent k must lie strictly between 0 and 1, got " + std::to_string(k_));
        }
    }

    double interpolate(double alpha) const {
        if (alpha < knots_.front().first || alpha > knots_.back().first) {
            throw DomainError("argument " + std::to_string(alpha) + " outside tabulated range");
        }
        auto hi = std::lower_bound(knots_.begin(), knots_.end(), alpha,
                                   [](const auto& knot, double a) { return knot.first < a; });
        if (hi->first == alpha) return hi->second;
        auto lo = std::prev(hi);
        const double t = (alpha - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }

    FKind kind_;
    double k_;
    std::vector<double> params_;
    std::vector<std::pair<double, double>> knots_;
};

inline double eval_f(const FFunction& f, double alpha) { return f(alpha); }

/// Numerical proxy for the three membership conditions. The limit conditions
/// cannot be decided from finitely many samples, so this is a falsifier plus a
/// trend test along a fixed grid approaching zero.
struct OmegaCheckGrid {
    std::size_t mono_samples = 10000;
    /// Sampling range for the monotonicity pairs, log-uniform.
    double mono_lo = 1e-12;
    double mono_hi = 1e6;
    std::uint64_t seed = 0x5eed0f0du;
    /// Strictly decreasing toward zero.
    std::vector<double> decay_grid = default_decay_grid();
    /// F must fall below this along the grid.
    double divergence_bound = -20.0;
    /// |a^k F(a)| must end below this ...
    double decay_threshold = 1e-2;
    /// ... after strictly decreasing over this many trailing grid points.
    std::size_t decay_tail = 3;

    static std::vector<double> default_decay_grid() {
        std::vector<double> grid;
        for (int e = 1; e <= 12; ++e) grid.push_back(std::pow(10.0, -e));
        return grid;
    }

    void validate() const {
        if (decay_grid.size() < 2) throw InputError("decay grid needs at least two points");
        for (std::size_t i = 0; i < decay_grid.size(); ++i) {
            if (!(decay_grid[i] > 0.0)) throw InputError("decay grid must be strictly positive");
            if (i > 0 && !(decay_grid[i] < decay_grid[i - 1])) {
                throw InputError("decay grid must be strictly decreasing");
            }
        }
        if (!(mono_lo > 0.0 && mono_lo < mono_hi)) throw InputError("bad monotonicity sampling range");
        if (decay_tail < 2 || decay_tail > decay_grid.size()) throw InputError("bad decay tail length");
    }
};

enum class OmegaCondition { monotone = 1, divergence = 2, decay = 3 };

inline const char* to_string(OmegaCondition c) {
    switch (c) {
        case OmegaCondition::monotone: return "monotone";
        case OmegaCondition::divergence: return "divergence";
        case OmegaCondition::decay: return "decay";
    }
    return "?";
}

struct OmegaWitness {
    OmegaCondition condition;
    double alpha;
    double value;
    /// Monotone failures: the larger argument of the offending pair and F there.
    std::optional<std::pair<double, double>> partner;
};

struct OmegaReport {
    bool passed_monotone = true;
    bool passed_divergence = true;
    bool passed_decay = true;
    /// Describes the first failing condition, in condition order.
    std::optional<OmegaWitness> witness;

    bool passed() const noexcept { return passed_monotone && passed_divergence && passed_decay; }
};

namespace detail {

// Platform-independent uniform draw in [0, 1).
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

inline OmegaReport check_omega_membership(const FFunction& f, const OmegaCheckGrid& grid = {}) {
    grid.validate();
    OmegaReport report;
    auto note = [&](OmegaWitness w) {
        if (!report.witness) report.witness = std::move(w);
    };

    // (i) strict monotonicity on log-uniform random pairs within the support.
    {
        const auto [s_lo, s_hi] = f.support();
        const double lo = std::max(grid.mono_lo, s_lo);
        const double hi = std::min(grid.mono_hi, s_hi);
        std::mt19937_64 rng(grid.seed);
        const double log_lo = std::log(lo), log_span = std::log(hi) - std::log(lo);
        for (std::size_t s = 0; s < grid.mono_samples && report.passed_monotone; ++s) {
            double a1 = std::exp(log_lo + log_span * detail::unit_draw(rng));
            double a2 = std::exp(log_lo + log_span * detail::unit_draw(rng));
            if (a1 == a2) continue;
            if (a1 > a2) std::swap(a1, a2);
            const double f1 = f(a1), f2 = f(a2);
            if (!(f1 < f2)) {
                report.passed_monotone = false;
                note({OmegaCondition::monotone, a1, f1, std::pair{a2, f2}});
            }
        }
    }

    std::vector<double> values;
    values.reserve(grid.decay_grid.size());
    for (double a : grid.decay_grid) values.push_back(f(a));

    // (ii) F must keep decreasing along the grid and fall below the bound.
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] < values[i - 1])) {
            report.passed_divergence = false;
            note({OmegaCondition::divergence, grid.decay_grid[i], values[i], std::nullopt});
            break;
        }
    }
    if (report.passed_divergence && !(values.back() < grid.divergence_bound)) {
        report.passed_divergence = false;
        note({OmegaCondition::divergence, grid.decay_grid.back(), values.back(), std::nullopt});
    }

    // (iii) |a^k F(a)| strictly decreasing over the trailing points and small at the end.
    std::vector<double> decay;
    decay.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        decay.push_back(std::abs(std::pow(grid.decay_grid[i], f.k()) * values[i]));
    }
    const std::size_t first = decay.size() - grid.decay_tail;
    for (std::size_t i = first + 1; i < decay.size(); ++i) {
        if (!(decay[i] < decay[i - 1])) {
            report.passed_decay = false;
            note({OmegaCondition::decay, grid.decay_grid[i], decay[i], std::nullopt});
            break;
        }
    }
    if (report.passed_decay && !(decay.back() <= grid.decay_threshold)) {
        report.passed_decay = false;
        note({OmegaCondition::decay, grid.decay_grid.back(), decay.back(), std::nullopt});
    }
    return report;
}

}  // namespace bestprox
