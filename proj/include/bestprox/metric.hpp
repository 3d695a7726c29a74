#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bestprox/errors.hpp"

namespace bestprox {

/// An element of a finite metric space: either a coordinate tuple (geometric
/// spaces) or an index into a distance matrix.
class Point {
public:
    Point() = default;

    static Point at(std::vector<double> coords) { return Point(std::move(coords)); }
    static Point indexed(std::size_t index) { return Point(index); }

    bool is_indexed() const noexcept { return std::holds_alternative<std::size_t>(rep_); }

    const std::vector<double>& coords() const {
        if (is_indexed()) throw InputError("point is an index, not a coordinate tuple");
        return std::get<std::vector<double>>(rep_);
    }

    std::size_t index() const {
        if (!is_indexed()) throw InputError("point is a coordinate tuple, not an index");
        return std::get<std::size_t>(rep_);
    }

    std::string to_string() const {
        if (is_indexed()) return "#" + std::to_string(index());
        std::string out = "(";
        const auto& c = coords();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += ",";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", c[i]);
            out += buf;
        }
        return out + ")";
    }

    friend bool operator==(const Point&, const Point&) = default;

private:
    explicit Point(std::vector<double> coords) : rep_(std::move(coords)) {}
    explicit Point(std::size_t index) : rep_(index) {}

    std::variant<std::vector<double>, std::size_t> rep_{std::vector<double>{}};
};

enum class MetricKind { euclidean, chebyshev, matrix };

inline const char* to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::chebyshev: return "chebyshev";
        case MetricKind::matrix: return "matrix";
    }
    return "?";
}

/// A metric d on R^dim (euclidean / chebyshev) or on {0..n-1} given by a matrix.
class MetricSpace {
public:
    static MetricSpace euclidean(std::size_t dim) { return MetricSpace(MetricKind::euclidean, dim, {}); }
    static MetricSpace chebyshev(std::size_t dim) { return MetricSpace(MetricKind::chebyshev, dim, {}); }

    /// Rows must be square. Metric axioms are not enforced here; run
    /// check_metric_axioms on the result.
    static MetricSpace matrix(std::vector<std::vector<double>> dmatrix) {
        for (const auto& row : dmatrix) {
            if (row.size() != dmatrix.size()) throw InputError("dmatrix must be square");
        }
        if (dmatrix.empty()) throw InputError("dmatrix must be nonempty");
        const std::size_t n = dmatrix.size();
        return MetricSpace(MetricKind::matrix, n, std::move(dmatrix));
    }

    MetricKind kind() const noexcept { return kind_; }

    /// Coordinate dimension for geometric kinds; number of points for matrix kind.
    std::size_t dim() const noexcept { return dim_; }

    const std::vector<std::vector<double>>& dmatrix() const noexcept { return dmatrix_; }

    bool contains(const Point& p) const noexcept {
        if (kind_ == MetricKind::matrix) return p.is_indexed() && p.index() < dim_;
        return !p.is_indexed() && p.coords().size() == dim_;
    }

    void require(const Point& p) const {
        if (!contains(p)) {
            throw InputError("point " + p.to_string() + " is not valid in the " +
                             std::string(to_string(kind_)) + " space of dimension " +
                             std::to_string(dim_));
        }
    }

    double distance(const Point& p, const Point& q) const {
        require(p);
        require(q);
        switch (kind_) {
            case MetricKind::euclidean: {
                const auto& a = p.coords();
                const auto& b = q.coords();
                double sum = 0.0;
                for (std::size_t i = 0; i < dim_; ++i) {
                    const double diff = a[i] - b[i];
                    sum += diff * diff;
                }
                return std::sqrt(sum);
            }
            case MetricKind::chebyshev: {
                const auto& a = p.coords();
                const auto& b = q.coords();
                double best = 0.0;
                for (std::size_t i = 0; i < dim_; ++i) best = std::max(best, std::abs(a[i] - b[i]));
                return best;
            }
            case MetricKind::matrix:
                return dmatrix_[p.index()][q.index()];
        }
        return 0.0;
    }

    double operator()(const Point& p, const Point& q) const { return distance(p, q); }

private:
    MetricSpace(MetricKind kind, std::size_t dim, std::vector<std::vector<double>> dmatrix)
        : kind_(kind), dim_(dim), dmatrix_(std::move(dmatrix)) {}

    MetricKind kind_;
    std::size_t dim_;
    std::vector<std::vector<double>> dmatrix_;
};

inline double distance(const MetricSpace& space, const Point& p, const Point& q) {
    return space.distance(p, q);
}

enum class MetricAxiom { nonnegativity, identity, symmetry, triangle };

inline const char* to_string(MetricAxiom axiom) {
    switch (axiom) {
        case MetricAxiom::nonnegativity: return "nonnegativity";
        case MetricAxiom::identity: return "identity";
        case MetricAxiom::symmetry: return "symmetry";
        case MetricAxiom::triangle: return "triangle";
    }
    return "?";
}

using PointTriple = std::array<Point, 3>;

struct AxiomWitness {
    MetricAxiom axiom;
    /// Matrix kind: point indices. Sampled kind: {sample index, 0, 0}.
    std::array<std::size_t, 3> indices;
    PointTriple points;
    /// The two sides of the violated relation, e.g. d(p,r) and d(p,q)+d(q,r).
    double lhs;
    double rhs;
};

struct AxiomReport {
    std::size_t triples_checked = 0;
    std::optional<AxiomWitness> witness;

    bool passed() const noexcept { return !witness.has_value(); }
};

namespace detail {

// Triangle-inequality slack allowed for accumulated rounding in the sum.
inline double triangle_tolerance(double rhs) { return 1e-12 * (1.0 + std::abs(rhs)); }

inline std::optional<std::pair<MetricAxiom, std::pair<double, double>>>
check_triple(const MetricSpace& space, const Point& p, const Point& q, const Point& r) {
    const double dpq = space.distance(p, q);
    const double dqp = space.distance(q, p);
    const double dpp = space.distance(p, p);
    const double dqr = space.distance(q, r);
    const double dpr = space.distance(p, r);
    if (dpq < 0.0) return std::pair{MetricAxiom::nonnegativity, std::pair{dpq, 0.0}};
    if (dpp != 0.0) return std::pair{MetricAxiom::identity, std::pair{dpp, 0.0}};
    if (dpq != dqp) return std::pair{MetricAxiom::symmetry, std::pair{dpq, dqp}};
    if (p != q && dpq == 0.0) {
        return std::pair{MetricAxiom::identity, std::pair{dpq, 0.0}};
    }
    const double sum = dpq + dqr;
    if (dpr > sum + triangle_tolerance(sum)) {
        return std::pair{MetricAxiom::triangle, std::pair{dpr, sum}};
    }
    return std::nullopt;
}

}  // namespace detail

/// Verifies nonnegativity, d(p,p) = 0, symmetry and the triangle inequality
/// d(p,r) <= d(p,q) + d(q,r) on each triple. For a matrix space the sample is
/// ignored and every index triple is enumerated; the witness is the first
/// violating triple in lexicographic order.
inline AxiomReport check_metric_axioms(const MetricSpace& space, std::span<const PointTriple> sample) {
    AxiomReport report;
    if (space.kind() == MetricKind::matrix) {
        const std::size_t n = space.dim();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    ++report.triples_checked;
                    const auto p = Point::indexed(i), q = Point::indexed(j), r = Point::indexed(k);
                    if (auto bad = detail::check_triple(space, p, q, r)) {
                        report.witness = AxiomWitness{bad->first, {i, j, k}, {p, q, r},
                                                      bad->second.first, bad->second.second};
                        return report;
                    }
                }
            }
        }
        return report;
    }
    for (std::size_t s = 0; s < sample.size(); ++s) {
        ++report.triples_checked;
        const auto& [p, q, r] = sample[s];
        if (auto bad = detail::check_triple(space, p, q, r)) {
            report.witness = AxiomWitness{bad->first, {s, 0, 0}, sample[s],
                                          bad->second.first, bad->second.second};
            return report;
        }
    }
    return report;
}

/// Exhaustive variant over every ordered triple drawn from a finite pool.
inline AxiomReport check_metric_axioms_on(const MetricSpace& space, std::span<const Point> pool) {
    if (space.kind() == MetricKind::matrix) return check_metric_axioms(space, {});
    AxiomReport report;
    const std::size_t n = pool.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                ++report.triples_checked;
                if (auto bad = detail::check_triple(space, pool[i], pool[j], pool[k])) {
                    report.witness = AxiomWitness{bad->first, {i, j, k}, {pool[i], pool[j], pool[k]},
                                                  bad->second.first, bad->second.second};
                    return report;
                }
            }
        }
    }
    return report;
}

}  // namespace bestprox
