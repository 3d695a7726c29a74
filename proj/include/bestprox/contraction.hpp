#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bestprox/errors.hpp"
#include "bestprox/f_family.hpp"
#include "bestprox/mapping.hpp"
#include "bestprox/metric.hpp"
#include "bestprox/proximity.hpp"

namespace bestprox {

/// Inequalities are accepted while rhs - lhs >= -kSlackTolerance.
inline constexpr double kSlackTolerance = 1e-12;
/// Tolerance on the coefficient sum constraint.
inline constexpr double kSumTolerance = 1e-12;

/// Hardy-Rogers weights: tau + F(d(Tx,Ty)) <= F(a d(x,y) + b d(x,Tx) + c d(y,Ty)
/// + e d(x,Ty) + L d(y,Tx)) with a, b, c, e, tau > 0, L >= 0, a + b + c + 2e = 1, c != 1.
struct HRCoefficients {
    double a = 0, b = 0, c = 0, e = 0, L = 0, tau = 0;

    void validate() const {
        if (!(a > 0 && b > 0 && c > 0 && e > 0 && tau > 0)) {
            throw InputError("Hardy-Rogers coefficients a, b, c, e, tau must be positive");
        }
        if (!(L >= 0)) throw InputError("Hardy-Rogers coefficient L must be nonnegative");
        if (std::abs(a + b + c + 2 * e - 1.0) > kSumTolerance) {
            throw InputError("Hardy-Rogers coefficients must satisfy a + b + c + 2e = 1");
        }
        if (c == 1.0) throw InputError("Hardy-Rogers coefficient c must differ from 1");
    }

    /// Sufficient condition for a unique fixed point.
    bool uniqueness_clause() const noexcept { return a + e + L <= 1.0; }
};

/// Weights of the proximal first-kind inequality:
/// a, b, c, h, tau > 0 with a + b + c + 2h = 1, c != 1.
struct ProximalCoefficients {
    double a = 0, b = 0, c = 0, h = 0, tau = 0;

    void validate() const {
        if (!(a > 0 && b > 0 && c > 0 && h > 0 && tau > 0)) {
            throw InputError("proximal coefficients a, b, c, h, tau must be positive");
        }
        if (std::abs(a + b + c + 2 * h - 1.0) > kSumTolerance) {
            throw InputError("proximal coefficients must satisfy a + b + c + 2h = 1");
        }
        if (c == 1.0) throw InputError("proximal coefficient c must differ from 1");
    }

    /// The induced self-map inherits the inequality with e = L = h.
    HRCoefficients to_hardy_rogers() const noexcept { return {a, b, c, h, h, tau}; }
};

/// A quantified instance where the inequality fails. For pair checks the points
/// are (x, y); for proximal checks (u1, u2, x1, x2). Indices are positions in
/// the mapping domain.
struct Violation {
    std::vector<Point> points;
    std::vector<std::size_t> indices;
    double lhs = 0;
    double rhs = 0;
    /// rhs - lhs; negative. -inf when the bracket vanishes.
    double slack = 0;
};

struct ContractionReport {
    std::size_t instances_checked = 0;
    std::optional<Violation> violation;

    bool passed() const noexcept { return !violation; }
};

namespace detail {

// F at the bracket, with F(0) read as -inf so a vanishing bracket always fails.
inline double f_at_bracket(const FFunction& f, double bracket) {
    if (bracket <= 0.0) return -std::numeric_limits<double>::infinity();
    return f(bracket);
}

inline bool violates(double lhs, double rhs) { return rhs - lhs < -kSlackTolerance; }

}  // namespace detail

/// tau + F(d(Tx,Ty)) <= F(d(x,y)) for every ordered pair with d(Tx,Ty) > 0.
/// T must map into the ambient space; its images need not be tabulated.
inline ContractionReport check_f_contraction(const MappingTable& T, const FFunction& f, double tau,
                                             const MetricSpace& space) {
    if (!(tau > 0)) throw InputError("tau must be positive");
    T.require_in(space);
    ContractionReport report;
    const auto& X = T.domain();
    const auto& TX = T.image();
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.size(); ++j) {
            const double moved = space.distance(TX[i], TX[j]);
            if (!(moved > 0.0)) continue;
            ++report.instances_checked;
            const double lhs = tau + f(moved);
            const double rhs = detail::f_at_bracket(f, space.distance(X[i], X[j]));
            if (detail::violates(lhs, rhs)) {
                report.violation = Violation{{X[i], X[j]}, {i, j}, lhs, rhs, rhs - lhs};
                return report;
            }
        }
    }
    return report;
}

/// The Hardy-Rogers bracket a d(x,y) + b d(x,Tx) + c d(y,Ty) + e d(x,Ty) + L d(y,Tx).
inline double hardy_rogers_bracket(const MetricSpace& space, const HRCoefficients& k, const Point& x,
                                   const Point& y, const Point& tx, const Point& ty) {
    return k.a * space.distance(x, y) + k.b * space.distance(x, tx) + k.c * space.distance(y, ty) +
           k.e * space.distance(x, ty) + k.L * space.distance(y, tx);
}

/// Hardy-Rogers-type F-contraction over every ordered pair (both orders, since
/// b and c weigh x and y differently) with d(Tx,Ty) > 0.
inline ContractionReport check_hardy_rogers(const MappingTable& T, const FFunction& f,
                                            const HRCoefficients& coef, const MetricSpace& space) {
    coef.validate();
    T.require_in(space);
    ContractionReport report;
    const auto& X = T.domain();
    const auto& TX = T.image();
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.size(); ++j) {
            const double moved = space.distance(TX[i], TX[j]);
            if (!(moved > 0.0)) continue;
            ++report.instances_checked;
            const double lhs = coef.tau + f(moved);
            const double rhs =
                detail::f_at_bracket(f, hardy_rogers_bracket(space, coef, X[i], X[j], TX[i], TX[j]));
            if (detail::violates(lhs, rhs)) {
                report.violation = Violation{{X[i], X[j]}, {i, j}, lhs, rhs, rhs - lhs};
                return report;
            }
        }
    }
    return report;
}

/// The proximal bracket a d(x1,x2) + b d(u1,x1) + c d(u2,x2) + h (d(u2,x1) + d(u1,x2)).
inline double proximal_bracket(const MetricSpace& space, const ProximalCoefficients& k, const Point& u1,
                               const Point& u2, const Point& x1, const Point& x2) {
    return k.a * space.distance(x1, x2) + k.b * space.distance(u1, x1) + k.c * space.distance(u2, x2) +
           k.h * (space.distance(u2, x1) + space.distance(u1, x2));
}

/// Generalized F-proximal contraction of the first kind for T : A -> B. Every
/// quadruple u1, u2, x1, x2 in A with u1 != u2 and d(u_i, T x_i) = d(A, B)
/// (within eps_prox) must satisfy tau + F(d(u1,u2)) <= F(proximal bracket).
/// Enumerated in lexicographic (u1, u2, x1, x2) order by position in A.
inline ContractionReport check_f_proximal_first_kind(const MappingTable& T, const ProximityPair& pair,
                                                     const FFunction& f, const ProximalCoefficients& coef) {
    coef.validate();
    const double dAB = pair_distance(pair);
    T.require_maps(pair.A, pair.B);
    const auto& A = pair.A;
    const auto& space = pair.space;

    // solved_by[u]: positions x with d(A[u], T(A[x])) = d(A, B), ascending.
    std::vector<std::vector<std::size_t>> solved_by(A.size());
    for (std::size_t x = 0; x < A.size(); ++x) {
        const Point& tx = T(A[x]);
        for (std::size_t u = 0; u < A.size(); ++u) {
            if (pair.realizes(A[u], tx, dAB)) solved_by[u].push_back(x);
        }
    }

    ContractionReport report;
    for (std::size_t u1 = 0; u1 < A.size(); ++u1) {
        for (std::size_t u2 = 0; u2 < A.size(); ++u2) {
            if (A[u1] == A[u2]) continue;
            const double moved = space.distance(A[u1], A[u2]);
            for (std::size_t x1 : solved_by[u1]) {
                for (std::size_t x2 : solved_by[u2]) {
                    ++report.instances_checked;
                    const double lhs = coef.tau + f(moved);
                    const double rhs =
                        detail::f_at_bracket(f, proximal_bracket(space, coef, A[u1], A[u2], A[x1], A[x2]));
                    if (detail::violates(lhs, rhs)) {
                        report.violation =
                            Violation{{A[u1], A[u2], A[x1], A[x2]}, {u1, u2, x1, x2}, lhs, rhs, rhs - lhs};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace bestprox
