#pragma once

// Brute-force reference evaluations on plain coordinate vectors. Deliberately
// shares no code with the library: distances, brackets and the quantifier
// enumeration are written out again from the definitions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double euclid(const Vec& p, const Vec& q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    return std::sqrt(s);
}

struct Instance {
    std::vector<std::size_t> idx;
    double lhs;
    double rhs;
    double slack() const { return rhs - lhs; }
};

inline double log_or_minus_inf(double v) {
    return v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

/// Every ordered pair (i, j) with d(S i, S j) > 0 for the Hardy-Rogers inequality
/// with F = ln, where S is given as an index table into pts.
inline std::vector<Instance> hardy_rogers_ln(const std::vector<Vec>& pts, const std::vector<std::size_t>& S,
                                             double a, double b, double c, double e, double L, double tau) {
    std::vector<Instance> out;
    for (std::size_t x = 0; x < pts.size(); ++x) {
        for (std::size_t y = 0; y < pts.size(); ++y) {
            const Vec &px = pts[x], &py = pts[y], &sx = pts[S[x]], &sy = pts[S[y]];
            const double moved = euclid(sx, sy);
            if (moved <= 0) continue;
            const double bracket = a * euclid(px, py) + b * euclid(px, sx) + c * euclid(py, sy) +
                                   e * euclid(px, sy) + L * euclid(py, sx);
            out.push_back({{x, y}, tau + std::log(moved), log_or_minus_inf(bracket)});
        }
    }
    return out;
}

/// Every quadruple (u1, u2, x1, x2) over A with u1 != u2 and d(u_i, T x_i) = dAB
/// exactly, for the proximal first-kind inequality with F = ln. T indexes into B.
inline std::vector<Instance> proximal_ln(const std::vector<Vec>& A, const std::vector<Vec>& B,
                                         const std::vector<std::size_t>& T, double a, double b, double c,
                                         double h, double tau) {
    double dAB = std::numeric_limits<double>::infinity();
    for (const auto& p : A)
        for (const auto& q : B) dAB = std::min(dAB, euclid(p, q));
    std::vector<Instance> out;
    const std::size_t n = A.size();
    for (std::size_t u1 = 0; u1 < n; ++u1)
        for (std::size_t u2 = 0; u2 < n; ++u2)
            for (std::size_t x1 = 0; x1 < n; ++x1)
                for (std::size_t x2 = 0; x2 < n; ++x2) {
                    if (A[u1] == A[u2]) continue;
                    if (euclid(A[u1], B[T[x1]]) != dAB || euclid(A[u2], B[T[x2]]) != dAB) continue;
                    const double bracket = a * euclid(A[x1], A[x2]) + b * euclid(A[u1], A[x1]) +
                                           c * euclid(A[u2], A[x2]) +
                                           h * (euclid(A[u2], A[x1]) + euclid(A[u1], A[x2]));
                    out.push_back({{u1, u2, x1, x2}, tau + std::log(euclid(A[u1], A[u2])),
                                   log_or_minus_inf(bracket)});
                }
    return out;
}

/// Largest tau for which every instance holds: min over instances of rhs - (lhs - tau).
inline double binding_tau(const std::vector<Instance>& inst, double tau_used) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& i : inst) best = std::min(best, i.rhs - (i.lhs - tau_used));
    return best;
}

inline const Instance* first_violation(const std::vector<Instance>& inst, double tol = 1e-12) {
    for (const auto& i : inst)
        if (i.slack() < -tol) return &i;
    return nullptr;
}

/// Orbit of start under an index table until it revisits a point.
inline std::vector<std::size_t> walk(const std::vector<std::size_t>& S, std::size_t start) {
    std::vector<std::size_t> orbit{start};
    std::vector<bool> seen(S.size(), false);
    seen[start] = true;
    while (!seen[S[orbit.back()]]) {
        orbit.push_back(S[orbit.back()]);
        seen[orbit.back()] = true;
    }
    return orbit;
}

}  // namespace oracle
