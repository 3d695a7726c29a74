#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bestprox/errors.hpp"
#include "bestprox/metric.hpp"

namespace bestprox {

/// Two nonempty finite subsets A, B of a metric space. eps_prox is the tolerance
/// used whenever an equation d(x, y) = d(A, B) is tested; 0 means exact.
struct ProximityPair {
    MetricSpace space;
    std::vector<Point> A;
    std::vector<Point> B;
    double eps_prox = 0.0;

    void validate() const {
        if (A.empty() || B.empty()) throw InputError("proximity pair needs nonempty A and B");
        if (!(eps_prox >= 0.0)) throw InputError("eps_prox must be nonnegative");
        for (const auto& p : A) space.require(p);
        for (const auto& p : B) space.require(p);
    }

    /// True when |d(x, y) - dAB| <= eps_prox.
    bool realizes(const Point& x, const Point& y, double dAB) const {
        return std::abs(space.distance(x, y) - dAB) <= eps_prox;
    }
};

/// d(A, B) = min over a in A, b in B of d(a, b). The infimum is attained on finite sets.
inline double pair_distance(const ProximityPair& pair) {
    pair.validate();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : pair.A) {
        for (const auto& b : pair.B) best = std::min(best, pair.space.distance(a, b));
    }
    return best;
}

/// A0 and B0 as sublists of A and B in input order, with their positions.
/// Finite sets, so A0 is trivially closed.
struct ProximalSets {
    double dAB = 0.0;
    std::vector<Point> A0;
    std::vector<Point> B0;
    std::vector<std::size_t> A0_index;
    std::vector<std::size_t> B0_index;

    bool contains_A0(const Point& p) const {
        for (const auto& q : A0) {
            if (q == p) return true;
        }
        return false;
    }
    bool contains_B0(const Point& p) const {
        for (const auto& q : B0) {
            if (q == p) return true;
        }
        return false;
    }
};

inline ProximalSets proximal_sets(const ProximityPair& pair) {
    ProximalSets sets;
    sets.dAB = pair_distance(pair);
    for (std::size_t i = 0; i < pair.A.size(); ++i) {
        for (const auto& b : pair.B) {
            if (pair.realizes(pair.A[i], b, sets.dAB)) {
                sets.A0.push_back(pair.A[i]);
                sets.A0_index.push_back(i);
                break;
            }
        }
    }
    for (std::size_t j = 0; j < pair.B.size(); ++j) {
        for (const auto& a : pair.A) {
            if (pair.realizes(a, pair.B[j], sets.dAB)) {
                sets.B0.push_back(pair.B[j]);
                sets.B0_index.push_back(j);
                break;
            }
        }
    }
    return sets;
}

struct PPropertyWitness {
    /// Positions of u1, u2 in A and v1, v2 in B.
    std::size_t u1, u2, v1, v2;
    double within_A;  ///< d(u1, u2)
    double within_B;  ///< d(v1, v2)
};

struct PPropertyReport {
    /// Set when A0 is empty: the property's side condition A0 != {} fails and
    /// nothing is checked.
    bool precondition_failed = false;
    std::size_t quadruples_checked = 0;
    std::optional<PPropertyWitness> witness;

    bool passed() const noexcept { return !precondition_failed && !witness; }
};

/// For all u1, u2 in A and v1, v2 in B with d(u1, v1) = d(u2, v2) = d(A, B),
/// require d(u1, u2) = d(v1, v2), both within eps_prox. Returns the first
/// failing quadruple in lexicographic (u1, u2, v1, v2) order.
inline PPropertyReport check_p_property(const ProximityPair& pair) {
    PPropertyReport report;
    const double dAB = pair_distance(pair);

    // partners[i]: positions j in B with (A[i], B[j]) realizing d(A, B), ascending.
    std::vector<std::vector<std::size_t>> partners(pair.A.size());
    bool any = false;
    for (std::size_t i = 0; i < pair.A.size(); ++i) {
        for (std::size_t j = 0; j < pair.B.size(); ++j) {
            if (pair.realizes(pair.A[i], pair.B[j], dAB)) {
                partners[i].push_back(j);
                any = true;
            }
        }
    }
    if (!any) {
        report.precondition_failed = true;
        return report;
    }

    for (std::size_t u1 = 0; u1 < pair.A.size(); ++u1) {
        for (std::size_t u2 = 0; u2 < pair.A.size(); ++u2) {
            if (partners[u1].empty() || partners[u2].empty()) continue;
            const double within_A = pair.space.distance(pair.A[u1], pair.A[u2]);
            for (std::size_t v1 : partners[u1]) {
                for (std::size_t v2 : partners[u2]) {
                    ++report.quadruples_checked;
                    const double within_B = pair.space.distance(pair.B[v1], pair.B[v2]);
                    if (std::abs(within_A - within_B) > pair.eps_prox) {
                        report.witness = PPropertyWitness{u1, u2, v1, v2, within_A, within_B};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

struct CompactnessReport {
    bool passed = true;
    std::string justification;
};

/// Any sequence in a finite B has a constant, hence convergent, subsequence, so
/// B is approximatively compact with respect to any A. Recorded rather than tested.
inline CompactnessReport check_approx_compactness(const ProximityPair& pair) {
    pair.validate();
    return {true, "B is finite (" + std::to_string(pair.B.size()) +
                      " points): every sequence in B takes some value infinitely often, "
                      "giving a constant convergent subsequence"};
}

}  // namespace bestprox
