#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bestprox/contraction.hpp"
#include "bestprox/errors.hpp"
#include "bestprox/f_family.hpp"
#include "bestprox/mapping.hpp"
#include "bestprox/metric.hpp"
#include "bestprox/proximity.hpp"
#include "bestprox/solver.hpp"

namespace bestprox {

using ordered_json = nlohmann::ordered_json;

/// Hypothesis checks in the order the runner executes them.
enum class CheckName { metric_axioms, omega, proximal_image, p_property, approx_compactness, contraction };

inline constexpr CheckName kAllChecks[] = {CheckName::metric_axioms,  CheckName::omega,
                                           CheckName::proximal_image, CheckName::p_property,
                                           CheckName::approx_compactness, CheckName::contraction};

inline const char* to_string(CheckName c) {
    switch (c) {
        case CheckName::metric_axioms: return "metric_axioms";
        case CheckName::omega: return "omega";
        case CheckName::proximal_image: return "proximal_image";
        case CheckName::p_property: return "p_property";
        case CheckName::approx_compactness: return "approx_compactness";
        case CheckName::contraction: return "contraction";
    }
    return "?";
}

inline CheckName check_from_string(const std::string& s) {
    for (CheckName c : kAllChecks) {
        if (s == to_string(c)) return c;
    }
    throw InputError("unknown check '" + s + "'");
}

/// A complete, validated scenario: the pair (A, B), the mapping T : A -> B
/// given by index pairs, F, coefficients, and the run configuration.
struct ScenarioFile {
    std::string name = "scenario";
    MetricSpace space = MetricSpace::euclidean(2);
    /// Optional shared pool that A and B may index into (geometric kinds).
    std::vector<Point> pool;
    std::vector<Point> A;
    std::vector<Point> B;
    /// (position in A, position in B): T(A[i]) = B[j]. Total on A.
    std::vector<std::pair<std::size_t, std::size_t>> T;
    FFunction f = FFunction::ln(0.5);
    std::variant<ProximalCoefficients, HRCoefficients> coefficients = ProximalCoefficients{};
    double eps_prox = 0.0;
    StopRule stop;
    /// Positions in A; nullopt means every point of A0.
    std::optional<std::vector<std::size_t>> starts;
    std::vector<CheckName> checks{std::begin(kAllChecks), std::end(kAllChecks)};
    std::uint64_t seed = 0;

    ProximityPair pair() const { return {space, A, B, eps_prox}; }

    MappingTable mapping() const {
        std::vector<Point> dom, img;
        for (auto [i, j] : T) {
            dom.push_back(A[i]);
            img.push_back(B[j]);
        }
        return {std::move(dom), std::move(img)};
    }

    double tau() const {
        return std::visit([](const auto& c) { return c.tau; }, coefficients);
    }

    void validate() const {
        pair().validate();
        for (const auto& p : pool) space.require(p);
        std::vector<bool> seen(A.size(), false);
        for (auto [i, j] : T) {
            if (i >= A.size() || j >= B.size()) throw InputError("T index pair out of range");
            if (seen[i]) throw InputError("T assigns A[" + std::to_string(i) + "] twice");
            seen[i] = true;
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw InputError("T must be defined on every point of A");
        }
        for (std::size_t i = 0; i < A.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (A[i] == A[j]) throw InputError("A lists a point twice");
            }
        }
        std::visit([](const auto& c) { c.validate(); }, coefficients);
        stop.validate();
        if (starts) {
            for (std::size_t s : *starts) {
                if (s >= A.size()) throw InputError("start index out of range");
            }
        }
    }
};

namespace detail {

[[noreturn]] inline void fail_at(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

inline const nlohmann::json& require_key(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) fail_at(where, std::string("missing field '") + key + "'");
    return obj.at(key);
}

inline double number_at(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) fail_at(where, "expected a number");
    return j.get<double>();
}

inline std::size_t index_at(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail_at(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline Point point_at(const nlohmann::json& j, const MetricSpace& space, const std::string& where) {
    if (space.kind() == MetricKind::matrix) {
        Point p = Point::indexed(index_at(j, where));
        if (!space.contains(p)) fail_at(where, "matrix index out of range");
        return p;
    }
    if (!j.is_array()) fail_at(where, "expected a coordinate array");
    std::vector<double> coords;
    for (std::size_t i = 0; i < j.size(); ++i) coords.push_back(number_at(j[i], where + "/" + std::to_string(i)));
    Point p = Point::at(std::move(coords));
    if (!space.contains(p)) fail_at(where, "point has wrong dimension");
    return p;
}

inline std::vector<Point> point_set_at(const nlohmann::json& j, const MetricSpace& space,
                                       const std::vector<Point>& pool, const std::string& where) {
    if (!j.is_array() || j.empty()) fail_at(where, "expected a nonempty array");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        if (space.kind() != MetricKind::matrix && j[i].is_number_integer()) {
            const std::size_t k = index_at(j[i], at);
            if (k >= pool.size()) fail_at(at, "pool index out of range");
            out.push_back(pool[k]);
        } else {
            out.push_back(point_at(j[i], space, at));
        }
    }
    return out;
}

inline std::string line_context(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline ordered_json point_json(const Point& p) {
    if (p.is_indexed()) return p.index();
    return p.coords();
}

}  // namespace detail

inline ScenarioFile scenario_from_json(const nlohmann::json& doc) {
    using namespace detail;
    if (!doc.is_object()) fail_at("/", "scenario must be an object");
    ScenarioFile sc;
    if (doc.contains("name")) sc.name = doc.at("name").get<std::string>();

    const auto& space = require_key(doc, "space", "/");
    const std::string kind = require_key(space, "kind", "/space").get<std::string>();
    if (kind == "euclidean" || kind == "chebyshev") {
        const std::size_t dim = index_at(require_key(space, "dim", "/space"), "/space/dim");
        if (dim == 0) fail_at("/space/dim", "dimension must be positive");
        sc.space = kind == "euclidean" ? MetricSpace::euclidean(dim) : MetricSpace::chebyshev(dim);
    } else if (kind == "matrix") {
        const auto& dm = require_key(space, "dmatrix", "/space");
        if (!dm.is_array()) fail_at("/space/dmatrix", "expected a square array");
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < dm.size(); ++i) {
            const std::string at = "/space/dmatrix/" + std::to_string(i);
            if (!dm[i].is_array()) fail_at(at, "expected a row array");
            std::vector<double> row;
            for (std::size_t k = 0; k < dm[i].size(); ++k) row.push_back(number_at(dm[i][k], at));
            rows.push_back(std::move(row));
        }
        sc.space = MetricSpace::matrix(std::move(rows));
    } else {
        fail_at("/space/kind", "unknown metric kind '" + kind + "'");
    }

    if (doc.contains("points")) {
        const auto& pts = doc.at("points");
        if (!pts.is_array()) fail_at("/points", "expected an array");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sc.pool.push_back(point_at(pts[i], sc.space, "/points/" + std::to_string(i)));
        }
    }
    sc.A = point_set_at(require_key(doc, "A", "/"), sc.space, sc.pool, "/A");
    sc.B = point_set_at(require_key(doc, "B", "/"), sc.space, sc.pool, "/B");

    const auto& t = require_key(doc, "T", "/");
    if (!t.is_array()) fail_at("/T", "expected an array of [A index, B index] pairs");
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string at = "/T/" + std::to_string(i);
        if (!t[i].is_array() || t[i].size() != 2) fail_at(at, "expected an index pair");
        sc.T.emplace_back(index_at(t[i][0], at), index_at(t[i][1], at));
    }

    const auto& f = require_key(doc, "f", "/");
    const std::string tag = require_key(f, "tag", "/f").get<std::string>();
    const double k = number_at(require_key(f, "k", "/f"), "/f/k");
    try {
        if (tag == "table") {
            std::vector<std::pair<double, double>> knots;
            for (const auto& kv : require_key(f, "knots", "/f")) {
                if (!kv.is_array() || kv.size() != 2) fail_at("/f/knots", "expected [alpha, value] pairs");
                knots.emplace_back(number_at(kv[0], "/f/knots"), number_at(kv[1], "/f/knots"));
            }
            sc.f = FFunction::tabulated(k, std::move(knots));
        } else {
            std::vector<double> params;
            if (f.contains("params")) {
                for (const auto& p : f.at("params")) params.push_back(number_at(p, "/f/params"));
            }
            sc.f = FFunction::from_tag(tag, k, std::move(params));
        }
    } catch (const InputError& err) {
        fail_at("/f", err.what());
    }

    const auto& coef = require_key(doc, "coefficients", "/");
    const double tau = number_at(require_key(doc, "tau", "/"), "/tau");
    const bool proximal = coef.contains("h");
    const bool hardy = coef.contains("e") || coef.contains("L");
    if (proximal == hardy) {
        fail_at("/coefficients", "give exactly one form: {a,b,c,h} or {a,b,c,e,L}");
    }
    auto num = [&](const char* key) { return number_at(require_key(coef, key, "/coefficients"), "/coefficients"); };
    if (proximal) {
        sc.coefficients = ProximalCoefficients{num("a"), num("b"), num("c"), num("h"), tau};
    } else {
        sc.coefficients = HRCoefficients{num("a"), num("b"), num("c"), num("e"), num("L"), tau};
    }

    if (doc.contains("eps_prox")) sc.eps_prox = number_at(doc.at("eps_prox"), "/eps_prox");
    if (doc.contains("stop")) {
        const auto& s = doc.at("stop");
        if (s.contains("tol_step")) sc.stop.tol_step = number_at(s.at("tol_step"), "/stop/tol_step");
        if (s.contains("tol_residual")) sc.stop.tol_residual = number_at(s.at("tol_residual"), "/stop/tol_residual");
        if (s.contains("max_iter")) sc.stop.max_iter = index_at(s.at("max_iter"), "/stop/max_iter");
    }
    if (doc.contains("starts")) {
        const auto& st = doc.at("starts");
        if (st.is_string()) {
            if (st.get<std::string>() != "all-A0") fail_at("/starts", "expected \"all-A0\" or a list");
        } else if (st.is_array()) {
            std::vector<std::size_t> starts;
            for (std::size_t i = 0; i < st.size(); ++i) {
                const std::string at = "/starts/" + std::to_string(i);
                if (st[i].is_number_integer()) {
                    starts.push_back(index_at(st[i], at));
                } else {
                    const Point p = point_at(st[i], sc.space, at);
                    auto it = std::find(sc.A.begin(), sc.A.end(), p);
                    if (it == sc.A.end()) fail_at(at, "start is not a point of A");
                    starts.push_back(static_cast<std::size_t>(it - sc.A.begin()));
                }
            }
            sc.starts = std::move(starts);
        } else {
            fail_at("/starts", "expected \"all-A0\" or a list");
        }
    }
    if (doc.contains("checks")) {
        sc.checks.clear();
        for (const auto& c : doc.at("checks")) {
            try {
                sc.checks.push_back(check_from_string(c.get<std::string>()));
            } catch (const InputError& err) {
                fail_at("/checks", err.what());
            }
        }
    }
    if (doc.contains("seed")) sc.seed = doc.at("seed").get<std::uint64_t>();

    try {
        sc.validate();
    } catch (const InputError& err) {
        fail_at("/", err.what());
    }
    return sc;
}

inline ScenarioFile parse_scenario(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw InputError("parse error at " + detail::line_context(text, err.byte) + ": " + err.what());
    }
    try {
        return scenario_from_json(doc);
    } catch (const nlohmann::json::exception& err) {
        throw InputError(std::string("invalid scenario: ") + err.what());
    }
}

inline ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const InputError& err) {
        throw InputError(path + ": " + err.what());
    }
}

inline ordered_json scenario_to_json(const ScenarioFile& sc) {
    ordered_json doc;
    doc["name"] = sc.name;
    ordered_json space;
    space["kind"] = to_string(sc.space.kind());
    if (sc.space.kind() == MetricKind::matrix) {
        space["dmatrix"] = sc.space.dmatrix();
    } else {
        space["dim"] = sc.space.dim();
    }
    doc["space"] = std::move(space);
    if (!sc.pool.empty()) {
        doc["points"] = ordered_json::array();
        for (const auto& p : sc.pool) doc["points"].push_back(detail::point_json(p));
    }
    doc["A"] = ordered_json::array();
    for (const auto& p : sc.A) doc["A"].push_back(detail::point_json(p));
    doc["B"] = ordered_json::array();
    for (const auto& p : sc.B) doc["B"].push_back(detail::point_json(p));
    doc["T"] = ordered_json::array();
    for (auto [i, j] : sc.T) doc["T"].push_back({i, j});

    ordered_json f;
    f["tag"] = to_string(sc.f.kind());
    f["k"] = sc.f.k();
    if (sc.f.kind() == FKind::table) {
        f["knots"] = ordered_json::array();
        for (auto [a, v] : sc.f.knots()) f["knots"].push_back({a, v});
    } else if (!sc.f.params().empty()) {
        f["params"] = sc.f.params();
    }
    doc["f"] = std::move(f);

    ordered_json coef;
    if (const auto* p = std::get_if<ProximalCoefficients>(&sc.coefficients)) {
        coef = {{"a", p->a}, {"b", p->b}, {"c", p->c}, {"h", p->h}};
    } else {
        const auto& hr = std::get<HRCoefficients>(sc.coefficients);
        coef = {{"a", hr.a}, {"b", hr.b}, {"c", hr.c}, {"e", hr.e}, {"L", hr.L}};
    }
    doc["coefficients"] = std::move(coef);
    doc["tau"] = sc.tau();
    doc["eps_prox"] = sc.eps_prox;
    doc["stop"] = {{"tol_step", sc.stop.tol_step},
                   {"tol_residual", sc.stop.tol_residual},
                   {"max_iter", sc.stop.max_iter}};
    if (sc.starts) {
        doc["starts"] = *sc.starts;
    } else {
        doc["starts"] = "all-A0";
    }
    doc["checks"] = ordered_json::array();
    for (CheckName c : sc.checks) doc["checks"].push_back(to_string(c));
    doc["seed"] = sc.seed;
    return doc;
}

struct GeneratorParams {
    std::size_t size = 5;  ///< |A| = |B|
    std::size_t dim = 2;   ///< >= 2
};

/// Longest chain of points along one ray of a generated scenario.
inline constexpr std::size_t kGeneratorChainDepth = 6;

/// Largest |A| the generator supports in the given dimension.
inline std::size_t generator_capacity(std::size_t dim) { return 1 + kGeneratorChainDepth * 2 * (dim - 1); }

/// Random translation-structured scenario. A lies in the hyperplane x_0 = 0
/// and B = A + g e_0 for an integer gap g, so d(a_i, b_j)^2 = g^2 + |a_i - a_j|^2:
/// the only proximal pairs are (a_i, b_i), d(A, B) = g exactly in floating
/// point, and the p-property holds.
///
/// A is an anchor plus chains anchor + r 4^-m (+-e_k), m = 0..len-1, one chain
/// per signed coordinate axis. The induced map scales each chain point toward
/// the anchor by 1/4 and sends the innermost point of a chain to the anchor.
/// Because distinct rays are orthogonal or opposite, d(Sx, Sy) <= d(x, y) / 3
/// on every pair, which keeps the generated (a, b, c, h, tau) inequality true
/// with room to spare. All coordinates are dyadic, hence exact.
/// Deterministic in the seed on every platform.
inline ScenarioFile generate_random_scenario(std::uint64_t seed, const GeneratorParams& params = {}) {
    if (params.size < 1) throw InputError("scenario size must be at least 1");
    if (params.dim < 2) throw InputError("scenario dimension must be at least 2");
    if (params.size > generator_capacity(params.dim)) {
        throw InputError("scenario size " + std::to_string(params.size) + " exceeds " +
                         std::to_string(generator_capacity(params.dim)) + " for dimension " +
                         std::to_string(params.dim));
    }
    std::mt19937_64 rng(seed);
    auto below = [&rng](std::uint64_t n) { return rng() % n; };

    const std::size_t n = params.size;
    const std::size_t rays = 2 * (params.dim - 1);
    const double gap = static_cast<double>(1 + below(4));

    std::vector<double> anchor(params.dim, 0.0);
    for (std::size_t d = 1; d < params.dim; ++d) anchor[d] = static_cast<double>(below(4 * n + 1)) / 4.0;

    // Chain lengths: drop the n - 1 non-anchor points one at a time on rays with room.
    std::vector<std::size_t> length(rays, 0);
    for (std::size_t placed = 1; placed < n;) {
        const std::size_t r = below(rays);
        if (length[r] == kGeneratorChainDepth) continue;
        ++length[r];
        ++placed;
    }

    // pts[0] is the anchor; next[i] is the position of S(pts[i]).
    std::vector<std::vector<double>> pts{anchor};
    std::vector<std::size_t> next{0};
    for (std::size_t r = 0; r < rays; ++r) {
        const double radius = static_cast<double>(1 + below(4));
        const std::size_t axis = 1 + r / 2;
        const double sign = r % 2 == 0 ? 1.0 : -1.0;
        double scale = radius;
        for (std::size_t m = 0; m < length[r]; ++m, scale /= 4) {
            std::vector<double> p = anchor;
            p[axis] += sign * scale;
            pts.push_back(std::move(p));
            next.push_back(m + 1 < length[r] ? pts.size() : 0);
        }
    }

    // Present A in a random order.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[below(i)]);
    std::vector<std::size_t> where(n);
    for (std::size_t i = 0; i < n; ++i) where[perm[i]] = i;

    ScenarioFile sc;
    sc.name = "random-" + std::to_string(seed);
    sc.seed = seed;
    sc.space = MetricSpace::euclidean(params.dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> b = pts[perm[i]];
        sc.A.push_back(Point::at(b));
        b[0] += gap;
        sc.B.push_back(Point::at(std::move(b)));
    }
    for (std::size_t i = 0; i < n; ++i) sc.T.emplace_back(i, where[next[perm[i]]]);

    sc.f = FFunction::ln(0.5);
    sc.coefficients = ProximalCoefficients{0.7, 0.1, 0.1, 0.05, 0.05};
    return sc;
}

}  // namespace bestprox
