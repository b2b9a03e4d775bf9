#pragma once

// Almost toric bases. A disk base is stored as its defining set: a cyclic
// sequence of boundary edges (inward primitive normals u_i) and corners,
// where corner i joins edge i-1 to edge i. A node corner carries the
// eigenvector e_i of its monodromy; its n_i is u_i x e_i, and the corner
// satisfies u_i - u_{i-1} = mult_i * n_i * e_i.

#include <atoric/lattice.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace atoric {

struct Vertex {
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Node {
    LatticeVector eigen;
    Integer multiplicity = 1;
    Rational slide = Rational(1, 2);  // position along the eigenray, in (0, 1]

    friend bool operator==(const Node&, const Node&) = default;
};

using Corner = std::variant<Vertex, Node>;

inline bool is_vertex(const Corner& c) { return std::holds_alternative<Vertex>(c); }
inline bool is_node(const Corner& c) { return std::holds_alternative<Node>(c); }

struct Edge {
    LatticeVector normal;
    std::optional<Rational> length;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct DiskBase {
    std::vector<Edge> edges;
    std::vector<Corner> corners;

    friend bool operator==(const DiskBase&, const DiskBase&) = default;

    std::size_t size() const { return edges.size(); }
    std::size_t prev(std::size_t i) const { return (i + size() - 1) % size(); }
    std::size_t next(std::size_t i) const { return (i + 1) % size(); }

    const LatticeVector& normal(std::size_t i) const { return edges[i % size()].normal; }

    /// Convenience constructor: every corner a Vertex, no lengths.
    static DiskBase from_normals(const std::vector<LatticeVector>& normals) {
        DiskBase b;
        for (const auto& u : normals) {
            b.edges.push_back({u, std::nullopt});
            b.corners.emplace_back(Vertex{});
        }
        return b;
    }
};

enum class Topology { Cylinder, Moebius, Sphere, RP2, Torus, KleinBottle };

struct ChernClass {
    Integer m;
    Integer n;
    friend bool operator==(const ChernClass&, const ChernClass&) = default;
};

struct NonDiskBase {
    Topology topology = Topology::Sphere;
    Integer nodes = 0;
    Integer lambda = 0;
    std::optional<ChernClass> chern;

    friend bool operator==(const NonDiskBase&, const NonDiskBase&) = default;
};

using AnyBase = std::variant<DiskBase, NonDiskBase>;

struct FactorizationWord {
    std::vector<ParabolicMonodromy> factors;

    friend bool operator==(const FactorizationWord&, const FactorizationWord&) = default;

    /// A_1 A_2 ... A_k.
    UnimodularMatrix product() const {
        UnimodularMatrix p;
        for (const auto& f : factors) p = p * f.to_matrix();
        return p;
    }
};

// ---------------------------------------------------------------------------
// Corner data

/// n_i of corner i. For a vertex this is the smoothness determinant, which is
/// 1 on a valid base.
inline Integer corner_n(const DiskBase& base, std::size_t i) {
    if (const auto* node = std::get_if<Node>(&base.corners[i])) return cross(base.normal(i), node->eigen);
    return cross(base.normal(base.prev(i)), base.normal(i));
}

inline Integer corner_multiplicity(const DiskBase& base, std::size_t i) {
    if (const auto* node = std::get_if<Node>(&base.corners[i])) return node->multiplicity;
    return 1;
}

/// Eigenvector of the corner monodromy, oriented so that u_i x e_i >= 0.
inline LatticeVector corner_eigen(const DiskBase& base, std::size_t i) {
    if (const auto* node = std::get_if<Node>(&base.corners[i])) return node->eigen;
    return base.normal(i) - base.normal(base.prev(i));
}

/// The monodromy A_i of corner i, with A_i u_i = u_{i-1}.
inline ParabolicMonodromy corner_monodromy(const DiskBase& base, std::size_t i) {
    return ParabolicMonodromy(corner_eigen(base, i), corner_multiplicity(base, i));
}

inline FactorizationWord corner_word(const DiskBase& base) {
    FactorizationWord w;
    for (std::size_t i = 0; i < base.size(); ++i) w.factors.push_back(corner_monodromy(base, i));
    return w;
}

// ---------------------------------------------------------------------------
// Winding

namespace detail {

// 0 for directions with angle in [0, pi), 1 for [pi, 2pi).
inline int half_plane(const LatticeVector& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

inline bool angle_less(const LatticeVector& a, const LatticeVector& b) {
    const int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

}  // namespace detail

/// Number of full counterclockwise turns made by the cyclic sequence of
/// normals, assuming each step turns by an angle in [0, pi). Exact: counts
/// wrap-arounds of the argument through 0.
inline std::size_t winding_number(const DiskBase& base) {
    std::size_t wraps = 0;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (detail::angle_less(base.normal(i), base.normal(base.prev(i)))) ++wraps;
    return wraps;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::optional<std::size_t> index;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> failures;

    bool ok() const { return failures.empty(); }
    explicit operator bool() const { return ok(); }

    std::string str() const {
        std::string s;
        for (const auto& f : failures) {
            if (!s.empty()) s += "\n";
            s += f.message;
        }
        return s;
    }
};

inline ValidationReport validate_disk(const DiskBase& base) {
    ValidationReport report;
    auto fail = [&](std::optional<std::size_t> i, std::string msg) { report.failures.push_back({i, std::move(msg)}); };
    const std::size_t k = base.size();

    if (base.corners.size() != k) {
        fail(std::nullopt, "edge count " + std::to_string(k) + " differs from corner count " +
                               std::to_string(base.corners.size()));
        return report;
    }
    if (k < 3) {
        fail(std::nullopt, "a disk base needs at least 3 edges, got " + std::to_string(k));
        return report;
    }

    bool local_ok = true;
    for (std::size_t i = 0; i < k; ++i) {
        const Edge& e = base.edges[i];
        if (!e.normal.is_primitive()) {
            fail(i, "normal not primitive at index " + std::to_string(i));
            local_ok = false;
        }
        if (e.length && *e.length <= 0) fail(i, "edge length not positive at index " + std::to_string(i));
        if (const auto* node = std::get_if<Node>(&base.corners[i])) {
            if (!node->eigen.is_primitive()) {
                fail(i, "eigenvector not primitive at corner " + std::to_string(i));
                local_ok = false;
            }
            if (node->multiplicity < 1) {
                fail(i, "node multiplicity not positive at corner " + std::to_string(i));
                local_ok = false;
            }
            if (node->slide <= 0 || node->slide > 1)
                fail(i, "slide parameter outside (0,1] at corner " + std::to_string(i));
        }
    }
    if (!local_ok) return report;

    bool steps_ok = true;
    for (std::size_t i = 0; i < k; ++i) {
        const LatticeVector& prev = base.normal(base.prev(i));
        const LatticeVector& cur = base.normal(i);
        const Integer c = cross(prev, cur);
        if (c < 0 || (c == 0 && prev != cur)) {
            fail(i, "normals turn clockwise or by pi at corner " + std::to_string(i));
            steps_ok = false;
            continue;
        }
        if (is_vertex(base.corners[i])) {
            if (c != 1)
                fail(i, "vertex corner " + std::to_string(i) + " is not smooth (cross " + c.str() + " != 1)");
        } else {
            const Node& node = std::get<Node>(base.corners[i]);
            const Integer n = cross(cur, node.eigen);
            if (n < 0) {
                fail(i, "node at corner " + std::to_string(i) + " has negative n (" + n.str() + ")");
            } else if (cur - prev != (node.multiplicity * n) * node.eigen) {
                fail(i, "corner " + std::to_string(i) + ": u_i - u_{i-1} != mult * n * e");
            }
        }
    }
    if (!steps_ok) return report;

    const std::size_t w = winding_number(base);
    if (w != 1) fail(std::nullopt, "normals wind " + std::to_string(w) + " times, expected exactly once");

    // Each normal value occupies one cyclically contiguous run.
    std::map<std::pair<Integer, Integer>, std::size_t> runs;
    for (std::size_t i = 0; i < k; ++i)
        if (base.normal(i) != base.normal(base.prev(i))) ++runs[{base.normal(i).x, base.normal(i).y}];
    for (const auto& [key, count] : runs)
        if (count > 1)
            fail(std::nullopt, "normal (" + key.first.str() + "," + key.second.str() + ") occurs in " +
                                   std::to_string(count) + " separate runs");
    return report;
}

inline ValidationReport validate_nondisk(const NonDiskBase& base) {
    ValidationReport report;
    auto fail = [&](std::string msg) { report.failures.push_back({std::nullopt, std::move(msg)}); };
    if (base.nodes < 0) fail("node count is negative");
    switch (base.topology) {
        case Topology::Sphere:
            if (base.nodes != 24) fail("a sphere base carries exactly 24 nodes, got " + base.nodes.str());
            break;
        case Topology::RP2:
            if (base.nodes != 12) fail("an RP2 base carries exactly 12 nodes, got " + base.nodes.str());
            break;
        case Topology::Torus:
        case Topology::KleinBottle:
            if (base.nodes != 0) fail("torus and Klein bottle bases carry no nodes, got " + base.nodes.str());
            break;
        case Topology::Cylinder:
        case Topology::Moebius:
            break;
    }
    const bool closed_flat = base.topology == Topology::Torus || base.topology == Topology::KleinBottle;
    if (closed_flat && !base.chern) fail("torus and Klein bottle bases require a Chern class");
    if (!closed_flat && base.chern) fail("only torus and Klein bottle bases carry a Chern class");
    if (base.topology == Topology::KleinBottle && base.chern) {
        if (base.chern->m % 2 != 0) fail("Klein bottle base requires even m, got " + base.chern->m.str());
        if (base.chern->n != 0) fail("Klein bottle base requires n = 0, got " + base.chern->n.str());
    }
    return report;
}

inline void require_valid(const DiskBase& base) {
    if (auto r = validate_disk(base); !r) throw Error(ErrorCode::InvalidBase, "invalid disk base: " + r.str());
}

inline void require_valid(const NonDiskBase& base) {
    if (auto r = validate_nondisk(base); !r) throw Error(ErrorCode::InvalidBase, "invalid base: " + r.str());
}

// ---------------------------------------------------------------------------
// Queries

inline UnimodularMatrix boundary_monodromy(const DiskBase& base) {
    require_valid(base);
    return corner_word(base).product();
}

inline Integer euler_characteristic(const DiskBase& base) {
    require_valid(base);
    Integer chi = 0;
    for (std::size_t i = 0; i < base.size(); ++i) chi += corner_multiplicity(base, i);
    return chi;
}

inline Integer euler_characteristic(const NonDiskBase& base) {
    require_valid(base);
    return base.nodes;
}

inline Integer euler_characteristic(const AnyBase& base) {
    return std::visit([](const auto& b) { return euler_characteristic(b); }, base);
}

inline std::size_t vertex_count(const DiskBase& base) {
    return static_cast<std::size_t>(std::count_if(base.corners.begin(), base.corners.end(), is_vertex));
}

// ---------------------------------------------------------------------------
// Symmetries: cyclic relabeling and unimodular change of basis

/// Relabels so that new index i is old index i + shift.
inline DiskBase rotate(const DiskBase& base, std::size_t shift) {
    DiskBase out;
    const std::size_t k = base.size();
    for (std::size_t i = 0; i < k; ++i) {
        out.edges.push_back(base.edges[(i + shift) % k]);
        out.corners.push_back(base.corners[(i + shift) % k]);
    }
    return out;
}

/// Applies U to every normal and eigenvector.
inline DiskBase transform(const DiskBase& base, const UnimodularMatrix& U) {
    DiskBase out = base;
    for (auto& e : out.edges) e.normal = U * e.normal;
    for (auto& c : out.corners)
        if (auto* node = std::get_if<Node>(&c)) node->eigen = U * node->eigen;
    return out;
}

namespace detail {

/// A det +1 matrix sending the primitive vector v to (1, 0).
inline UnimodularMatrix to_first_axis(const LatticeVector& v) {
    auto [g, s, t] = extended_gcd(v.x, v.y);
    return {s, t, -v.y, v.x};
}

inline void encode(const Rational& r, std::vector<Integer>& out) {
    out.push_back(boost::multiprecision::numerator(r));
    out.push_back(boost::multiprecision::denominator(r));
}

inline std::vector<Integer> encode(const DiskBase& base) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        out.push_back(base.edges[i].normal.x);
        out.push_back(base.edges[i].normal.y);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (const auto* node = std::get_if<Node>(&base.corners[i])) {
            out.push_back(1);
            out.push_back(node->eigen.x);
            out.push_back(node->eigen.y);
            out.push_back(node->multiplicity);
            encode(node->slide, out);
        } else {
            out.push_back(0);
        }
    }
    for (const auto& e : base.edges) {
        out.push_back(e.length ? 1 : 0);
        if (e.length) encode(*e.length, out);
    }
    return out;
}

}  // namespace detail

/// Representative of the base's class under cyclic relabeling and det +1
/// unimodular maps. For each rotation u_0 is sent to (1,0); the remaining
/// shear freedom (x, y) -> (x + s y, y) is fixed by putting the first normal
/// with y != 0 into 0 <= x < y. The lexicographically least encoding wins.
inline DiskBase canonical_form(const DiskBase& base) {
    require_valid(base);
    std::optional<DiskBase> best;
    std::vector<Integer> best_code;
    for (std::size_t r = 0; r < base.size(); ++r) {
        DiskBase candidate = rotate(base, r);
        candidate = transform(candidate, detail::to_first_axis(candidate.normal(0)));
        for (const auto& e : candidate.edges) {
            if (e.normal.y == 0) continue;
            const Integer s = -floor_div(e.normal.x, e.normal.y);
            candidate = transform(candidate, UnimodularMatrix(1, s, 0, 1));
            break;
        }
        auto code = detail::encode(candidate);
        if (!best || code < best_code) {
            best = std::move(candidate);
            best_code = std::move(code);
        }
    }
    return *best;
}

}  // namespace atoric
