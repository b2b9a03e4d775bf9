#pragma once

// Surgeries on almost toric bases. Every move returns the new base together
// with a replayable record.

#include <atoric/base.hpp>

#include <cstdint>
#include <string>
#include <variant>

namespace atoric {

enum class Direction { Forward, Backward };
enum class TradeDirection { VertexToNode, NodeToVertex };

namespace move {

struct BranchMove {
    std::size_t j;
    Direction direction;
    friend bool operator==(const BranchMove&, const BranchMove&) = default;
};
struct NodalTrade {
    std::size_t i;
    TradeDirection direction;
    friend bool operator==(const NodalTrade&, const NodalTrade&) = default;
};
struct NodalSlide {
    std::size_t i;
    Rational t;
    friend bool operator==(const NodalSlide&, const NodalSlide&) = default;
};
/// Separates one node of a multiplicity-m corner onto its own corner.
struct NodeSplit {
    std::size_t i;
    friend bool operator==(const NodeSplit&, const NodeSplit&) = default;
};
struct ATBlowup {
    std::size_t edge;
    Rational t;
    friend bool operator==(const ATBlowup&, const ATBlowup&) = default;
};
struct ATBlowdown {
    std::size_t i;
    friend bool operator==(const ATBlowdown&, const ATBlowdown&) = default;
};
struct ToricBlowup {
    std::size_t i;
    friend bool operator==(const ToricBlowup&, const ToricBlowup&) = default;
};
struct ToricBlowdown {
    std::size_t i;
    friend bool operator==(const ToricBlowdown&, const ToricBlowdown&) = default;
};
struct Hurwitz {
    std::size_t j;
    Direction direction;
    friend bool operator==(const Hurwitz&, const Hurwitz&) = default;
};

}  // namespace move

using MoveKind = std::variant<move::BranchMove, move::NodalTrade, move::NodalSlide, move::NodeSplit, move::ATBlowup,
                              move::ATBlowdown, move::ToricBlowup, move::ToricBlowdown, move::Hurwitz>;

struct MoveRecord {
    MoveKind kind;
    std::uint64_t before_hash = 0;
    std::uint64_t after_hash = 0;
    friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct MoveResult {
    DiskBase base;
    MoveRecord record;
};

// ---------------------------------------------------------------------------
// Content hashes (64-bit FNV-1a over the exact encoding)

namespace detail {

inline std::uint64_t fnv1a(const std::vector<Integer>& values) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 1099511628211ULL;
    };
    for (const auto& v : values) {
        for (char c : v.str()) mix(static_cast<unsigned char>(c));
        mix(';');
    }
    return h;
}

}  // namespace detail

inline std::uint64_t content_hash(const DiskBase& base) {
    auto code = detail::encode(base);
    code.insert(code.begin(), Integer(base.size()));
    return detail::fnv1a(code);
}

inline std::uint64_t content_hash(const FactorizationWord& word) {
    std::vector<Integer> code{Integer(word.factors.size())};
    for (const auto& f : word.factors) {
        code.push_back(f.eigen().x);
        code.push_back(f.eigen().y);
        code.push_back(f.multiplicity());
    }
    return detail::fnv1a(code);
}

// ---------------------------------------------------------------------------

namespace detail {

inline void check_index(const DiskBase& base, std::size_t i, const char* what) {
    if (i >= base.size())
        throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(i) +
                                                    " out of range for a base with " + std::to_string(base.size()) +
                                                    " edges");
}

inline const Node& require_node(const DiskBase& base, std::size_t i) {
    const auto* node = std::get_if<Node>(&base.corners[i]);
    if (!node) throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " is a vertex, not a node");
    return *node;
}

/// Eigenvector sign fixed so that u x e >= 0; on the eigenline of u itself, e = u.
inline LatticeVector orient_eigen(const LatticeVector& u, const LatticeVector& e) {
    const Integer c = cross(u, e);
    if (c > 0) return e;
    if (c < 0) return -e;
    return u;
}

inline MoveResult finish(const DiskBase& before, DiskBase after, MoveKind kind) {
    if (auto report = validate_disk(after); !report) {
        const bool winding = std::any_of(report.failures.begin(), report.failures.end(), [](const Violation& v) {
            return v.message.find("wind") != std::string::npos || v.message.find("clockwise") != std::string::npos;
        });
        throw Error(winding ? ErrorCode::WindingViolation : ErrorCode::InvalidBase,
                    "move produced an invalid base: " + report.str());
    }
    MoveRecord record{std::move(kind), content_hash(before), content_hash(after)};
    return {std::move(after), std::move(record)};
}

}  // namespace detail

/// Elementary branch move T_j (forward) or T_j^-1 (backward) on corners j
/// and j+1. Forward replaces u_j by A_j u_{j+1} and the corner word
/// (A_j, A_{j+1}) by (A_j A_{j+1} A_j^-1, A_j). Nodes keep their slide
/// parameters as they move.
inline MoveResult branch_move(const DiskBase& base, std::size_t j, Direction direction) {
    require_valid(base);
    detail::check_index(base, j, "branch move");
    const std::size_t k = base.size();
    const std::size_t jn = (j + 1) % k;
    const Node& first = detail::require_node(base, j);
    const Node& second = detail::require_node(base, jn);

    DiskBase out = base;
    if (direction == Direction::Forward) {
        const ParabolicMonodromy A(first.eigen, first.multiplicity);
        const LatticeVector u_new = apply_parabolic(A, base.normal(jn));
        out.edges[j].normal = u_new;
        out.corners[j] = Node{detail::orient_eigen(u_new, apply_parabolic(A, second.eigen)), second.multiplicity,
                              second.slide};
        out.corners[jn] = Node{detail::orient_eigen(base.normal(jn), first.eigen), first.multiplicity, first.slide};
    } else {
        const UnimodularMatrix B_inv = ParabolicMonodromy(second.eigen, second.multiplicity).to_matrix().inverse();
        const LatticeVector u_new = B_inv * base.normal(base.prev(j));
        out.edges[j].normal = u_new;
        out.corners[j] = Node{detail::orient_eigen(u_new, second.eigen), second.multiplicity, second.slide};
        out.corners[jn] =
            Node{detail::orient_eigen(base.normal(jn), B_inv * first.eigen), first.multiplicity, first.slide};
    }
    return detail::finish(base, std::move(out), move::BranchMove{j, direction});
}

inline MoveResult nodal_trade(const DiskBase& base, std::size_t i, TradeDirection direction) {
    require_valid(base);
    detail::check_index(base, i, "nodal trade");
    DiskBase out = base;
    if (direction == TradeDirection::VertexToNode) {
        if (!is_vertex(base.corners[i]))
            throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " is already a node");
        out.corners[i] = Node{base.normal(i) - base.normal(base.prev(i)), 1, Rational(1, 2)};
    } else {
        const Node& node = detail::require_node(base, i);
        if (node.multiplicity != 1)
            throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " has multiplicity " +
                                                         node.multiplicity.str() + "; split it before trading");
        const Integer n = corner_n(base, i);
        if (n != 1)
            throw Error(ErrorCode::MovePrecondition,
                        "corner " + std::to_string(i) + " has n = " + n.str() +
                            "; only n = 1 nodes trade for smooth vertices (otherwise the topology changes)");
        out.corners[i] = Vertex{};
    }
    return detail::finish(base, std::move(out), move::NodalTrade{i, direction});
}

inline MoveResult nodal_slide(const DiskBase& base, std::size_t i, const Rational& t) {
    require_valid(base);
    detail::check_index(base, i, "nodal slide");
    detail::require_node(base, i);
    if (t <= 0 || t > 1)
        throw Error(ErrorCode::MovePrecondition, "slide parameter " + to_string(t) + " outside (0,1]");
    DiskBase out = base;
    std::get<Node>(out.corners[i]).slide = t;
    return detail::finish(base, std::move(out), move::NodalSlide{i, t});
}

/// Slides one node of a multiplicity-m corner off the corner: the corner is
/// replaced by a multiplicity-1 node, a new edge with normal
/// u_{i-1} + n e, and a multiplicity-(m-1) node on the same eigenline.
inline MoveResult split_node(const DiskBase& base, std::size_t i) {
    require_valid(base);
    detail::check_index(base, i, "node split");
    const Node node = detail::require_node(base, i);
    if (node.multiplicity < 2)
        throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " has multiplicity 1");
    const Integer n = corner_n(base, i);
    const LatticeVector middle = base.normal(base.prev(i)) + n * node.eigen;

    DiskBase out = base;
    out.edges.insert(out.edges.begin() + static_cast<std::ptrdiff_t>(i), Edge{middle, std::nullopt});
    out.corners[i] = Node{node.eigen, 1, node.slide};
    out.corners.insert(out.corners.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                       Node{node.eigen, node.multiplicity - 1, node.slide});
    return detail::finish(base, std::move(out), move::NodeSplit{i});
}

/// Almost toric blow-up on edge `edge`: the edge is cut at fraction t and a
/// node with n = 0 (eigenline parallel to the edge) is inserted at the cut.
inline MoveResult at_blowup(const DiskBase& base, std::size_t edge, const Rational& t = Rational(1, 2)) {
    require_valid(base);
    detail::check_index(base, edge, "blow-up edge");
    if (t <= 0 || t >= 1) throw Error(ErrorCode::MovePrecondition, "blow-up position " + to_string(t) + " outside (0,1)");
    DiskBase out = base;
    const Edge original = base.edges[edge];
    Edge second = original;
    if (original.length) {
        out.edges[edge].length = *original.length * t;
        second.length = *original.length * (1 - t);
    }
    const auto pos = static_cast<std::ptrdiff_t>(edge) + 1;
    out.edges.insert(out.edges.begin() + pos, second);
    out.corners.insert(out.corners.begin() + pos, Node{original.normal, 1, Rational(1, 2)});
    return detail::finish(base, std::move(out), move::ATBlowup{edge, t});
}

inline MoveResult at_blowdown(const DiskBase& base, std::size_t i) {
    require_valid(base);
    detail::check_index(base, i, "blow-down corner");
    const Node& node = detail::require_node(base, i);
    if (base.normal(i) != base.normal(base.prev(i)))
        throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " has n = " +
                                                     corner_n(base, i).str() + "; blow-down needs n = 0");
    if (node.multiplicity != 1)
        throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " has multiplicity " +
                                                     node.multiplicity.str() + "; split it before blowing down");
    DiskBase out = base;
    Edge& merged = out.edges[base.prev(i)];
    if (merged.length && base.edges[i].length)
        merged.length = *merged.length + *base.edges[i].length;
    else
        merged.length.reset();
    out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(i));
    out.corners.erase(out.corners.begin() + static_cast<std::ptrdiff_t>(i));
    return detail::finish(base, std::move(out), move::ATBlowdown{i});
}

/// Toric blow-up of the vertex at corner i: cuts the corner by a new edge
/// with normal u_{i-1} + u_i.
inline MoveResult toric_blowup(const DiskBase& base, std::size_t i) {
    require_valid(base);
    detail::check_index(base, i, "toric blow-up corner");
    if (!is_vertex(base.corners[i]))
        throw Error(ErrorCode::MovePrecondition, "corner " + std::to_string(i) + " is a node, not a vertex");
    DiskBase out = base;
    const LatticeVector cut = base.normal(base.prev(i)) + base.normal(i);
    const auto pos = static_cast<std::ptrdiff_t>(i);
    out.edges.insert(out.edges.begin() + pos, Edge{cut, std::nullopt});
    out.corners.insert(out.corners.begin() + pos + 1, Vertex{});
    return detail::finish(base, std::move(out), move::ToricBlowup{i});
}

/// True when edge i is a toric exceptional curve: both of its corners are
/// vertices and u_{i-1} + u_{i+1} = u_i.
inline bool toric_blowdown_applies(const DiskBase& base, std::size_t i) {
    if (base.size() <= 3) return false;
    const std::size_t in = base.next(i);
    return is_vertex(base.corners[i]) && is_vertex(base.corners[in]) &&
           base.normal(base.prev(i)) + base.normal(in) == base.normal(i);
}

inline MoveResult toric_blowdown(const DiskBase& base, std::size_t i) {
    require_valid(base);
    detail::check_index(base, i, "toric blow-down edge");
    if (!toric_blowdown_applies(base, i))
        throw Error(ErrorCode::MovePrecondition,
                    "edge " + std::to_string(i) + " is not a toric exceptional edge (needs vertex corners and "
                    "u_{i-1} + u_{i+1} = u_i)");
    DiskBase out = base;
    out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(i));
    out.corners.erase(out.corners.begin() + static_cast<std::ptrdiff_t>(i));
    return detail::finish(base, std::move(out), move::ToricBlowdown{i});
}

// ---------------------------------------------------------------------------
// Hurwitz moves on factorization words

inline FactorizationWord hurwitz_move(const FactorizationWord& word, std::size_t j, Direction direction) {
    if (word.factors.size() < 2 || j + 1 >= word.factors.size())
        throw Error(ErrorCode::IndexOutOfRange, "Hurwitz index " + std::to_string(j) + " out of range for a word of length " +
                                                    std::to_string(word.factors.size()));
    FactorizationWord out = word;
    const UnimodularMatrix A = word.factors[j].to_matrix();
    const UnimodularMatrix B = word.factors[j + 1].to_matrix();
    if (direction == Direction::Forward) {
        out.factors[j] = parabolic_from_matrix(A * B * A.inverse());
        out.factors[j + 1] = word.factors[j];
    } else {
        out.factors[j] = word.factors[j + 1];
        out.factors[j + 1] = parabolic_from_matrix(B.inverse() * A * B);
    }
    return out;
}

inline MoveRecord hurwitz_record(const FactorizationWord& before, const FactorizationWord& after, std::size_t j,
                                 Direction direction) {
    return {move::Hurwitz{j, direction}, content_hash(before), content_hash(after)};
}

// ---------------------------------------------------------------------------
// Dispatch and replay

inline MoveResult apply_move(const DiskBase& base, const MoveKind& kind) {
    return std::visit(
        [&](const auto& m) -> MoveResult {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, move::BranchMove>) return branch_move(base, m.j, m.direction);
            else if constexpr (std::is_same_v<M, move::NodalTrade>) return nodal_trade(base, m.i, m.direction);
            else if constexpr (std::is_same_v<M, move::NodalSlide>) return nodal_slide(base, m.i, m.t);
            else if constexpr (std::is_same_v<M, move::NodeSplit>) return split_node(base, m.i);
            else if constexpr (std::is_same_v<M, move::ATBlowup>) return at_blowup(base, m.edge, m.t);
            else if constexpr (std::is_same_v<M, move::ATBlowdown>) return at_blowdown(base, m.i);
            else if constexpr (std::is_same_v<M, move::ToricBlowup>) return toric_blowup(base, m.i);
            else if constexpr (std::is_same_v<M, move::ToricBlowdown>) return toric_blowdown(base, m.i);
            else throw Error(ErrorCode::MovePrecondition, "Hurwitz moves act on factorization words, not bases");
        },
        kind);
}

/// Re-applies a recorded move, checking both hashes.
inline DiskBase replay(const MoveRecord& record, const DiskBase& before) {
    if (content_hash(before) != record.before_hash)
        throw Error(ErrorCode::MovePrecondition, "replay: base does not match the recorded before-hash");
    MoveResult result = apply_move(before, record.kind);
    if (result.record.after_hash != record.after_hash)
        throw Error(ErrorCode::MovePrecondition, "replay: result does not match the recorded after-hash");
    return std::move(result.base);
}

inline DiskBase replay(const std::vector<MoveRecord>& log, DiskBase base) {
    for (const auto& r : log) base = replay(r, base);
    return base;
}

}  // namespace atoric
