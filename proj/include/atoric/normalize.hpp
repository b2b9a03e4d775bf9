#pragma once

// Normalization of disk bases: branch moves until every n_i is 0 or 1, the
// almost toric to toric pipeline, and toric minimal models.

#include <atoric/moves.hpp>

#include <functional>
#include <sstream>

namespace atoric {

struct NormalizationTrace {
    std::vector<MoveRecord> steps;
    std::vector<Integer> max_n_history;

    void append(const NormalizationTrace& other) {
        steps.insert(steps.end(), other.steps.begin(), other.steps.end());
        max_n_history.insert(max_n_history.end(), other.max_n_history.begin(), other.max_n_history.end());
    }
};

struct NormalizedBase {
    DiskBase base;
    NormalizationTrace trace;
};

inline constexpr std::size_t kMoveCap = 1'000'000;

namespace detail {

inline void record(DiskBase& base, NormalizationTrace& trace, MoveResult result) {
    base = std::move(result.base);
    trace.steps.push_back(std::move(result.record));
}

/// Splits every corner of multiplicity > 1 into multiplicity-1 nodes.
inline void split_all(DiskBase& base, NormalizationTrace& trace) {
    for (std::size_t i = 0; i < base.size();) {
        if (corner_multiplicity(base, i) > 1)
            record(base, trace, split_node(base, i));
        else
            ++i;
    }
}

inline std::vector<Integer> sorted_n(const DiskBase& base) {
    std::vector<Integer> ns;
    for (std::size_t i = 0; i < base.size(); ++i) ns.push_back(corner_n(base, i));
    std::sort(ns.begin(), ns.end(), std::greater<>());
    return ns;
}

inline std::string dump(const DiskBase& base) {
    std::ostringstream os;
    for (std::size_t i = 0; i < base.size(); ++i)
        os << " u" << i << "=" << base.normal(i) << " n" << i << "=" << corner_n(base, i);
    return os.str();
}

}  // namespace detail

/// Branch moves until all n_i lie in {0, 1}. Each outer step takes the
/// lowest-index corner c with maximal n = N >= 2 and the smallest offset d
/// with |u_{c+d} x e_c| < N, then carries that node forward d places with
/// T_c, T_{c+1}, ..., T_{c+d-1}; this replaces N by |u_{c+d} x e_c|.
/// Multiplicity > 1 corners are split first.
inline NormalizedBase reduce_n(const DiskBase& input) {
    require_valid(input);
    for (std::size_t i = 0; i < input.size(); ++i)
        if (is_vertex(input.corners[i]))
            throw Error(ErrorCode::MovePrecondition,
                        "reduce_n needs a base without vertices; corner " + std::to_string(i) + " is a vertex");

    DiskBase base = input;
    NormalizationTrace trace;
    detail::split_all(base, trace);

    std::vector<Integer> previous = detail::sorted_n(base);
    for (;;) {
        const std::size_t k = base.size();
        const Integer N = previous.front();
        trace.max_n_history.push_back(N);
        if (N <= 1) break;

        std::size_t c = 0;
        while (corner_n(base, c) != N) ++c;
        const LatticeVector e = corner_eigen(base, c);

        std::size_t d = 1;
        while (d < k && abs(cross(base.normal((c + d) % k), e)) >= N) ++d;
        if (d == k)
            throw Error(ErrorCode::IterationCap, "reduce_n: no index reduces n = " + N.str() + " at corner " +
                                                     std::to_string(c) + ";" + detail::dump(base));
        for (std::size_t step = 0; step < d; ++step)
            detail::record(base, trace, branch_move(base, (c + step) % k, Direction::Forward));

        std::vector<Integer> current = detail::sorted_n(base);
        if (!(current < previous))
            throw Error(ErrorCode::IterationCap, "reduce_n: n-multiset failed to decrease;" + detail::dump(base));
        previous = std::move(current);
        if (trace.steps.size() > kMoveCap)
            throw Error(ErrorCode::IterationCap,
                        "reduce_n: exceeded " + std::to_string(kMoveCap) + " moves;" + detail::dump(base));
    }
    return {std::move(base), std::move(trace)};
}

/// Trades every vertex for a node, then reduces n.
inline NormalizedBase normalize_nodes(const DiskBase& input) {
    require_valid(input);
    DiskBase base = input;
    NormalizationTrace trace;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (is_vertex(base.corners[i])) detail::record(base, trace, nodal_trade(base, i, TradeDirection::VertexToNode));
    NormalizedBase reduced = reduce_n(base);
    trace.append(reduced.trace);
    return {std::move(reduced.base), std::move(trace)};
}

/// Delzant polygon: only vertex corners, each with cross(u_{i-1}, u_i) = 1.
inline bool is_delzant(const DiskBase& base) {
    if (!validate_disk(base)) return false;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (!is_vertex(base.corners[i])) return false;
    return true;
}

/// Almost toric to toric: trade vertices, reduce n, trade n = 1 nodes back to
/// vertices, then exchange each n = 0 node for a toric blow-up
/// (almost toric blow-down followed by a toric blow-up at the start of the
/// same edge). Preserves the Euler characteristic.
inline NormalizedBase to_toric(const DiskBase& input) {
    require_valid(input);
    NormalizedBase normalized = normalize_nodes(input);
    DiskBase base = std::move(normalized.base);
    NormalizationTrace trace = std::move(normalized.trace);

    for (std::size_t i = 0; i < base.size(); ++i)
        if (corner_n(base, i) == 1) detail::record(base, trace, nodal_trade(base, i, TradeDirection::NodeToVertex));

    std::vector<LatticeVector> blown_down;
    for (std::size_t i = 0; i < base.size();) {
        if (is_node(base.corners[i])) {
            blown_down.push_back(base.normal(i));
            detail::record(base, trace, at_blowdown(base, i));
        } else {
            ++i;
        }
    }
    for (const auto& u : blown_down) {
        std::size_t i = 0;
        while (base.normal(i) != u) ++i;
        detail::record(base, trace, toric_blowup(base, i));
    }
    return {std::move(base), std::move(trace)};
}

struct MinimalModel {
    DiskBase base;
    std::size_t blowdowns = 0;
    std::vector<MoveRecord> steps;
};

/// Repeated toric blow-downs (lowest applicable edge first) until none
/// applies. The result has 3 or 4 edges.
inline MinimalModel minimal_model(const DiskBase& fan) {
    if (!is_delzant(fan)) throw Error(ErrorCode::InvalidBase, "minimal_model needs a Delzant polygon");
    MinimalModel result{fan, 0, {}};
    for (;;) {
        std::size_t i = 0;
        while (i < result.base.size() && !toric_blowdown_applies(result.base, i)) ++i;
        if (i == result.base.size()) break;
        MoveResult r = toric_blowdown(result.base, i);
        result.base = std::move(r.base);
        result.steps.push_back(std::move(r.record));
        ++result.blowdowns;
    }
    return result;
}

}  // namespace atoric
