#pragma once

// Known bases and seeded scrambles of them, used by the test suites and the
// corpus generator tool.

#include <atoric/classify.hpp>

#include <array>
#include <random>
#include <string>

namespace atoric::corpus {

inline DiskBase cp2_triangle() { return DiskBase::from_normals({{1, 0}, {0, 1}, {-1, -1}}); }

inline DiskBase square_fan() { return DiskBase::from_normals({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

inline DiskBase f1_fan() { return DiskBase::from_normals({{1, 0}, {1, 1}, {0, 1}, {-1, -1}}); }

inline DiskBase delzant_pentagon() { return DiskBase::from_normals({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}}); }

/// The alternating word A'_1 ... A'_12 with A'_i = A_(0,1) for odd i and
/// A_(1,0) for even i; its product is the identity.
inline FactorizationWord twelve_word(std::size_t copies = 1) {
    FactorizationWord w;
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 1; i <= 12; ++i)
            w.factors.push_back(i % 2 == 1 ? parabolic_from_eigen(0, 1) : parabolic_from_eigen(1, 0));
    return w;
}

/// A disk with geodesic boundary whose twelve corner monodromies are the
/// alternating word (total space E(1) = CP2 # 9 CP2bar). Built backwards from
/// u_11 = start using u_{i-1} = A_i u_i.
inline DiskBase e1_disk(const LatticeVector& start = {1, 0}) {
    const FactorizationWord word = twelve_word();
    const std::size_t k = word.factors.size();
    std::vector<LatticeVector> u(k);
    u[k - 1] = start;
    for (std::size_t i = k - 1; i > 0; --i) u[i - 1] = apply_parabolic(word.factors[i], u[i]);
    DiskBase base;
    for (std::size_t i = 0; i < k; ++i) {
        base.edges.push_back({u[i], std::nullopt});
        base.corners.emplace_back(Node{detail::orient_eigen(u[i], word.factors[i].eigen()), 1, Rational(1, 2)});
    }
    return base;
}

struct Generator {
    std::string name;
    DiskBase base;
    ClassificationResult type;
};

inline std::vector<Generator> generators() {
    return {
        {"cp2", cp2_triangle(), manifold::CP2BlownUp{0}},
        {"s2xs2", square_fan(), manifold::S2xS2{}},
        {"f1", f1_fan(), manifold::CP2BlownUp{1}},
        {"pentagon", delzant_pentagon(), manifold::CP2BlownUp{2}},
        {"e1", e1_disk(), manifold::CP2BlownUp{9}},
    };
}

/// Expected type after `blowups` almost toric blow-ups of a generator.
inline ClassificationResult blown_up_type(const Generator& g, std::size_t blowups) {
    if (blowups == 0) return g.type;
    return manifold::CP2BlownUp{euler_characteristic(g.base) - 3 + blowups};
}

struct ScrambleOptions {
    std::size_t max_blowups = 5;
    std::size_t max_branch_moves = 30;
};

struct Scrambled {
    std::string generator;
    DiskBase original;
    DiskBase base;
    std::size_t blowups = 0;
    ClassificationResult expected;
    std::vector<MoveRecord> moves;
};

/// Random almost toric blow-ups and full vertex trades, followed by random
/// branch moves. Attempts that would break the winding are skipped.
inline Scrambled scramble(const Generator& g, std::mt19937_64& rng, const ScrambleOptions& opts = {}) {
    Scrambled s{g.name, g.base, g.base, 0, g.type, {}};
    auto pick = [&rng](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    auto take = [&s](MoveResult r) {
        s.base = std::move(r.base);
        s.moves.push_back(std::move(r.record));
    };

    s.blowups = pick(0, opts.max_blowups);
    for (std::size_t b = 0; b < s.blowups; ++b) take(at_blowup(s.base, pick(0, s.base.size() - 1)));
    for (std::size_t i = 0; i < s.base.size(); ++i)
        if (is_vertex(s.base.corners[i])) take(nodal_trade(s.base, i, TradeDirection::VertexToNode));
    const std::size_t attempts = pick(0, opts.max_branch_moves);
    for (std::size_t a = 0; a < attempts; ++a) {
        const std::size_t j = pick(0, s.base.size() - 1);
        const Direction dir = pick(0, 1) == 0 ? Direction::Forward : Direction::Backward;
        try {
            take(branch_move(s.base, j, dir));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::WindingViolation) throw;
        }
    }
    s.expected = blown_up_type(g, s.blowups);
    return s;
}

/// The seeded corpus: `count` scrambles cycling through the generators.
inline std::vector<Scrambled> make_corpus(std::uint64_t seed, std::size_t count, const ScrambleOptions& opts = {}) {
    std::mt19937_64 rng(seed);
    const auto gens = generators();
    std::vector<Scrambled> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(scramble(gens[i % gens.size()], rng, opts));
    return out;
}

}  // namespace atoric::corpus
