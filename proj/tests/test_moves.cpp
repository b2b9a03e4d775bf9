#include "support.hpp"

using namespace atoric;

namespace {

DiskBase triangle_with_nodes() {
    DiskBase b = corpus::cp2_triangle();
    for (std::size_t i = 0; i < 3; ++i) b = nodal_trade(b, i, TradeDirection::VertexToNode).base;
    return b;
}

std::vector<LatticeVector> normals(const DiskBase& b) {
    std::vector<LatticeVector> out;
    for (const auto& e : b.edges) out.push_back(e.normal);
    return out;
}

std::vector<Integer> ints(std::initializer_list<int> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(Moves, TradeProducesDifferenceEigenvectors) {
    const DiskBase t = nodal_trade(corpus::cp2_triangle(), 0, TradeDirection::VertexToNode).base;
    EXPECT_EQ(std::get<Node>(t.corners[0]).eigen, LatticeVector(2, 1));
    const DiskBase all = triangle_with_nodes();
    EXPECT_EQ(std::get<Node>(all.corners[1]).eigen, LatticeVector(-1, 1));
    EXPECT_EQ(std::get<Node>(all.corners[2]).eigen, LatticeVector(-1, -2));
    for (std::size_t i = 0; i < 3; ++i) {
        const DiskBase back = nodal_trade(all, i, TradeDirection::NodeToVertex).base;
        EXPECT_EQ(nodal_trade(back, i, TradeDirection::VertexToNode).base, all);
    }
}

TEST(Moves, BranchMoveExample) {
    const DiskBase b = triangle_with_nodes();
    const DiskBase t = branch_move(b, 0, Direction::Forward).base;
    EXPECT_EQ(normals(t), (std::vector<LatticeVector>{{4, 3}, {0, 1}, {-1, -1}}));
    EXPECT_EQ(oracle::n_values(t), ints({1, 2, 1}));
    EXPECT_EQ(branch_move(t, 0, Direction::Backward).base, b);
}

TEST(Moves, BranchMovePairsInvert) {
    for (const auto& s : corpus::make_corpus(21, 40)) {
        for (std::size_t j = 0; j < s.base.size(); ++j) {
            for (Direction d : {Direction::Forward, Direction::Backward}) {
                const Direction inv = d == Direction::Forward ? Direction::Backward : Direction::Forward;
                try {
                    const DiskBase moved = branch_move(s.base, j, d).base;
                    EXPECT_EQ(branch_move(moved, j, inv).base, s.base);
                } catch (const Error& e) {
                    EXPECT_EQ(e.code(), ErrorCode::WindingViolation);
                }
            }
        }
    }
}

TEST(Moves, BranchMoveConjugatesCornerWord) {
    // non-wrapping moves keep the ordered product; the wrapping move j = k-1
    // conjugates it by A_{k-1} A_0^-1 (forward) or A_0^-1 A_{k-1} (backward)
    for (const auto& s : corpus::make_corpus(22, 40)) {
        const auto before = oracle::corner_matrices(s.base);
        const UnimodularMatrix M = oracle::word_product(before);
        const std::size_t k = s.base.size();
        for (std::size_t j = 0; j < k; ++j)
            for (Direction d : {Direction::Forward, Direction::Backward}) {
                DiskBase moved;
                try {
                    moved = branch_move(s.base, j, d).base;
                } catch (const Error&) {
                    continue;
                }
                const UnimodularMatrix M2 = oracle::word_product(oracle::corner_matrices(moved));
                UnimodularMatrix X;
                if (j == k - 1)
                    X = d == Direction::Forward ? before[k - 1] * before[0].inverse() : before[0].inverse() * before[k - 1];
                EXPECT_EQ(M2, X * M * X.inverse());
                EXPECT_EQ(euler_characteristic(moved), euler_characteristic(s.base));
            }
    }
}

TEST(Moves, BranchMoveTauAction) {
    // the new n at corner j+1 equals |u_{j+1} x e_j| and corner j inherits n_{j+1}
    const DiskBase b = triangle_with_nodes();
    const DiskBase t = branch_move(b, 0, Direction::Forward).base;
    EXPECT_EQ(corner_n(t, 0), corner_n(b, 1));
    EXPECT_EQ(corner_n(t, 1), abs(cross(b.normal(1), std::get<Node>(b.corners[0]).eigen)));
}

TEST(Moves, BranchMoveNeedsNodes) {
    try {
        branch_move(corpus::cp2_triangle(), 0, Direction::Forward);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MovePrecondition);
    }
    EXPECT_THROW(branch_move(triangle_with_nodes(), 3, Direction::Forward), Error);
}

TEST(Moves, SlideIsMetadataOnly) {
    const DiskBase b = triangle_with_nodes();
    const DiskBase s = nodal_slide(b, 1, Rational(3, 4)).base;
    EXPECT_EQ(std::get<Node>(s.corners[1]).slide, Rational(3, 4));
    EXPECT_EQ(classify(s), classify(b));
    EXPECT_EQ(boundary_monodromy(s), boundary_monodromy(b));
    const DiskBase to_one = nodal_slide(b, 1, Rational(1)).base;
    EXPECT_EQ(nodal_trade(to_one, 1, TradeDirection::NodeToVertex).base,
              nodal_trade(b, 1, TradeDirection::NodeToVertex).base);
    EXPECT_THROW(nodal_slide(b, 1, Rational(0)), Error);
    EXPECT_THROW(nodal_slide(b, 1, Rational(3, 2)), Error);
}

TEST(Moves, SplitPreservesMonodromyAndChi) {
    DiskBase b = DiskBase::from_normals({{1, -1}, {1, 1}, {-1, 0}});
    b.corners[1] = Node{{0, 1}, 2};
    const DiskBase s = split_node(b, 1).base;
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(std::get<Node>(s.corners[1]), (Node{{0, 1}, 1}));
    EXPECT_EQ(std::get<Node>(s.corners[2]), (Node{{0, 1}, 1}));
    EXPECT_EQ(euler_characteristic(s), euler_characteristic(b));
    EXPECT_EQ(boundary_monodromy(s), boundary_monodromy(b));
    EXPECT_EQ(oracle::parabolic(0, 1, 2), oracle::parabolic(0, 1) * oracle::parabolic(0, 1));
}

TEST(Moves, AlmostToricBlowup) {
    const DiskBase tri = corpus::cp2_triangle();
    const DiskBase up = at_blowup(tri, 0).base;
    EXPECT_EQ(normals(up), (std::vector<LatticeVector>{{1, 0}, {1, 0}, {0, 1}, {-1, -1}}));
    EXPECT_EQ(std::get<Node>(up.corners[1]).eigen, LatticeVector(1, 0));
    EXPECT_EQ(corner_n(up, 1), 0);
    EXPECT_EQ(euler_characteristic(tri), 3);
    EXPECT_EQ(euler_characteristic(up), 4);
    EXPECT_EQ(classify(up), ClassificationResult(manifold::CP2BlownUp{1}));
    EXPECT_EQ(at_blowdown(up, 1).base, tri);
    EXPECT_THROW(at_blowdown(tri, 1), Error);
    // one extra factor A_u, u the duplicated normal, lands between corners 0 and 1
    const auto m = oracle::corner_matrices(tri);
    EXPECT_EQ(boundary_monodromy(up), m[0] * oracle::parabolic(1, 0) * m[1] * m[2]);
    EXPECT_EQ(oracle::parabolic(1, 0) * LatticeVector(1, 0), LatticeVector(1, 0));
}

TEST(Moves, BlowupSplitsLengths) {
    DiskBase b = corpus::cp2_triangle();
    b.edges[0].length = Rational(3);
    const DiskBase up = at_blowup(b, 0, Rational(1, 3)).base;
    EXPECT_EQ(*up.edges[0].length, Rational(1));
    EXPECT_EQ(*up.edges[1].length, Rational(2));
    EXPECT_EQ(at_blowdown(up, 1).base, b);
}

TEST(Moves, ToricBlowupAndBlowdown) {
    const DiskBase tri = corpus::cp2_triangle();
    const DiskBase f1 = toric_blowup(tri, 1).base;
    EXPECT_EQ(normals(f1), normals(corpus::f1_fan()));
    EXPECT_EQ(cross({1, 0}, {1, 1}), 1);
    EXPECT_EQ(cross({1, 1}, {0, 1}), 1);
    EXPECT_EQ(toric_blowdown(f1, 1).base, tri);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_FALSE(toric_blowdown_applies(tri, i));
        EXPECT_THROW(toric_blowdown(tri, i), Error);
    }
}

TEST(Moves, HurwitzExample) {
    const auto A = parabolic_from_eigen(1, 0), B = parabolic_from_eigen(0, 1);
    const FactorizationWord w{{A, B}};
    const FactorizationWord h = hurwitz_move(w, 0, Direction::Forward);
    const UnimodularMatrix conj = UnimodularMatrix(1, 1, 0, 1) * UnimodularMatrix(1, 0, -1, 1) * UnimodularMatrix(1, -1, 0, 1);
    EXPECT_EQ(h.factors[0].to_matrix(), conj);
    EXPECT_EQ(h.factors[0].eigen(), LatticeVector(1, 1));
    EXPECT_EQ(h.factors[1], A);
    EXPECT_EQ(hurwitz_move(h, 0, Direction::Backward), w);
}

TEST(Moves, HurwitzPreservesProduct) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        FactorizationWord w;
        std::vector<UnimodularMatrix> ms;
        const int len = 2 + trial % 5;
        for (int i = 0; i < len; ++i) {
            const LatticeVector e = oracle::random_primitive(rng, 4);
            w.factors.push_back(parabolic_from_eigen(e.x, e.y));
            ms.push_back(oracle::parabolic(e.x, e.y));
        }
        const UnimodularMatrix P = oracle::word_product(ms);
        FactorizationWord cur = w;
        for (int m = 0; m < 5; ++m) {
            const std::size_t j = std::uniform_int_distribution<std::size_t>(0, len - 2)(rng);
            const Direction d = m % 2 ? Direction::Forward : Direction::Backward;
            const FactorizationWord next = hurwitz_move(cur, j, d);
            EXPECT_EQ(next.product(), P);
            EXPECT_EQ(hurwitz_move(next, j, d == Direction::Forward ? Direction::Backward : Direction::Forward), cur);
            cur = next;
        }
    }
}

TEST(Moves, EveryMoveKeepsValidityAndChiBookkeeping) {
    for (const auto& s : corpus::make_corpus(24, 60)) {
        DiskBase b = s.original;
        for (const auto& r : s.moves) {
            const MoveResult next = apply_move(b, r.kind);
            EXPECT_TRUE(validate_disk(next.base).ok());
            EXPECT_EQ(next.record, r);
            const Integer d = euler_characteristic(next.base) - euler_characteristic(b);
            EXPECT_EQ(d, std::holds_alternative<move::ATBlowup>(r.kind) ? 1 : 0);
            b = next.base;
        }
        EXPECT_EQ(b, s.base);
    }
}

TEST(Moves, RecordsReplayAndDetectTampering) {
    const auto corpus = corpus::make_corpus(25, 20);
    for (const auto& s : corpus) EXPECT_EQ(replay(s.moves, s.original), s.base);
    const auto& s = corpus.front();
    ASSERT_FALSE(s.moves.empty());
    MoveRecord tampered = s.moves.front();
    tampered.after_hash ^= 1;
    EXPECT_THROW(replay(tampered, s.original), Error);
}
