#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace atoric;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        return e.what();
    }
    return "";
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Io, ParsesTriangle) {
    const DiskBase b = parse_disk(
        "base disk\n"
        "edge u=(1,0)\ncorner vertex\n"
        "edge u=(0,1)\ncorner vertex\n"
        "edge u=(-1,-1)\ncorner vertex\n");
    EXPECT_EQ(b, corpus::cp2_triangle());
}

TEST(Io, ParsesNondiskHeaders) {
    EXPECT_EQ(parse("base sphere nodes=24"), Document(NonDiskBase{Topology::Sphere, 24, 0, std::nullopt}));
    EXPECT_EQ(parse("base rp2 nodes=12\n"), Document(NonDiskBase{Topology::RP2, 12, 0, std::nullopt}));
    EXPECT_EQ(parse("base cylinder lambda=1 blowups=2\n"), Document(NonDiskBase{Topology::Cylinder, 2, 1, std::nullopt}));
    EXPECT_EQ(parse("base klein lambda=-3 chern=(2,0)\n"),
              Document(NonDiskBase{Topology::KleinBottle, 0, -3, ChernClass{2, 0}}));
}

TEST(Io, RejectsNonPrimitiveEigenvector) {
    const std::string msg = parse_error("base disk\nedge u=(1,0)\ncorner node e=(2,0)\n");
    EXPECT_NE(msg.find("eigenvector not primitive"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(Io, ErrorsCarryPositions) {
    EXPECT_NE(parse_error("base disk\nedge u=(1,0\n").find("line 2, column"), std::string::npos);
    EXPECT_NE(parse_error("base blob\n").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("base disk\nedge u=(1,0) len=1/0\n").find("line 2"), std::string::npos);
    EXPECT_NE(parse_error("base sphere nodes=x\n").find("line 1"), std::string::npos);
    EXPECT_NE(parse_error("").find("line"), std::string::npos);
    EXPECT_FALSE(parse_error("base disk\nedge u=(1,0) colour=red\n").empty());
}

TEST(Io, WhitespaceCommentsAndDefaults) {
    const std::string messy =
        "# a triangle with one node\n"
        "base   disk\n"
        "  edge u=( 1, 0 )   # first\n"
        "corner vertex\n\n"
        "edge u=(0,1)\n"
        "corner vertex\n"
        "edge u=(-1,-1) len=4/2\n"
        "corner node e=(2,1)\n";
    const DiskBase b = parse_disk(messy);
    EXPECT_EQ(std::get<Node>(b.corners[0]), (Node{{2, 1}, 1, Rational(1, 2)}));
    EXPECT_EQ(*b.edges[2].length, Rational(2));
    const std::string canonical = serialize(b);
    EXPECT_NE(canonical.find("len=2\n"), std::string::npos);
    EXPECT_NE(canonical.find("corner node e=(2,1) mult=1 t=1/2"), std::string::npos);
    EXPECT_EQ(serialize(parse_disk(canonical)), canonical);
}

TEST(Io, DataFilesRoundTrip) {
    const std::string root = ATORIC_SOURCE_DIR;
    for (const char* name : {"cp2", "square", "f1", "pentagon", "e1", "cp2_traded", "sphere", "rp2", "cylinder",
                             "moebius", "torus", "klein", "twelve_word"}) {
        const std::string once = serialize(parse(slurp(root + "/data/" + name + ".txt")));
        EXPECT_EQ(serialize(parse(once)), once) << name;
    }
}

TEST(Io, CorpusRoundTripsByteExact) {
    for (const auto& s : corpus::make_corpus(61, 100)) {
        const std::string text = serialize(s.base);
        EXPECT_EQ(parse_disk(text), s.base);
        EXPECT_EQ(serialize(parse(text)), text);
        const std::string log = serialize(MoveLog{s.moves, {}});
        EXPECT_EQ(serialize(parse(log)), log);
    }
}

TEST(Io, WordsAndMoveLogs) {
    const auto w = parse_as<FactorizationWord>("word\nfactor e=(1,0)\nfactor e=(0,-1) mult=3\n", "word");
    ASSERT_EQ(w.factors.size(), 2u);
    EXPECT_EQ(w.factors[1], parabolic_from_eigen(0, 1, 3));
    EXPECT_EQ(serialize(w), "word\nfactor e=(1,0) mult=1\nfactor e=(0,1) mult=3\n");

    const auto r = branch_move(nodal_trade(nodal_trade(corpus::cp2_triangle(), 0, TradeDirection::VertexToNode).base, 1,
                                           TradeDirection::VertexToNode)
                                   .base,
                               0, Direction::Forward);
    const std::string line = serialize(r.record);
    EXPECT_EQ(line.rfind("move T index=0 before=", 0), 0u) << line;
    const auto log = parse_as<MoveLog>("moves\n" + line + "\nmax-n 2 1\n", "log");
    ASSERT_EQ(log.records.size(), 1u);
    EXPECT_EQ(log.records[0], r.record);
    EXPECT_EQ(log.max_n_history, (std::vector<Integer>{2, 1}));
}

TEST(Io, SvgCounts) {
    const DiskBase tri = corpus::cp2_triangle();
    const std::string plain = render_svg(tri);
    EXPECT_EQ(occurrences(plain, "class=\"edge\""), 3u);
    EXPECT_EQ(occurrences(plain, "class=\"asterisk\""), 0u);
    const DiskBase traded = nodal_trade(tri, 0, TradeDirection::VertexToNode).base;
    const std::string one = render_svg(traded);
    EXPECT_EQ(occurrences(one, "class=\"edge\""), 3u);
    EXPECT_EQ(occurrences(one, "class=\"asterisk\""), 1u);
    EXPECT_EQ(occurrences(one, "stroke-dasharray"), 1u);
    EXPECT_EQ(render_svg(traded), one);
    for (const auto& s : corpus::make_corpus(62, 30)) {
        const std::string svg = render_svg(s.base);
        EXPECT_EQ(occurrences(svg, "class=\"edge\""), s.base.size());
        EXPECT_EQ(occurrences(svg, "class=\"asterisk\""), oracle::node_count(s.base));
        EXPECT_EQ(occurrences(svg, "class=\"branch\""), oracle::node_count(s.base));
        EXPECT_EQ(svg.find("nan"), std::string::npos);
    }
}

TEST(Io, SvgMultiplicityLabel) {
    DiskBase b = DiskBase::from_normals({{1, -1}, {1, 1}, {-1, 0}});
    b.corners[1] = Node{{0, 1}, 2};
    const std::string svg = render_svg(b);
    EXPECT_EQ(occurrences(svg, "class=\"multiplicity\""), 1u);
    EXPECT_NE(svg.find(">x2<"), std::string::npos);
}

TEST(Io, LayoutClosesBoundary) {
    DiskBase sq = corpus::square_fan();
    for (std::size_t i = 0; i < 4; ++i) sq.edges[i].length = Rational(i % 2 ? 1 : 2);
    const Layout rect = layout(sq);
    EXPECT_EQ(rect.lengths, (std::vector<Rational>{2, 1, 2, 1}));
    sq.edges[0].length = Rational(5);
    const Layout fixed = layout(sq);
    // the closing defect is absorbed by the two edges bracketing it
    Rational x = 0, y = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const LatticeVector& u = sq.normal(i);
        x += fixed.lengths[i] * Rational(u.y);
        y -= fixed.lengths[i] * Rational(u.x);
    }
    EXPECT_EQ(x, 0);
    EXPECT_EQ(y, 0);
    for (const auto& l : fixed.lengths) EXPECT_GT(l, 0);
}

TEST(Io, UnrenderableIsReported) {
    DiskBase bad = DiskBase::from_normals({{1, 0}, {0, 2}, {-1, -1}});
    try {
        render_svg(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Unrenderable);
    }
}
