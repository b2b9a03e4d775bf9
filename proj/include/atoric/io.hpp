#pragma once

// Line-oriented text format for bases, factorization words and move logs.
//
//   base disk
//   edge u=(1,0) [len=3/2]
//   corner vertex | corner node e=(2,1) [mult=1] [t=1/2]
//   ...                         # edges and corners alternate, edge first
//   base sphere nodes=24
//   base rp2 nodes=12
//   base cylinder|moebius lambda=<int> blowups=<int>
//   base torus|klein lambda=<int> chern=(<int>,<int>)
//   word
//   factor e=(a,b) [mult=m]
//   moves
//   move <op> index=<i> [t=<rat>] before=<hex> after=<hex>
//   max-n <int> <int> ...
//
// The corner line after edge j is the corner joining edge j to edge j+1,
// so the last corner line is corner 0.

#include <atoric/normalize.hpp>

#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

namespace atoric {

struct MoveLog {
    std::vector<MoveRecord> records;
    std::vector<Integer> max_n_history;
    friend bool operator==(const MoveLog&, const MoveLog&) = default;
};

using Document = std::variant<DiskBase, NonDiskBase, FactorizationWord, MoveLog>;

namespace io_detail {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

[[noreturn]] inline void fail(std::size_t line, std::size_t column, const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

/// Splits on whitespace; a parenthesized group may contain spaces.
inline std::vector<Token> tokenize(std::string_view line, std::size_t number) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        std::string text;
        int depth = 0;
        while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
            const char c = line[i];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) fail(number, i + 1, "unbalanced ')'");
                --depth;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) text += c;
            ++i;
        }
        if (depth != 0) fail(number, start + 1, "unclosed '('");
        out.push_back({std::move(text), start + 1});
    }
    return out;
}

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        auto tokens = tokenize(raw, number);
        if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

inline Integer parse_integer(const std::string& s, std::size_t line, std::size_t col) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) fail(line, col, "expected an integer, got '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail(line, col, "expected an integer, got '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline Rational parse_rational(const std::string& s, std::size_t line, std::size_t col) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s, line, col));
    const Integer num = parse_integer(s.substr(0, slash), line, col);
    const Integer den = parse_integer(s.substr(slash + 1), line, col + slash + 1);
    if (den <= 0) fail(line, col + slash + 1, "rational denominator must be positive");
    return Rational(num, den);
}

inline LatticeVector parse_vector(const std::string& s, std::size_t line, std::size_t col) {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') fail(line, col, "expected a vector (x,y), got '" + s + "'");
    const std::string inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) fail(line, col, "expected a vector (x,y), got '" + s + "'");
    return {parse_integer(inner.substr(0, comma), line, col + 1),
            parse_integer(inner.substr(comma + 1), line, col + comma + 2)};
}

inline std::uint64_t parse_hash(const std::string& s, std::size_t line, std::size_t col) {
    if (s.empty() || s.size() > 16) fail(line, col, "expected a 64-bit hex hash, got '" + s + "'");
    std::uint64_t h = 0;
    for (char c : s) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else fail(line, col, "expected a 64-bit hex hash, got '" + s + "'");
        h = (h << 4) | static_cast<std::uint64_t>(digit);
    }
    return h;
}

/// key=value attributes after the first `skip` tokens of a line.
class Attributes {
public:
    Attributes(const Line& line, std::size_t skip, std::initializer_list<std::string_view> allowed) : line_(line.number) {
        for (std::size_t i = skip; i < line.tokens.size(); ++i) {
            const Token& t = line.tokens[i];
            const auto eq = t.text.find('=');
            if (eq == std::string::npos || eq == 0) fail(line_, t.column, "expected key=value, got '" + t.text + "'");
            std::string key = t.text.substr(0, eq);
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                fail(line_, t.column, "unknown attribute '" + key + "'");
            if (values_.count(key)) fail(line_, t.column, "duplicate attribute '" + key + "'");
            values_[key] = {t.text.substr(eq + 1), t.column + eq + 1};
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    const Token& require(const std::string& key, std::size_t column) const {
        auto it = values_.find(key);
        if (it == values_.end()) fail(line_, column, "missing attribute '" + key + "'");
        return it->second;
    }

    std::optional<Token> get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
    std::map<std::string, Token> values_;
};

inline void expect_count(const Line& line, std::size_t at_least, const std::string& what) {
    if (line.tokens.size() < at_least) fail(line.number, line.tokens.back().column, "expected " + what);
}

inline DiskBase parse_disk_body(const std::vector<Line>& lines) {
    std::vector<Edge> edges;
    std::vector<Corner> corners;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens[0];
        const bool expect_edge = edges.size() == corners.size();
        if (head.text == "edge") {
            if (!expect_edge) fail(line.number, head.column, "expected a corner line after an edge");
            Attributes attrs(line, 1, {"u", "len"});
            const Token& u = attrs.require("u", head.column);
            Edge e{parse_vector(u.text, line.number, u.column), std::nullopt};
            if (auto len = attrs.get("len")) e.length = parse_rational(len->text, line.number, len->column);
            edges.push_back(std::move(e));
        } else if (head.text == "corner") {
            if (expect_edge) fail(line.number, head.column, "expected an edge line before a corner");
            expect_count(line, 2, "'vertex' or 'node' after 'corner'");
            const Token& kind = line.tokens[1];
            if (kind.text == "vertex") {
                Attributes attrs(line, 2, {});
                corners.emplace_back(Vertex{});
            } else if (kind.text == "node") {
                Attributes attrs(line, 2, {"e", "mult", "t"});
                const Token& e = attrs.require("e", kind.column);
                Node node{parse_vector(e.text, line.number, e.column), 1, Rational(1, 2)};
                if (node.eigen.is_zero()) fail(line.number, e.column, "eigenvector is zero");
                if (!node.eigen.is_primitive()) fail(line.number, e.column, "eigenvector not primitive");
                if (auto m = attrs.get("mult")) node.multiplicity = parse_integer(m->text, line.number, m->column);
                if (auto t = attrs.get("t")) node.slide = parse_rational(t->text, line.number, t->column);
                corners.emplace_back(std::move(node));
            } else {
                fail(line.number, kind.column, "unknown corner kind '" + kind.text + "'");
            }
        } else {
            fail(line.number, head.column, "expected 'edge' or 'corner', got '" + head.text + "'");
        }
    }
    if (edges.empty()) fail(lines[0].number, 1, "disk base has no edges");
    if (edges.size() != corners.size()) fail(lines.back().number, 1, "disk base must end with a corner line");

    // corner after edge j is corner j+1; the last one is corner 0.
    DiskBase base;
    base.edges = std::move(edges);
    base.corners.resize(corners.size());
    for (std::size_t j = 0; j < corners.size(); ++j) base.corners[(j + 1) % corners.size()] = std::move(corners[j]);
    return base;
}

inline NonDiskBase parse_nondisk(const Line& header) {
    const Token& kind = header.tokens[1];
    static const std::map<std::string, Topology> names{
        {"cylinder", Topology::Cylinder}, {"moebius", Topology::Moebius}, {"sphere", Topology::Sphere},
        {"rp2", Topology::RP2},           {"torus", Topology::Torus},     {"klein", Topology::KleinBottle}};
    auto it = names.find(kind.text);
    if (it == names.end()) fail(header.number, kind.column, "unknown base type '" + kind.text + "'");
    NonDiskBase b;
    b.topology = it->second;
    auto int_attr = [&](const Attributes& attrs, const char* key, Integer& out) {
        if (auto tok = attrs.get(key)) out = parse_integer(tok->text, header.number, tok->column);
    };
    switch (b.topology) {
        case Topology::Sphere:
        case Topology::RP2: {
            Attributes attrs(header, 2, {"nodes"});
            const Token& n = attrs.require("nodes", kind.column);
            b.nodes = parse_integer(n.text, header.number, n.column);
            break;
        }
        case Topology::Cylinder:
        case Topology::Moebius: {
            Attributes attrs(header, 2, {"lambda", "blowups"});
            int_attr(attrs, "lambda", b.lambda);
            int_attr(attrs, "blowups", b.nodes);
            break;
        }
        case Topology::Torus:
        case Topology::KleinBottle: {
            Attributes attrs(header, 2, {"lambda", "chern"});
            int_attr(attrs, "lambda", b.lambda);
            if (auto c = attrs.get("chern")) {
                const LatticeVector v = parse_vector(c->text, header.number, c->column);
                b.chern = ChernClass{v.x, v.y};
            }
            break;
        }
    }
    return b;
}

inline FactorizationWord parse_word_body(const std::vector<Line>& lines) {
    FactorizationWord w;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens[0];
        if (head.text != "factor") fail(line.number, head.column, "expected 'factor', got '" + head.text + "'");
        Attributes attrs(line, 1, {"e", "mult"});
        const Token& e = attrs.require("e", head.column);
        const LatticeVector eigen = parse_vector(e.text, line.number, e.column);
        if (!eigen.is_primitive()) fail(line.number, e.column, "eigenvector not primitive");
        Integer mult = 1;
        if (auto m = attrs.get("mult")) mult = parse_integer(m->text, line.number, m->column);
        if (mult < 1) fail(line.number, e.column, "multiplicity must be positive");
        w.factors.emplace_back(eigen, mult);
    }
    return w;
}

inline const std::map<std::string, int>& op_codes() {
    static const std::map<std::string, int> codes{
        {"T", 0},       {"Tinv", 1},      {"trade", 2},        {"untrade", 3},          {"slide", 4},
        {"split", 5},   {"blowup", 6},    {"blowdown", 7},     {"toric-blowup", 8},     {"toric-blowdown", 9},
        {"hurwitz", 10}, {"hurwitz-inv", 11}};
    return codes;
}

inline MoveLog parse_moves_body(const std::vector<Line>& lines) {
    MoveLog log;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens[0];
        if (head.text == "max-n") {
            for (std::size_t i = 1; i < line.tokens.size(); ++i)
                log.max_n_history.push_back(parse_integer(line.tokens[i].text, line.number, line.tokens[i].column));
            continue;
        }
        if (head.text != "move") fail(line.number, head.column, "expected 'move' or 'max-n', got '" + head.text + "'");
        expect_count(line, 2, "an operation name after 'move'");
        const Token& op = line.tokens[1];
        auto it = op_codes().find(op.text);
        if (it == op_codes().end()) fail(line.number, op.column, "unknown move '" + op.text + "'");
        Attributes attrs(line, 2, {"index", "t", "before", "after"});
        const Token& idx = attrs.require("index", op.column);
        const Integer index_value = parse_integer(idx.text, line.number, idx.column);
        if (index_value < 0) fail(line.number, idx.column, "index must be non-negative");
        const auto i = index_value.convert_to<std::size_t>();
        auto rational = [&](const char* key) {
            const Token& t = attrs.require(key, op.column);
            return parse_rational(t.text, line.number, t.column);
        };
        MoveKind kind;
        switch (it->second) {
            case 0: kind = move::BranchMove{i, Direction::Forward}; break;
            case 1: kind = move::BranchMove{i, Direction::Backward}; break;
            case 2: kind = move::NodalTrade{i, TradeDirection::VertexToNode}; break;
            case 3: kind = move::NodalTrade{i, TradeDirection::NodeToVertex}; break;
            case 4: kind = move::NodalSlide{i, rational("t")}; break;
            case 5: kind = move::NodeSplit{i}; break;
            case 6: kind = move::ATBlowup{i, rational("t")}; break;
            case 7: kind = move::ATBlowdown{i}; break;
            case 8: kind = move::ToricBlowup{i}; break;
            case 9: kind = move::ToricBlowdown{i}; break;
            case 10: kind = move::Hurwitz{i, Direction::Forward}; break;
            default: kind = move::Hurwitz{i, Direction::Backward}; break;
        }
        const Token& before = attrs.require("before", op.column);
        const Token& after = attrs.require("after", op.column);
        log.records.push_back({std::move(kind), parse_hash(before.text, line.number, before.column),
                               parse_hash(after.text, line.number, after.column)});
    }
    return log;
}

inline std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline const char* topology_name(Topology t) {
    switch (t) {
        case Topology::Cylinder: return "cylinder";
        case Topology::Moebius: return "moebius";
        case Topology::Sphere: return "sphere";
        case Topology::RP2: return "rp2";
        case Topology::Torus: return "torus";
        case Topology::KleinBottle: return "klein";
    }
    return "sphere";
}

}  // namespace io_detail

inline Document parse(std::string_view text) {
    const auto lines = io_detail::split_lines(text);
    if (lines.empty()) io_detail::fail(1, 1, "empty input");
    const io_detail::Line& header = lines[0];
    const io_detail::Token& head = header.tokens[0];
    if (head.text == "word") {
        io_detail::Attributes(header, 1, {});
        return io_detail::parse_word_body(lines);
    }
    if (head.text == "moves") {
        io_detail::Attributes(header, 1, {});
        return io_detail::parse_moves_body(lines);
    }
    if (head.text != "base") io_detail::fail(header.number, head.column, "expected 'base', 'word' or 'moves' header");
    io_detail::expect_count(header, 2, "a base type after 'base'");
    if (header.tokens[1].text == "disk") {
        io_detail::Attributes(header, 2, {});
        return io_detail::parse_disk_body(lines);
    }
    if (lines.size() > 1)
        io_detail::fail(lines[1].number, lines[1].tokens[0].column, "unexpected body line for a closed or annular base");
    return io_detail::parse_nondisk(header);
}

template <class T>
T parse_as(std::string_view text, const char* what) {
    Document doc = parse(text);
    if (auto* v = std::get_if<T>(&doc)) return std::move(*v);
    throw Error(ErrorCode::Parse, std::string("expected ") + what);
}

inline DiskBase parse_disk(std::string_view text) { return parse_as<DiskBase>(text, "a disk base"); }

// ---------------------------------------------------------------------------
// Serialization

inline std::string serialize(const DiskBase& base) {
    std::string out = "base disk\n";
    const std::size_t k = base.size();
    for (std::size_t j = 0; j < k; ++j) {
        const Edge& e = base.edges[j];
        out += "edge u=" + e.normal.str();
        if (e.length) out += " len=" + to_string(*e.length);
        out += "\n";
        const Corner& c = base.corners[(j + 1) % k];
        if (const auto* node = std::get_if<Node>(&c))
            out += "corner node e=" + node->eigen.str() + " mult=" + node->multiplicity.str() +
                   " t=" + to_string(node->slide) + "\n";
        else
            out += "corner vertex\n";
    }
    return out;
}

inline std::string serialize(const NonDiskBase& base) {
    std::string out = std::string("base ") + io_detail::topology_name(base.topology);
    switch (base.topology) {
        case Topology::Sphere:
        case Topology::RP2:
            out += " nodes=" + base.nodes.str();
            break;
        case Topology::Cylinder:
        case Topology::Moebius:
            out += " lambda=" + base.lambda.str() + " blowups=" + base.nodes.str();
            break;
        case Topology::Torus:
        case Topology::KleinBottle:
            out += " lambda=" + base.lambda.str();
            if (base.chern) out += " chern=(" + base.chern->m.str() + "," + base.chern->n.str() + ")";
            break;
    }
    return out + "\n";
}

inline std::string serialize(const FactorizationWord& word) {
    std::string out = "word\n";
    for (const auto& f : word.factors) out += "factor e=" + f.eigen().str() + " mult=" + f.multiplicity().str() + "\n";
    return out;
}

inline std::string serialize(const MoveRecord& record) {
    std::string out = "move ";
    std::visit(
        [&out](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, move::BranchMove>)
                out += std::string(m.direction == Direction::Forward ? "T" : "Tinv") + " index=" + std::to_string(m.j);
            else if constexpr (std::is_same_v<M, move::NodalTrade>)
                out += std::string(m.direction == TradeDirection::VertexToNode ? "trade" : "untrade") +
                       " index=" + std::to_string(m.i);
            else if constexpr (std::is_same_v<M, move::NodalSlide>)
                out += "slide index=" + std::to_string(m.i) + " t=" + to_string(m.t);
            else if constexpr (std::is_same_v<M, move::NodeSplit>)
                out += "split index=" + std::to_string(m.i);
            else if constexpr (std::is_same_v<M, move::ATBlowup>)
                out += "blowup index=" + std::to_string(m.edge) + " t=" + to_string(m.t);
            else if constexpr (std::is_same_v<M, move::ATBlowdown>)
                out += "blowdown index=" + std::to_string(m.i);
            else if constexpr (std::is_same_v<M, move::ToricBlowup>)
                out += "toric-blowup index=" + std::to_string(m.i);
            else if constexpr (std::is_same_v<M, move::ToricBlowdown>)
                out += "toric-blowdown index=" + std::to_string(m.i);
            else
                out += std::string(m.direction == Direction::Forward ? "hurwitz" : "hurwitz-inv") +
                       " index=" + std::to_string(m.j);
        },
        record.kind);
    return out + " before=" + io_detail::hex(record.before_hash) + " after=" + io_detail::hex(record.after_hash);
}

inline std::string serialize(const MoveLog& log) {
    std::string out = "moves\n";
    for (const auto& r : log.records) out += serialize(r) + "\n";
    if (!log.max_n_history.empty()) {
        out += "max-n";
        for (const auto& n : log.max_n_history) out += " " + n.str();
        out += "\n";
    }
    return out;
}

inline std::string serialize(const Document& doc) {
    return std::visit([](const auto& d) { return serialize(d); }, doc);
}

inline MoveLog to_move_log(const NormalizationTrace& trace) { return {trace.steps, trace.max_n_history}; }

}  // namespace atoric
