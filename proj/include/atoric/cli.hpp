#pragma once

// Command-line front end. Exit status 1 means the input itself was rejected;
// 2 means the invocation was wrong.

#include <atoric/classify.hpp>
#include <atoric/geometry.hpp>
#include <atoric/io.hpp>
#include <atoric/svg.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace atoric::cli {

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << content;
}

inline DiskBase require_disk(const Document& doc, const std::string& command) {
    if (const auto* d = std::get_if<DiskBase>(&doc)) return *d;
    throw UsageError(command + " needs a disk base file");
}

inline std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

inline std::string turning_report(const FactorizationWord& word, const LatticeVector& v0) {
    const TurningReport report = total_turning(word, v0);
    const UnimodularMatrix product = word.product();
    std::string out = "factors " + std::to_string(word.factors.size()) + "\n";
    out += "v0 " + v0.str() + "\n";
    out += "product " + product.str() + "\n";
    out += std::string("identity ") + (product.is_identity() ? "yes" : "no") + "\n";
    for (std::size_t i = 0; i < report.angles.size(); ++i)
        out += "angle " + std::to_string(i) + " " + fixed(report.angles[i]) + "\n";
    out += "total " + fixed(report.total) + "\n";
    out += "turns " + fixed(report.total / (2 * std::numbers::pi)) + "\n";
    return out;
}

struct MoveOptions {
    std::string op;
    std::size_t index = 0;
    std::string t;
};

inline MoveResult run_move(const DiskBase& base, const MoveOptions& opts) {
    if (opts.index >= base.size())
        throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(opts.index) + " out of range for a base with " +
                                                    std::to_string(base.size()) + " edges");
    auto rational = [&](const char* fallback) {
        std::string text = opts.t.empty() ? std::string(fallback) : opts.t;
        if (text.empty()) throw UsageError("--op " + opts.op + " requires --t");
        return io_detail::parse_rational(text, 1, 1);
    };
    const std::size_t i = opts.index;
    if (opts.op == "T") return branch_move(base, i, Direction::Forward);
    if (opts.op == "Tinv") return branch_move(base, i, Direction::Backward);
    if (opts.op == "trade") return nodal_trade(base, i, TradeDirection::VertexToNode);
    if (opts.op == "untrade") return nodal_trade(base, i, TradeDirection::NodeToVertex);
    if (opts.op == "slide") return nodal_slide(base, i, rational(""));
    if (opts.op == "split") return split_node(base, i);
    if (opts.op == "blowup") return at_blowup(base, i, rational("1/2"));
    if (opts.op == "blowdown") return at_blowdown(base, i);
    if (opts.op == "toric-blowup") return toric_blowup(base, i);
    if (opts.op == "toric-blowdown") return toric_blowdown(base, i);
    throw UsageError("unknown --op '" + opts.op + "'");
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Almost toric base diagrams: validation, surgery, normalization and classification", "atoric"};
    app.require_subcommand(1);

    std::string file, output, trace, log_path, v0_text, t_text;
    detail::MoveOptions move_opts;

    auto* validate = app.add_subcommand("validate", "Check a base file against the defining-set conditions");
    validate->add_option("FILE", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "Print the diffeomorphism type of the total space");
    classify_cmd->add_option("FILE", file)->required();

    auto* normalize = app.add_subcommand("normalize", "Trade vertices for nodes and branch-move until all n are 0 or 1");
    normalize->add_option("FILE", file)->required();
    normalize->add_option("-o,--output", output)->required();
    normalize->add_option("--trace", trace, "Write the move log here");

    auto* toric = app.add_subcommand("to-toric", "Convert a disk base to a Delzant polygon");
    toric->add_option("FILE", file)->required();
    toric->add_option("-o,--output", output)->required();
    toric->add_option("--trace", trace, "Write the move log here");

    const std::vector<std::string> ops{"T",        "Tinv",     "trade",        "untrade",       "slide", "split",
                                       "blowup",   "blowdown", "toric-blowup", "toric-blowdown"};
    auto* move_cmd = app.add_subcommand("move", "Apply one surgery to a disk base");
    move_cmd->add_option("FILE", file)->required();
    move_cmd->add_option("--op", move_opts.op)->required()->check(CLI::IsMember(ops));
    move_cmd->add_option("--index", move_opts.index)->required();
    move_cmd->add_option("--t", move_opts.t, "Rational parameter p/q for slide and blowup");
    move_cmd->add_option("-o,--output", output)->required();

    auto* replay_cmd = app.add_subcommand("replay", "Replay a move log on a disk base");
    replay_cmd->add_option("FILE", file)->required();
    replay_cmd->add_option("--log", log_path)->required();
    replay_cmd->add_option("-o,--output", output)->required();

    auto* render = app.add_subcommand("render", "Draw a disk base as SVG");
    render->add_option("FILE", file)->required();
    render->add_option("-o,--output", output)->required();

    auto* factor = app.add_subcommand("factor-check", "Turning report for a word or a disk base's corner word");
    factor->add_option("FILE", file)->required();
    factor->add_option("--v0", v0_text, "Starting vector (x,y); default (1,0)");

    auto* canon = app.add_subcommand("canon", "Print the canonical form of a base");
    canon->add_option("FILE", file)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "atoric: " << e.what() << "\n";
        return 2;
    }

    try {
        const Document doc = parse(detail::read_file(file));

        if (validate->parsed()) {
            ValidationReport report;
            if (const auto* d = std::get_if<DiskBase>(&doc)) report = validate_disk(*d);
            if (const auto* n = std::get_if<NonDiskBase>(&doc)) report = validate_nondisk(*n);
            if (report.ok()) {
                out << "valid\n";
                return 0;
            }
            out << report.str() << "\n";
            return 1;
        }
        if (classify_cmd->parsed()) {
            if (const auto* d = std::get_if<DiskBase>(&doc)) out << to_string(classify(*d)) << "\n";
            else if (const auto* n = std::get_if<NonDiskBase>(&doc)) out << to_string(classify(*n)) << "\n";
            else throw detail::UsageError("classify needs a base file");
            return 0;
        }
        if (normalize->parsed() || toric->parsed()) {
            const DiskBase base = detail::require_disk(doc, normalize->parsed() ? "normalize" : "to-toric");
            const NormalizedBase result = normalize->parsed() ? normalize_nodes(base) : to_toric(base);
            detail::write_file(output, serialize(result.base));
            if (!trace.empty()) detail::write_file(trace, serialize(to_move_log(result.trace)));
            out << result.base.size() << " corners, " << result.trace.steps.size() << " moves\n";
            return 0;
        }
        if (move_cmd->parsed()) {
            const MoveResult result = detail::run_move(detail::require_disk(doc, "move"), move_opts);
            detail::write_file(output, serialize(result.base));
            out << serialize(result.record) << "\n";
            return 0;
        }
        if (replay_cmd->parsed()) {
            const MoveLog log = parse_as<MoveLog>(detail::read_file(log_path), "a move log");
            detail::write_file(output, serialize(replay(log.records, detail::require_disk(doc, "replay"))));
            out << log.records.size() << " moves replayed\n";
            return 0;
        }
        if (render->parsed()) {
            detail::write_file(output, render_svg(detail::require_disk(doc, "render")));
            return 0;
        }
        if (factor->parsed()) {
            LatticeVector v0{1, 0};
            if (!v0_text.empty()) v0 = io_detail::parse_vector(v0_text, 1, 1);
            FactorizationWord word;
            if (const auto* w = std::get_if<FactorizationWord>(&doc)) word = *w;
            else if (const auto* d = std::get_if<DiskBase>(&doc)) {
                require_valid(*d);
                word = corner_word(*d);
            } else throw detail::UsageError("factor-check needs a word or disk base file");
            out << detail::turning_report(word, v0);
            return 0;
        }
        if (canon->parsed()) {
            if (const auto* d = std::get_if<DiskBase>(&doc)) out << serialize(canonical_form(*d));
            else out << serialize(doc);
            return 0;
        }
    } catch (const detail::UsageError& e) {
        err << "atoric: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "atoric: " << e.what() << "\n";
        return e.code() == ErrorCode::IndexOutOfRange ? 2 : 1;
    }
    return 2;
}

}  // namespace atoric::cli
