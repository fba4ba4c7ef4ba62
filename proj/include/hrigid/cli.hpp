#ifndef HRIGID_CLI_HPP
#define HRIGID_CLI_HPP

#include "corpus.hpp"
#include "io.hpp"
#include "rigidity.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hrigid {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_holds = 0, exit_fails = 1, exit_usage = 2 };

// ---------------------------------------------------------------------------
// JSON rendering. Rationals are always "p/q" strings.

inline nlohmann::json to_json(const RationalMatrix& m)
{
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (const auto& c : m.row(r)) row.push_back(to_string(c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json labels_json(const GradedAlgebra& a, const std::vector<std::size_t>& idx)
{
    auto out = nlohmann::json::array();
    for (auto i : idx) out.push_back(a.label(i));
    return out;
}

/// Blocks into empty target pieces are omitted.
inline nlohmann::json to_json(const GradedAlgebra& a, const GradedLinearMap& m)
{
    auto blocks = nlohmann::json::array();
    for (const auto& [n, b] : m.blocks()) {
        if (b.rows() == 0) continue;
        blocks.push_back({{"source_degree", n},
                          {"target_degree", n + m.shift()},
                          {"source", labels_json(a, a.graded_piece(n))},
                          {"target", labels_json(a, a.graded_piece(n + m.shift()))},
                          {"matrix", to_json(b)}});
    }
    return {{"shift", m.shift()}, {"blocks", std::move(blocks)}, {"text", format_map(a, m)}};
}

inline nlohmann::json summary_json(const GradedAlgebra& a)
{
    auto basis = nlohmann::json::array();
    for (const auto& b : a.basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}});
    return {{"name", a.name()}, {"dimension", a.dim()}, {"top_degree", a.top_degree()}, {"basis", std::move(basis)}};
}

inline nlohmann::json violations_json(const std::vector<Violation>& v)
{
    auto out = nlohmann::json::array();
    for (const auto& x : v) out.push_back({{"kind", to_string(x.kind)}, {"message", x.message}});
    return out;
}

namespace detail {

inline std::string degree_range(int max_degree)
{
    if (max_degree < 1) return "none";
    return max_degree == 1 ? "-1" : "-1..-" + std::to_string(max_degree);
}

struct CliOptions {
    bool json = false;
    std::string file;
    int degree = 0;
    int rank = 0;
    int torus = 0;
    std::optional<int> max_degree;
    std::string example_name;
};

inline void emit_json(std::ostream& out, const nlohmann::json& doc) { out << doc.dump(2) << '\n'; }

inline int cmd_validate(const CliOptions& o, std::ostream& out)
{
    const auto a = load_algebra_unchecked(read_file(o.file));
    const auto violations = validate(a);
    if (o.json) {
        emit_json(out, {{"command", "validate"},
                        {"algebra", summary_json(a)},
                        {"valid", violations.empty()},
                        {"violations", violations_json(violations)}});
    } else {
        out << "algebra: " << a.name() << " (dim " << a.dim() << ", top degree " << a.top_degree() << ")\n";
        for (const auto& v : violations) out << "violation [" << to_string(v.kind) << "]: " << v.message << '\n';
        if (violations.empty()) {
            out << "valid\n";
        } else {
            out << "invalid: " << violations.size() << " violations\n";
        }
    }
    return violations.empty() ? exit_holds : exit_fails;
}

inline int cmd_check_h(const CliOptions& o, std::ostream& out)
{
    const auto a = load_algebra(read_file(o.file));
    const auto v = check_class_H(a, o.max_degree);
    const bool holds = v.in_class && v.connectivity_ok;
    if (o.json) {
        auto dims = nlohmann::json::array();
        for (const auto& [d, n] : v.dimensions) dims.push_back({{"degree", d}, {"dimension", n}});
        nlohmann::json cert = nullptr;
        if (v.certificate) cert = {{"degree", v.certificate->degree}, {"map", to_json(a, v.certificate->derivation)}};
        emit_json(out, {{"command", "check-h"},
                        {"algebra", summary_json(a)},
                        {"in_class", holds},
                        {"derivation_free", v.in_class},
                        {"connectivity_ok", v.connectivity_ok},
                        {"max_degree_checked", v.max_degree_checked},
                        {"dimensions", std::move(dims)},
                        {"certificate", std::move(cert)}});
    } else {
        out << "algebra: " << a.name() << '\n';
        if (!v.connectivity_ok) {
            out << "connectivity fails: dim H^0 = " << a.graded_piece(0).size() << ", dim H^1 = " << a.graded_piece(1).size()
                << '\n';
        }
        if (holds) {
            out << "in class H; degrees checked " << degree_range(v.max_degree_checked) << '\n';
        } else if (v.in_class) {
            out << "not in class H: no negative-degree derivations in degrees " << degree_range(v.max_degree_checked)
                << ", but not simply connected\n";
        } else {
            out << "not in class H\n";
            out << "degree " << v.certificate->degree << ": " << format_map(a, v.certificate->derivation) << '\n';
        }
    }
    return holds ? exit_holds : exit_fails;
}

inline int cmd_derivations(const CliOptions& o, std::ostream& out)
{
    const auto a = load_algebra(read_file(o.file));
    const auto space = derivation_space(a, o.degree);
    if (o.json) {
        auto basis = nlohmann::json::array();
        for (const auto& m : space) basis.push_back(to_json(a, m));
        emit_json(out, {{"command", "derivations"},
                        {"algebra", summary_json(a)},
                        {"degree", o.degree},
                        {"dimension", space.size()},
                        {"basis", std::move(basis)}});
    } else {
        out << "algebra: " << a.name() << '\n';
        out << "degree " << o.degree << " derivations: dim " << space.size() << '\n';
        for (std::size_t k = 0; k < space.size(); ++k) out << "[" << k + 1 << "] " << format_map(a, space[k]) << '\n';
    }
    return exit_holds;
}

inline int cmd_char(const CliOptions& o, std::ostream& out)
{
    const auto a = load_algebra(read_file(o.file));
    const auto ch = char_subspace(a, o.rank);
    if (o.json) {
        auto pieces = nlohmann::json::array();
        for (const auto& [d, idx] : ch.basis_indices) pieces.push_back({{"degree", d}, {"basis", labels_json(a, idx)}});
        emit_json(out, {{"command", "char"},
                        {"algebra", summary_json(a)},
                        {"rank", ch.rank},
                        {"degrees", ch.degrees},
                        {"dimension", ch.dimension},
                        {"pieces", std::move(pieces)}});
    } else {
        out << "algebra: " << a.name() << '\n';
        out << "Char(" << ch.rank << ") degrees:";
        for (int d : ch.degrees) out << ' ' << d;
        out << "; dimension " << ch.dimension << '\n';
        for (const auto& [d, idx] : ch.basis_indices) {
            out << "H^" << d << ":";
            if (idx.empty()) out << " 0";
            for (std::size_t k = 0; k < idx.size(); ++k) out << (k == 0 ? " " : ", ") << a.label(idx[k]);
            out << '\n';
        }
    }
    return exit_holds;
}

inline int cmd_rigidity(const CliOptions& o, std::ostream& out)
{
    const auto a = load_algebra(read_file(o.file));
    const auto trace = prove_rigidity(a, o.torus);
    if (o.json) {
        auto levels = nlohmann::json::array();
        for (const auto& l : trace.levels) {
            nlohmann::json cert = nullptr;
            if (l.certificate) cert = to_json(a, *l.certificate);
            levels.push_back({{"level", l.level}, {"dimension", l.derivation_dimension}, {"certificate", std::move(cert)}});
        }
        nlohmann::json failed = nullptr;
        if (trace.failed_level) failed = *trace.failed_level;
        emit_json(out, {{"command", "rigidity"},
                        {"algebra", summary_json(a)},
                        {"torus_rank", trace.torus_rank},
                        {"top_degree", trace.top_degree},
                        {"level_cap", trace.level_cap},
                        {"levels", std::move(levels)},
                        {"verdict", trace.established() ? "established" : "not_established"},
                        {"failed_level", std::move(failed)}});
    } else {
        out << "algebra: " << a.name() << "; torus rank " << trace.torus_rank << "; levels checked " << trace.level_cap
            << '\n';
        for (const auto& l : trace.levels) out << "level " << l.level << ": dim " << l.derivation_dimension << '\n';
        if (trace.established()) {
            out << "established\n";
        } else {
            const auto& l = trace.levels.back();
            out << "not established at level " << l.level << '\n';
            out << "degree " << -l.level << ": " << format_map(a, *l.certificate) << '\n';
        }
    }
    return trace.established() ? exit_holds : exit_fails;
}

inline int cmd_examples_list(const CliOptions& o, std::ostream& out)
{
    if (o.json) {
        auto list = nlohmann::json::array();
        for (const auto& e : corpus()) {
            nlohmann::json cert = nullptr;
            if (e.certificate_degree) cert = *e.certificate_degree;
            list.push_back({{"name", e.name},
                            {"description", e.description},
                            {"in_class_h", e.in_class_h},
                            {"certificate_degree", std::move(cert)}});
        }
        emit_json(out, {{"command", "examples list"}, {"examples", std::move(list)}});
    } else {
        for (const auto& e : corpus()) {
            out << e.name << "  " << e.description << "  [" << (e.in_class_h ? "in class H" : "not in class H") << "]\n";
        }
    }
    return exit_holds;
}

inline int cmd_examples_show(const CliOptions& o, std::ostream& out, std::ostream& err)
{
    const auto* e = find_corpus_entry(o.example_name);
    if (e == nullptr) {
        err << "error: unknown example '" << o.example_name << "' (see 'examples list')\n";
        return exit_usage;
    }
    if (o.json) {
        emit_json(out, {{"command", "examples show"}, {"name", e->name}, {"text", e->text}});
    } else {
        out << e->text;
    }
    return exit_holds;
}

} // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    detail::CliOptions o;
    CLI::App app{"Exact derivation, class-H and splitting-rigidity computations on graded-commutative algebras", "hrigid"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "Emit a machine-readable JSON document");

    auto* validate_cmd = app.add_subcommand("validate", "Check the graded-commutative algebra axioms");
    validate_cmd->add_option("file", o.file, "Algebra file")->required();

    auto* check_cmd = app.add_subcommand("check-h", "Decide membership in class H (no negative-degree derivations)");
    check_cmd->add_option("file", o.file, "Algebra file")->required();
    check_cmd->add_option("--max-degree", o.max_degree, "Check degrees -1..-N (default: top degree)")
        ->check(CLI::NonNegativeNumber);

    auto* der_cmd = app.add_subcommand("derivations", "Basis of the derivations of a given degree");
    der_cmd->add_option("file", o.file, "Algebra file")->required();
    der_cmd->add_option("--degree", o.degree, "Derivation degree")->required();

    auto* char_cmd = app.add_subcommand("char", "Characteristic subspace Char(k, C)");
    char_cmd->add_option("file", o.file, "Algebra file")->required();
    char_cmd->add_option("--rank", o.rank, "Bundle rank k")->required()->check(CLI::PositiveNumber);

    auto* rig_cmd = app.add_subcommand("rigidity", "Run the level-by-level rigidity argument for C x T^s");
    rig_cmd->add_option("file", o.file, "Algebra file")->required();
    rig_cmd->add_option("--torus", o.torus, "Torus rank s")->required()->check(CLI::Range(0, KunnethModel::max_torus_rank));

    auto* ex_cmd = app.add_subcommand("examples", "Bundled example algebras");
    auto* ex_list = ex_cmd->add_subcommand("list", "List bundled examples");
    auto* ex_show = ex_cmd->add_subcommand("show", "Print a bundled example file");
    ex_show->add_option("name", o.example_name, "Example name")->required();
    ex_cmd->require_subcommand(0, 1);

    std::vector<std::string> argv_storage{"hrigid"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return exit_holds;
        err << app.help();
        return exit_usage;
    }

    try {
        if (*validate_cmd) return detail::cmd_validate(o, out);
        if (*check_cmd) return detail::cmd_check_h(o, out);
        if (*der_cmd) return detail::cmd_derivations(o, out);
        if (*char_cmd) return detail::cmd_char(o, out);
        if (*rig_cmd) return detail::cmd_rigidity(o, out);
        if (*ex_show) return detail::cmd_examples_show(o, out, err);
        if (*ex_cmd || *ex_list) return detail::cmd_examples_list(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    err << app.help();
    return exit_usage;
}

} // namespace hrigid

#endif
