#ifndef HRIGID_IO_HPP
#define HRIGID_IO_HPP

#include "derivations.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hrigid {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string describe(const std::vector<Violation>& v)
    {
        std::string out = "algebra fails validation (" + std::to_string(v.size()) + " violations)";
        for (const auto& x : v) out += "\n  [" + std::string(to_string(x.kind)) + "] " + x.message;
        return out;
    }

    std::vector<Violation> violations_;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

inline std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
    }
    return out;
}

inline int parse_int(const std::string& tok, int line, const char* what)
{
    int value = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ParseError(line, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
}

inline bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

inline std::string rest_after(const std::vector<std::string>& toks, std::size_t from)
{
    std::string out;
    for (std::size_t i = from; i < toks.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += toks[i];
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Presentation format:
//   name <string>
//   generator <symbol> degree <n> [truncate <m>]

inline Presentation parse_presentation(const std::string& text)
{
    Presentation p;
    std::set<std::string> symbols;
    int lineno = 0;
    for (const auto& raw : detail::lines_of(text)) {
        ++lineno;
        const auto toks = detail::tokenize(detail::strip_comment(raw));
        if (toks.empty()) continue;
        if (toks[0] == "name") {
            if (toks.size() < 2) throw ParseError(lineno, "'name' needs a value");
            p.name = detail::rest_after(toks, 1);
        } else if (toks[0] == "generator") {
            if (toks.size() != 4 && toks.size() != 6) {
                throw ParseError(lineno, "expected 'generator <symbol> degree <n> [truncate <m>]'");
            }
            if (toks[2] != "degree" || (toks.size() == 6 && toks[4] != "truncate")) {
                throw ParseError(lineno, "expected 'generator <symbol> degree <n> [truncate <m>]'");
            }
            Generator g;
            g.symbol = toks[1];
            if (!detail::is_identifier(g.symbol)) throw ParseError(lineno, "invalid generator symbol '" + g.symbol + "'");
            if (!symbols.insert(g.symbol).second) throw ParseError(lineno, "duplicate generator symbol '" + g.symbol + "'");
            g.degree = detail::parse_int(toks[3], lineno, "degree");
            if (g.degree <= 0) throw ParseError(lineno, "generator degree must be positive");
            g.truncation = toks.size() == 6 ? detail::parse_int(toks[5], lineno, "truncation") : 2;
            if (g.truncation < 2) throw ParseError(lineno, "truncation must be at least 2");
            if (g.degree % 2 != 0 && g.truncation != 2) {
                throw ParseError(lineno, "odd-degree generator '" + g.symbol + "' must have truncation 2");
            }
            p.generators.push_back(std::move(g));
        } else {
            throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
        }
    }
    return p;
}

inline std::string serialize_presentation(const Presentation& p)
{
    std::ostringstream out;
    if (!p.name.empty()) out << "name " << p.name << '\n';
    for (const auto& g : p.generators) {
        out << "generator " << g.symbol << " degree " << g.degree << " truncate " << g.truncation << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Structure-constant format:
//   name <string>                       (optional)
//   basis:
//     <label> <degree>
//   unit: <label>
//   products:
//     <label> <label> = <coeff>*<label> [+ <coeff>*<label> ...]
// Omitted pairs are zero; a pair (j, i) that is not listed is inferred from
// (i, j) by graded commutativity.

/// Parses without checking the algebra axioms.
inline GradedAlgebra parse_structure_constants_unchecked(const std::string& text)
{
    enum class Section { none, basis, products };
    Section section = Section::none;
    std::string name;
    std::vector<BasisElement> basis;
    std::map<std::string, std::size_t> index;
    std::optional<std::string> unit_label;
    int unit_line = 0;
    struct Entry {
        std::size_t i, j;
        Product value;
    };
    std::vector<Entry> entries;
    std::set<std::pair<std::size_t, std::size_t>> seen;

    auto lookup = [&](const std::string& label, int lineno) {
        auto it = index.find(label);
        if (it == index.end()) throw ParseError(lineno, "unknown basis label '" + label + "'");
        return it->second;
    };

    int lineno = 0;
    for (const auto& raw : detail::lines_of(text)) {
        ++lineno;
        const auto toks = detail::tokenize(detail::strip_comment(raw));
        if (toks.empty()) continue;
        if (toks[0] == "basis:") {
            if (toks.size() != 1) throw ParseError(lineno, "'basis:' takes no arguments");
            section = Section::basis;
        } else if (toks[0] == "products:") {
            if (toks.size() != 1) throw ParseError(lineno, "'products:' takes no arguments");
            section = Section::products;
        } else if (toks[0] == "unit:") {
            if (toks.size() != 2) throw ParseError(lineno, "expected 'unit: <label>'");
            unit_label = toks[1];
            unit_line = lineno;
            section = Section::none;
        } else if (toks[0] == "name" && section == Section::none) {
            if (toks.size() < 2) throw ParseError(lineno, "'name' needs a value");
            name = detail::rest_after(toks, 1);
        } else if (section == Section::basis) {
            if (toks.size() != 2) throw ParseError(lineno, "expected '<label> <degree>'");
            const auto& label = toks[0];
            if (label.find_first_of("=+") != std::string::npos) throw ParseError(lineno, "invalid basis label '" + label + "'");
            if (!index.emplace(label, basis.size()).second) throw ParseError(lineno, "duplicate basis label '" + label + "'");
            basis.push_back({label, detail::parse_int(toks[1], lineno, "degree")});
        } else if (section == Section::products) {
            if (toks.size() < 4 || toks[2] != "=") throw ParseError(lineno, "expected '<label> <label> = <terms>'");
            const auto i = lookup(toks[0], lineno);
            const auto j = lookup(toks[1], lineno);
            if (!seen.insert({i, j}).second) throw ParseError(lineno, "duplicate product entry for " + toks[0] + " " + toks[1]);
            Product value;
            if (!(toks.size() == 4 && toks[3] == "0" && !index.contains("0"))) {
                bool expect_term = true;
                for (std::size_t t = 3; t < toks.size(); ++t) {
                    if (!expect_term) {
                        if (toks[t] != "+") throw ParseError(lineno, "expected '+' between terms, got '" + toks[t] + "'");
                        expect_term = true;
                        continue;
                    }
                    const auto& term = toks[t];
                    const auto star = term.find('*');
                    Rational coeff = 1;
                    std::string label = term;
                    if (star != std::string::npos) {
                        try {
                            coeff = parse_rational(term.substr(0, star));
                            label = term.substr(star + 1);
                        } catch (const std::invalid_argument&) {
                            coeff = 1;  // the '*' belongs to the label
                        }
                    }
                    value.push_back({lookup(label, lineno), coeff});
                    expect_term = false;
                }
                if (expect_term) throw ParseError(lineno, "dangling '+'");
            }
            entries.push_back({i, j, std::move(value)});
        } else {
            throw ParseError(lineno, "unexpected line outside a section: '" + detail::rest_after(toks, 0) + "'");
        }
    }

    if (basis.empty()) throw ParseError(lineno, "missing or empty 'basis:' section");
    if (!unit_label) throw ParseError(lineno, "missing 'unit:' line");
    const auto unit = lookup(*unit_label, unit_line);

    const auto n = basis.size();
    std::vector<Product> table(n * n);
    for (const auto& e : entries) table[e.i * n + e.j] = e.value;
    for (const auto& e : entries) {
        if (e.i == e.j || seen.contains({e.j, e.i})) continue;
        const int sign = koszul_sign(static_cast<long long>(basis[e.i].degree) * basis[e.j].degree);
        table[e.j * n + e.i] = scaled(e.value, Rational(sign));
    }
    return GradedAlgebra(name, std::move(basis), unit, std::move(table));
}

/// Parses and validates; throws ValidationError listing every violated axiom.
inline GradedAlgebra parse_structure_constants(const std::string& text)
{
    auto a = parse_structure_constants_unchecked(text);
    auto violations = validate(a);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return a;
}

namespace detail {

inline std::string format_product(const GradedAlgebra& a, const Product& p)
{
    if (p.empty()) return "0";
    std::string out;
    for (const auto& t : p) {
        if (!out.empty()) out += " + ";
        out += to_string(t.coeff) + "*" + a.label(t.index);
    }
    return out;
}

} // namespace detail

/// Writes every nonzero pair i <= j, plus any pair j > i that is not the
/// graded-commutative image of (i, j).
inline std::string serialize_structure_constants(const GradedAlgebra& a)
{
    std::ostringstream out;
    if (!a.name().empty()) out << "name " << a.name() << '\n';
    out << "basis:\n";
    for (const auto& b : a.basis()) out << "  " << b.label << ' ' << b.degree << '\n';
    out << "unit: " << a.label(a.unit_index()) << '\n';
    out << "products:\n";
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            const auto& ij = a.product(i, j);
            if (!ij.empty()) out << "  " << a.label(i) << ' ' << a.label(j) << " = " << detail::format_product(a, ij) << '\n';
            if (i == j) continue;
            const int sign = koszul_sign(static_cast<long long>(a.degree(i)) * a.degree(j));
            const auto& ji = a.product(j, i);
            if (ji != scaled(ij, Rational(sign))) {
                out << "  " << a.label(j) << ' ' << a.label(i) << " = " << detail::format_product(a, ji) << '\n';
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------

enum class AlgebraFormat { presentation, structure_constants };

inline AlgebraFormat detect_format(const std::string& text)
{
    for (const auto& raw : detail::lines_of(text)) {
        const auto toks = detail::tokenize(detail::strip_comment(raw));
        if (!toks.empty() && (toks[0] == "basis:" || toks[0] == "products:" || toks[0] == "unit:")) {
            return AlgebraFormat::structure_constants;
        }
    }
    return AlgebraFormat::presentation;
}

/// Loads either format without validating structure-constant input.
inline GradedAlgebra load_algebra_unchecked(const std::string& text)
{
    if (detect_format(text) == AlgebraFormat::structure_constants) return parse_structure_constants_unchecked(text);
    auto p = parse_presentation(text);
    return build_monomial_algebra(p);
}

inline GradedAlgebra load_algebra(const std::string& text)
{
    if (detect_format(text) == AlgebraFormat::structure_constants) return parse_structure_constants(text);
    return build_monomial_algebra(parse_presentation(text));
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------
// Human-readable rendering.

inline std::string format_element(const GradedAlgebra& a, const Element& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& c = e.coeffs[i];
        if (c == 0) continue;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        if (i == a.unit_index()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += a.label(i);
        } else {
            out += to_string(mag) + "*" + a.label(i);
        }
    }
    return out.empty() ? "0" : out;
}

/// "θ(x) = 1; θ(y) = 2*x", listing basis elements with nonzero image.
inline std::string format_map(const GradedAlgebra& a, const GradedLinearMap& m, const std::string& symbol = "θ")
{
    std::string out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto image = apply_to_basis(a, m, i);
        if (image.is_zero()) continue;
        if (!out.empty()) out += "; ";
        out += symbol + "(" + a.label(i) + ") = " + format_element(a, image);
    }
    return out.empty() ? symbol + " = 0" : out;
}

} // namespace hrigid

#endif
