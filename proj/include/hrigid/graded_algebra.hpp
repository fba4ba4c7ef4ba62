#ifndef HRIGID_GRADED_ALGEBRA_HPP
#define HRIGID_GRADED_ALGEBRA_HPP

#include "matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrigid {

/// Sign (-1)^n.
inline int koszul_sign(long long n) { return (n % 2 == 0) ? 1 : -1; }

struct BasisElement {
    std::string label;
    int degree = 0;

    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// One structure constant c in e_i * e_j = ... + c * e_index + ...
struct Term {
    std::size_t index = 0;
    Rational coeff;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse linear combination of basis elements, sorted by index with zero
/// coefficients removed once normalized.
using Product = std::vector<Term>;

inline Product normalize(Product p)
{
    std::sort(p.begin(), p.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    Product out;
    for (auto& t : p) {
        if (!out.empty() && out.back().index == t.index) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    return out;
}

inline Product scaled(Product p, const Rational& s)
{
    for (auto& t : p) t.coeff *= s;
    return normalize(std::move(p));
}

/// A vector in a graded algebra, stored densely over the algebra's basis.
struct Element {
    std::vector<Rational> coeffs;

    static Element zero(std::size_t dim) { return Element{std::vector<Rational>(dim)}; }
    static Element basis(std::size_t dim, std::size_t i)
    {
        auto e = zero(dim);
        e.coeffs.at(i) = 1;
        return e;
    }

    std::size_t size() const noexcept { return coeffs.size(); }
    bool is_zero() const
    {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
    }

    Element& operator+=(const Element& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    Element& operator-=(const Element& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& s, Element e)
    {
        for (auto& c : e.coeffs) c *= s;
        return e;
    }
    friend bool operator==(const Element&, const Element&) = default;

private:
    void check(const Element& o) const
    {
        if (o.coeffs.size() != coeffs.size()) throw std::invalid_argument("Element: dimension mismatch");
    }
};

/// Finite-dimensional graded algebra over Q given by basis and structure
/// constants. Construction only checks index ranges; the algebra axioms are
/// checked by validate().
class GradedAlgebra {
public:
    GradedAlgebra() = default;

    /// `products` is row-major over ordered basis pairs: products[i * dim + j] = e_i * e_j.
    GradedAlgebra(std::string name, std::vector<BasisElement> basis, std::size_t unit_index,
                  std::vector<Product> products)
        : name_(std::move(name)), basis_(std::move(basis)), unit_(unit_index), products_(std::move(products))
    {
        const auto n = basis_.size();
        if (n == 0) throw std::invalid_argument("GradedAlgebra: empty basis");
        if (unit_ >= n) throw std::invalid_argument("GradedAlgebra: unit index out of range");
        if (products_.size() != n * n) throw std::invalid_argument("GradedAlgebra: product table has wrong size");
        for (auto& p : products_) {
            for (const auto& t : p) {
                if (t.index >= n) throw std::invalid_argument("GradedAlgebra: product term index out of range");
            }
            p = normalize(std::move(p));
        }
        top_degree_ = basis_.front().degree;
        for (std::size_t i = 0; i < n; ++i) {
            top_degree_ = std::max(top_degree_, basis_[i].degree);
            auto& piece = pieces_[basis_[i].degree];
            position_.push_back(piece.size());
            piece.push_back(i);
        }
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<BasisElement>& basis() const noexcept { return basis_; }
    const std::string& label(std::size_t i) const { return basis_.at(i).label; }
    int degree(std::size_t i) const { return basis_.at(i).degree; }
    std::size_t unit_index() const noexcept { return unit_; }
    int top_degree() const noexcept { return top_degree_; }

    const Product& product(std::size_t i, std::size_t j) const { return products_.at(i * dim() + j); }

    /// Indices of basis elements of degree n, in basis order.
    const std::vector<std::size_t>& graded_piece(int n) const
    {
        static const std::vector<std::size_t> empty;
        auto it = pieces_.find(n);
        return it == pieces_.end() ? empty : it->second;
    }

    /// Position of basis index i inside graded_piece(degree(i)).
    std::size_t position_in_piece(std::size_t i) const { return position_.at(i); }

    /// Degrees with a nonempty graded piece, ascending.
    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [d, _] : pieces_) out.push_back(d);
        return out;
    }

    std::size_t index_of(const std::string& label) const
    {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].label == label) return i;
        }
        throw std::out_of_range("no basis element labelled '" + label + "'");
    }

    /// Copy with one product-table entry replaced (used for fault injection).
    GradedAlgebra with_product(std::size_t i, std::size_t j, Product p) const
    {
        auto table = products_;
        table.at(i * dim() + j) = std::move(p);
        return GradedAlgebra(name_, basis_, unit_, std::move(table));
    }

    GradedAlgebra renamed(std::string name) const
    {
        auto copy = *this;
        copy.name_ = std::move(name);
        return copy;
    }

    /// Same basis, degrees, unit and structure constants (names are ignored).
    bool same_structure(const GradedAlgebra& o) const
    {
        return basis_ == o.basis_ && unit_ == o.unit_ && products_ == o.products_;
    }

private:
    std::string name_;
    std::vector<BasisElement> basis_;
    std::size_t unit_ = 0;
    std::vector<Product> products_;
    int top_degree_ = 0;
    std::map<int, std::vector<std::size_t>> pieces_;
    std::vector<std::size_t> position_;
};

inline Element unit_element(const GradedAlgebra& a) { return Element::basis(a.dim(), a.unit_index()); }

inline Element basis_element(const GradedAlgebra& a, std::size_t i) { return Element::basis(a.dim(), i); }

/// Bilinear extension of the structure constants.
inline Element multiply(const GradedAlgebra& a, const Element& u, const Element& v)
{
    if (u.size() != a.dim() || v.size() != a.dim()) throw std::invalid_argument("multiply: element dimension mismatch");
    auto out = Element::zero(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (u.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (v.coeffs[j] == 0) continue;
            const Rational c = u.coeffs[i] * v.coeffs[j];
            for (const auto& t : a.product(i, j)) out.coeffs[t.index] += c * t.coeff;
        }
    }
    return out;
}

/// Degrees carried by the nonzero coefficients of u.
inline std::set<int> support_degrees(const GradedAlgebra& a, const Element& u)
{
    std::set<int> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.coeffs[i] != 0) out.insert(a.degree(i));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monomial presentations: truncated polynomial generators in even degree,
// exterior generators in odd degree.

struct Generator {
    std::string symbol;
    int degree = 0;
    int truncation = 2;  // g^truncation = 0

    friend bool operator==(const Generator&, const Generator&) = default;
};

struct Presentation {
    std::string name;
    std::vector<Generator> generators;

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Throws std::invalid_argument describing the first broken rule.
inline void check_presentation(const Presentation& p)
{
    std::set<std::string> seen;
    for (const auto& g : p.generators) {
        if (g.symbol.empty()) throw std::invalid_argument("generator with empty symbol");
        if (!seen.insert(g.symbol).second) throw std::invalid_argument("duplicate generator symbol '" + g.symbol + "'");
        if (g.degree <= 0) {
            throw std::invalid_argument("generator '" + g.symbol + "' must have positive degree");
        }
        if (g.truncation < 2) {
            throw std::invalid_argument("generator '" + g.symbol + "' must have truncation at least 2");
        }
        if (g.degree % 2 != 0 && g.truncation != 2) {
            throw std::invalid_argument("odd-degree generator '" + g.symbol + "' must have truncation 2");
        }
    }
}

namespace detail {

inline std::string monomial_label(const Presentation& p, const std::vector<int>& exps)
{
    std::string out;
    for (std::size_t g = 0; g < exps.size(); ++g) {
        if (exps[g] == 0) continue;
        if (!out.empty()) out += '*';
        out += p.generators[g].symbol;
        if (exps[g] > 1) out += '^' + std::to_string(exps[g]);
    }
    return out.empty() ? "1" : out;
}

} // namespace detail

/// Basis: every monomial with exponents below the truncations, ordered by
/// degree and then with higher powers of earlier generators first.
inline GradedAlgebra build_monomial_algebra(const Presentation& p)
{
    check_presentation(p);
    const auto ngen = p.generators.size();

    std::vector<std::vector<int>> monomials{std::vector<int>(ngen, 0)};
    for (std::size_t g = 0; g < ngen; ++g) {
        std::vector<std::vector<int>> next;
        for (const auto& m : monomials) {
            for (int e = 0; e < p.generators[g].truncation; ++e) {
                auto copy = m;
                copy[g] = e;
                next.push_back(std::move(copy));
            }
        }
        monomials = std::move(next);
    }

    auto degree_of = [&](const std::vector<int>& m) {
        int d = 0;
        for (std::size_t g = 0; g < ngen; ++g) d += m[g] * p.generators[g].degree;
        return d;
    };
    std::stable_sort(monomials.begin(), monomials.end(), [&](const auto& x, const auto& y) {
        const int dx = degree_of(x), dy = degree_of(y);
        if (dx != dy) return dx < dy;
        return x > y;
    });

    std::map<std::vector<int>, std::size_t> index;
    std::vector<BasisElement> basis;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        index[monomials[i]] = i;
        basis.push_back({detail::monomial_label(p, monomials[i]), degree_of(monomials[i])});
    }

    const auto n = monomials.size();
    std::vector<Product> products(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = monomials[i];
            const auto& b = monomials[j];
            std::vector<int> sum(ngen);
            bool vanishes = false;
            for (std::size_t g = 0; g < ngen; ++g) {
                sum[g] = a[g] + b[g];
                if (sum[g] >= p.generators[g].truncation) vanishes = true;
            }
            if (vanishes) continue;
            // Moving each odd factor of b left past the later odd factors of a.
            long long transpositions = 0;
            for (std::size_t later = 0; later < ngen; ++later) {
                if (p.generators[later].degree % 2 == 0 || a[later] == 0) continue;
                for (std::size_t earlier = 0; earlier < later; ++earlier) {
                    if (p.generators[earlier].degree % 2 != 0) transpositions += a[later] * b[earlier];
                }
            }
            products[i * n + j] = {Term{index.at(sum), Rational(koszul_sign(transpositions))}};
        }
    }
    return GradedAlgebra(p.name, std::move(basis), index.at(std::vector<int>(ngen, 0)), std::move(products));
}

/// Exterior algebra on `count` generators of degree 1 named i1, i2, ...
inline GradedAlgebra exterior_algebra(int count, const std::string& prefix = "i")
{
    Presentation p{"Lambda(" + std::to_string(count) + ")", {}};
    for (int g = 1; g <= count; ++g) p.generators.push_back({prefix + std::to_string(g), 1, 2});
    return build_monomial_algebra(p);
}

// ---------------------------------------------------------------------------
// Tensor products.

struct TensorProduct {
    GradedAlgebra algebra;
    /// factors[k] = (i, j) when basis element k is e_i (x) f_j.
    std::vector<std::pair<std::size_t, std::size_t>> factors;
    /// index[i * dim(b) + j] = k, inverse of `factors`.
    std::vector<std::size_t> index;
};

/// Koszul tensor product (x (x) w)(y (x) h) = (-1)^{|w||y|} xy (x) wh, with
/// basis pairs ordered by total degree and then lexicographically.
inline TensorProduct tensor_with_index(const GradedAlgebra& a, const GradedAlgebra& b)
{
    TensorProduct out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) out.factors.emplace_back(i, j);
    }
    std::stable_sort(out.factors.begin(), out.factors.end(), [&](const auto& x, const auto& y) {
        return a.degree(x.first) + b.degree(x.second) < a.degree(y.first) + b.degree(y.second);
    });
    out.index.resize(a.dim() * b.dim());
    std::vector<BasisElement> basis;
    for (std::size_t k = 0; k < out.factors.size(); ++k) {
        const auto [i, j] = out.factors[k];
        out.index[i * b.dim() + j] = k;
        basis.push_back({a.label(i) + "|" + b.label(j), a.degree(i) + b.degree(j)});
    }

    const auto n = basis.size();
    std::vector<Product> products(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto [x, w] = out.factors[k];
        for (std::size_t l = 0; l < n; ++l) {
            const auto [y, h] = out.factors[l];
            const int sign = koszul_sign(static_cast<long long>(b.degree(w)) * a.degree(y));
            Product p;
            for (const auto& s : a.product(x, y)) {
                for (const auto& t : b.product(w, h)) {
                    p.push_back({out.index[s.index * b.dim() + t.index], sign * s.coeff * t.coeff});
                }
            }
            products[k * n + l] = std::move(p);
        }
    }
    const auto unit = out.index[a.unit_index() * b.dim() + b.unit_index()];
    out.algebra = GradedAlgebra(a.name() + "*" + b.name(), std::move(basis), unit, std::move(products));
    return out;
}

inline GradedAlgebra tensor(const GradedAlgebra& a, const GradedAlgebra& b) { return tensor_with_index(a, b).algebra; }

/// The one-point algebra Q concentrated in degree 0.
inline GradedAlgebra ground_field()
{
    return GradedAlgebra("point", {{"1", 0}}, 0, {Product{Term{0, Rational(1)}}});
}

// ---------------------------------------------------------------------------
// Axiom validation.

enum class ViolationKind { negative_degree, degree_additivity, unit_law, graded_commutativity, associativity };

inline const char* to_string(ViolationKind k)
{
    switch (k) {
    case ViolationKind::negative_degree: return "negative-degree";
    case ViolationKind::degree_additivity: return "degree-additivity";
    case ViolationKind::unit_law: return "unit-law";
    case ViolationKind::graded_commutativity: return "graded-commutativity";
    case ViolationKind::associativity: return "associativity";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string message;
};

namespace detail {

inline Product multiply_sparse(const GradedAlgebra& a, const Product& u, const Product& v)
{
    Product out;
    for (const auto& s : u) {
        for (const auto& t : v) {
            for (const auto& r : a.product(s.index, t.index)) out.push_back({r.index, s.coeff * t.coeff * r.coeff});
        }
    }
    return normalize(std::move(out));
}

} // namespace detail

/// Exhaustive check of the graded-commutative algebra axioms. Empty iff valid.
inline std::vector<Violation> validate(const GradedAlgebra& a)
{
    std::vector<Violation> out;
    const auto n = a.dim();
    auto pair_name = [&](std::size_t i, std::size_t j) { return a.label(i) + " * " + a.label(j); };

    for (std::size_t i = 0; i < n; ++i) {
        if (a.degree(i) < 0) {
            out.push_back({ViolationKind::negative_degree, "basis element " + a.label(i) + " has negative degree"});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& t : a.product(i, j)) {
                if (a.degree(t.index) != a.degree(i) + a.degree(j)) {
                    out.push_back({ViolationKind::degree_additivity,
                                   pair_name(i, j) + " has term " + a.label(t.index) + " of degree " +
                                       std::to_string(a.degree(t.index)) + ", expected degree " +
                                       std::to_string(a.degree(i) + a.degree(j))});
                }
            }
        }
    }

    const auto u = a.unit_index();
    for (std::size_t j = 0; j < n; ++j) {
        const Product expected{Term{j, Rational(1)}};
        if (a.product(u, j) != expected) {
            out.push_back({ViolationKind::unit_law, pair_name(u, j) + " is not " + a.label(j)});
        }
        if (j != u && a.product(j, u) != expected) {
            out.push_back({ViolationKind::unit_law, pair_name(j, u) + " is not " + a.label(j)});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const int sign = koszul_sign(static_cast<long long>(a.degree(i)) * a.degree(j));
            if (a.product(j, i) != scaled(a.product(i, j), Rational(sign))) {
                out.push_back({ViolationKind::graded_commutativity,
                               pair_name(j, i) + " differs from (" + std::to_string(sign) + ") " + pair_name(i, j)});
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& ij = a.product(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const auto left = detail::multiply_sparse(a, ij, Product{Term{k, Rational(1)}});
                const auto right = detail::multiply_sparse(a, Product{Term{i, Rational(1)}}, a.product(j, k));
                if (left != right) {
                    out.push_back({ViolationKind::associativity,
                                   "(" + pair_name(i, j) + ") * " + a.label(k) + " differs from " + a.label(i) +
                                       " * (" + pair_name(j, k) + ")"});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Echelonized basis of the smallest unital subalgebra containing `seed`.
inline std::vector<Element> subalgebra_generated(const GradedAlgebra& a, const std::vector<Element>& seed)
{
    std::vector<RationalVector> rows{unit_element(a).coeffs};
    for (const auto& s : seed) {
        if (s.size() != a.dim()) throw std::invalid_argument("subalgebra_generated: seed dimension mismatch");
        rows.push_back(s.coeffs);
    }
    auto span = row_space_basis(matrix_from_row_vectors(rows, a.dim()));

    while (true) {
        auto grown = span;
        for (const auto& x : span) {
            for (const auto& y : span) grown.push_back(multiply(a, Element{x}, Element{y}).coeffs);
        }
        auto next = row_space_basis(matrix_from_row_vectors(grown, a.dim()));
        const bool stable = next.size() == span.size();
        span = std::move(next);
        if (stable) break;
    }

    std::vector<Element> out;
    for (auto& r : span) out.push_back(Element{std::move(r)});
    return out;
}

} // namespace hrigid

#endif
