#ifndef HRIGID_DERIVATIONS_HPP
#define HRIGID_DERIVATIONS_HPP

#include "graded_algebra.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hrigid {

/// Linear self-map of a graded algebra raising degree by `shift`. One block
/// per nonempty source piece n, mapping graded_piece(n) columns to
/// graded_piece(n + shift) rows; blocks into empty pieces have zero rows.
class GradedLinearMap {
public:
    GradedLinearMap() = default;
    GradedLinearMap(int shift, std::map<int, RationalMatrix> blocks) : shift_(shift), blocks_(std::move(blocks)) {}

    static GradedLinearMap zero(const GradedAlgebra& a, int shift)
    {
        std::map<int, RationalMatrix> blocks;
        for (int n : a.degrees()) blocks.emplace(n, RationalMatrix(a.graded_piece(n + shift).size(), a.graded_piece(n).size()));
        return GradedLinearMap(shift, std::move(blocks));
    }

    static GradedLinearMap identity(const GradedAlgebra& a)
    {
        std::map<int, RationalMatrix> blocks;
        for (int n : a.degrees()) blocks.emplace(n, RationalMatrix::identity(a.graded_piece(n).size()));
        return GradedLinearMap(0, std::move(blocks));
    }

    /// images[i] is the image of basis element i; each must be homogeneous
    /// of degree degree(i) + shift (or zero).
    static GradedLinearMap from_images(const GradedAlgebra& a, int shift, const std::vector<Element>& images)
    {
        if (images.size() != a.dim()) throw std::invalid_argument("from_images: need one image per basis element");
        auto m = zero(a, shift);
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const int target = a.degree(i) + shift;
            for (std::size_t k = 0; k < a.dim(); ++k) {
                if (images[i].coeffs.at(k) == 0) continue;
                if (a.degree(k) != target) {
                    throw std::invalid_argument("from_images: image of " + a.label(i) + " is not of degree " +
                                                std::to_string(target));
                }
                m.blocks_.at(a.degree(i))(a.position_in_piece(k), a.position_in_piece(i)) = images[i].coeffs[k];
            }
        }
        return m;
    }

    int shift() const noexcept { return shift_; }
    const std::map<int, RationalMatrix>& blocks() const noexcept { return blocks_; }

    bool is_zero() const
    {
        for (const auto& [_, b] : blocks_) {
            if (!b.is_zero()) return false;
        }
        return true;
    }

    /// Throws std::invalid_argument unless the blocks are shaped for `a`.
    void check_shape(const GradedAlgebra& a) const
    {
        const auto degs = a.degrees();
        if (blocks_.size() != degs.size()) throw std::invalid_argument("GradedLinearMap: block count does not match algebra");
        for (int n : degs) {
            auto it = blocks_.find(n);
            if (it == blocks_.end()) {
                throw std::invalid_argument("GradedLinearMap: missing block for degree " + std::to_string(n));
            }
            if (it->second.cols() != a.graded_piece(n).size() ||
                it->second.rows() != a.graded_piece(n + shift_).size()) {
                throw std::invalid_argument("GradedLinearMap: block for degree " + std::to_string(n) + " has wrong shape");
            }
        }
    }

    const RationalMatrix& block(int source_degree) const { return blocks_.at(source_degree); }

    friend bool operator==(const GradedLinearMap&, const GradedLinearMap&) = default;

    friend GradedLinearMap operator+(GradedLinearMap x, const GradedLinearMap& y)
    {
        x.require_compatible(y);
        for (auto& [n, b] : x.blocks_) b = b + y.blocks_.at(n);
        return x;
    }
    friend GradedLinearMap operator-(GradedLinearMap x, const GradedLinearMap& y)
    {
        x.require_compatible(y);
        for (auto& [n, b] : x.blocks_) b = b - y.blocks_.at(n);
        return x;
    }
    friend GradedLinearMap operator*(const Rational& s, GradedLinearMap x)
    {
        for (auto& [_, b] : x.blocks_) b = s * b;
        return x;
    }

private:
    void require_compatible(const GradedLinearMap& y) const
    {
        if (shift_ != y.shift_ || blocks_.size() != y.blocks_.size()) {
            throw std::invalid_argument("GradedLinearMap: incompatible operands");
        }
    }

    int shift_ = 0;
    std::map<int, RationalMatrix> blocks_;
};

/// Image of basis element i.
inline Element apply_to_basis(const GradedAlgebra& a, const GradedLinearMap& m, std::size_t i)
{
    auto out = Element::zero(a.dim());
    const auto& target = a.graded_piece(a.degree(i) + m.shift());
    const auto& b = m.block(a.degree(i));
    const auto col = a.position_in_piece(i);
    for (std::size_t r = 0; r < target.size(); ++r) out.coeffs[target[r]] = b(r, col);
    return out;
}

inline Element apply(const GradedAlgebra& a, const GradedLinearMap& m, const Element& u)
{
    auto out = Element::zero(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (u.coeffs.at(i) != 0) out += u.coeffs[i] * apply_to_basis(a, m, i);
    }
    return out;
}

/// outer o inner.
inline GradedLinearMap compose(const GradedAlgebra& a, const GradedLinearMap& outer, const GradedLinearMap& inner)
{
    const int shift = outer.shift() + inner.shift();
    std::map<int, RationalMatrix> blocks;
    for (int n : a.degrees()) {
        const int mid = n + inner.shift();
        if (a.graded_piece(mid).empty()) {
            blocks.emplace(n, RationalMatrix(a.graded_piece(n + shift).size(), a.graded_piece(n).size()));
        } else {
            blocks.emplace(n, outer.block(mid) * inner.block(n));
        }
    }
    return GradedLinearMap(shift, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Koszul-Leibniz linear system: theta(uv) = theta(u) v + (-1)^{d|u|} u theta(v).

struct DerivationSystem {
    int shift = 0;
    /// unknowns[c] = (target basis index t, source basis index i): coefficient of e_t in theta(e_i).
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    /// One row per (ordered basis pair, target basis element) with a nonzero equation.
    RationalMatrix constraints;
};

inline DerivationSystem derivation_system(const GradedAlgebra& a, int d)
{
    DerivationSystem sys;
    sys.shift = d;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> unknown_index;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (auto t : a.graded_piece(a.degree(i) + d)) {
            unknown_index[{t, i}] = sys.unknowns.size();
            sys.unknowns.emplace_back(t, i);
        }
    }

    std::vector<RationalVector> rows;
    const auto nvars = sys.unknowns.size();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const int sign = koszul_sign(static_cast<long long>(d) * a.degree(i));
        for (std::size_t j = 0; j < a.dim(); ++j) {
            std::map<std::size_t, RationalVector> eq;  // target k -> coefficients over unknowns
            auto add = [&](std::size_t k, std::size_t var, const Rational& c) {
                auto [it, fresh] = eq.try_emplace(k, RationalVector(nvars));
                it->second[var] += c;
            };
            for (const auto& m : a.product(i, j)) {
                for (auto t : a.graded_piece(a.degree(m.index) + d)) add(t, unknown_index.at({t, m.index}), m.coeff);
            }
            for (auto t : a.graded_piece(a.degree(i) + d)) {
                for (const auto& k : a.product(t, j)) add(k.index, unknown_index.at({t, i}), -k.coeff);
            }
            for (auto t : a.graded_piece(a.degree(j) + d)) {
                for (const auto& k : a.product(i, t)) add(k.index, unknown_index.at({t, j}), -sign * k.coeff);
            }
            for (auto& [_, row] : eq) {
                if (std::any_of(row.begin(), row.end(), [](const Rational& c) { return c != 0; })) {
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    sys.constraints = matrix_from_row_vectors(rows, nvars);
    return sys;
}

/// Reshape a solution vector of `sys` into a map.
inline GradedLinearMap map_from_solution(const GradedAlgebra& a, const DerivationSystem& sys, const RationalVector& x)
{
    std::vector<Element> images(a.dim(), Element::zero(a.dim()));
    for (std::size_t c = 0; c < sys.unknowns.size(); ++c) {
        const auto [t, i] = sys.unknowns[c];
        images[i].coeffs[t] = x.at(c);
    }
    return GradedLinearMap::from_images(a, sys.shift, images);
}

/// Basis of the degree-d derivations, one map per canonical nullspace vector.
inline std::vector<GradedLinearMap> derivation_space(const GradedAlgebra& a, int d)
{
    const auto sys = derivation_system(a, d);
    const auto kernel = nullspace_basis(sys.constraints);
    if (kernel.size() + rank(sys.constraints) != sys.unknowns.size()) {
        throw std::logic_error("derivation_space: rank-nullity audit failed");
    }
    std::vector<GradedLinearMap> out;
    for (const auto& v : kernel) {
        const auto image = sys.constraints * v;
        if (std::any_of(image.begin(), image.end(), [](const Rational& c) { return c != 0; })) {
            throw std::logic_error("derivation_space: kernel vector does not solve the system");
        }
        out.push_back(map_from_solution(a, sys, v));
    }
    return out;
}

struct LeibnizDefect {
    std::size_t left = 0;
    std::size_t right = 0;
    Element defect;
};

/// theta(e_i e_j) - theta(e_i) e_j - (-1)^{d|e_i|} e_i theta(e_j) for every
/// ordered pair; only nonzero defects are returned.
inline std::vector<LeibnizDefect> is_derivation(const GradedAlgebra& a, const GradedLinearMap& m)
{
    m.check_shape(a);
    std::vector<Element> images;
    for (std::size_t i = 0; i < a.dim(); ++i) images.push_back(apply_to_basis(a, m, i));

    std::vector<LeibnizDefect> out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto ei = basis_element(a, i);
        const Rational sign = koszul_sign(static_cast<long long>(m.shift()) * a.degree(i));
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const auto ej = basis_element(a, j);
            auto defect = apply(a, m, multiply(a, ei, ej));
            defect -= multiply(a, images[i], ej);
            defect -= sign * multiply(a, ei, images[j]);
            if (!defect.is_zero()) out.push_back({i, j, std::move(defect)});
        }
    }
    return out;
}

/// Graded commutator m1 o m2 - (-1)^{d1 d2} m2 o m1.
inline GradedLinearMap bracket(const GradedAlgebra& a, const GradedLinearMap& m1, const GradedLinearMap& m2)
{
    m1.check_shape(a);
    m2.check_shape(a);
    const Rational sign = koszul_sign(static_cast<long long>(m1.shift()) * m2.shift());
    return compose(a, m1, m2) - sign * compose(a, m2, m1);
}

// ---------------------------------------------------------------------------

struct DerivationCertificate {
    int degree = 0;
    GradedLinearMap derivation;
};

struct ClassHVerdict {
    bool in_class = false;
    bool connectivity_ok = false;
    int max_degree_checked = 0;
    /// (d, dim of degree-d derivations) for d = -1, -2, ..., -max_degree_checked.
    std::vector<std::pair<int, std::size_t>> dimensions;
    std::optional<DerivationCertificate> certificate;
};

inline bool connectivity_ok(const GradedAlgebra& a)
{
    return a.graded_piece(0).size() == 1 && a.graded_piece(1).empty();
}

/// Sweeps d = -1 .. -max_degree (default top_degree). The certificate is the
/// first canonical basis derivation at the smallest |d| with a nonzero space.
inline ClassHVerdict check_class_H(const GradedAlgebra& a, std::optional<int> max_degree = std::nullopt)
{
    ClassHVerdict v;
    v.connectivity_ok = connectivity_ok(a);
    v.max_degree_checked = max_degree.value_or(a.top_degree());
    for (int k = 1; k <= v.max_degree_checked; ++k) {
        auto space = derivation_space(a, -k);
        v.dimensions.emplace_back(-k, space.size());
        if (!space.empty() && !v.certificate) v.certificate = DerivationCertificate{-k, std::move(space.front())};
    }
    v.in_class = !v.certificate.has_value();
    return v;
}

} // namespace hrigid

#endif
