#ifndef HRIGID_RIGIDITY_HPP
#define HRIGID_RIGIDITY_HPP

#include "derivations.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrigid {

/// Subset of torus coordinates {1..s}; bit (i - 1) set when coordinate i is present.
using TorusSubset = std::uint32_t;

inline int subset_size(TorusSubset s) { return std::popcount(s); }

inline std::string subset_name(TorusSubset s)
{
    std::string out;
    for (int i = 0; s >> i; ++i) {
        if ((s >> i) & 1u) {
            if (!out.empty()) out += ',';
            out += std::to_string(i + 1);
        }
    }
    return "{" + out + "}";
}

/// H*(C x T^s) as Lambda(i1..is) (x) H*(C). The torus factor sits on the
/// left, so a component i_S (x) lambda_S(u) multiplies against 1 (x) v with
/// no sign and 1 (x) u passes i_S with sign (-1)^{|S||u|}.
class KunnethModel {
public:
    static constexpr int max_torus_rank = 16;

    KunnethModel(GradedAlgebra base, int torus_rank) : base_(std::move(base)), s_(torus_rank)
    {
        if (s_ < 0 || s_ > max_torus_rank) throw std::invalid_argument("KunnethModel: torus rank out of range");
        const auto subsets = std::size_t{1} << s_;
        index_.assign(subsets * base_.dim(), 0);
        if (s_ == 0) {
            total_ = base_;
            for (std::size_t k = 0; k < base_.dim(); ++k) {
                index_[k] = k;
                factors_.emplace_back(0, k);
            }
            return;
        }

        const auto ext = exterior_algebra(s_);
        // Exterior basis index of each canonical ordered monomial i_{a1}...i_{ak}, a1 < ... < ak.
        std::vector<std::size_t> ext_index(subsets);
        for (TorusSubset S = 0; S < subsets; ++S) {
            auto mono = unit_element(ext);
            for (int i = 0; i < s_; ++i) {
                if ((S >> i) & 1u) mono = multiply(ext, mono, basis_element(ext, ext.index_of("i" + std::to_string(i + 1))));
            }
            const auto support = std::find_if(mono.coeffs.begin(), mono.coeffs.end(), [](const Rational& c) { return c != 0; });
            if (support == mono.coeffs.end() || *support != 1) throw std::logic_error("KunnethModel: bad exterior monomial");
            ext_index[S] = static_cast<std::size_t>(support - mono.coeffs.begin());
        }
        std::vector<TorusSubset> subset_of(ext.dim());
        for (TorusSubset S = 0; S < subsets; ++S) subset_of[ext_index[S]] = S;

        auto tp = tensor_with_index(ext, base_);
        total_ = tp.algebra.renamed(base_.name() + "xT" + std::to_string(s_));
        factors_.resize(total_.dim());
        for (std::size_t t = 0; t < total_.dim(); ++t) {
            const auto [e, k] = tp.factors[t];
            factors_[t] = {subset_of[e], k};
            index_[subset_of[e] * base_.dim() + k] = t;
        }
    }

    const GradedAlgebra& base() const noexcept { return base_; }
    const GradedAlgebra& total() const noexcept { return total_; }
    int torus_rank() const noexcept { return s_; }
    std::size_t subset_count() const noexcept { return std::size_t{1} << s_; }

    /// Total index of i_S (x) e_k.
    std::size_t total_index(TorusSubset S, std::size_t k) const { return index_.at(S * base_.dim() + k); }
    std::pair<TorusSubset, std::size_t> factors(std::size_t t) const { return factors_.at(t); }

private:
    GradedAlgebra base_;
    int s_ = 0;
    GradedAlgebra total_;
    std::vector<std::size_t> index_;
    std::vector<std::pair<TorusSubset, std::size_t>> factors_;
};

inline KunnethModel kunneth_model(const GradedAlgebra& base, int s) { return KunnethModel(base, s); }

/// Coefficient system of a candidate pullback f*(u) = 1 (x) u + sum_S i_S (x) lambda_S(u).
/// lambda_empty = id is implicit; components are stored only for nonempty S
/// and must have shift -|S|.
class LambdaFamily {
public:
    explicit LambdaFamily(int torus_rank) : s_(torus_rank)
    {
        if (s_ < 0 || s_ > KunnethModel::max_torus_rank) throw std::invalid_argument("LambdaFamily: torus rank out of range");
    }

    int torus_rank() const noexcept { return s_; }
    const std::map<TorusSubset, GradedLinearMap>& components() const noexcept { return components_; }

    void set(TorusSubset S, GradedLinearMap m)
    {
        if (S == 0) throw std::invalid_argument("LambdaFamily: the empty-subset component is the identity");
        if (S >> s_) throw std::invalid_argument("LambdaFamily: subset " + subset_name(S) + " exceeds torus rank");
        if (m.shift() != -subset_size(S)) {
            throw std::invalid_argument("LambdaFamily: component " + subset_name(S) + " must have shift " +
                                        std::to_string(-subset_size(S)) + ", got " + std::to_string(m.shift()));
        }
        components_.insert_or_assign(S, std::move(m));
    }

    const GradedLinearMap* find(TorusSubset S) const
    {
        auto it = components_.find(S);
        return it == components_.end() ? nullptr : &it->second;
    }

private:
    int s_ = 0;
    std::map<TorusSubset, GradedLinearMap> components_;
};

/// Family whose only nonzero component is lambda_S = theta.
inline LambdaFamily single_component_family(int torus_rank, TorusSubset S, GradedLinearMap theta)
{
    LambdaFamily fam(torus_rank);
    fam.set(S, std::move(theta));
    return fam;
}

namespace detail {

inline void check_family(const KunnethModel& model, const LambdaFamily& fam)
{
    if (fam.torus_rank() != model.torus_rank()) throw std::invalid_argument("LambdaFamily: torus rank does not match model");
    for (const auto& [_, m] : fam.components()) m.check_shape(model.base());
}

} // namespace detail

/// 1 (x) u + sum_S i_S (x) lambda_S(u), as an element of the total algebra.
inline Element pullback_expand(const KunnethModel& model, const LambdaFamily& fam, const Element& u)
{
    detail::check_family(model, fam);
    const auto& base = model.base();
    if (u.size() != base.dim()) throw std::invalid_argument("pullback_expand: element is not over the base");
    auto out = Element::zero(model.total().dim());
    for (std::size_t k = 0; k < base.dim(); ++k) out.coeffs[model.total_index(0, k)] += u.coeffs[k];
    for (const auto& [S, m] : fam.components()) {
        const auto image = apply(base, m, u);
        for (std::size_t k = 0; k < base.dim(); ++k) out.coeffs[model.total_index(S, k)] += image.coeffs[k];
    }
    return out;
}

struct MultiplicativityDefect {
    std::size_t left = 0;
    std::size_t right = 0;
    TorusSubset subset = 0;
    Element defect;  // over the base
};

/// For each ordered base pair, the i_S-coefficients of f*(e_i e_j) - f*(e_i) f*(e_j);
/// products are taken in the total algebra.
inline std::vector<MultiplicativityDefect> multiplicativity_residual(const KunnethModel& model, const LambdaFamily& fam)
{
    detail::check_family(model, fam);
    const auto& base = model.base();
    const auto& total = model.total();
    std::vector<Element> images;
    for (std::size_t i = 0; i < base.dim(); ++i) images.push_back(pullback_expand(model, fam, basis_element(base, i)));

    std::vector<MultiplicativityDefect> out;
    for (std::size_t i = 0; i < base.dim(); ++i) {
        for (std::size_t j = 0; j < base.dim(); ++j) {
            auto diff = pullback_expand(model, fam, multiply(base, basis_element(base, i), basis_element(base, j)));
            diff -= multiply(total, images[i], images[j]);
            if (diff.is_zero()) continue;
            for (TorusSubset S = 0; S < model.subset_count(); ++S) {
                auto defect = Element::zero(base.dim());
                for (std::size_t k = 0; k < base.dim(); ++k) defect.coeffs[k] = diff.coeffs[model.total_index(S, k)];
                if (!defect.is_zero()) out.push_back({i, j, S, std::move(defect)});
            }
        }
    }
    return out;
}

/// True iff every stored component is the zero map.
inline bool is_trivial_pullback(const LambdaFamily& fam)
{
    return std::all_of(fam.components().begin(), fam.components().end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

// ---------------------------------------------------------------------------
// Char(k, C): the sum of H^{4i}, 1 <= i <= floor((k-1)/2), together with H^k
// for even k or H^{4 floor(k/2)} for odd k.

struct CharSubspace {
    int rank = 0;
    std::vector<int> degrees;  // ascending, distinct
    std::map<int, std::vector<std::size_t>> basis_indices;
    std::size_t dimension = 0;
};

inline std::vector<int> char_degrees(int k)
{
    if (k < 1) throw std::invalid_argument("char_subspace: bundle rank must be positive");
    std::set<int> degs;
    for (int i = 1; i <= (k - 1) / 2; ++i) degs.insert(4 * i);
    degs.insert(k % 2 == 0 ? k : 4 * (k / 2));
    return {degs.begin(), degs.end()};
}

inline CharSubspace char_subspace(const GradedAlgebra& base, int k)
{
    CharSubspace out;
    out.rank = k;
    out.degrees = char_degrees(k);
    for (int d : out.degrees) {
        const auto& piece = base.graded_piece(d);
        out.basis_indices[d] = piece;
        out.dimension += piece.size();
    }
    return out;
}

/// Whether a degree-0 endomorphism maps Char(k, base) into itself.
inline bool char_preserved(const GradedAlgebra& base, const GradedLinearMap& endo, int k)
{
    if (endo.shift() != 0) throw std::invalid_argument("char_preserved: endomorphism must have degree 0");
    endo.check_shape(base);
    const auto ch = char_subspace(base, k);
    std::vector<bool> inside(base.dim(), false);
    for (const auto& [_, idx] : ch.basis_indices) {
        for (auto i : idx) inside[i] = true;
    }
    for (const auto& [_, idx] : ch.basis_indices) {
        for (auto i : idx) {
            const auto image = apply_to_basis(base, endo, i);
            for (std::size_t t = 0; t < base.dim(); ++t) {
                if (image.coeffs[t] != 0 && !inside[t]) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Level-by-level rigidity argument. Once every component of size < k
// vanishes, the i_S-coefficient of the multiplicativity equation for |S| = k
// is exactly the Leibniz law of degree -k for lambda_S, so level k is
// trivial iff there are no nonzero degree -k derivations.

struct ProofLevel {
    int level = 0;
    std::size_t derivation_dimension = 0;
    std::optional<GradedLinearMap> certificate;
};

struct ProofTrace {
    int torus_rank = 0;
    int top_degree = 0;
    int level_cap = 0;  // min(torus_rank, top_degree)
    std::vector<ProofLevel> levels;
    std::optional<int> failed_level;  // empty iff established

    bool established() const noexcept { return !failed_level.has_value(); }
};

inline ProofTrace prove_rigidity(const GradedAlgebra& base, int s)
{
    if (s < 0) throw std::invalid_argument("prove_rigidity: torus rank must be nonnegative");
    ProofTrace trace;
    trace.torus_rank = s;
    trace.top_degree = base.top_degree();
    trace.level_cap = std::min(s, std::max(base.top_degree(), 0));
    for (int k = 1; k <= trace.level_cap; ++k) {
        auto space = derivation_space(base, -k);
        ProofLevel level{k, space.size(), std::nullopt};
        if (!space.empty()) level.certificate = std::move(space.front());
        trace.levels.push_back(std::move(level));
        if (trace.levels.back().certificate) {
            trace.failed_level = k;
            break;
        }
    }
    return trace;
}

} // namespace hrigid

#endif
