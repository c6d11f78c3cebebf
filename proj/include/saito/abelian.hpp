#pragma once

// Finite abelian groups realized inside (Q/Z)^n, with every element
// enumerated. Subgroups are canonical sorted element lists; characters are
// full Q/Z-valued tables over their domain.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "saito/error.hpp"
#include "saito/qz.hpp"
#include "saito/smith.hpp"

namespace saito {

inline constexpr std::size_t kDefaultMaxOrder = 5000;

class Subgroup;

/// An independent generating set: the group is the internal direct sum of
/// the cyclic groups generated by `basis[i]`, each of order `orders[i] > 1`.
struct CyclicDecomposition {
    std::vector<GroupElement> basis;
    std::vector<std::int64_t> orders;
};

namespace detail {

inline void sort_unique(std::vector<GroupElement>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool sorted_contains(const std::vector<GroupElement>& v, const GroupElement& g) {
    return std::binary_search(v.begin(), v.end(), g);
}

/// Closure of `gens` under addition, sorted.
inline std::vector<GroupElement> closure(std::size_t dim, const std::vector<GroupElement>& gens,
                                         std::size_t max_order) {
    std::set<GroupElement> seen{GroupElement::zero(dim)};
    std::vector<GroupElement> frontier{GroupElement::zero(dim)};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                if (g.dim() != dim) throw Error(ErrorKind::DomainMismatch, "generator of wrong dimension");
                auto y = x + g;
                if (seen.insert(y).second) {
                    if (seen.size() > max_order)
                        throw Error(ErrorKind::GroupTooLarge,
                                    "closure exceeds the size guard of " + std::to_string(max_order));
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

/// Smith-form decomposition of the subgroup of (Q/Z)^n generated by `gens`.
/// With N the exponent, the group is (A Z^r + N Z^n) / N Z^n where the
/// columns of A are N * gens; the Smith form of [A | N I] exhibits a basis.
inline CyclicDecomposition decompose(std::size_t dim, const std::vector<GroupElement>& gens) {
    std::int64_t N = 1;
    for (const auto& g : gens) N = lcm64(N, g.order());
    const auto n = static_cast<Eigen::Index>(dim);
    const auto r = static_cast<Eigen::Index>(gens.size());
    IntMatrix B = IntMatrix::Zero(n, r + n);
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const QZ& c = gens[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            B(i, j) = c.num() * (N / c.den());
        }
    for (Eigen::Index i = 0; i < n; ++i) B(i, r + i) = N;
    const auto s = smith_decomposition(B);
    CyclicDecomposition out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::int64_t d = s.D(i, i);
        const std::int64_t ord = N / d;
        if (ord == 1) continue;
        GroupElement b = GroupElement::zero(dim);
        for (Eigen::Index k = 0; k < n; ++k)
            b.coords[static_cast<std::size_t>(k)] = QZ::from_ratio(detail::checked_mul(d, s.Pinv(k, i)), N);
        out.basis.push_back(std::move(b));
        out.orders.push_back(ord);
    }
    return out;
}

} // namespace detail

class AmbientGroup {
public:
    std::size_t dim() const { return body_->dim; }
    std::size_t order() const { return body_->elements.size(); }
    const std::vector<GroupElement>& elements() const { return body_->elements; }
    const std::vector<GroupElement>& generators() const { return body_->generators; }
    /// Invariant factors d1 | d2 | ... (empty for the trivial group).
    const std::vector<std::int64_t>& cyclic_type() const { return body_->cyclic_type; }
    const CyclicDecomposition& decomposition() const { return body_->decomposition; }
    GroupElement identity() const { return GroupElement::zero(dim()); }

    std::optional<std::size_t> find(const GroupElement& g) const {
        const auto& e = body_->elements;
        auto it = std::lower_bound(e.begin(), e.end(), g);
        if (it == e.end() || *it != g) return std::nullopt;
        return static_cast<std::size_t>(it - e.begin());
    }
    bool contains(const GroupElement& g) const { return find(g).has_value(); }
    std::size_t index_of(const GroupElement& g) const {
        auto i = find(g);
        if (!i) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in the group");
        return *i;
    }

    Subgroup full() const;
    Subgroup trivial() const;

    bool operator==(const AmbientGroup& o) const {
        return body_ == o.body_ || (dim() == o.dim() && elements() == o.elements());
    }

    std::string to_string() const;

    friend AmbientGroup enumerate_closure(std::size_t, const std::vector<GroupElement>&, std::size_t);

private:
    struct Body {
        std::size_t dim = 0;
        std::vector<GroupElement> elements;
        std::vector<GroupElement> generators;
        std::vector<std::int64_t> cyclic_type;
        CyclicDecomposition decomposition;
    };
    std::shared_ptr<const Body> body_;
};

/// The subgroup of (Q/Z)^dim generated by `generators`, fully enumerated.
inline AmbientGroup enumerate_closure(std::size_t dim, const std::vector<GroupElement>& generators,
                                      std::size_t max_order = kDefaultMaxOrder) {
    auto body = std::make_shared<AmbientGroup::Body>();
    body->dim = dim;
    body->elements = detail::closure(dim, generators, max_order);
    body->generators = generators;
    body->decomposition = detail::decompose(dim, generators);
    body->cyclic_type = body->decomposition.orders;
    std::reverse(body->cyclic_type.begin(), body->cyclic_type.end());
    std::int64_t prod = 1;
    for (auto d : body->cyclic_type) prod *= d;
    if (static_cast<std::size_t>(prod) != body->elements.size())
        throw Error(ErrorKind::InternalInconsistency, "invariant factors disagree with the enumerated order");
    AmbientGroup g;
    g.body_ = std::move(body);
    return g;
}

inline AmbientGroup enumerate_closure(const std::vector<GroupElement>& generators,
                                      std::size_t max_order = kDefaultMaxOrder) {
    if (generators.empty()) throw Error(ErrorKind::DomainMismatch, "dimension unknown for an empty generator list");
    return enumerate_closure(generators.front().dim(), generators, max_order);
}

class Subgroup {
public:
    /// Validating constructor: `elements` must form a subgroup of `parent`.
    static Subgroup from_elements(AmbientGroup parent, std::vector<GroupElement> elements) {
        detail::sort_unique(elements);
        for (const auto& g : elements)
            if (!parent.contains(g)) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in the parent group");
        if (elements.empty() || !elements.front().is_zero())
            throw Error(ErrorKind::DomainMismatch, "subgroup must contain the identity");
        for (const auto& a : elements)
            for (const auto& b : elements)
                if (!detail::sorted_contains(elements, a + b))
                    throw Error(ErrorKind::DomainMismatch, "element list is not closed under addition");
        if (parent.order() % elements.size() != 0)
            throw Error(ErrorKind::DomainMismatch, "subgroup order does not divide the group order");
        return Subgroup(std::move(parent), std::move(elements));
    }

    static Subgroup generated(AmbientGroup parent, const std::vector<GroupElement>& gens) {
        for (const auto& g : gens)
            if (!parent.contains(g)) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in the parent group");
        auto elems = detail::closure(parent.dim(), gens, parent.order());
        return Subgroup(std::move(parent), std::move(elems));
    }

    const AmbientGroup& parent() const { return parent_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    std::size_t index() const { return parent_.order() / elements_.size(); }
    bool contains(const GroupElement& g) const { return detail::sorted_contains(elements_, g); }
    bool is_trivial() const { return elements_.size() == 1; }

    std::optional<std::size_t> find(const GroupElement& g) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
        if (it == elements_.end() || *it != g) return std::nullopt;
        return static_cast<std::size_t>(it - elements_.begin());
    }

    bool is_subgroup_of(const Subgroup& o) const {
        return std::includes(o.elements_.begin(), o.elements_.end(), elements_.begin(), elements_.end());
    }

    /// Lexicographically minimal element of g + H.
    GroupElement coset_rep(const GroupElement& g) const {
        GroupElement best = g + elements_.front();
        for (std::size_t i = 1; i < elements_.size(); ++i) {
            auto c = g + elements_[i];
            if (c < best) best = std::move(c);
        }
        return best;
    }

    /// Canonical representatives of G/H, sorted.
    std::vector<GroupElement> coset_reps() const {
        std::vector<GroupElement> reps;
        for (const auto& g : parent_.elements()) {
            if (coset_rep(g) == g) reps.push_back(g);
        }
        return reps;
    }

    /// Order of g in the quotient parent/H.
    std::int64_t quotient_order(const GroupElement& g) const {
        std::int64_t k = 1;
        for (GroupElement x = g; !contains(x); x = x + g) ++k;
        return k;
    }

    Subgroup intersect(const Subgroup& o) const {
        std::vector<GroupElement> out;
        std::set_intersection(elements_.begin(), elements_.end(), o.elements_.begin(), o.elements_.end(),
                              std::back_inserter(out));
        return Subgroup(parent_, std::move(out));
    }

    /// H + K inside the parent of *this.
    Subgroup join(const Subgroup& o) const {
        std::vector<GroupElement> out;
        out.reserve(elements_.size() * o.elements_.size());
        for (const auto& a : elements_)
            for (const auto& b : o.elements_) out.push_back(a + b);
        detail::sort_unique(out);
        for (const auto& g : out)
            if (!parent_.contains(g)) throw Error(ErrorKind::DomainMismatch, "join leaves the parent group");
        return Subgroup(parent_, std::move(out));
    }

    /// The same element set viewed inside another ambient group.
    Subgroup rebase(const AmbientGroup& parent) const {
        for (const auto& g : elements_)
            if (!parent.contains(g)) throw Error(ErrorKind::DomainMismatch, "subgroup is not contained in the new parent");
        return Subgroup(parent, elements_);
    }

    /// The subgroup as a group in its own right.
    AmbientGroup as_group() const {
        return enumerate_closure(parent_.dim(), generators(), elements_.size());
    }

    /// Greedy generating set drawn in canonical element order.
    std::vector<GroupElement> generators() const {
        std::vector<GroupElement> gens;
        std::vector<GroupElement> span{GroupElement::zero(parent_.dim())};
        for (const auto& g : elements_) {
            if (detail::sorted_contains(span, g)) continue;
            gens.push_back(g);
            std::vector<GroupElement> next;
            for (GroupElement c = g;; c = c + g) {
                for (const auto& s : span) next.push_back(s + c);
                if (c.is_zero()) break;
            }
            detail::sort_unique(next);
            span = std::move(next);
            if (span.size() == elements_.size()) break;
        }
        return gens;
    }

    CyclicDecomposition decomposition() const { return detail::decompose(parent_.dim(), generators()); }

    bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }
    std::strong_ordering operator<=>(const Subgroup& o) const {
        if (auto c = elements_.size() <=> o.elements_.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(elements_.begin(), elements_.end(), o.elements_.begin(),
                                                      o.elements_.end());
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (i) s += ",";
            s += elements_[i].to_string();
        }
        return s + "}";
    }

    /// Short form "<g1,g2>" through the canonical generators; "<0>" for the
    /// trivial subgroup.
    std::string label() const {
        const auto gens = generators();
        if (gens.empty()) return "<0>";
        std::string s = "<";
        for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + gens[i].to_string();
        return s + ">";
    }

private:
    friend class AmbientGroup;
    Subgroup(AmbientGroup parent, std::vector<GroupElement> sorted_elements)
        : parent_(std::move(parent)), elements_(std::move(sorted_elements)) {}

    AmbientGroup parent_;
    std::vector<GroupElement> elements_;
};

inline Subgroup AmbientGroup::full() const { return Subgroup(*this, elements()); }
inline Subgroup AmbientGroup::trivial() const { return Subgroup(*this, {identity()}); }

inline std::string AmbientGroup::to_string() const { return full().to_string(); }

/// A homomorphism from a subgroup into Q/Z, stored as a value table aligned
/// with the domain's sorted elements.
class Character {
public:
    static Character trivial(const Subgroup& domain) {
        return Character(domain, std::vector<QZ>(domain.order()));
    }

    template <class F>
    static Character from_function(const Subgroup& domain, F&& f) {
        std::vector<QZ> v;
        v.reserve(domain.order());
        for (const auto& g : domain.elements()) v.push_back(f(g));
        return Character(domain, std::move(v));
    }

    /// Validating constructor; values aligned with domain.elements().
    static Character from_values(const Subgroup& domain, std::vector<QZ> values) {
        if (values.size() != domain.order())
            throw Error(ErrorKind::DomainMismatch, "character table has the wrong length");
        Character c(domain, std::move(values));
        if (!c.is_homomorphism()) throw Error(ErrorKind::DomainMismatch, "value table is not a homomorphism");
        return c;
    }

    const Subgroup& domain() const { return domain_; }
    const std::vector<QZ>& values() const { return values_; }

    QZ operator()(const GroupElement& g) const {
        auto i = domain_.find(g);
        if (!i) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is outside the character's domain");
        return values_[*i];
    }

    bool is_trivial() const {
        return std::all_of(values_.begin(), values_.end(), [](const QZ& q) { return q.is_zero(); });
    }

    bool is_homomorphism() const {
        if (!values_.front().is_zero()) return false;
        const auto& e = domain_.elements();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i; j < e.size(); ++j)
                if ((*this)(e[i] + e[j]) != values_[i] + values_[j]) return false;
        return true;
    }

    Character restrict_to(const Subgroup& sub) const {
        return from_function(sub, [this](const GroupElement& g) { return (*this)(g); });
    }

    Subgroup kernel() const {
        std::vector<GroupElement> k;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i].is_zero()) k.push_back(domain_.elements()[i]);
        return Subgroup::from_elements(domain_.parent(), std::move(k));
    }

    /// Order m of the image (the image is exactly the m-th roots of unity).
    std::int64_t image_order() const {
        std::int64_t m = 1;
        for (const auto& v : values_) m = lcm64(m, v.den());
        return m;
    }

    Character operator+(const Character& o) const {
        if (!(domain_ == o.domain_)) throw Error(ErrorKind::DomainMismatch, "characters on different domains");
        std::vector<QZ> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + o.values_[i];
        return Character(domain_, std::move(v));
    }

    bool operator==(const Character& o) const { return domain_ == o.domain_ && values_ == o.values_; }
    std::strong_ordering operator<=>(const Character& o) const {
        if (auto c = domain_ <=> o.domain_; c != 0) return c;
        return std::lexicographical_compare_three_way(values_.begin(), values_.end(), o.values_.begin(),
                                                      o.values_.end());
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (i) s += ",";
            s += values_[i].to_string();
        }
        return s + "}";
    }

private:
    Character(Subgroup domain, std::vector<QZ> values) : domain_(std::move(domain)), values_(std::move(values)) {}

    Subgroup domain_;
    std::vector<QZ> values_;
};

/// All |H| characters of H, in a deterministic order.
inline std::vector<Character> character_group(const Subgroup& H) {
    const auto dec = H.decomposition();
    const std::size_t r = dec.basis.size();
    // Basis coordinates of every element of H.
    std::vector<std::vector<std::int64_t>> coords(H.order());
    {
        std::vector<std::int64_t> x(r, 0);
        for (;;) {
            GroupElement g = GroupElement::zero(H.parent().dim());
            for (std::size_t i = 0; i < r; ++i) g = g + dec.basis[i] * x[i];
            auto idx = H.find(g);
            if (!idx) throw Error(ErrorKind::InternalInconsistency, "decomposition leaves the subgroup");
            coords[*idx] = x;
            std::size_t i = 0;
            while (i < r && ++x[i] == dec.orders[i]) x[i++] = 0;
            if (i == r) break;
        }
    }
    std::vector<Character> out;
    std::vector<std::int64_t> c(r, 0); // generator images c_i / orders_i
    for (;;) {
        std::vector<QZ> values(H.order());
        for (std::size_t e = 0; e < H.order(); ++e) {
            QZ v;
            for (std::size_t i = 0; i < r; ++i) v += QZ::from_ratio(c[i] * coords[e][i], dec.orders[i]);
            values[e] = v;
        }
        out.push_back(Character::from_function(H, [&](const GroupElement& g) { return values[*H.find(g)]; }));
        std::size_t i = 0;
        while (i < r && ++c[i] == dec.orders[i]) c[i++] = 0;
        if (i == r) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every subgroup of G, sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const AmbientGroup& G) {
    std::set<Subgroup> cyclic;
    for (const auto& g : G.elements()) cyclic.insert(Subgroup::generated(G, {g}));
    std::set<Subgroup> found{G.trivial()};
    std::vector<Subgroup> queue{G.trivial()};
    while (!queue.empty()) {
        Subgroup H = std::move(queue.back());
        queue.pop_back();
        for (const auto& C : cyclic) {
            if (C.is_subgroup_of(H)) continue;
            Subgroup J = H.join(C);
            if (found.insert(J).second) queue.push_back(std::move(J));
        }
    }
    return {found.begin(), found.end()};
}

/// A nondegenerate bilinear pairing G x G* -> Q/Z given by
/// pair(a, gamma) = a * M * gamma^T mod 1.
class PairedGroups {
public:
    PairedGroups(AmbientGroup G, AmbientGroup Gstar, IntMatrix M)
        : G_(std::move(G)), Gstar_(std::move(Gstar)), M_(std::move(M)) {
        if (static_cast<std::size_t>(M_.rows()) != G_.dim() || static_cast<std::size_t>(M_.cols()) != Gstar_.dim())
            throw Error(ErrorKind::PairingInconsistent, "pairing matrix has the wrong shape");
        // a M gamma^T must not depend on the integer lifts of a and gamma.
        for (const auto& gamma : Gstar_.generators())
            for (Eigen::Index i = 0; i < M_.rows(); ++i) {
                QZ s;
                for (Eigen::Index j = 0; j < M_.cols(); ++j) s += gamma[static_cast<std::size_t>(j)] * M_(i, j);
                if (!s.is_zero()) throw Error(ErrorKind::PairingInconsistent, "pairing is not well defined on G*");
            }
        for (const auto& a : G_.generators())
            for (Eigen::Index j = 0; j < M_.cols(); ++j) {
                QZ s;
                for (Eigen::Index i = 0; i < M_.rows(); ++i) s += a[static_cast<std::size_t>(i)] * M_(i, j);
                if (!s.is_zero()) throw Error(ErrorKind::PairingInconsistent, "pairing is not well defined on G");
            }
        if (G_.order() != Gstar_.order()) throw Error(ErrorKind::PairingInconsistent, "|G| != |G*|");
        auto left_kernel = [&](const AmbientGroup& A, const AmbientGroup& B, bool left) {
            std::size_t count = 0;
            for (const auto& a : A.elements()) {
                bool annihilates = true;
                for (const auto& b : B.generators())
                    if (!(left ? pair(a, b) : pair(b, a)).is_zero()) { annihilates = false; break; }
                if (annihilates) ++count;
            }
            return count;
        };
        if (left_kernel(G_, Gstar_, true) != 1 || left_kernel(Gstar_, G_, false) != 1)
            throw Error(ErrorKind::PairingInconsistent, "pairing is degenerate");
    }

    const AmbientGroup& G() const { return G_; }
    const AmbientGroup& Gstar() const { return Gstar_; }
    const IntMatrix& matrix() const { return M_; }

    QZ pair(const GroupElement& a, const GroupElement& gamma) const {
        QZ s;
        for (Eigen::Index i = 0; i < M_.rows(); ++i) {
            const QZ& ai = a[static_cast<std::size_t>(i)];
            if (ai.is_zero()) continue;
            for (Eigen::Index j = 0; j < M_.cols(); ++j) {
                const QZ& gj = gamma[static_cast<std::size_t>(j)];
                if (gj.is_zero() || M_(i, j) == 0) continue;
                s += QZ::from_ratio(detail::checked_mul(detail::checked_mul(ai.num(), M_(i, j)), gj.num()),
                                    ai.den() * gj.den());
            }
        }
        return s;
    }

    /// The same pairing read as G* x G -> Q/Z.
    PairedGroups transposed() const { return PairedGroups(Gstar_, G_, M_.transpose(), Unchecked{}); }

private:
    struct Unchecked {};
    PairedGroups(AmbientGroup G, AmbientGroup Gstar, IntMatrix M, Unchecked)
        : G_(std::move(G)), Gstar_(std::move(Gstar)), M_(std::move(M)) {}

    AmbientGroup G_;
    AmbientGroup Gstar_;
    IntMatrix M_;
};

/// The annihilator of H in G*.
inline Subgroup dual_subgroup(const Subgroup& H, const PairedGroups& P) {
    for (const auto& h : H.elements())
        if (!P.G().contains(h)) throw Error(ErrorKind::DomainMismatch, "subgroup is not contained in the paired group");
    const auto gens = H.generators();
    std::vector<GroupElement> out;
    for (const auto& gamma : P.Gstar().elements()) {
        bool ok = true;
        for (const auto& h : gens)
            if (!P.pair(h, gamma).is_zero()) { ok = false; break; }
        if (ok) out.push_back(gamma);
    }
    return Subgroup::from_elements(P.Gstar(), std::move(out));
}

/// Some gamma in G* with pair(g, gamma) = alpha(g) on the domain of alpha;
/// the lexicographically smallest one. Only its class modulo the dual of the
/// domain is meaningful.
inline GroupElement extend_character(const Character& alpha, const PairedGroups& P) {
    const auto gens = alpha.domain().generators();
    std::vector<QZ> targets;
    for (const auto& g : gens) {
        if (!P.G().contains(g)) throw Error(ErrorKind::DomainMismatch, "character domain is outside the paired group");
        targets.push_back(alpha(g));
    }
    for (const auto& gamma : P.Gstar().elements()) {
        bool ok = true;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (P.pair(gens[i], gamma) != targets[i]) { ok = false; break; }
        if (ok) return gamma;
    }
    throw Error(ErrorKind::PairingInconsistent, "no element of G* extends the character");
}

} // namespace saito
