#pragma once

// The enhanced Burnside ring of a finite abelian group G.
//
// An enhanced G-set is a finite G-set X with a G-equivariant bijection h and,
// at every point x, a character alpha_x of the stabilizer G_x, constant along
// G-orbits and along h. The ring is free on the irreducible sets
// X_{H,k,hbar,alpha}: points (G/H) x {0..k-1}, h steps i -> i+1 and at
// i = k-1 wraps back to 0 while translating the coset by hbar.
//
// Concrete sets are the executable semantics: product and the general
// reduction are computed by materializing, operating on points, and reading
// the result back with canonicalize().

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saito/abelian.hpp"
#include "saito/error.hpp"

namespace saito {

struct Irreducible {
    Subgroup H;
    std::int64_t k = 1;
    GroupElement hbar; // lexicographically minimal in hbar + H
    Character alpha;   // on H

    static Irreducible make(Subgroup H, std::int64_t k, const GroupElement& hbar, Character alpha) {
        if (k < 1) throw Error(ErrorKind::DomainMismatch, "k must be positive");
        if (!H.parent().contains(hbar)) throw Error(ErrorKind::DomainMismatch, "hbar is not in the group");
        if (!(alpha.domain() == H)) throw Error(ErrorKind::DomainMismatch, "alpha must be defined on H");
        // alpha(hbar^-1 a hbar) = alpha(a) holds identically: G is abelian.
        GroupElement rep = H.coset_rep(hbar);
        return Irreducible{std::move(H), k, std::move(rep), std::move(alpha)};
    }

    const AmbientGroup& group() const { return H.parent(); }
    /// Number of points of the materialized set.
    std::size_t size() const { return H.index() * static_cast<std::size_t>(k); }

    bool operator==(const Irreducible& o) const {
        return k == o.k && H == o.H && hbar == o.hbar && alpha == o.alpha;
    }
    std::strong_ordering operator<=>(const Irreducible& o) const {
        if (auto c = H <=> o.H; c != 0) return c;
        if (auto c = k <=> o.k; c != 0) return c;
        if (auto c = hbar <=> o.hbar; c != 0) return c;
        return alpha <=> o.alpha;
    }

    std::string to_string() const {
        return "[H=" + H.to_string() + "; k=" + std::to_string(k) + "; h=" + hbar.to_string() +
               "; a=" + alpha.to_string() + "]";
    }
};

/// A finite integer combination of irreducibles. Zero coefficients are
/// never stored.
class BurnsideElement {
public:
    explicit BurnsideElement(AmbientGroup group) : group_(std::move(group)) {}

    static BurnsideElement of(const Irreducible& x, std::int64_t c = 1) {
        BurnsideElement e(x.group());
        e.add(x, c);
        return e;
    }

    /// The one-point set with trivial character: the multiplicative unit.
    static BurnsideElement one(const AmbientGroup& G) {
        auto full = G.full();
        return of(Irreducible::make(full, 1, G.identity(), Character::trivial(full)));
    }

    const AmbientGroup& group() const { return group_; }
    const std::map<Irreducible, std::int64_t>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    std::int64_t coefficient(const Irreducible& x) const {
        auto it = coeffs_.find(x);
        return it == coeffs_.end() ? 0 : it->second;
    }

    void add(const Irreducible& x, std::int64_t c) {
        if (!(x.group() == group_)) throw Error(ErrorKind::DomainMismatch, "irreducible over a different group");
        if (c == 0) return;
        auto [it, fresh] = coeffs_.emplace(x, c);
        if (!fresh && (it->second += c) == 0) coeffs_.erase(it);
    }

    BurnsideElement& operator+=(const BurnsideElement& o) {
        check_group(o);
        for (const auto& [x, c] : o.coeffs_) add(x, c);
        return *this;
    }
    BurnsideElement& operator-=(const BurnsideElement& o) {
        check_group(o);
        for (const auto& [x, c] : o.coeffs_) add(x, -c);
        return *this;
    }
    BurnsideElement operator+(const BurnsideElement& o) const { auto r = *this; return r += o; }
    BurnsideElement operator-(const BurnsideElement& o) const { auto r = *this; return r -= o; }
    BurnsideElement operator-() const { return *this * -1; }
    BurnsideElement operator*(std::int64_t s) const {
        BurnsideElement r(group_);
        for (const auto& [x, c] : coeffs_) r.add(x, c * s);
        return r;
    }

    bool operator==(const BurnsideElement& o) const { return group_ == o.group_ && coeffs_ == o.coeffs_; }

    /// Signed point count: the image in Z.
    std::int64_t augmentation() const {
        std::int64_t n = 0;
        for (const auto& [x, c] : coeffs_) n += c * static_cast<std::int64_t>(x.size());
        return n;
    }

    /// Signed combination in canonical key order, e.g. "[..] - 2*[..]".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [x, c] : coeffs_) {
            const std::int64_t a = c < 0 ? -c : c;
            if (first) s += c < 0 ? "-" : "";
            else s += c < 0 ? " - " : " + ";
            if (a != 1) s += std::to_string(a) + "*";
            s += x.to_string();
            first = false;
        }
        return s;
    }

private:
    void check_group(const BurnsideElement& o) const {
        if (!(o.group_ == group_)) throw Error(ErrorKind::DomainMismatch, "elements over different groups");
    }

    AmbientGroup group_;
    std::map<Irreducible, std::int64_t> coeffs_;
};

/// A fully materialized enhanced G-set. `action[a]` is the permutation by
/// the a-th element of group.elements(); every point carries a shared
/// character whose domain is that point's stabilizer.
struct ConcreteEnhancedSet {
    using Perm = std::vector<std::uint32_t>;

    AmbientGroup group;
    std::vector<Perm> action;
    Perm h;
    std::vector<std::shared_ptr<const Character>> alpha;

    std::size_t size() const { return h.size(); }

    std::vector<GroupElement> stabilizer_elements(std::size_t x) const {
        std::vector<GroupElement> s;
        for (std::size_t a = 0; a < action.size(); ++a)
            if (action[a][x] == x) s.push_back(group.elements()[a]);
        return s;
    }

    /// Throws MalformedEnhancedSet on the first violated axiom.
    void validate() const {
        auto fail = [](const std::string& m) { throw Error(ErrorKind::MalformedEnhancedSet, m); };
        const std::size_t n = size();
        auto is_perm = [n](const Perm& p) {
            if (p.size() != n) return false;
            std::vector<bool> hit(n, false);
            for (auto y : p) {
                if (y >= n || hit[y]) return false;
                hit[y] = true;
            }
            return true;
        };
        if (action.size() != group.order()) fail("action table does not cover the group");
        if (alpha.size() != n) fail("missing characters");
        for (const auto& a : alpha)
            if (!a) fail("missing character");
        auto same = [](const std::shared_ptr<const Character>& a, const std::shared_ptr<const Character>& b) {
            return a == b || *a == *b;
        };
        if (!is_perm(h)) fail("h is not a bijection");
        for (const auto& p : action)
            if (!is_perm(p)) fail("group element does not act by a permutation");
        for (std::size_t x = 0; x < n; ++x)
            if (action[0][x] != x) fail("identity acts nontrivially");
        std::vector<std::size_t> gens;
        for (const auto& g : group.generators()) gens.push_back(group.index_of(g));
        for (auto a : gens) {
            for (std::size_t b = 0; b < group.order(); ++b) {
                const auto& ab = action[group.index_of(group.elements()[a] + group.elements()[b])];
                for (std::size_t x = 0; x < n; ++x)
                    if (ab[x] != action[a][action[b][x]]) fail("action is not a homomorphism");
            }
            for (std::size_t x = 0; x < n; ++x) {
                if (h[action[a][x]] != action[a][h[x]]) fail("h is not G-equivariant");
                if (!same(alpha[action[a][x]], alpha[x])) fail("characters differ along a G-orbit");
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (alpha[x]->domain().elements() != stabilizer_elements(x)) fail("character domain is not the stabilizer");
            if (!same(alpha[h[x]], alpha[x])) fail("h does not preserve characters");
        }
    }
};

inline ConcreteEnhancedSet materialize(const Irreducible& x) {
    const AmbientGroup& G = x.group();
    const auto reps = x.H.coset_reps();
    const auto k = static_cast<std::size_t>(x.k);
    std::map<GroupElement, std::size_t> rep_index;
    for (std::size_t r = 0; r < reps.size(); ++r) rep_index.emplace(reps[r], r);
    auto coset_of = [&](const GroupElement& g) { return rep_index.at(x.H.coset_rep(g)); };

    ConcreteEnhancedSet s{G, {}, {}, {}};
    const std::size_t n = reps.size() * k;
    for (const auto& g : G.elements()) {
        ConcreteEnhancedSet::Perm p(n);
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const std::size_t target = coset_of(g + reps[r]);
            for (std::size_t i = 0; i < k; ++i) p[r * k + i] = static_cast<std::uint32_t>(target * k + i);
        }
        s.action.push_back(std::move(p));
    }
    s.h.resize(n);
    for (std::size_t r = 0; r < reps.size(); ++r) {
        for (std::size_t i = 0; i + 1 < k; ++i) s.h[r * k + i] = static_cast<std::uint32_t>(r * k + i + 1);
        s.h[r * k + k - 1] = static_cast<std::uint32_t>(coset_of(reps[r] + x.hbar) * k);
    }
    s.alpha.assign(n, std::make_shared<const Character>(x.alpha));
    return s;
}

inline ConcreteEnhancedSet disjoint_union(const ConcreteEnhancedSet& a, const ConcreteEnhancedSet& b) {
    if (!(a.group == b.group)) throw Error(ErrorKind::DomainMismatch, "sets over different groups");
    const auto off = static_cast<std::uint32_t>(a.size());
    ConcreteEnhancedSet s = a;
    for (std::size_t g = 0; g < s.action.size(); ++g)
        for (auto y : b.action[g]) s.action[g].push_back(y + off);
    for (auto y : b.h) s.h.push_back(y + off);
    s.alpha.insert(s.alpha.end(), b.alpha.begin(), b.alpha.end());
    return s;
}

/// Cartesian product with diagonal action; characters add on the
/// intersection of stabilizers.
inline ConcreteEnhancedSet cartesian_product(const ConcreteEnhancedSet& a, const ConcreteEnhancedSet& b) {
    if (!(a.group == b.group)) throw Error(ErrorKind::DomainMismatch, "sets over different groups");
    const std::size_t nb = b.size();
    const std::size_t n = a.size() * nb;
    ConcreteEnhancedSet s{a.group, {}, {}, {}};
    s.action.resize(a.action.size(), ConcreteEnhancedSet::Perm(n));
    s.h.resize(n);
    s.alpha.resize(n);
    std::map<std::pair<const Character*, const Character*>, std::shared_ptr<const Character>> cache;
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            const std::size_t p = x * nb + y;
            for (std::size_t g = 0; g < a.action.size(); ++g)
                s.action[g][p] = static_cast<std::uint32_t>(a.action[g][x] * nb + b.action[g][y]);
            s.h[p] = static_cast<std::uint32_t>(a.h[x] * nb + b.h[y]);
            auto key = std::make_pair(a.alpha[x].get(), b.alpha[y].get());
            auto it = cache.find(key);
            if (it == cache.end()) {
                const Character& ca = *a.alpha[x];
                const Character& cb = *b.alpha[y];
                Subgroup common = ca.domain().intersect(cb.domain());
                auto c = std::make_shared<const Character>(
                    Character::from_function(common, [&](const GroupElement& g) { return ca(g) + cb(g); }));
                it = cache.emplace(key, std::move(c)).first;
            }
            s.alpha[p] = it->second;
        }
    return s;
}

/// The same set viewed as a G-set for a subgroup G; characters restrict to
/// the smaller stabilizers.
inline ConcreteEnhancedSet restrict_action(const ConcreteEnhancedSet& s, const Subgroup& G) {
    AmbientGroup sub = G.as_group();
    ConcreteEnhancedSet r{sub, {}, s.h, {}};
    for (const auto& g : sub.elements()) r.action.push_back(s.action[s.group.index_of(g)]);
    std::map<const Character*, std::shared_ptr<const Character>> cache;
    r.alpha.reserve(s.size());
    for (const auto& c : s.alpha) {
        auto it = cache.find(c.get());
        if (it == cache.end()) {
            Subgroup dom = c->domain().intersect(G).rebase(sub);
            it = cache.emplace(c.get(), std::make_shared<const Character>(c->restrict_to(dom))).first;
        }
        r.alpha.push_back(it->second);
    }
    return r;
}

/// Decomposes a concrete set into irreducibles: one per orbit of <G, h>.
inline BurnsideElement canonicalize(const ConcreteEnhancedSet& s) {
    s.validate();
    const std::size_t n = s.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (std::size_t x = 0; x < n; ++x) unite(x, s.h[x]);
    for (const auto& g : s.group.generators()) {
        const auto& p = s.action[s.group.index_of(g)];
        for (std::size_t x = 0; x < n; ++x) unite(x, p[x]);
    }

    BurnsideElement out(s.group);
    std::vector<bool> in_orbit(n, false);
    for (std::size_t x = 0; x < n; ++x) {
        if (find(x) != x) continue; // x is the minimal point of its component
        const Subgroup& H = s.alpha[x]->domain();
        std::vector<std::size_t> orbit;
        for (const auto& p : s.action) {
            if (!in_orbit[p[x]]) orbit.push_back(p[x]);
            in_orbit[p[x]] = true;
        }
        std::int64_t k = 1;
        std::size_t y = s.h[x];
        while (!in_orbit[y]) {
            y = s.h[y];
            ++k;
        }
        std::size_t a = 0;
        while (s.action[a][x] != y) ++a;
        out.add(Irreducible::make(H, k, s.group.elements()[a], *s.alpha[x]), 1);
        for (auto z : orbit) in_orbit[z] = false;
    }
    return out;
}

namespace detail {

inline void check_same_group(const BurnsideElement& a, const BurnsideElement& b) {
    if (!(a.group() == b.group())) throw Error(ErrorKind::DomainMismatch, "elements over different groups");
}

inline void check_subgroup(const Subgroup& G, const AmbientGroup& ambient) {
    for (const auto& g : G.elements())
        if (!ambient.contains(g)) throw Error(ErrorKind::DomainMismatch, "not a subgroup of the element's group");
}

} // namespace detail

inline BurnsideElement product(const BurnsideElement& a, const BurnsideElement& b) {
    detail::check_same_group(a, b);
    BurnsideElement out(a.group());
    std::vector<std::pair<ConcreteEnhancedSet, std::int64_t>> right;
    for (const auto& [y, cy] : b.terms()) right.emplace_back(materialize(y), cy);
    for (const auto& [x, cx] : a.terms()) {
        const auto sx = materialize(x);
        for (const auto& [sy, cy] : right) out += canonicalize(cartesian_product(sx, sy)) * (cx * cy);
    }
    return out;
}

/// Reduction along G by materialization; valid for every generator.
inline BurnsideElement reduce_general(const BurnsideElement& a, const Subgroup& G) {
    detail::check_subgroup(G, a.group());
    BurnsideElement out(G.as_group());
    for (const auto& [x, c] : a.terms()) out += canonicalize(restrict_action(materialize(x), G)) * c;
    return out;
}

/// Closed form for a k = 1 generator X_{H,1,h,alpha}: with
/// k' = min{l > 0 : l*h in G+H} and k'*h = g + (element of H), g in G,
/// the reduction is |Gcal||G cap H| / (k'|H||G|) copies of
/// X^G_{G cap H, k', g, alpha restricted}.
inline BurnsideElement reduce_fast(const Irreducible& x, const Subgroup& G) {
    if (x.k != 1) throw Error(ErrorKind::NotInB1, "closed-form reduction needs k = 1");
    detail::check_subgroup(G, x.group());
    const Subgroup Gin = G.rebase(x.group());
    AmbientGroup sub = Gin.as_group();
    const Subgroup GH = Gin.join(x.H);
    const std::int64_t k = GH.quotient_order(x.hbar);
    const GroupElement kh = x.hbar * k;
    std::optional<GroupElement> g;
    for (const auto& h : x.H.elements())
        if (Gin.contains(kh - h)) {
            g = kh - h;
            break;
        }
    if (!g) throw Error(ErrorKind::InternalInconsistency, "k*hbar is not in G + H");
    const Subgroup K = Gin.intersect(x.H).rebase(sub);
    const auto num = static_cast<std::int64_t>(x.group().order() * K.order());
    const auto den = k * static_cast<std::int64_t>(x.H.order() * Gin.order());
    if (num % den != 0) throw Error(ErrorKind::InternalInconsistency, "non-integral reduction multiplicity");
    return BurnsideElement::of(Irreducible::make(K, k, *g, x.alpha.restrict_to(K)), num / den);
}

/// Ring homomorphism B(Gcal) -> B(G) forgetting part of the action.
/// Generators with k = 1 use the closed form; the rest are materialized.
inline BurnsideElement reduce(const BurnsideElement& a, const Subgroup& G) {
    detail::check_subgroup(G, a.group());
    BurnsideElement out(G.as_group());
    for (const auto& [x, c] : a.terms()) {
        if (x.k == 1) out += reduce_fast(x, G) * c;
        else out += canonicalize(restrict_action(materialize(x), G)) * c;
    }
    return out;
}

inline bool in_b1(const BurnsideElement& a) {
    return std::all_of(a.terms().begin(), a.terms().end(), [](const auto& t) { return t.first.k == 1; });
}

/// Enhanced Saito duality B1(Gcal) -> B1(Gcal*):
/// X_{H,1,h,alpha} -> X_{dual(H), 1, ext(alpha), pair(h, .)}.
inline BurnsideElement saito_dual(const BurnsideElement& a, const PairedGroups& P) {
    if (!(a.group() == P.G())) throw Error(ErrorKind::DomainMismatch, "element is not over the paired group");
    BurnsideElement out(P.Gstar());
    for (const auto& [x, c] : a.terms()) {
        if (x.k != 1) throw Error(ErrorKind::NotInB1, "Saito duality is defined on B1 only: " + x.to_string());
        const Subgroup Ht = dual_subgroup(x.H.rebase(P.G()), P);
        const GroupElement at = extend_character(x.alpha, P);
        const GroupElement& h = x.hbar;
        Character ht = Character::from_function(Ht, [&](const GroupElement& gamma) { return P.pair(h, gamma); });
        out.add(Irreducible::make(Ht, 1, at, std::move(ht)), c);
    }
    return out;
}

/// Equipped Lefschetz data of g*h^m: fixed points grouped by
/// (stabilizer, character), with integer multiplicities.
struct FixedPointData {
    AmbientGroup group;
    std::map<Character, std::int64_t> terms;

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& [c, n] : terms) t += n;
        return t;
    }

    void add(const Character& c, std::int64_t n) {
        if (n == 0) return;
        auto [it, fresh] = terms.emplace(c, n);
        if (!fresh && (it->second += n) == 0) terms.erase(it);
    }

    FixedPointData& operator+=(const FixedPointData& o) {
        for (const auto& [c, n] : o.terms) add(c, n);
        return *this;
    }

    bool operator==(const FixedPointData& o) const { return group == o.group && terms == o.terms; }
};

inline FixedPointData fixed_point_data(const ConcreteEnhancedSet& s, const GroupElement& g, std::int64_t m,
                                       std::int64_t multiplicity = 1) {
    if (m < 1) throw Error(ErrorKind::DomainMismatch, "m must be positive");
    const auto& act = s.action[s.group.index_of(g)];
    FixedPointData out{s.group, {}};
    for (std::size_t x = 0; x < s.size(); ++x) {
        std::size_t y = x;
        for (std::int64_t i = 0; i < m; ++i) y = s.h[y];
        if (act[y] == x) out.add(*s.alpha[x], multiplicity);
    }
    return out;
}

inline FixedPointData fixed_point_data(const BurnsideElement& a, const GroupElement& g, std::int64_t m) {
    if (!a.group().contains(g)) throw Error(ErrorKind::DomainMismatch, "g is not in the group");
    if (m < 1) throw Error(ErrorKind::DomainMismatch, "m must be positive");
    FixedPointData out{a.group(), {}};
    // On X_{H,k,hbar,alpha}, g h^m fixes every point when k | m and
    // g + (m/k) hbar lies in H, and no point otherwise.
    for (const auto& [x, c] : a.terms())
        if (m % x.k == 0 && x.H.find(g + x.hbar * (m / x.k)))
            out.add(x.alpha, c * static_cast<std::int64_t>(x.size()));
    return out;
}

/// Largest i with a in F^i (no point returns under h^j, 1 <= j <= i);
/// std::nullopt stands for infinity (the zero element).
inline std::optional<std::int64_t> filtration_level(const BurnsideElement& a) {
    std::optional<std::int64_t> level;
    for (const auto& [x, c] : a.terms()) {
        const std::int64_t period = x.k * x.H.quotient_order(x.hbar);
        if (!level || period - 1 < *level) level = period - 1;
    }
    return level;
}

/// Every irreducible over G with k <= kmax.
inline std::vector<Irreducible> irreducibles(const AmbientGroup& G, std::int64_t kmax) {
    std::vector<Irreducible> out;
    for (const auto& H : all_subgroups(G)) {
        const auto chars = character_group(H);
        for (const auto& rep : H.coset_reps())
            for (const auto& alpha : chars)
                for (std::int64_t k = 1; k <= kmax; ++k) out.push_back(Irreducible::make(H, k, rep, alpha));
    }
    return out;
}

/// The free generators X_{H,1,h,alpha} of B1(G).
inline std::vector<Irreducible> b1_generators(const AmbientGroup& G) { return irreducibles(G, 1); }

} // namespace saito
