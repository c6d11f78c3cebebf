#pragma once

// Exact verification of the duality statements for an invertible polynomial
// and its transpose.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saito/abelian.hpp"
#include "saito/burnside.hpp"
#include "saito/error.hpp"
#include "saito/invertible.hpp"
#include "saito/zeta.hpp"

namespace saito {

enum class Theorem { PropDual, Thm1, Thm2, Corollary };

inline const char* to_string(Theorem t) {
    switch (t) {
    case Theorem::PropDual: return "prop_dual";
    case Theorem::Thm1: return "thm1";
    case Theorem::Thm2: return "thm2";
    case Theorem::Corollary: return "corollary";
    }
    return "?";
}

inline std::optional<Theorem> parse_theorem(std::string_view s) {
    for (auto t : {Theorem::PropDual, Theorem::Thm1, Theorem::Thm2, Theorem::Corollary})
        if (s == to_string(t)) return t;
    return std::nullopt;
}

struct Check {
    std::string name;
    bool pass = false;
    std::string lhs;
    std::string rhs;

    const char* status() const { return pass ? "PASS" : "FAIL"; }
};

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace detail {

inline std::vector<Subgroup> subgroups_to_check(const DualPair& d, const std::optional<Subgroup>& G) {
    if (G) return {G->rebase(d.f.Gf)};
    return all_subgroups(d.f.Gf);
}

inline std::int64_t parity_sign(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

inline std::vector<Check> check_prop_dual(const DualPair& d) {
    std::vector<Check> out;
    const auto v = prop_dual_violations(d);
    Check c{"prop_dual", v.empty(), "pair(h_f, .) on G_ft", "alpha_ft"};
    if (!v.empty()) c.lhs = v.front();
    out.push_back(std::move(c));
    return out;
}

inline std::vector<Check> check_thm2(const DualPair& d) {
    const BurnsideElement lhs = reduced_enhanced_euler(d.ft);
    const BurnsideElement rhs = saito_dual(reduced_enhanced_euler(d.f), d.P) * parity_sign(d.f.n());
    return {Check{"thm2", lhs == rhs, lhs.to_string(), rhs.to_string()}};
}

inline std::vector<Check> check_thm1(const DualPair& d, const std::vector<Subgroup>& groups) {
    // Every B1 generator of G_f plus the reduced Euler characteristic; the
    // duals do not depend on G, so compute them once.
    std::vector<BurnsideElement> xs;
    for (const auto& x : b1_generators(d.f.Gf)) xs.push_back(BurnsideElement::of(x));
    xs.push_back(reduced_enhanced_euler(d.f));
    std::vector<BurnsideElement> duals;
    duals.reserve(xs.size());
    for (const auto& x : xs) duals.push_back(saito_dual(x, d.P));

    std::vector<Check> out;
    for (const auto& G : groups) {
        const Subgroup Gt = dual_subgroup(G, d.P);
        Check c{"thm1 G=" + G.label(), true, "", ""};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const IntegerZeta lhs = orbifold_zeta(reduce(xs[i], G));
            const IntegerZeta rhs = orbifold_zeta(reduce(duals[i], Gt));
            if (lhs != rhs || i + 1 == xs.size()) {
                c.lhs = lhs.to_string();
                c.rhs = rhs.to_string();
            }
            if (lhs != rhs) {
                c.pass = false;
                c.name += " X=" + xs[i].to_string();
                break;
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::vector<Check> check_corollary(const DualPair& d, const std::vector<Subgroup>& groups) {
    std::vector<Check> out;
    for (const auto& G : groups) {
        const Subgroup Gt = dual_subgroup(G, d.P);
        const IntegerZeta lhs = reduced_orbifold_zeta(d.ft, Gt);
        const IntegerZeta rhs = reduced_orbifold_zeta(d.f, G).pow(parity_sign(d.f.n()));
        out.push_back(Check{"corollary G=" + G.label(), lhs == rhs, lhs.to_string(), rhs.to_string()});
    }
    return out;
}

} // namespace detail

/// Runs one statement. `G` restricts thm1/corollary to a single subgroup of
/// G_f; otherwise every subgroup is checked.
inline std::vector<Check> verify_duality(const DualPair& d, Theorem which, const std::optional<Subgroup>& G = std::nullopt) {
    switch (which) {
    case Theorem::PropDual: return detail::check_prop_dual(d);
    case Theorem::Thm2: return detail::check_thm2(d);
    case Theorem::Thm1: return detail::check_thm1(d, detail::subgroups_to_check(d, G));
    case Theorem::Corollary: return detail::check_corollary(d, detail::subgroups_to_check(d, G));
    }
    return {};
}

inline std::vector<Check> verify_duality(const InvertiblePolynomial& p, Theorem which,
                                         const std::optional<std::vector<GroupElement>>& subgroup = std::nullopt,
                                         std::size_t max_order = kDefaultMaxOrder) {
    const DualPair d = make_dual_pair(p, max_order);
    std::optional<Subgroup> G;
    if (subgroup) {
        for (const auto& g : *subgroup)
            if (!d.f.Gf.contains(g)) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in G_f");
        G = Subgroup::generated(d.f.Gf, *subgroup);
    }
    return verify_duality(d, which, G);
}

} // namespace saito
