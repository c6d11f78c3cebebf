#pragma once

// Seeded property fuzzing of the structural laws. Case i of a run with seed
// s draws everything from mt19937_64(s + i), so any failing case replays
// with --seed (s + i) --iterations 1.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "saito/abelian.hpp"
#include "saito/burnside.hpp"
#include "saito/invertible.hpp"
#include "saito/zeta.hpp"

namespace saito {

struct FuzzOptions {
    std::uint64_t seed = 1;
    std::size_t iterations = 500;
    std::int64_t max_order = 24;     // bound on |det E| for random ambient groups
    std::optional<IntMatrix> ambient; // fixed E instead of a random one
};

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::optional<std::uint64_t> first_failing_seed;
    std::string detail;
};

namespace detail {

class FuzzRng {
public:
    explicit FuzzRng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform on [lo, hi]; modulo reduction keeps draws identical across
    /// standard libraries.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
    }

private:
    std::mt19937_64 eng_;
};

/// A random nondegenerate E with 2 <= |det E| <= max_order, 1 to 3 rows.
inline IntMatrix random_exponent_matrix(FuzzRng& rng, std::int64_t max_order) {
    for (;;) {
        const auto n = rng.uniform(1, 3);
        IntMatrix E = IntMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                E(i, j) = i == j ? rng.uniform(1, n == 1 ? max_order : 5) : (rng.uniform(0, 2) == 0 ? 1 : 0);
        const auto d = std::llabs(determinant(E));
        if (d >= 2 && d <= max_order) return E;
    }
}

struct FuzzCase {
    FuzzRng rng;
    PairedGroups P;
    std::vector<Subgroup> subgroups;

    Subgroup subgroup() { return rng.pick(subgroups); }
    Character character(const Subgroup& H) { return rng.pick(character_group(H)); }
    Irreducible irreducible(std::int64_t kmax) {
        Subgroup H = subgroup();
        const auto& g = rng.pick(P.G().elements());
        const auto k = rng.uniform(1, kmax);
        Character a = character(H);
        return Irreducible::make(std::move(H), k, g, std::move(a));
    }
    BurnsideElement element(std::int64_t kmax, int max_terms = 2) {
        BurnsideElement out(P.G());
        const auto terms = rng.uniform(1, max_terms);
        for (std::int64_t i = 0; i < terms; ++i) {
            std::int64_t c = rng.uniform(1, 2) * (rng.uniform(0, 1) ? 1 : -1);
            out.add(irreducible(kmax), c);
        }
        return out;
    }
};

inline FuzzCase make_case(std::uint64_t seed, const FuzzOptions& o) {
    FuzzRng rng(seed);
    const IntMatrix E = o.ambient ? *o.ambient : random_exponent_matrix(rng, o.max_order);
    const auto p = polynomial_from_matrix(E);
    auto Gf = symmetry_data(p).Gf;
    auto Gft = symmetry_data(transpose(p)).Gf;
    PairedGroups P(Gf, Gft, E.transpose());
    auto subs = all_subgroups(P.G());
    return FuzzCase{rng, std::move(P), std::move(subs)};
}

} // namespace detail

/// One property: `body` returns an empty string on success, a description
/// of the counterexample otherwise.
template <class Body>
PropertyResult fuzz_property(std::string name, const FuzzOptions& o, Body&& body) {
    PropertyResult r;
    r.name = std::move(name);
    for (std::size_t i = 0; i < o.iterations; ++i) {
        const std::uint64_t seed = o.seed + i;
        auto c = detail::make_case(seed, o);
        std::string fail;
        try {
            fail = body(c);
        } catch (const Error& e) {
            fail = std::string("error: ") + e.what();
        }
        ++r.cases;
        if (!fail.empty()) {
            if (!r.first_failing_seed) {
                r.first_failing_seed = seed;
                r.detail = fail;
            }
            ++r.failures;
        }
    }
    return r;
}

inline std::vector<PropertyResult> run_fuzz(const FuzzOptions& o) {
    using detail::FuzzCase;
    std::vector<PropertyResult> out;

    out.push_back(fuzz_property("saito_dual involutive", o, [](FuzzCase& c) -> std::string {
        const auto x = c.element(1, 3);
        const auto back = saito_dual(saito_dual(x, c.P), c.P.transposed());
        return back == x ? "" : x.to_string() + " -> " + back.to_string();
    }));

    out.push_back(fuzz_property("reduce ring homomorphism", o, [](FuzzCase& c) -> std::string {
        const auto x = c.element(2), y = c.element(2);
        const auto G = c.subgroup();
        if (reduce(x + y, G) != reduce(x, G) + reduce(y, G)) return "additivity " + x.to_string() + " ; " + y.to_string();
        if (reduce(product(x, y), G) != product(reduce(x, G), reduce(y, G)))
            return "multiplicativity G=" + G.to_string() + " " + x.to_string() + " ; " + y.to_string();
        if (reduce(BurnsideElement::one(c.P.G()), G) != BurnsideElement::one(G.as_group())) return "unit";
        if (reduce(x, G) != reduce_general(x, G)) return "closed form disagrees with materialization " + x.to_string();
        return "";
    }));

    out.push_back(fuzz_property("orbifold_zeta additive to multiplicative", o, [](FuzzCase& c) -> std::string {
        const auto x = c.element(3), y = c.element(3);
        if (orbifold_zeta(x + y) != orbifold_zeta(x) * orbifold_zeta(y))
            return x.to_string() + " ; " + y.to_string();
        if (orbifold_zeta(x) != orbifold_zeta_brute(x)) return "closed form disagrees with brute force " + x.to_string();
        return "";
    }));

    out.push_back(fuzz_property("dual of kernel", o, [](FuzzCase& c) -> std::string {
        const auto H = c.subgroup();
        const auto a = c.character(H);
        const auto lhs = dual_subgroup(a.kernel(), c.P);
        const auto rhs = Subgroup::generated(c.P.Gstar(), {extend_character(a, c.P)}).join(dual_subgroup(H, c.P));
        return lhs == rhs ? "" : "H=" + H.to_string() + " alpha=" + a.to_string();
    }));

    out.push_back(fuzz_property("double duality", o, [](FuzzCase& c) -> std::string {
        const auto H = c.subgroup();
        const auto Ht = dual_subgroup(H, c.P);
        if (H.order() * Ht.order() != c.P.G().order()) return "order " + H.to_string();
        const auto back = dual_subgroup(Ht, c.P.transposed());
        return back == H ? "" : H.to_string() + " -> " + back.to_string();
    }));
    return out;
}

} // namespace saito
