#pragma once

// Zeta functions as formal products of cyclotomic factors.
//
//   TwistedZeta  prod_c (1 - e[c] t)^{m_c},  c in Q/Z
//   IntegerZeta  prod_n (1 - t^n)^{e_n}
//
// Both are kept multiplicatively with integer exponents of either sign, so
// equality is decided on exponent maps without cyclotomic arithmetic.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "saito/abelian.hpp"
#include "saito/burnside.hpp"
#include "saito/error.hpp"
#include "saito/qz.hpp"

namespace saito {

class TwistedZeta {
public:
    TwistedZeta() = default;

    /// (1 - e[c] t^k)^e, split into degree-one factors via
    /// 1 - e[c] t^k = prod_{j<k} (1 - e[(c + j)/k] t).
    static TwistedZeta factor(const QZ& c, std::int64_t k = 1, std::int64_t e = 1) {
        if (k < 1) throw Error(ErrorKind::DomainMismatch, "t-degree must be positive");
        TwistedZeta z;
        for (std::int64_t j = 0; j < k; ++j) z.add(QZ::from_ratio(c.num() + j * c.den(), c.den() * k), e);
        return z;
    }

    const std::map<QZ, std::int64_t>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    void add(const QZ& c, std::int64_t e) {
        if (e == 0) return;
        auto [it, fresh] = factors_.emplace(c, e);
        if (!fresh && (it->second += e) == 0) factors_.erase(it);
    }

    TwistedZeta& operator*=(const TwistedZeta& o) {
        for (const auto& [c, e] : o.factors_) add(c, e);
        return *this;
    }
    TwistedZeta& operator/=(const TwistedZeta& o) {
        for (const auto& [c, e] : o.factors_) add(c, -e);
        return *this;
    }
    TwistedZeta operator*(const TwistedZeta& o) const { auto r = *this; return r *= o; }
    TwistedZeta operator/(const TwistedZeta& o) const { auto r = *this; return r /= o; }
    TwistedZeta pow(std::int64_t s) const {
        TwistedZeta r;
        for (const auto& [c, e] : factors_) r.add(c, e * s);
        return r;
    }

    bool operator==(const TwistedZeta&) const = default;

    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& [c, e] : factors_) {
            if (!s.empty()) s += "*";
            s += "(1-e[" + c.to_string() + "]t)^" + std::to_string(e);
        }
        return s;
    }

private:
    std::map<QZ, std::int64_t> factors_;
};

/// psi(t) -> psi(e[-beta] t): every root and pole is multiplied by e[beta],
/// i.e. each factor 1 - e[c] t becomes 1 - e[c - beta] t.
inline TwistedZeta twist(const TwistedZeta& z, const QZ& beta) {
    TwistedZeta r;
    for (const auto& [c, e] : z.factors()) r.add(c - beta, e);
    return r;
}

class IntegerZeta {
public:
    IntegerZeta() = default;

    /// (1 - t^n)^e
    static IntegerZeta factor(std::int64_t n, std::int64_t e = 1) {
        if (n < 1) throw Error(ErrorKind::DomainMismatch, "t-degree must be positive");
        IntegerZeta z;
        z.add(n, e);
        return z;
    }

    const std::map<std::int64_t, std::int64_t>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    void add(std::int64_t n, std::int64_t e) {
        if (e == 0) return;
        auto [it, fresh] = factors_.emplace(n, e);
        if (!fresh && (it->second += e) == 0) factors_.erase(it);
    }

    IntegerZeta& operator*=(const IntegerZeta& o) {
        for (const auto& [n, e] : o.factors_) add(n, e);
        return *this;
    }
    IntegerZeta& operator/=(const IntegerZeta& o) {
        for (const auto& [n, e] : o.factors_) add(n, -e);
        return *this;
    }
    IntegerZeta operator*(const IntegerZeta& o) const { auto r = *this; return r *= o; }
    IntegerZeta operator/(const IntegerZeta& o) const { auto r = *this; return r /= o; }
    IntegerZeta pow(std::int64_t s) const {
        IntegerZeta r;
        for (const auto& [n, e] : factors_) r.add(n, e * s);
        return r;
    }
    IntegerZeta inverse() const { return pow(-1); }

    bool operator==(const IntegerZeta&) const = default;

    /// The same product in split form.
    TwistedZeta split() const {
        TwistedZeta z;
        for (const auto& [n, e] : factors_) z *= TwistedZeta::factor(QZ{}, n, e);
        return z;
    }

    /// Power-series coefficients of degree 0..degree.
    std::vector<std::int64_t> series(std::size_t degree) const {
        std::vector<std::int64_t> c(degree + 1, 0);
        c[0] = 1;
        for (const auto& [n0, e] : factors_) {
            const auto n = static_cast<std::size_t>(n0);
            for (std::int64_t r = 0; r < (e < 0 ? -e : e); ++r) {
                if (e > 0) {
                    for (std::size_t i = degree + 1; i-- > n;) c[i] -= c[i - n];
                } else {
                    for (std::size_t i = n; i <= degree; ++i) c[i] += c[i - n];
                }
            }
        }
        return c;
    }

    /// Factors by t-degree descending, e.g. "(1-t^4)^2*(1-t^2)^-1";
    /// the empty product is "1".
    std::string to_string() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
            if (!s.empty()) s += "*";
            s += it->first == 1 ? "(1-t)" : "(1-t^" + std::to_string(it->first) + ")";
            s += "^" + std::to_string(it->second);
        }
        return s;
    }

private:
    std::map<std::int64_t, std::int64_t> factors_;
};

/// Parses the rendering grammar of IntegerZeta::to_string().
inline IntegerZeta parse_integer_zeta(std::string_view text) {
    detail::Cursor c(text);
    IntegerZeta z;
    if (c.peek() == '1') {
        c.integer();
        if (!c.at_end()) c.fail("trailing characters after 1");
        return z;
    }
    do {
        c.expect('(');
        if (c.integer() != 1) c.fail("expected 1");
        c.expect('-');
        if (c.identifier() != "t") c.fail("expected t");
        std::int64_t n = 1;
        if (c.accept('^')) n = c.integer();
        if (n < 1) c.fail("t-degree must be positive");
        c.expect(')');
        std::int64_t e = 1;
        if (c.accept('^')) e = c.integer();
        z.add(n, e);
    } while (c.accept('*'));
    if (!c.at_end()) c.fail("trailing characters");
    return z;
}

namespace detail {

inline std::int64_t moebius(std::int64_t n) {
    std::int64_t mu = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

} // namespace detail

/// Regroups a split product into prod (1 - t^n)^{e_n}. The exponent must be
/// constant on each class of residues with a common exact denominator d,
/// say F(d); then e_n = sum_{n | m} mu(m/n) F(m).
inline IntegerZeta to_integer_form(const TwistedZeta& z) {
    std::map<std::int64_t, std::int64_t> F;
    std::map<std::int64_t, std::int64_t> count;
    for (const auto& [c, e] : z.factors()) {
        auto [it, fresh] = F.emplace(c.den(), e);
        if (!fresh && it->second != e)
            throw Error(ErrorKind::NotIntegral, "exponents differ within the denominator class " + std::to_string(c.den()));
        ++count[c.den()];
    }
    for (const auto& [d, k] : count)
        if (k != detail::euler_phi(d))
            throw Error(ErrorKind::NotIntegral, "incomplete denominator class " + std::to_string(d));
    IntegerZeta out;
    if (F.empty()) return out;
    const std::int64_t top = F.rbegin()->first;
    for (std::int64_t n = 1; n <= top; ++n) {
        std::int64_t e = 0;
        for (std::int64_t m = n; m <= top; m += n) {
            auto it = F.find(m);
            if (it != F.end()) e += detail::moebius(m / n) * it->second;
        }
        out.add(n, e);
    }
    return out;
}

/// Orbifold zeta of X_{H,k,hbar,alpha}: (1 - t^l)^{k|H|/l} with
/// l = lcm(k, m), m = |H| / |ker alpha|. Independent of hbar.
inline IntegerZeta zeta_of_basic(const Subgroup& H, std::int64_t k, const Character& alpha) {
    if (!(alpha.domain() == H)) throw Error(ErrorKind::DomainMismatch, "alpha must be defined on H");
    const std::int64_t m = alpha.image_order();
    const std::int64_t l = lcm64(k, m);
    return IntegerZeta::factor(l, k * static_cast<std::int64_t>(H.order()) / l);
}

/// Orbifold zeta of a ring element; multiplicative over coefficients.
inline IntegerZeta orbifold_zeta(const BurnsideElement& a) {
    IntegerZeta z;
    for (const auto& [x, c] : a.terms()) z *= zeta_of_basic(x.H, x.k, x.alpha).pow(c);
    return z;
}

/// Orbifold zeta straight from the definition: for each g and each sector
/// beta = alpha_x(g), take the h-cycles on (fixed points of g in that
/// sector) / G, a factor 1 - t^len per cycle, twisted by beta.
inline TwistedZeta orbifold_zeta_twisted(const ConcreteEnhancedSet& s) {
    const std::size_t n = s.size();
    // G-orbit representative (smallest index) of every point.
    std::vector<std::size_t> orbit(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t best = x;
        for (const auto& p : s.action) best = std::min<std::size_t>(best, p[x]);
        orbit[x] = best;
    }
    TwistedZeta z;
    for (std::size_t a = 0; a < s.group.order(); ++a) {
        const GroupElement& g = s.group.elements()[a];
        std::map<QZ, std::vector<std::size_t>> sectors; // beta -> orbit representatives
        for (std::size_t x = 0; x < n; ++x)
            if (s.action[a][x] == x && orbit[x] == x) sectors[(*s.alpha[x])(g)].push_back(x);
        for (const auto& [beta, reps] : sectors) {
            std::map<std::size_t, bool> seen;
            for (auto r : reps) seen[r] = false;
            for (auto r : reps) {
                if (seen[r]) continue;
                std::int64_t len = 0;
                std::size_t y = r;
                do {
                    seen[y] = true;
                    y = orbit[s.h[y]];
                    ++len;
                } while (y != r);
                z *= twist(TwistedZeta::factor(QZ{}, len), beta);
            }
        }
    }
    return z;
}

/// Brute-force orbifold zeta of a ring element, by materializing every
/// irreducible.
inline IntegerZeta orbifold_zeta_brute(const BurnsideElement& a) {
    TwistedZeta z;
    for (const auto& [x, c] : a.terms()) z *= orbifold_zeta_twisted(materialize(x)).pow(c);
    return to_integer_form(z);
}

} // namespace saito
