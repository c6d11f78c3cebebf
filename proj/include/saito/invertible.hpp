#pragma once

// Invertible polynomials f = sum_i a_i prod_j x_j^{E_ij}: symmetry group
// G_f = {r : E r = 0 mod Z^n}, weights E q = (1,...,1)^T, grading element
// h_f = q mod 1, determinant character alpha_f(r) = sum_j r_j, the
// Berglund-Huebsch transpose, and the enhanced Euler characteristic of the
// Milnor fibre V_f = {f = 1} assembled torus by torus.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "saito/abelian.hpp"
#include "saito/burnside.hpp"
#include "saito/error.hpp"
#include "saito/qz.hpp"
#include "saito/smith.hpp"
#include "saito/zeta.hpp"

namespace saito {

using Rational = boost::rational<std::int64_t>;

inline std::string rational_to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct InvertiblePolynomial {
    IntMatrix E;                        // row i = exponents of monomial i
    std::vector<std::string> var_names;
    std::vector<Rational> coefficients; // recorded, never used
    std::vector<std::string> notes;     // validation warnings

    std::size_t n() const { return static_cast<std::size_t>(E.rows()); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < n(); ++i) {
            Rational a = i < coefficients.size() ? coefficients[i] : Rational(1);
            if (i) s += a < Rational(0) ? " - " : " + ";
            else if (a < Rational(0)) s += "-";
            if (a < Rational(0)) a = -a;
            std::string mono;
            for (std::size_t j = 0; j < n(); ++j) {
                const auto e = E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (e == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += var_names[j];
                if (e != 1) mono += "^" + std::to_string(e);
            }
            if (a != Rational(1)) s += rational_to_string(a) + (mono.empty() ? "" : "*");
            s += mono.empty() && a == Rational(1) ? "1" : mono;
        }
        return s;
    }

    bool operator==(const InvertiblePolynomial& o) const { return E == o.E && var_names == o.var_names; }
};

/// A polynomial spec file: the polynomial plus an optional subgroup given by
/// generators.
struct PolynomialSpec {
    InvertiblePolynomial poly;
    std::optional<std::vector<GroupElement>> subgroup;

    std::string to_string() const {
        std::string s = "vars:";
        for (const auto& v : poly.var_names) s += " " + v;
        s += "\nf: " + poly.to_string() + "\n";
        if (subgroup) {
            s += "subgroup:";
            for (const auto& g : *subgroup) s += " " + g.to_string();
            s += "\n";
        }
        return s;
    }
};

namespace detail {

inline std::vector<std::string> default_var_names(std::size_t n) {
    static const char* letters[] = {"x", "y", "z", "w"};
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(n <= 4 ? letters[i] : "x" + std::to_string(i + 1));
    return v;
}

inline void finish_polynomial(InvertiblePolynomial& p) {
    if (static_cast<std::size_t>(p.E.rows()) != p.var_names.size())
        throw Error(ErrorKind::NotSquare, std::to_string(p.E.rows()) + " monomials in " +
                                              std::to_string(p.var_names.size()) + " variables");
    if (p.E.rows() == 0) throw Error(ErrorKind::NotSquare, "empty polynomial");
    if (determinant(p.E) == 0) throw Error(ErrorKind::Degenerate, "exponent matrix has determinant 0");
    for (const auto& a : p.coefficients)
        if (a != Rational(1)) {
            p.notes.push_back("coefficients other than 1 are recorded but do not affect any computation");
            break;
        }
    // Weights: q = E^-1 (1,...,1)^T.
    const std::int64_t det = determinant(p.E);
    const IntMatrix adj = adjugate(p.E);
    for (Eigen::Index i = 0; i < adj.rows(); ++i) {
        Rational q(adj.row(i).sum(), det);
        if (q <= Rational(0) || q >= Rational(1))
            p.notes.push_back("weight q" + std::to_string(i + 1) + " = " + rational_to_string(q) +
                              " lies outside (0,1)");
    }
}

inline InvertiblePolynomial parse_polynomial_at(std::string_view text, std::size_t offset,
                                                std::optional<std::vector<std::string>> vars) {
    Cursor c(text, offset);
    const bool fixed_vars = vars.has_value();
    std::vector<std::string> names = vars.value_or(std::vector<std::string>{});
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<Rational> coeffs;

    auto var_index = [&](const std::string& v, std::size_t at) -> std::size_t {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == v) return i;
        if (fixed_vars) throw Error(ErrorKind::ParseError, "unknown variable '" + v + "' at position " + std::to_string(at), at);
        names.push_back(v);
        for (auto& r : rows) r.push_back(0);
        return names.size() - 1;
    };

    bool first = true;
    while (true) {
        std::int64_t sign = 1;
        if (c.accept('-')) sign = -1;
        else if (!first) c.expect('+');
        else c.accept('+');
        first = false;

        Rational coeff(sign);
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            auto [p, q] = c.rational();
            if (p == 0) c.fail("zero coefficient");
            coeff *= Rational(p, q);
            c.accept('*');
        }
        std::vector<std::int64_t> row(names.size(), 0);
        bool any = false;
        while (std::isalpha(static_cast<unsigned char>(c.peek())) || c.peek() == '_') {
            const std::size_t at = c.position();
            const auto v = c.identifier();
            const std::size_t j = var_index(v, at);
            row.resize(names.size(), 0);
            std::int64_t e = 1;
            if (c.accept('^')) {
                e = c.integer();
                if (e < 0) c.fail("negative exponent");
            }
            row[j] += e;
            any = true;
            if (!c.accept('*')) break;
        }
        if (!any) c.fail("expected a monomial");
        rows.push_back(std::move(row));
        coeffs.push_back(coeff);
        if (c.at_end()) break;
        if (c.peek() != '+' && c.peek() != '-') c.fail("expected '+' between monomials");
    }
    InvertiblePolynomial p;
    p.var_names = names;
    p.coefficients = coeffs;
    p.E = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            p.E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    finish_polynomial(p);
    return p;
}

inline IntMatrix parse_matrix_at(std::string_view text, std::size_t offset) {
    Cursor c(text, offset);
    std::vector<std::vector<std::int64_t>> rows;
    c.expect('[');
    do {
        c.expect('[');
        std::vector<std::int64_t> row;
        do {
            row.push_back(c.integer());
            if (row.back() < 0) c.fail("negative exponent");
        } while (c.accept(','));
        c.expect(']');
        if (!rows.empty() && rows.front().size() != row.size()) c.fail("ragged matrix");
        rows.push_back(std::move(row));
    } while (c.accept(','));
    c.expect(']');
    if (!c.at_end()) c.fail("trailing characters");
    IntMatrix E(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return E;
}

} // namespace detail

/// Parses "x^2*y + y^3"; variables are ordered by first appearance.
inline InvertiblePolynomial parse_polynomial(std::string_view text) {
    return detail::parse_polynomial_at(text, 0, std::nullopt);
}

inline InvertiblePolynomial polynomial_from_matrix(const IntMatrix& E, std::vector<std::string> vars = {}) {
    InvertiblePolynomial p;
    p.E = E;
    p.var_names = vars.empty() ? detail::default_var_names(static_cast<std::size_t>(E.cols())) : std::move(vars);
    p.coefficients.assign(static_cast<std::size_t>(E.rows()), Rational(1));
    detail::finish_polynomial(p);
    return p;
}

/// Parses the line-oriented spec format:
///   vars: x y z
///   f: x^2*y + y^2*z + z^3        (or  E: [[2,1,0],[0,2,1],[0,0,3]])
///   subgroup: (1/2,0,1/2) (0,1/3,2/3)
/// Blank lines and lines starting with '#' are ignored.
inline PolynomialSpec parse_spec(std::string_view text) {
    std::optional<std::vector<std::string>> vars;
    std::optional<std::pair<std::string_view, std::size_t>> f_line, e_line, sub_line;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        std::size_t lead = 0;
        while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
        if (lead < line.size() && line[lead] != '#') {
            const std::size_t colon = line.find(':');
            if (colon == std::string_view::npos)
                throw Error(ErrorKind::ParseError, "expected 'key: value' at position " + std::to_string(pos + lead), pos + lead);
            std::string key(line.substr(lead, colon - lead));
            while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
            auto value = std::make_pair(line.substr(colon + 1), pos + colon + 1);
            if (key == "vars") {
                std::istringstream in{std::string(value.first)};
                std::vector<std::string> v;
                for (std::string w; in >> w;) v.push_back(w);
                vars = std::move(v);
            } else if (key == "f") f_line = value;
            else if (key == "E") e_line = value;
            else if (key == "subgroup") sub_line = value;
            else throw Error(ErrorKind::ParseError, "unknown key '" + key + "' at position " + std::to_string(pos + lead), pos + lead);
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    PolynomialSpec spec;
    if (f_line) {
        spec.poly = detail::parse_polynomial_at(f_line->first, f_line->second, vars);
        if (vars && vars->size() != spec.poly.var_names.size())
            throw Error(ErrorKind::NotSquare, "vars line and polynomial disagree");
    } else if (e_line) {
        spec.poly = polynomial_from_matrix(detail::parse_matrix_at(e_line->first, e_line->second),
                                           vars.value_or(std::vector<std::string>{}));
    } else {
        throw Error(ErrorKind::ParseError, "missing 'f:' or 'E:' line", 0);
    }
    if (sub_line) {
        spec.subgroup = parse_element_list(sub_line->first, sub_line->second);
        for (const auto& g : *spec.subgroup)
            if (g.dim() != spec.poly.n())
                throw Error(ErrorKind::ParseError, "subgroup generator " + g.to_string() + " has the wrong dimension",
                            sub_line->second);
    }
    return spec;
}

inline InvertiblePolynomial transpose(const InvertiblePolynomial& p) {
    InvertiblePolynomial t = p;
    t.E = p.E.transpose();
    t.notes.clear();
    detail::finish_polynomial(t);
    return t;
}

struct SymmetryData {
    InvertiblePolynomial poly;
    AmbientGroup Gf;
    std::vector<Rational> q;
    GroupElement hf;
    Character alphaf;

    std::int64_t det() const { return determinant(poly.E); }
    std::size_t n() const { return poly.n(); }
};

inline SymmetryData symmetry_data(const InvertiblePolynomial& p, std::size_t max_order = kDefaultMaxOrder) {
    const std::int64_t det = determinant(p.E);
    if (det == 0) throw Error(ErrorKind::Degenerate, "exponent matrix has determinant 0");
    const std::size_t n = p.n();
    const IntMatrix adj = adjugate(p.E);
    // Columns of E^-1 = adj / det generate G_f modulo Z^n.
    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < n; ++j) {
        GroupElement g = GroupElement::zero(n);
        for (std::size_t i = 0; i < n; ++i)
            g.coords[i] = QZ::from_ratio(adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), det);
        gens.push_back(std::move(g));
    }
    AmbientGroup G = enumerate_closure(n, gens, max_order);
    const auto absdet = static_cast<std::size_t>(det < 0 ? -det : det);
    if (G.order() != absdet)
        throw Error(ErrorKind::InternalInconsistency, "|G_f| = " + std::to_string(G.order()) + " but |det E| = " +
                                                          std::to_string(absdet));
    std::vector<Rational> q;
    GroupElement hf = GroupElement::zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.emplace_back(adj.row(static_cast<Eigen::Index>(i)).sum(), det);
        hf.coords[i] = QZ::from_ratio(q.back().numerator(), q.back().denominator());
    }
    if (!G.contains(hf)) throw Error(ErrorKind::InternalInconsistency, "h_f is not in G_f");
    Character alphaf = Character::from_function(G.full(), [](const GroupElement& g) { return g.coordinate_sum(); });
    return SymmetryData{p, std::move(G), std::move(q), std::move(hf), std::move(alphaf)};
}

/// mu = prod (1/q_i - 1), the Milnor number of a quasihomogeneous
/// singularity; the Milnor fibre has Euler characteristic 1 + (-1)^{n-1} mu.
inline std::int64_t milnor_number(const SymmetryData& s) {
    Rational mu(1);
    for (const auto& q : s.q) mu *= (Rational(1) / q - 1);
    if (mu.denominator() != 1) throw Error(ErrorKind::NotIntegral, "Milnor number is not an integer");
    return mu.numerator();
}

struct DualPair {
    SymmetryData f;
    SymmetryData ft;
    PairedGroups P; // G_f x G_ft, pair(s, r) = r E s^T
};

/// Statements alpha_ft = pair(h_f, .) on G_ft and alpha_f = pair(., h_ft)
/// on G_f; returns a description of every violation.
inline std::vector<std::string> prop_dual_violations(const DualPair& d) {
    std::vector<std::string> out;
    for (const auto& lambda : d.ft.Gf.elements())
        if (d.P.pair(d.f.hf, lambda) != lambda.coordinate_sum())
            out.push_back("pair(h_f, " + lambda.to_string() + ") = " + d.P.pair(d.f.hf, lambda).to_string() +
                          " but alpha_ft = " + lambda.coordinate_sum().to_string());
    for (const auto& mu : d.f.Gf.elements())
        if (d.P.pair(mu, d.ft.hf) != mu.coordinate_sum())
            out.push_back("pair(" + mu.to_string() + ", h_ft) = " + d.P.pair(mu, d.ft.hf).to_string() +
                          " but alpha_f = " + mu.coordinate_sum().to_string());
    return out;
}

inline DualPair make_dual_pair(const InvertiblePolynomial& p, std::size_t max_order = kDefaultMaxOrder) {
    SymmetryData f = symmetry_data(p, max_order);
    SymmetryData ft = symmetry_data(transpose(p), max_order);
    PairedGroups P(f.Gf, ft.Gf, p.E.transpose());
    return DualPair{std::move(f), std::move(ft), std::move(P)};
}

/// Builds both symmetry data and the pairing, and asserts that the grading
/// element and the determinant character trade places under it.
inline DualPair build_dual_pair(const InvertiblePolynomial& p, std::size_t max_order = kDefaultMaxOrder) {
    DualPair d = make_dual_pair(p, max_order);
    if (auto v = prop_dual_violations(d); !v.empty()) throw Error(ErrorKind::InternalInconsistency, v.front());
    return d;
}

namespace detail {

inline int popcount(std::uint32_t m) { return __builtin_popcount(m); }

/// Rows of E whose monomial only involves variables in `mask`.
inline std::vector<Eigen::Index> rows_supported_in(const IntMatrix& E, std::uint32_t mask) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < E.rows(); ++i) {
        bool inside = true;
        for (Eigen::Index j = 0; j < E.cols(); ++j)
            if (E(i, j) != 0 && !(mask >> j & 1u)) { inside = false; break; }
        if (inside) rows.push_back(i);
    }
    return rows;
}

/// |det E_I| if the torus (C*)^I meets V_f in a nonempty stratum with
/// |supp f cap Z^I| = |I|; std::nullopt otherwise (those strata have Euler
/// characteristic 0).
inline std::optional<std::int64_t> stratum_degree(const IntMatrix& E, std::uint32_t mask) {
    const auto rows = rows_supported_in(E, mask);
    if (static_cast<int>(rows.size()) != popcount(mask)) return std::nullopt;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < E.cols(); ++j)
        if (mask >> j & 1u) cols.push_back(j);
    IntMatrix sub(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
            sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = E(rows[a], cols[b]);
    const std::int64_t d = determinant(sub);
    return d < 0 ? -d : d;
}

inline Subgroup torus_isotropy(const SymmetryData& s, std::uint32_t mask) {
    std::vector<GroupElement> k;
    for (const auto& g : s.Gf.elements()) {
        bool fixes = true;
        for (std::size_t j = 0; j < s.n(); ++j)
            if ((mask >> j & 1u) && !g[j].is_zero()) { fixes = false; break; }
        if (fixes) k.push_back(g);
    }
    return Subgroup::from_elements(s.Gf, std::move(k));
}

} // namespace detail

/// Enhanced equivariant Euler characteristic of (V_f, h_f), as the sum over
/// coordinate tori (C*)^I of m_I [X_{K_I, 1, h_f, alpha_f|K_I}] where K_I is
/// the isotropy of the torus and
///   m_I = (-1)^{|I|-1} |det E_I| |K_I| / |G_f|.
/// The empty I contributes nothing (f(0) = 0 != 1).
inline BurnsideElement enhanced_euler(const SymmetryData& s) {
    BurnsideElement out(s.Gf);
    const std::uint32_t full = (1u << s.n()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto deg = detail::stratum_degree(s.poly.E, mask);
        if (!deg) continue;
        Subgroup K = detail::torus_isotropy(s, mask);
        const auto num = *deg * static_cast<std::int64_t>(K.order());
        const auto den = static_cast<std::int64_t>(s.Gf.order());
        if (num % den != 0)
            throw Error(ErrorKind::InternalInconsistency, "non-integral stratum multiplicity " + std::to_string(num) +
                                                              "/" + std::to_string(den));
        const std::int64_t sign = detail::popcount(mask) % 2 == 1 ? 1 : -1;
        Character a = s.alphaf.restrict_to(K);
        out.add(Irreducible::make(K, 1, s.hf, std::move(a)), sign * (num / den));
    }
    return out;
}

/// The one-point set with the identity map and character alpha_f.
inline BurnsideElement point_with_alphaf(const SymmetryData& s) {
    return BurnsideElement::of(Irreducible::make(s.Gf.full(), 1, s.Gf.identity(), s.alphaf));
}

inline BurnsideElement reduced_enhanced_euler(const SymmetryData& s) {
    return enhanced_euler(s) - point_with_alphaf(s);
}

/// Euler characteristic of the fixed locus of g * h_f^m on V_f, which is the
/// Lefschetz number of that finite-order map.
inline std::int64_t geometric_lefschetz(const SymmetryData& s, const GroupElement& g, std::int64_t m) {
    if (!s.Gf.contains(g)) throw Error(ErrorKind::DomainMismatch, g.to_string() + " is not in G_f");
    if (m < 1) throw Error(ErrorKind::DomainMismatch, "m must be positive");
    const GroupElement lam = g + s.hf * m;
    std::uint32_t J = 0;
    for (std::size_t j = 0; j < s.n(); ++j)
        if (lam[j].is_zero()) J |= 1u << j;
    std::int64_t chi = 0;
    for (std::uint32_t I = J; I != 0; I = (I - 1) & J) {
        if (auto deg = detail::stratum_degree(s.poly.E, I))
            chi += (detail::popcount(I) % 2 == 1 ? 1 : -1) * *deg;
    }
    return chi;
}

/// prod_{g in G} (1 - t) twisted by alpha_f(g), in integer form.
inline IntegerZeta alphaf_point_zeta(const SymmetryData& s, const Subgroup& G) {
    TwistedZeta z;
    for (const auto& g : G.elements()) z *= twist(TwistedZeta::factor(QZ{}), s.alphaf(g));
    return to_integer_form(z);
}

/// Orbifold zeta of (V_f, h_f) for the action of G, divided by the
/// alpha_f-twisted point contribution.
inline IntegerZeta reduced_orbifold_zeta(const SymmetryData& s, const Subgroup& G) {
    const Subgroup Gin = G.rebase(s.Gf);
    return orbifold_zeta(reduce(enhanced_euler(s), Gin)) / alphaf_point_zeta(s, Gin);
}

} // namespace saito
