#pragma once

// Residues in Q/Z and vectors of them. A root of unity e[r] = exp(2 pi i r)
// is always stored through its exponent r.

#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "saito/error.hpp"

namespace saito {

class QZ {
public:
    constexpr QZ() = default;

    /// The class of p/q modulo 1.
    static QZ from_ratio(std::int64_t p, std::int64_t q) {
        if (q == 0) throw Error(ErrorKind::DomainMismatch, "zero denominator");
        if (q < 0) { p = -p; q = -q; }
        p %= q;
        if (p < 0) p += q;
        const std::int64_t g = std::gcd(p, q);
        QZ r;
        r.num_ = p / g;
        r.den_ = q / g;
        return r;
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }

    /// Additive order in Q/Z.
    std::int64_t order() const noexcept { return den_; }

    QZ operator+(const QZ& o) const {
        const std::int64_t g = std::gcd(den_, o.den_);
        const std::int64_t l = den_ / g * o.den_;
        return from_ratio(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    }
    QZ operator-() const { return from_ratio(-num_, den_); }
    QZ operator-(const QZ& o) const { return *this + (-o); }
    QZ operator*(std::int64_t k) const { return from_ratio((num_ * (k % den_)) % den_, den_); }
    QZ& operator+=(const QZ& o) { return *this = *this + o; }
    QZ& operator-=(const QZ& o) { return *this = *this - o; }

    bool operator==(const QZ&) const = default;
    /// Lexicographic on (den, num); fixes every canonical choice downstream.
    std::strong_ordering operator<=>(const QZ& o) const {
        if (auto c = den_ <=> o.den_; c != 0) return c;
        return num_ <=> o.num_;
    }

    std::string to_string() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const QZ& q) { return os << q.to_string(); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

struct GroupElement {
    std::vector<QZ> coords;

    static GroupElement zero(std::size_t n) { return GroupElement{std::vector<QZ>(n)}; }

    std::size_t dim() const noexcept { return coords.size(); }
    const QZ& operator[](std::size_t i) const { return coords[i]; }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    std::int64_t order() const {
        std::int64_t o = 1;
        for (const auto& c : coords) o = lcm64(o, c.den());
        return o;
    }

    /// Sum of coordinates: the determinant character of a diagonal element.
    QZ coordinate_sum() const {
        QZ s;
        for (const auto& c : coords) s += c;
        return s;
    }

    GroupElement operator+(const GroupElement& o) const {
        check_dim(o);
        GroupElement r{coords};
        for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    GroupElement operator-() const {
        GroupElement r{coords};
        for (auto& c : r.coords) c = -c;
        return r;
    }
    GroupElement operator-(const GroupElement& o) const { return *this + (-o); }
    GroupElement operator*(std::int64_t k) const {
        GroupElement r{coords};
        for (auto& c : r.coords) c = c * k;
        return r;
    }

    bool operator==(const GroupElement&) const = default;
    std::strong_ordering operator<=>(const GroupElement& o) const {
        const std::size_t n = std::min(coords.size(), o.coords.size());
        for (std::size_t i = 0; i < n; ++i)
            if (auto c = coords[i] <=> o.coords[i]; c != 0) return c;
        return coords.size() <=> o.coords.size();
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += coords[i].to_string();
        }
        return s + ")";
    }

private:
    void check_dim(const GroupElement& o) const {
        if (o.coords.size() != coords.size())
            throw Error(ErrorKind::DomainMismatch, "group elements of different dimension");
    }
};

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << g.to_string(); }

namespace detail {

/// Byte cursor shared by the small text grammars of the library.
class Cursor {
public:
    explicit Cursor(std::string_view text, std::size_t offset = 0) : text_(text), offset_(offset) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::size_t position() const noexcept { return offset_ + pos_; }

    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            pos_ = start;
            fail("expected integer");
        }
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            if (v > (INT64_MAX - 9) / 10) fail("integer overflow");
            v = v * 10 + (text_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    /// "p/q" or "p", optional sign.
    std::pair<std::int64_t, std::int64_t> rational() {
        std::int64_t p = integer();
        std::int64_t q = 1;
        if (accept('/')) {
            std::size_t at = position();
            q = integer();
            if (q <= 0) throw Error(ErrorKind::ParseError, "denominator must be positive", at);
        }
        return {p, q};
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(position()), position());
    }

private:
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

inline QZ parse_qz(Cursor& c) {
    auto [p, q] = c.rational();
    return QZ::from_ratio(p, q);
}

inline GroupElement parse_element(Cursor& c) {
    c.expect('(');
    GroupElement g;
    if (!c.accept(')')) {
        do {
            g.coords.push_back(parse_qz(c));
        } while (c.accept(','));
        c.expect(')');
    }
    return g;
}

} // namespace detail

/// Parses "p/q" (optional sign) as a residue modulo 1.
inline QZ parse_qz(std::string_view text) {
    detail::Cursor c(text);
    QZ q = detail::parse_qz(c);
    if (!c.at_end()) c.fail("trailing characters");
    return q;
}

/// Parses "(1/3, 2/3, 0)".
inline GroupElement parse_element(std::string_view text) {
    detail::Cursor c(text);
    GroupElement g = detail::parse_element(c);
    if (!c.at_end()) c.fail("trailing characters");
    return g;
}

/// Parses a whitespace-separated list of parenthesized tuples.
inline std::vector<GroupElement> parse_element_list(std::string_view text, std::size_t offset = 0) {
    detail::Cursor c(text, offset);
    std::vector<GroupElement> out;
    while (!c.at_end()) {
        out.push_back(detail::parse_element(c));
        c.accept(',');
    }
    return out;
}

} // namespace saito
