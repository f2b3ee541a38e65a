#pragma once

// Exact arithmetic in the golden field Q(phi), phi = (1 + sqrt 5) / 2.
//
// Every number is stored as a + b*phi with rational a, b. The pair is unique,
// so structural equality is numeric equality. Products are reduced with
// phi^2 = phi + 1. Sign decisions never touch floating point: they go through
// the field norm N(a + b*phi) = a^2 + ab - b^2.

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wangtori {

using Rational = mpq_class;
using Integer = mpz_class;

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular matrix") {}
};

struct SyntaxError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Golden {
public:
    Golden() = default;
    Golden(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    Golden(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
    Golden(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static Golden phi() { return {0, 1}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_integer() const { return is_rational() && a_.get_den() == 1; }

    /// Field norm (a + b phi)(a + b phi'), with phi' = 1 - phi.
    Rational norm() const { return Rational(a_ * a_ + a_ * b_ - b_ * b_); }
    /// Galois conjugate a + b phi'.
    Golden conjugate() const { return {Rational(a_ + b_), Rational(-b_)}; }

    int sign() const;
    Integer floor() const;
    Golden frac() const { return *this - Golden(Rational(floor())); }
    Golden abs() const { return sign() < 0 ? -*this : *this; }
    Golden inverse() const;

    double to_double() const;
    long double to_long_double() const;

    Golden operator-() const { return {Rational(-a_), Rational(-b_)}; }
    Golden& operator+=(const Golden& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    Golden& operator-=(const Golden& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    Golden& operator*=(const Golden& o);
    Golden& operator/=(const Golden& o) { return *this *= o.inverse(); }

    friend Golden operator+(Golden l, const Golden& r) { return l += r; }
    friend Golden operator-(Golden l, const Golden& r) { return l -= r; }
    friend Golden operator*(Golden l, const Golden& r) { return l *= r; }
    friend Golden operator/(Golden l, const Golden& r) { return l /= r; }

    friend bool operator==(const Golden& l, const Golden& r) {
        return l.a_ == r.a_ && l.b_ == r.b_;
    }
    friend std::strong_ordering operator<=>(const Golden& l, const Golden& r) {
        const int s = (l - r).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// Structural order on (a, b). Cheaper than the numeric order; use for map keys.
    static bool lex_less(const Golden& l, const Golden& r) {
        const int c = cmp(l.a_, r.a_);
        return c < 0 || (c == 0 && cmp(l.b_, r.b_) < 0);
    }

    std::string to_string() const;
    static Golden parse(std::string_view text);

private:
    Rational a_{0};
    Rational b_{0};
};

int compare(const Golden& l, const Golden& r);
inline Golden min(const Golden& l, const Golden& r) { return r < l ? r : l; }
inline Golden max(const Golden& l, const Golden& r) { return l < r ? r : l; }

struct GPoint {
    Golden x;
    Golden y;

    GPoint operator+(const GPoint& o) const { return {x + o.x, y + o.y}; }
    GPoint operator-(const GPoint& o) const { return {x - o.x, y - o.y}; }
    GPoint operator-() const { return {-x, -y}; }
    GPoint operator*(const Golden& s) const { return {x * s, y * s}; }
    friend bool operator==(const GPoint&, const GPoint&) = default;

    static bool lex_less(const GPoint& l, const GPoint& r) {
        if (Golden::lex_less(l.x, r.x)) return true;
        if (Golden::lex_less(r.x, l.x)) return false;
        return Golden::lex_less(l.y, r.y);
    }
    std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }
};

inline Golden cross(const GPoint& u, const GPoint& v) { return u.x * v.y - u.y * v.x; }
inline Golden dot(const GPoint& u, const GPoint& v) { return u.x * v.x + u.y * v.y; }

/// 2x2 matrix [m00 m01; m10 m11]; columns are usually lattice generators.
struct GMatrix2 {
    Golden m00{1}, m01{0}, m10{0}, m11{1};

    static GMatrix2 identity() { return {}; }
    static GMatrix2 from_columns(const GPoint& c0, const GPoint& c1) {
        return {c0.x, c1.x, c0.y, c1.y};
    }

    GPoint col0() const { return {m00, m10}; }
    GPoint col1() const { return {m01, m11}; }

    Golden det() const { return m00 * m11 - m01 * m10; }
    GMatrix2 inverse() const;

    GPoint operator*(const GPoint& p) const {
        return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y};
    }
    GMatrix2 operator*(const GMatrix2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    friend bool operator==(const GMatrix2&, const GMatrix2&) = default;
};

}  // namespace wangtori
