#include "wangtori/golden.hpp"

#include <cctype>
#include <cmath>

namespace wangtori {

namespace {

constexpr long double kPhi = 1.618033988749894848204586834365638118L;

std::string rational_string(const Rational& q) { return q.get_str(); }

// Recursive-descent reader for golden literals. Accepts sums of terms built from
// integers, decimals, "phi", '*', '/', unary minus and parentheses, so both the
// canonical form "-1+3/2*phi" and looser spellings like "3/2*phi-1" or "1/phi" parse.
class Reader {
public:
    explicit Reader(std::string_view text) : s_(text) {}

    Golden run() {
        Golden v = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const char* what) const {
        throw SyntaxError("golden literal '" + std::string(s_) + "': " + what + " at offset " +
                          std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Golden sum() {
        Golden v = product();
        for (;;) {
            if (eat('+')) {
                v += product();
            } else if (eat('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }
    Golden product() {
        Golden v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                Golden d = unary();
                if (d.is_zero()) throw DivisionByZero();
                v /= d;
            } else {
                return v;
            }
        }
    }
    Golden unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return atom();
    }
    Golden atom() {
        skip();
        if (eat('(')) {
            Golden v = sum();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s_.substr(pos_, 3) == "phi") {
            pos_ += 3;
            return Golden::phi();
        }
        const size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number or phi");
        Integer whole(std::string(s_.substr(start, pos_ - start)));
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            const size_t fstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == fstart) fail("expected digits after '.'");
            const std::string digits(s_.substr(fstart, pos_ - fstart));
            Integer scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits.size());
            Rational q(whole * scale + Integer(digits), scale);
            q.canonicalize();
            return Golden(q);
        }
        return Golden(Rational(whole));
    }
};

}  // namespace

int compare(const Golden& l, const Golden& r) { return (l - r).sign(); }

Golden& Golden::operator*=(const Golden& o) {
    // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
    Rational bd = b_ * o.b_;
    Rational na = a_ * o.a_ + bd;
    Rational nb = a_ * o.b_ + b_ * o.a_ + bd;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

Golden Golden::inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Rational n = norm();
    return {Rational((a_ + b_) / n), Rational(-b_ / n)};
}

int Golden::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Mixed signs: a + b phi > 0 exactly when the norm has the sign of a.
    const int sn = sgn(norm());
    return sa > 0 ? sn : -sn;
}

Integer Golden::floor() const {
    Integer k;
    const long double approx = to_long_double();
    if (std::isfinite(approx) && std::fabs(approx) < 1e15L) {
        k = static_cast<long>(std::floor(approx));
    } else {
        mpf_class pa(a_, 256), pb(b_, 256), ph(5, 256);
        ph = (1 + sqrt(ph)) / 2;
        mpf_class v = pa + pb * ph;
        mpf_floor(v.get_mpf_t(), v.get_mpf_t());
        k = Integer(v);
    }
    while (Golden(Rational(k)) > *this) --k;
    while (Golden(Rational(k + 1)) <= *this) ++k;
    return k;
}

double Golden::to_double() const { return static_cast<double>(to_long_double()); }

long double Golden::to_long_double() const {
    return static_cast<long double>(a_.get_d()) + static_cast<long double>(b_.get_d()) * kPhi;
}

std::string Golden::to_string() const {
    if (sgn(b_) == 0) return rational_string(a_);
    std::string bterm;
    const Rational mag = ::abs(b_);
    bterm = mag == 1 ? "phi" : rational_string(mag) + "*phi";
    if (sgn(a_) == 0) return sgn(b_) < 0 ? "-" + bterm : bterm;
    return rational_string(a_) + (sgn(b_) < 0 ? "-" : "+") + bterm;
}

Golden Golden::parse(std::string_view text) { return Reader(text).run(); }

GMatrix2 GMatrix2::inverse() const {
    const Golden d = det();
    if (d.is_zero()) throw SingularMatrix();
    const Golden id = d.inverse();
    return {m11 * id, -m01 * id, -m10 * id, m00 * id};
}

}  // namespace wangtori
