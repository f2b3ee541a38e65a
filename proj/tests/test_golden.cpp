#include "wangtori/golden.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();

Golden g(long a, long b) { return {Rational(a), Rational(b)}; }

}  // namespace

TEST_CASE("arithmetic follows phi^2 = phi + 1") {
    CHECK(phi * phi == g(1, 1));
    CHECK((phi - Golden(1)) * phi == Golden(1));
    CHECK(Golden(1) / (Golden(4) * phi + Golden(1)) == Golden(Rational(-5, 11), Rational(4, 11)));
    CHECK((Golden(4) * phi + Golden(1)) * Golden(Rational(-5, 11), Rational(4, 11)) == Golden(1));
    CHECK(g(3, 2).conjugate() == g(5, -2));
    CHECK(g(3, 2).norm() == Rational(3 * 3 + 3 * 2 - 2 * 2));
    CHECK_THROWS_AS(Golden(0).inverse(), DivisionByZero);
}

TEST_CASE("sign and floor") {
    CHECK(Golden(0).sign() == 0);
    CHECK(g(3, -2).sign() == -1);
    CHECK(g(5, -3).sign() == 1);
    CHECK((Golden(2) * phi).floor() == 3);
    CHECK((-phi).floor() == -2);
    CHECK(Golden(7).floor() == 7);
    CHECK(Golden(Rational(-7, 2)).floor() == -4);
    CHECK((Golden(2) * phi).frac() == g(-3, 2));
}

TEST_CASE("sign agrees with a long double oracle on random elements") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-10000, 10000);
    const long double phid = (1.0L + std::sqrt(5.0L)) / 2.0L;
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
        const long a = coef(rng), b = coef(rng);
        const long double v = static_cast<long double>(a) + static_cast<long double>(b) * phid;
        if (std::fabs(v) < 1e-9L) continue;
        CHECK(g(a, b).sign() == (v > 0 ? 1 : -1));
        CHECK(static_cast<long double>(g(a, b).floor().get_si()) == std::floor(v));
        ++checked;
    }
    CHECK(checked > 4900);
}

TEST_CASE("near-cancelling Fibonacci combinations") {
    // F(n+1) - F(n) phi alternates in sign and shrinks geometrically.
    Integer f0 = 0, f1 = 1;
    for (int n = 1; n < 80; ++n) {
        const Golden x(Rational(f1), Rational(-f0));
        CHECK(x.sign() == (n % 2 == 1 ? 1 : -1));
        const Integer f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
}

TEST_CASE("ordering") {
    CHECK(g(1, 0) < phi);
    CHECK(phi < g(2, 0));
    CHECK(max(g(5, -3), g(3, -2)) == g(5, -3));
    CHECK(min(g(5, -3), g(3, -2)) == g(3, -2));
}

TEST_CASE("parse and print") {
    CHECK(Golden::parse("3/2*phi-1") == Golden(Rational(-1), Rational(3, 2)));
    CHECK(Golden::parse("2-phi") == g(2, -1));
    CHECK(Golden::parse("5") == Golden(5));
    CHECK(Golden::parse("phi+3") == g(3, 1));
    CHECK(Golden::parse("1/phi") == g(-1, 1));
    CHECK(Golden::parse("-1") == Golden(-1));
    CHECK(Golden::parse(" 1/10 ") == Golden(Rational(1, 10)));
    CHECK_THROWS_AS(Golden::parse("phi+"), SyntaxError);
    CHECK_THROWS_AS(Golden::parse("x"), SyntaxError);
    for (const auto& x : {g(0, 0), g(3, -2), Golden(Rational(-5, 11), Rational(4, 11)), phi})
        CHECK(Golden::parse(x.to_string()) == x);
}

TEST_CASE("matrices") {
    const auto m = GMatrix2::from_columns({phi, 0}, {1, phi + Golden(3)});
    const auto inv = m.inverse();
    CHECK(inv.m00 == phi - Golden(1));
    CHECK(inv.m01 == Golden(Rational(5, 11), Rational(-4, 11)));
    CHECK(inv.m10 == Golden(0));
    CHECK(inv.m11 == Golden(Rational(4, 11), Rational(-1, 11)));
    CHECK(m * inv == GMatrix2::identity());
    CHECK(GMatrix2::identity().inverse() == GMatrix2::identity());
    CHECK_THROWS_AS(GMatrix2::from_columns({phi, 0}, {Golden(2) * phi, 0}).inverse(), SingularMatrix);
}
