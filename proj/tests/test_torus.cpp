#include "wangtori/registry.hpp"
#include "wangtori/torus.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();
const Lattice2 g24 = Lattice2::parse("phi,0;0,phi");

}  // namespace

TEST_CASE("reduction modulo the square golden lattice") {
    const Torus t(g24);
    CHECK(t.embed(t.reduce({0, 0})) == GPoint{0, 0});
    CHECK(t.embed(t.reduce({2, 0})) == GPoint{Golden(2) - phi, 0});
    CHECK(t.embed(t.reduce({5, 7})) == GPoint{Golden(5) - Golden(3) * phi, Golden(7) - Golden(4) * phi});
    CHECK(t.embed(t.rotate(t.reduce({0, 0}), {1, 0})) == GPoint{1, 0});
    CHECK(t.embed(t.rotate(t.reduce({1, 0}), {1, 0})) == GPoint{Golden(2) - phi, 0});
    const auto tp = t.reduce({Golden(Rational(1, 3)), phi * Golden(Rational(1, 2))});
    CHECK(t.rotate(tp, {0, 0}) == tp);
}

TEST_CASE("orbit windows") {
    const Torus t(g24);
    const auto one = t.orbit_window({0, 0}, Window::parse("0:0,0:0"));
    REQUIRE(one.size() == 1);
    CHECK(one.at({0, 0}) == t.reduce({0, 0}));
    const auto row = t.orbit_window({0, 0}, Window::parse("0:2,0:0"));
    CHECK(t.embed(row.at({2, 0})) == GPoint{Golden(2) - phi, 0});

    // Orbits of irrational lattices are free.
    const auto big = t.orbit_window({0, 0}, Window::parse("-15:15,-15:15"));
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [n, tp] : big) seen.insert({tp.c1.to_string(), tp.c2.to_string()});
    CHECK(seen.size() == big.size());
}

TEST_CASE("rotation is a group action") {
    const Torus t(builtin_lattice("gamma0"));
    const auto p = t.reduce({Golden(Rational(1, 10)), Golden(Rational(3, 7))});
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            const Vec2i m{a, 2 * b - 1}, n{b + 1, a};
            CHECK(t.rotate(t.rotate(p, m), n) == t.rotate(p, m + n));
        }
}

TEST_CASE("lattice literals and equivalence") {
    const auto g2 = builtin_lattice("gamma2");
    CHECK(g2 == Lattice2::parse("phi,0;2-phi,phi+3"));
    CHECK(lattice_equivalent(g2, Lattice2::parse("phi,0;2,phi+3")));
    CHECK(lattice_equivalent(g2, g2));
    CHECK_FALSE(lattice_equivalent(builtin_lattice("gamma0"), g24));
    CHECK(Lattice2::parse(g2.to_string()) == g2);
    CHECK_THROWS_AS(Lattice2::parse("phi,0"), SyntaxError);
    const auto w = Window::parse("-25:25,-3:4");
    CHECK(w.x0 == -25);
    CHECK(w.y1 == 4);
    CHECK(w.width() == 51);
}

TEST_CASE("circle rotation coding") {
    const Rotation1D rot(phi + Golden(1), phi);
    CHECK(rotation1d_encode(0, rot, 0, 20) == "001001010010010100101");
    CHECK(rotation1d_encode(phi, rot, 0, 0) == "1");
    CHECK(rotation1d_encode(0, rot, 2, 2) == "1");
}

TEST_CASE("near-return records land on Fibonacci numbers") {
    const Golden m = phi + Golden(1);
    const auto prof = near_return_profile(0, m, 100);
    CHECK(prof[0].distance == 0);
    CHECK(prof[8].distance == Golden(5) - Golden(3) * phi);
    CHECK(prof[8].approx == doctest::Approx(0.1459).epsilon(1e-3));

    // Double precision oracle.
    const double md = (1 + std::sqrt(5.0)) / 2 + 1;
    double best = 1e9;
    std::vector<long> expected;
    for (long n = 1; n <= 100; ++n) {
        double r = std::fmod(static_cast<double>(n), md);
        r = std::min(r, md - r);
        if (r < best - 1e-12) {
            best = r;
            expected.push_back(n);
        }
    }
    std::vector<long> records;
    for (const auto& nr : prof)
        if (nr.record) records.push_back(nr.n);
    CHECK(records == expected);
    const std::set<long> fib{1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (long n : records) CHECK(fib.count(n) == 1);
}

TEST_CASE("orbit density") {
    CHECK(orbit_density_check({0, 0}, g24, 0.1, 60).fraction == 1.0);
    CHECK(orbit_density_check({0, 0}, g24, 0.1, 0).covered == 1);
    double last = 0;
    for (long n = 0; n <= 12; n += 3) {
        const double f = orbit_density_check({0, 0}, g24, 0.05, n).fraction;
        CHECK(f >= last);
        last = f;
    }
}
