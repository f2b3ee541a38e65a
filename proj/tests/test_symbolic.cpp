#include "wangtori/registry.hpp"
#include "wangtori/symbolic.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();

Golden q(long n, long d) { return Golden(Rational(n, d)); }

const GPoint kQ{q(1, 2), phi * q(3, 2) - Golden(1)};
const GPoint kV{-1, 1};

}  // namespace

TEST_CASE("encoding reads atoms along the orbit") {
    const auto p16 = builtin_partition("p16");
    const auto t16 = builtin_protoset("ammann16");
    const GPoint p{q(1, 10), q(1, 10)};
    const auto patch = sr_encode(p16, p, kV, Window::parse("-25:24,-25:24"));
    CHECK(patch.at({0, 0}) == p16.locate_point(p).label());
    CHECK(check_validity(patch, t16).empty());
    for (long x = -3; x <= 3; ++x)
        CHECK(patch.at({x, 2}) == p16.locate(p16.torus().rotate(p16.torus().reduce(p), {x, 2})).label());
    CHECK_THROWS_AS(sr_encode(p16, p, {1, 0}, Window::parse("0:1,0:1")), DirectionParallelToBoundary);
    CHECK_THROWS_AS(sr_encode(p16, p, {0, 0}, Window::parse("0:1,0:1")), DirectionParallelToBoundary);
}

TEST_CASE("boundary resolution at q") {
    const auto p16 = builtin_partition("p16");
    const auto t16 = builtin_protoset("ammann16");
    const Window w = Window::parse("-40:40,-40:40");
    const auto hits = boundary_hits(p16, kQ, w);
    CHECK_FALSE(hits.positions.empty());
    CHECK(hits.contains({0, 0}));
    const auto pair = resolution_pair(p16, kQ, kV, w);
    CHECK(pair.plus.at({0, 0}) == 13);
    CHECK(pair.minus.at({0, 0}) == 12);
    auto diff = pair.differences;
    std::sort(diff.begin(), diff.end());
    CHECK(diff == hits.positions);
    CHECK(check_validity(pair.plus, t16).empty());
    CHECK(check_validity(pair.minus, t16).empty());
    CHECK(hits_to_csv(hits).rfind("n_x,n_y,labels\n", 0) == 0);

    const auto origin = boundary_hits(p16, {0, 0}, Window::parse("-2:2,-2:2"));
    CHECK(origin.contains({0, 0}));
    CHECK(origin.labels.at({0, 0}).size() >= 4);
}

TEST_CASE("orbits away from the boundary") {
    const auto p16 = builtin_partition("p16");
    const GPoint p{q(1, 10), q(1, 10)};
    const Window w = Window::parse("-5:5,-5:5");
    REQUIRE(boundary_hits(p16, p, w).positions.empty());
    const auto pair = resolution_pair(p16, p, kV, w);
    CHECK(pair.differences.empty());
    CHECK(pair.plus == pair.minus);
}

TEST_CASE("D_n regions") {
    const auto p16 = builtin_partition("p16");
    CHECK(region_equal(dn_region(p16, {{{0, 0}, 7}}), p16.atom(7).cells));

    const GPoint p{q(3, 10), q(7, 10)};
    const auto patch = sr_encode(p16, p, kV, Window::parse("-4:4,-4:4"));
    Golden last = phi * phi;
    for (long n = 0; n <= 4; ++n) {
        const auto region = dn_region(p16, pattern_around_origin(patch, n));
        CHECK(region_contains(p16, region, p));
        const Golden a = area(region);
        CHECK(a <= last);
        last = a;
    }
    CHECK_THROWS_AS(pattern_around_origin(patch, 5), std::out_of_range);

    // A vertically incompatible pair has an empty region.
    const auto t16 = builtin_protoset("ammann16");
    int a = 0, b = 0;
    while (t16[a].t == t16[b].b) ++b;
    CHECK(dn_region(p16, {{{0, 0}, a}, {{0, 1}, b}}).empty());
}

TEST_CASE("nonexpansive directions") {
    HitSet diag;
    for (long k = -10; k <= 10; ++k) {
        diag.positions.push_back({k, k});
        diag.labels[{k, k}] = {0, 1};
    }
    const auto dirs = nonexpansive_directions(diag);
    REQUIRE(dirs.size() == 1);
    CHECK(dirs[0].direction == Vec2i{1, 1});
    CHECK(nonexpansive_directions(HitSet{}).empty());

    const auto p16 = builtin_partition("p16");
    const auto hits = boundary_hits(p16, {0, 0}, Window::parse("-40:40,-40:40"));
    CHECK_FALSE(nonexpansive_directions(hits).empty());
}

TEST_CASE("random orbits give valid patches") {
    const Window w = Window::parse("0:29,0:29");
    CHECK(empirical_subset_check(builtin_partition("p16"), builtin_protoset("ammann16"), 100, w).ok());
    CHECK(empirical_subset_check(builtin_partition("p24"), builtin_protoset("penrose24"), 100, w).ok());

    // Corruption control: two atoms trade labels.
    const auto p16 = builtin_partition("p16");
    std::map<int, int> swap;
    for (int i = 0; i < 16; ++i) swap[i] = i;
    std::swap(swap[0], swap[1]);
    const auto rep = empirical_subset_check(p16.relabeled(swap), builtin_protoset("ammann16"), 10, w);
    CHECK_FALSE(rep.ok());
    CHECK_THROWS_AS(empirical_subset_check(p16, builtin_protoset("jr0"), 1, w), LabelMismatch);
}

TEST_CASE("random rational points stay inside the domain box") {
    const auto p16 = builtin_partition("p16");
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_rational_point(p16, rng);
        CHECK(p.x.is_rational());
        CHECK(p.x >= Golden(0));
        CHECK(p.y <= phi);
    }
}
