#include "wangtori/geometry.hpp"

#include <doctest.h>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();

Golden q(long n, long d) { return Golden(Rational(n, d)); }

ConvexCell cell(std::vector<GPoint> v) {
    auto c = ConvexCell::make(std::move(v));
    REQUIRE(c);
    return *c;
}

ConvexCell rect(Golden x0, Golden y0, Golden x1, Golden y1) {
    return cell({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace

TEST_CASE("cells are normalized") {
    const auto c = cell({{0, 0}, {0, 1}, {1, 1}, {1, q(1, 2)}, {1, 0}});
    CHECK(c.size() == 4);  // the collinear midpoint is dropped
    CHECK(c.area() == Golden(1));
    CHECK_FALSE(ConvexCell::make({{0, 0}, {1, 1}, {2, 2}}));
}

TEST_CASE("intersection areas match a shapely oracle") {
    const auto a = cell({{0, 0}, {phi, 0}, {0, 1}});
    const auto b = rect(q(1, 2), -1, 2, q(1, 2));
    const auto ab = intersect(a, b);
    REQUIRE(ab);
    CHECK(ab->area().to_double() == doctest::Approx(0.3567627457812106).epsilon(1e-12));

    const auto c = cell({{0, 0}, {phi, phi - Golden(1)}, {1, phi}, {q(-1, 2), 1}});
    const auto d = cell({{q(1, 4), q(1, 10)}, {q(3, 2), q(1, 5)}, {q(6, 5), q(19, 10)}});
    CHECK(c.area().to_double() == doctest::Approx(1.9045084971874737).epsilon(1e-12));
    const auto cd = intersect(c, d);
    REQUIRE(cd);
    CHECK(cd->area().to_double() == doctest::Approx(0.7612016815546441).epsilon(1e-12));

    CHECK_FALSE(intersect(rect(0, 0, 1, 1), rect(1, 0, 2, 1)));  // touching only
}

TEST_CASE("point location and segments") {
    const auto r = rect(0, 0, phi, 1);
    CHECK(r.locate({1, q(1, 2)}) == 1);
    CHECK(r.locate({phi, q(1, 2)}) == 0);
    CHECK(r.locate({2, q(1, 2)}) == -1);
    const Segment s{{0, phi - Golden(1)}, {phi - Golden(1), phi}};
    CHECK(on_segment({q(1, 2), phi * q(3, 2) - Golden(1)}, s));
    CHECK_FALSE(on_segment({q(1, 2), phi * q(3, 2)}, s));
    CHECK_FALSE(on_segment({Golden(2) * phi, phi * phi * Golden(2) + phi - Golden(1)}, s));  // on the line, past b
}

TEST_CASE("clipping by half-planes") {
    const auto sq = rect(0, 0, 1, 1);
    const auto left = sq.clip({q(1, 2), 0}, {0, 1});
    REQUIRE(left);
    CHECK(left->area() == q(1, 2));
    CHECK_FALSE(sq.clip({-1, 0}, {0, 1}));
    CHECK(sq.clip({2, 0}, {0, 1})->area() == Golden(1));
}

TEST_CASE("regions") {
    const Region halves{rect(0, 0, q(1, 2), 1), rect(q(1, 2), 0, 1, 1)};
    const Region whole{rect(0, 0, 1, 1)};
    CHECK(region_equal(halves, whole));
    CHECK(area(halves) == Golden(1));
    CHECK(overlap_area(halves, Region{rect(q(1, 4), 0, q(3, 4), 1)}) == q(1, 2));
    CHECK_FALSE(region_equal(halves, Region{rect(0, 0, 1, q(1, 2))}));
    const Region merged = merge_convex(halves);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0] == whole[0]);
    const Region l = merge_convex({rect(0, 0, 1, 1), rect(1, 0, 2, 1), rect(0, 1, 1, 2)});
    CHECK(l.size() == 2);  // an L shape stays split
    CHECK(area(translated(whole, {phi, phi})) == Golden(1));
    CHECK(shared_edge_length(halves[0], halves[1]) == doctest::Approx(1.0));
}

TEST_CASE("convex hull") {
    const auto h = convex_hull({{0, 0}, {2, 0}, {1, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 2}});
    CHECK(h.size() == 4);
}
