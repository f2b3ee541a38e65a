#include "wangtori/registry.hpp"
#include "wangtori/wang.hpp"

#include <doctest.h>

using namespace wangtori;

namespace {

// The Jeandel-Rao tiles as (r, t, l, b), copied independently of the registry.
const std::vector<std::array<int, 4>> kJr0 = {{2, 4, 2, 1}, {2, 2, 2, 0}, {1, 1, 3, 1}, {1, 2, 3, 2},
                                              {3, 1, 3, 3}, {0, 1, 3, 1}, {0, 0, 0, 1}, {3, 1, 0, 2},
                                              {0, 2, 1, 2}, {1, 2, 1, 4}, {3, 3, 1, 2}};

Patch row(std::vector<TileIndex> tiles) {
    Patch p({0, 0}, static_cast<int>(tiles.size()), 1);
    for (size_t i = 0; i < tiles.size(); ++i) p.set_local(static_cast<int>(i), 0, tiles[i]);
    return p;
}

}  // namespace

TEST_CASE("built-in listings load") {
    const auto jr0 = builtin_protoset("jr0");
    REQUIRE(jr0.size() == 11);
    for (size_t i = 0; i < kJr0.size(); ++i) {
        CHECK(jr0[static_cast<int>(i)].r == kJr0[i][0]);
        CHECK(jr0[static_cast<int>(i)].t == kJr0[i][1]);
        CHECK(jr0[static_cast<int>(i)].l == kJr0[i][2]);
        CHECK(jr0[static_cast<int>(i)].b == kJr0[i][3]);
    }
    CHECK(builtin_protoset("penrose24").size() == 24);
    CHECK(builtin_protoset("jr2").size() == 11);
    CHECK(builtin_protoset("ammann16").size() == 16);
}

TEST_CASE("malformed protosets are rejected") {
    CHECK_THROWS_AS(load_protoset({{0, 0, 0, 0}, {0, 0, 0, 0}}), DuplicateTile);
    CHECK_THROWS_AS(load_protoset({{0, 0, 0}}), MalformedRecord);
    CHECK_THROWS_AS(protoset_from_json(nlohmann::json::parse("[[1,2,3,\"x\"]]")), MalformedRecord);
}

TEST_CASE("forbidden pairs of jr0") {
    const auto fp = forbidden_pairs(builtin_protoset("jr0"));
    long h = 0, v = 0;
    for (const auto& a : kJr0)
        for (const auto& b : kJr0) {
            h += a[0] != b[2];
            v += a[1] != b[3];
        }
    CHECK(h == 90);
    CHECK(v == 86);
    CHECK(fp.horizontal.size() == 90);
    CHECK(fp.vertical.size() == 86);
    const std::pair<TileIndex, TileIndex> p01{0, 1};
    CHECK(std::find(fp.horizontal.begin(), fp.horizontal.end(), p01) == fp.horizontal.end());
}

TEST_CASE("validity") {
    const auto jr0 = builtin_protoset("jr0");
    CHECK(check_validity(row({3}), jr0).empty());
    CHECK(check_validity(row({0, 1}), jr0).empty());
    const auto vs = check_validity(row({0, 2}), jr0);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].axis == Axis::Horizontal);
    CHECK(vs[0].position == Vec2i{0, 0});
    CHECK(vs[0].colors == std::pair<ColorId, ColorId>{2, 3});

    Patch col({0, 0}, 1, 2);
    col.set_local(0, 0, 6);  // top 0
    col.set_local(0, 1, 1);  // bottom 0
    CHECK(check_validity(col, jr0).empty());
    col.set_local(0, 1, 0);  // bottom 1
    REQUIRE(check_validity(col, jr0).size() == 1);
    CHECK(check_validity(col, jr0)[0].axis == Axis::Vertical);
}

TEST_CASE("shifts") {
    Patch p({0, 0}, 2, 2);
    p.set_local(0, 0, 1);
    p.set_local(1, 0, 2);
    p.set_local(0, 1, 3);
    p.set_local(1, 1, 4);
    CHECK(shift_patch(p, {0, 0}) == p);
    const Patch s = shift_patch(p, {2, 3});
    CHECK(s.origin() == Vec2i{2, 3});
    CHECK(s.at({3, 4}) == 4);
    CHECK(shift_patch(shift_patch(p, {1, 0}), {-1, 0}) == p);
}

TEST_CASE("configuration distance") {
    Patch a({-2, -2}, 5, 5, 0);
    Patch b = a;
    auto d = config_distance(a, b);
    CHECK(d.value == 0);
    CHECK(d.agrees_on_window);
    b.set({0, 0}, 1);
    CHECK(config_distance(a, b).value == 1);
    b = a;
    b.set({2, 1}, 1);
    CHECK(config_distance(a, b).value == Rational(1, 4));
    CHECK_THROWS_AS(config_distance(a, Patch({5, 5}, 2, 2, 0)), NoCommonWindow);
}

TEST_CASE("colour renaming") {
    const auto a = load_protoset({{1, 2, 3, 4}, {3, 4, 1, 2}});
    const auto b = load_protoset({{7, 9, 5, 8}, {5, 8, 7, 9}});
    const auto r = color_renaming(a, b);
    REQUIRE(r);
    for (const auto& t : a.tiles()) {
        const WangTile m{r->horizontal.at(t.r), r->vertical.at(t.t), r->horizontal.at(t.l),
                         r->vertical.at(t.b)};
        CHECK(std::find(b.tiles().begin(), b.tiles().end(), m) != b.tiles().end());
    }
    CHECK_FALSE(color_renaming(a, load_protoset({{1, 1, 3, 4}, {3, 4, 1, 2}})));
    CHECK(color_renaming(builtin_protoset("jr0"), builtin_protoset("jr0")));
}

TEST_CASE("patch JSON round trip") {
    Patch p({-1, 2}, 3, 2, 5);
    p.set({0, 3}, 7);
    std::string name;
    CHECK(patch_from_json(patch_to_json(p, "jr0"), &name) == p);
    CHECK(name == "jr0");
    const auto jr0 = builtin_protoset("jr0");
    CHECK(protoset_from_json(protoset_to_json(jr0)).tiles() == jr0.tiles());
}
