#include "wangtori/discovery.hpp"
#include "wangtori/registry.hpp"
#include "wangtori/symbolic.hpp"
#include "wangtori/tilesolver.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();

Golden q(long n, long d) { return Golden(Rational(n, d)); }

Patch solved(const std::string& name, int w, int h, uint64_t seed = 0) {
    SolveRequest r;
    r.protoset = builtin_protoset(name);
    r.width = w;
    r.height = h;
    r.seed = seed;
    auto res = solve_patch(r);
    REQUIRE(res.patch);
    return *res.patch;
}

DotPattern random_dots(int n, int labels, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DotPattern d;
    for (int i = 0; i < n; ++i)
        d.dots.push_back({u(rng), u(rng), static_cast<int>(rng() % static_cast<uint64_t>(labels)), {}, {}});
    return d;
}

ConvexCell rect(Golden x0, Golden y0, Golden x1, Golden y1) {
    return *ConvexCell::make({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// Atoms equal as sets up to a relabelling.
bool same_atoms(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a.atoms()) {
        int hits = 0;
        for (const auto& y : b.atoms()) hits += region_equal(x.cells, y.cells);
        if (hits != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("pull-back positions") {
    const Patch p = solved("jr0", 4, 3);
    for (const auto& d : pullback_dots(p, GMatrix2::identity()).dots) {
        CHECK(d.x == 0.0);
        CHECK(d.y == 0.0);
    }
    const auto p16 = builtin_partition("p16");
    const GPoint start{q(2, 7), q(5, 9)};
    const auto patch = sr_encode(p16, start, {-1, 1}, Window::parse("-6:6,-6:6"));
    const auto dots = pullback_dots(patch, p16.lattice().basis());
    const auto base = p16.torus().reduce(start);
    for (const auto& d : dots.dots) {
        const auto tp = p16.torus().rotate(base, d.cell);
        CHECK((d.exact->x + base.c1).frac() == tp.c1);
        CHECK((d.exact->y + base.c2).frac() == tp.c2);
        CHECK(p16.locate(tp).label() == d.label);
    }
}

TEST_CASE("resolvedness") {
    DotPattern same = random_dots(50, 1, 1);
    CHECK(resolvedness_score(same) == 1.0);
    CHECK(resolvedness_score(random_dots(1000, 2, 2)) == doctest::Approx(0.5).epsilon(0.1));
    CHECK_THROWS_AS(resolvedness_score(random_dots(8, 2, 3)), TooFewDots);

    DotPattern d = random_dots(300, 4, 5);
    const double s = resolvedness_score(d);
    for (auto& dot : d.dots) dot.label = 3 - dot.label;
    CHECK(resolvedness_score(d) == s);
}

TEST_CASE("lattice search") {
    const Patch p = solved("penrose24", 30, 30);
    LatticeGrid empty;
    CHECK(lattice_search(p, empty).empty());
    // 3*3*3*3*4 candidates less the 27 with a zero second coordinate.
    const auto c = lattice_search(p, LatticeGrid::standard(), 8, 1);
    REQUIRE(c.size() == 297);
    for (size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].score >= c[i].score);
    for (size_t i : {size_t{0}, size_t{100}, size_t{296}})
        CHECK(c[i].score == resolvedness_score(pullback_dots(p, c[i].lattice.basis())));
    const auto g24 = std::find_if(c.begin(), c.end(), [](const LatticeCandidate& x) {
        return x.params == std::array<long, 5>{0, 0, 0, 1, 0};
    });
    REQUIRE(g24 != c.end());
    CHECK(lattice_equivalent(g24->lattice, builtin_lattice("gamma24")));

    const auto grid = LatticeGrid::parse("0;0,1;0,1;1;0,1");
    CHECK(grid.size() == 8);
    const auto a = lattice_search(p, grid, 8, 1);
    const auto b = lattice_search(shift_patch(p, {7, -3}), grid, 8, 2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].params == b[i].params);
        CHECK(a[i].score == b[i].score);
    }
    CHECK_THROWS(LatticeGrid::parse("0;0"));
}

TEST_CASE("Fibonacci signatures") {
    const auto flat = line_signature(std::vector<int>(20, 3), 4);
    CHECK(flat.distances.size() == 16);
    CHECK(flat.minimal() == 1);
    CHECK(flat.fibonacci.front());

    // Fibonacci word by substitution 0 -> 01, 1 -> 0.
    std::string w = "0";
    while (w.size() < 100) {
        std::string next;
        for (char c : w) next += c == '0' ? "01" : "0";
        w = next;
    }
    std::vector<int> seq;
    for (size_t i = 0; i < 100; ++i) seq.push_back(w[i] - '0');
    const auto sig = line_signature(seq, 4);
    const std::set<long> ds(sig.distances.begin(), sig.distances.end());
    for (long d : {3, 5, 8, 13, 21}) CHECK(ds.count(d) == 1);
    CHECK_THROWS_AS(line_signature(seq, 60), WindowTooSmall);

    const auto p16 = builtin_partition("p16");
    const auto patch = sr_encode(p16, {q(1, 10), q(1, 10)}, {-1, 1}, Window::parse("0:59,0:59"));
    const auto rep = fib_signature(patch, Axis::Horizontal, 8);
    CHECK(rep.lines_with_recurrence > 0);
    CHECK(rep.fraction > 0.5);
}

TEST_CASE("slope literals") {
    const auto s = parse_slopes("0,1,inf,phi,1/phi");
    REQUIRE(s.size() == 5);
    CHECK(*s[0] == Golden(0));
    CHECK_FALSE(s[2]);
    CHECK(*s[4] == phi - Golden(1));
}

TEST_CASE("inference on a two-band torus") {
    const Lattice2 g24 = builtin_lattice("gamma24");
    const Partition bands(g24, {{0, {rect(0, 0, 1, phi)}}, {1, {rect(1, 0, phi, phi)}}});
    const auto patch = sr_encode(bands, {0, 0}, {1, 1}, Window::parse("0:39,0:39"));
    // Dots of the column through the origin sit on a boundary line and follow
    // the encoding direction instead of cell membership.
    InferOptions opt;
    opt.anchoring = Anchoring::None;
    opt.max_misclassified = 0.05;
    const auto res = infer_partition(pullback_dots(patch, g24.basis()), parse_slopes("inf"), opt);
    CHECK(res.partition.size() == 2);
    CHECK(res.misclassified <= 40);
    CHECK(same_atoms(res.partition.translated(res.offset), bands));
}

TEST_CASE("inference recovers p16 from its own orbit") {
    const auto p16 = builtin_partition("p16");
    const auto patch = sr_encode(p16, {0, 0}, {q(-1, 3), 1}, Window::parse("0:39,0:39"));
    InferOptions opt;
    opt.anchoring = Anchoring::None;
    opt.max_misclassified = 0.05;
    const auto dots = pullback_dots(patch, p16.lattice().basis());
    const auto res = infer_partition(dots, parse_slopes("0,inf,phi,1/phi"), opt);
    CHECK(res.partition.size() == 16);
    CHECK(res.misclassified <= 79);  // the row and column through the origin
    CHECK(same_atoms(res.partition, p16));
    bool square = false;
    for (const auto& a : res.partition.atoms()) square |= area(a.cells) == Golden(2) - phi;
    CHECK(square);

    const auto anchored = infer_partition(dots, parse_slopes("0,inf,phi,1/phi"));
    CHECK(anchored.misclassified == 0);
    CHECK(anchored.partition.size() == 16);
    std::set<Golden> areas, expected;
    for (const auto& a : anchored.partition.atoms()) areas.insert(area(a.cells));
    for (const auto& a : p16.atoms()) expected.insert(area(a.cells));
    CHECK(areas == expected);
}

TEST_CASE("inference rejects noise") {
    DotPattern d = random_dots(900, 6, 9);
    d.matrix = builtin_lattice("gamma24").basis();
    CHECK_THROWS_AS(infer_partition(d, parse_slopes("0,inf")), Unresolvable);
}

TEST_CASE("frequencies") {
    const auto g24 = builtin_lattice("gamma24");
    const Partition one(g24, {{0, {rect(0, 0, phi, phi)}}});
    const auto rep1 = frequency_report(sr_encode(one, {q(1, 3), q(1, 3)}, {1, 1}, Window::parse("0:9,0:9")), one);
    CHECK(rep1.rows[0].fraction == 1.0);
    CHECK(rep1.rows[0].area_fraction == Golden(1));
    CHECK(rep1.max_deviation == 0.0);

    const auto p16 = builtin_partition("p16");
    const auto patch = sr_encode(p16, {q(1, 10), q(1, 10)}, {-1, 1}, Window::parse("0:99,0:99"));
    const auto rep = frequency_report(patch, p16);
    CHECK(rep.rows[0].area_fraction == Golden(5) - Golden(3) * phi);
    CHECK(std::abs(rep.rows[0].fraction - 0.1459) < 0.015);

    Patch noise = patch;
    std::mt19937_64 rng(2);
    for (int j = 0; j < noise.height(); ++j)
        for (int i = 0; i < noise.width(); ++i) noise.set_local(i, j, static_cast<int>(rng() % 2));
    CHECK(frequency_report(noise, p16).max_deviation > 0.2);
}

TEST_CASE("dot CSV and SVG output") {
    const auto p16 = builtin_partition("p16");
    const auto patch = sr_encode(p16, {q(1, 10), q(1, 10)}, {-1, 1}, Window::parse("0:9,0:9"));
    const auto dots = pullback_dots(patch, p16.lattice().basis());
    const auto csv = dots_to_csv(dots);
    CHECK(csv.rfind("x,y,label\n", 0) == 0);
    const auto back = dots_from_csv(csv, dots.matrix);
    REQUIRE(back.dots.size() == dots.dots.size());
    for (size_t i = 0; i < dots.dots.size(); ++i) {
        CHECK(back.dots[i].x == dots.dots[i].x);
        CHECK(back.dots[i].label == dots.dots[i].label);
    }
    CHECK(dots_svg(dots) == dots_svg(dots));
    CHECK(dots_svg(dots).find("<svg") != std::string::npos);
    CHECK(partition_svg(p16).find("<polygon") != std::string::npos);
    CHECK(patch_svg(patch).find("<rect") != std::string::npos);
}
