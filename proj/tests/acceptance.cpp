// One line per acceptance criterion; exit status 1 when any fails.

#include "wangtori/discovery.hpp"
#include "wangtori/registry.hpp"
#include "wangtori/symbolic.hpp"
#include "wangtori/tilesolver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace wangtori;

namespace {

const Golden phi = Golden::phi();

Golden q(long n, long d) { return Golden(Rational(n, d)); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > limit_s) {
        o.pass = false;
        o.detail += "; over the time limit";
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), s);
    std::fflush(stdout);
}

std::string fixed(double v, int digits = 4) {
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

Patch solve_with_bottom(const std::string& name, int w, int h, TileIndex bottom, uint64_t seed) {
    SolveRequest r;
    r.protoset = builtin_protoset(name);
    r.width = w;
    r.height = h;
    r.seed = seed;
    for (int x = 0; x < w; ++x) r.preassigned[{x, 0}] = bottom;
    auto res = solve_patch(r);
    if (!res.patch) throw std::runtime_error(name + " instance is not satisfiable");
    return *res.patch;
}

// Exhaustive row-major search with pruning; true when some valid filling exists.
bool enumerable(const Protoset& t, int w, int h, const std::map<std::pair<int, int>, TileIndex>& fixed) {
    std::vector<TileIndex> cells(static_cast<size_t>(w * h), -1);
    std::function<bool(int)> go = [&](int k) {
        if (k == w * h) return true;
        const int x = k % w, y = k / w;
        for (TileIndex c = 0; c < t.size(); ++c) {
            auto it = fixed.find({x, y});
            if (it != fixed.end() && it->second != c) continue;
            if (x > 0 && t[cells[static_cast<size_t>(k - 1)]].r != t[c].l) continue;
            if (y > 0 && t[cells[static_cast<size_t>(k - w)]].t != t[c].b) continue;
            cells[static_cast<size_t>(k)] = c;
            if (go(k + 1)) return true;
        }
        return false;
    };
    return go(0);
}

Outcome fibonacci_word() {
    const auto w = rotation1d_encode(0, Rotation1D(phi + Golden(1), phi), 0, 20);
    return {w == "001001010010010100101", w};
}

Outcome near_returns() {
    const auto prof = near_return_profile(0, phi + Golden(1), 100);
    const long double m = (1 + std::sqrt(5.0L)) / 2 + 1;
    long double best = 1e9L;
    std::vector<long> oracle, records;
    for (long n = 1; n <= 100; ++n) {
        long double r = std::fmod(static_cast<long double>(n), m);
        r = std::min(r, m - r);
        if (r < best) {
            best = r;
            oracle.push_back(n);
        }
    }
    for (const auto& nr : prof)
        if (nr.n >= 1 && nr.record) records.push_back(nr.n);
    bool fib = true;
    std::string list;
    for (long n : records) {
        fib &= is_fibonacci(n);
        list += (list.empty() ? "" : ",") + std::to_string(n);
    }
    return {fib && records == oracle, "records {" + list + "}" + (records == oracle ? ", oracle agrees" : ", oracle differs")};
}

Outcome jeandel_rao_pipeline() {
    const Patch p = solve_with_bottom("jr0", 25, 25, 4, 0);
    const long bad = static_cast<long>(check_validity(p, builtin_protoset("jr0")).size());
    const double good = resolvedness_score(pullback_dots(p, builtin_lattice("gamma0").basis()));
    const double wrong = resolvedness_score(pullback_dots(p, Lattice2::parse("phi,0;0,phi").basis()));
    return {bad == 0 && good >= 0.85, std::to_string(bad) + " violations, score " + fixed(good) +
                                          " with gamma0 (need >= 0.85), " + fixed(wrong) +
                                          " with a wrong lattice"};
}

Outcome lattice_search_jr2() {
    const Patch p = solve_with_bottom("jr2", 30, 30, 6, 0);
    const auto c = lattice_search(p, LatticeGrid::standard());
    const Lattice2 target = builtin_lattice("gamma2");
    long rank = 0;
    for (size_t i = 0; i < c.size() && !rank; ++i)
        if (lattice_equivalent(c[i].lattice, target)) rank = static_cast<long>(i) + 1;
    std::string top;
    for (size_t i = 0; i < 3 && i < c.size(); ++i)
        top += (i ? " " : "") + c[i].lattice.to_string() + "=" + fixed(c[i].score, 3);
    return {rank >= 1 && rank <= 3, "first gamma2-equivalent candidate at rank " + std::to_string(rank) + " of " +
                                        std::to_string(c.size()) + "; top 3: " + top};
}

Outcome penrose_round_trip() {
    SolveRequest r;
    r.protoset = builtin_protoset("penrose24");
    r.width = r.height = 40;
    const auto sol = solve_patch(r);
    if (!sol.patch) return {false, "penrose24 40x40 not solved"};
    const auto inferred = infer_partition(pullback_dots(*sol.patch, builtin_lattice("gamma24").basis()),
                                          parse_slopes("0,1,inf,phi,1/phi"));
    const Partition& p = inferred.partition;
    const auto rep = consistency_check(p, r.protoset);
    long forbidden = 0;
    for (const auto& m : rep.mismatches) forbidden += m.adjacent;
    const auto ref = refine_side_partitions(side_partitions_from(p, r.protoset), p);
    const bool renaming = color_renaming(ref.tiles, r.protoset).has_value();
    const bool pass = rep.ok() && ref.tiles.size() == 24 && renaming;
    return {pass, std::to_string(p.size()) + " atoms, " + std::to_string(inferred.misclassified) +
                      " misclassified dots; consistency " + std::to_string(rep.mismatches.size()) + " of " +
                      std::to_string(rep.pairs_checked) + " pairs fail (" + std::to_string(forbidden) +
                      " forbidden adjacencies, " + std::to_string(rep.mismatches.size() - forbidden) +
                      " allowed pairs never adjacent); refinement " + std::to_string(ref.tiles.size()) +
                      " tiles, renaming " + (renaming ? "found" : "missing")};
}

Outcome derived_tiles_and_frequencies() {
    const auto p16 = builtin_partition("p16");
    const auto t16 = builtin_protoset("ammann16");
    const auto ref = refine_side_partitions(side_partitions_from(p16, t16), p16);
    const auto patch = sr_encode(p16, {q(1, 10), q(1, 10)}, {-1, 1}, Window::parse("0:99,0:99"));
    const long bad = static_cast<long>(check_validity(patch, t16).size());
    const auto freq = frequency_report(patch, p16);
    double f0 = 0;
    for (const auto& row : freq.rows)
        if (row.label == 0) f0 = row.fraction;
    const double target = (Golden(5) - Golden(3) * phi).to_double();
    const bool pass = ref.tiles.size() == 16 && bad == 0 && std::abs(f0 - target) <= 0.015;
    return {pass, std::to_string(ref.tiles.size()) + " tiles, " + std::to_string(bad) + " violations, label 0 at " +
                      fixed(f0) + " vs " + fixed(target)};
}

Outcome boundary_resolution() {
    const auto p16 = builtin_partition("p16");
    const auto t16 = builtin_protoset("ammann16");
    const GPoint qp{q(1, 2), phi * q(3, 2) - Golden(1)};
    bool on = false;
    for (const auto& s : p16.boundary_segments()) on |= on_segment(qp, s);
    const Window w = Window::parse("-40:40,-40:40");
    const auto hits = boundary_hits(p16, qp, w);
    const auto pair = resolution_pair(p16, qp, {-1, 1}, w);
    auto diff = pair.differences;
    std::sort(diff.begin(), diff.end());
    const bool valid = check_validity(pair.plus, t16).empty() && check_validity(pair.minus, t16).empty();
    const int plus = pair.plus.at({0, 0}), minus = pair.minus.at({0, 0});
    const bool pass = on && !hits.positions.empty() && valid && diff == hits.positions &&
                      plus == 13 && minus == 12;
    return {pass, std::string(on ? "q on a boundary segment" : "q off the boundary") + ", " +
                      std::to_string(hits.positions.size()) + " hits, " + std::to_string(diff.size()) +
                      " differences" + (diff == hits.positions ? " (equal)" : " (not equal)") +
                      ", both patches " + (valid ? "valid" : "invalid") + ", q-cell labels " +
                      std::to_string(plus) + "/" + std::to_string(minus)};
}

Outcome atom_invariance() {
    const auto s = invariance_set(builtin_partition("p16"), 0, Window::parse("-15:15,-15:15"));
    return {s == std::vector<Vec2i>{{0, 0}}, std::to_string(s.size()) + " translation(s)"};
}

Outcome dn_shrinkage() {
    const auto p16 = builtin_partition("p16");
    const Golden det = p16.lattice().det().abs();
    std::mt19937_64 rng(7);
    long contained = 0, monotone = 0, small = 0;
    double worst = 0;
    const int points = 100;
    for (int i = 0; i < points; ++i) {
        const GPoint p = random_rational_point(p16, rng);
        const auto patch = sr_encode(p16, p, {-1, 1}, Window::parse("-8:8,-8:8"));
        bool in = true, down = true;
        Golden last = det;
        Golden a8;
        for (long n = 0; n <= 8; ++n) {
            const Region r = dn_region(p16, pattern_around_origin(patch, n));
            in &= region_contains(p16, r, p);
            const Golden a = area(r);
            down &= a <= last;
            last = a;
            a8 = a;
        }
        const double frac = (a8 / det).to_double();
        worst = std::max(worst, frac);
        contained += in;
        monotone += down;
        small += frac < 0.05;
    }
    return {contained == points && monotone == points && small == points,
            std::to_string(contained) + "/" + std::to_string(points) + " contain p, " + std::to_string(monotone) +
                " monotone, largest area(D_8)/det " + fixed(worst, 5)};
}

Outcome pullback_exactness() {
    long cells = 0, mismatched = 0;
    std::string names;
    for (const auto& name : builtin_lattice_names()) {
        const Lattice2 l = builtin_lattice(name);
        const Torus t(l);
        const Partition whole(l, {{0, {*ConvexCell::make({{0, 0}, t.lattice_vector(1, 0), t.lattice_vector(1, 1),
                                                          t.lattice_vector(0, 1)})}}});
        const GPoint start{q(3, 11), q(2, 13)};
        const auto patch = sr_encode(whole, start, {-1, 1}, Window::parse("-50:49,-50:49"));
        const auto base = t.reduce(start);
        for (const auto& d : pullback_dots(patch, l.basis()).dots) {
            const auto tp = t.rotate(base, d.cell);
            ++cells;
            mismatched += (d.exact->x + base.c1).frac() != tp.c1 || (d.exact->y + base.c2).frac() != tp.c2;
        }
        names += (names.empty() ? "" : ",") + name;
    }
    return {mismatched == 0 && cells >= 10000, std::to_string(cells) + " cells over " + names + ", " +
                                                   std::to_string(mismatched) + " mismatches"};
}

Outcome solver_soundness() {
    std::mt19937_64 rng(11);
    const auto names = builtin_protoset_names();
    long sat = 0, unsat = 0, invalid = 0, disagree = 0, micro = 0;
    for (int i = 0; i < 200; ++i) {
        SolveRequest r;
        r.protoset = builtin_protoset(names[rng() % names.size()]);
        r.width = 1 + static_cast<int>(rng() % 6);
        r.height = 1 + static_cast<int>(rng() % 6);
        r.seed = rng();
        const int fixed = static_cast<int>(rng() % 3);
        for (int k = 0; k < fixed; ++k)
            r.preassigned[{static_cast<int>(rng() % static_cast<uint64_t>(r.width)),
                           static_cast<int>(rng() % static_cast<uint64_t>(r.height))}] =
                static_cast<TileIndex>(rng() % static_cast<uint64_t>(r.protoset.size()));
        const auto res = solve_patch(r);
        if (res.status == SolveStatus::Sat) {
            ++sat;
            invalid += !check_validity(*res.patch, r.protoset).empty();
            for (const auto& [xy, tile] : r.preassigned) invalid += res.patch->local(xy.first, xy.second) != tile;
        } else {
            ++unsat;
            disagree += enumerable(r.protoset, r.width, r.height, r.preassigned);
        }
    }
    for (const auto& name : names) {
        const auto t = builtin_protoset(name);
        for (int trial = 0; trial < 10; ++trial) {
            SolveRequest r;
            r.protoset = t;
            r.width = r.height = 3;
            const int fixed = static_cast<int>(rng() % 4);
            for (int k = 0; k < fixed; ++k)
                r.preassigned[{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)}] =
                    static_cast<TileIndex>(rng() % static_cast<uint64_t>(t.size()));
            const bool expected = enumerable(t, 3, 3, r.preassigned);
            disagree += (solve_patch(r).status == SolveStatus::Sat) != expected;
            ++micro;
        }
    }
    return {invalid == 0 && disagree == 0,
            std::to_string(sat) + " sat / " + std::to_string(unsat) + " unsat random solves, " +
                std::to_string(invalid) + " invalid; " + std::to_string(disagree) +
                " disagreements with exhaustive search over " + std::to_string(unsat + micro) +
                " checks (unsat solves and 3x3 instances)"};
}

}  // namespace

int main() {
    criterion(1, "Fibonacci word", 1, fibonacci_word);
    criterion(2, "near-return records", 1, near_returns);
    criterion(3, "Jeandel-Rao solve and pull-back", 600, jeandel_rao_pipeline);
    criterion(4, "lattice search on jr2", 1800, lattice_search_jr2);
    criterion(5, "penrose24 inference round trip", 1800, penrose_round_trip);
    criterion(6, "derived 16 tiles and frequencies", 60, derived_tiles_and_frequencies);
    criterion(7, "boundary resolution at q", 60, boundary_resolution);
    criterion(8, "atom invariance", 60, atom_invariance);
    criterion(9, "D_n shrinkage", 300, dn_shrinkage);
    criterion(10, "pull-back exactness", 60, pullback_exactness);
    criterion(11, "solver soundness", 300, solver_soundness);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures ? 1 : 0;
}
