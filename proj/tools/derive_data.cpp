// Regenerates the partition datasets under data/ from solver runs.
//
//   wangtori-derive-data <out-dir>
//
// p24.json       inferred from a 40x40 penrose24 patch pulled back with gamma24
// p16.json       p24 with the slope-1 boundaries removed
// ammann16.json  the edge colouring forced by p16, relabelled to the published anchors

#include "wangtori/discovery.hpp"
#include "wangtori/registry.hpp"
#include "wangtori/tilesolver.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

using namespace wangtori;

namespace {

void write(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
    std::cerr << "wrote " << path << "\n";
}

Golden half(long n) { return Golden(Rational(n, 2)); }

// Corner c of the atom when it is exactly the square c + [0, phi - 1]^2.
std::optional<GPoint> square_corner(const Partition& p, int label) {
    const Golden side = Golden::phi() - Golden(1);
    const Region& cells = p.atom(label).cells;
    for (const auto& c : cells) {
        for (const auto& v : c.vertices()) {
            auto sq = ConvexCell::make({v, v + GPoint{side, 0}, v + GPoint{side, side}, v + GPoint{0, side}});
            if (region_equal(fold_region({*sq}, p.torus(), p.domain()), cells)) return v;
        }
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: wangtori-derive-data <out-dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    try {
        const Protoset t24 = builtin_protoset("penrose24");
        SolveRequest req;
        req.protoset = t24;
        req.width = 40;
        req.height = 40;
        req.seed = 0;
        const auto solved = solve_patch(req);
        if (!solved.patch) throw std::runtime_error("penrose24 patch did not solve");
        const Lattice2 lattice = builtin_lattice("gamma24");
        const auto dots = pullback_dots(*solved.patch, lattice.basis(), "penrose24 40x40 seed 0");
        const auto inferred = infer_partition(dots, parse_slopes("0,1,inf,phi,1/phi"));
        std::cerr << "p24: " << inferred.partition.size() << " atoms, " << inferred.misclassified
                  << " misclassified dots\n";

        // Frame: the square atom of the slope-1 coarsening sits at the origin.
        const Partition coarse = merge_across_slope(inferred.partition, Golden(1));
        std::optional<GPoint> corner;
        int square = -1;
        for (const auto& a : coarse.atoms()) {
            if (a.cells.empty() || area(a.cells) != Golden(2) - Golden::phi()) continue;
            if ((corner = square_corner(coarse, a.label))) {
                square = a.label;
                break;
            }
        }
        if (!corner) throw std::runtime_error("no square atom of area 2 - phi");
        const Partition p24 = inferred.partition.translated(-*corner);
        p24.check_invariants();
        const Partition grouped = merge_across_slope(p24, Golden(1));
        if (grouped.size() != 16)
            throw std::runtime_error("slope-1 coarsening has " + std::to_string(grouped.size()) + " atoms");

        // Labels: the square is 0; at q the direction (-1, 1) enters 13, (1, -1) enters 12.
        const GPoint q{half(1), Golden::phi() * half(3) - Golden(1)};
        const GPoint v{Golden(-1), Golden(1)};
        const int at13 = grouped.locate_directional(q, v);
        const int at12 = grouped.locate_directional(q, -v);
        if (at13 == at12 || at13 == square || at12 == square)
            throw std::runtime_error("q does not separate two atoms besides the square");
        std::map<int, int> relabel{{square, 0}, {at12, 12}, {at13, 13}};
        std::vector<std::pair<std::array<double, 2>, int>> rest;
        for (const auto& a : grouped.atoms()) {
            if (relabel.count(a.label)) continue;
            std::array<double, 2> low{INFINITY, INFINITY};
            for (const auto& c : a.cells) low = std::min(low, c.approx().front());
            rest.push_back({low, a.label});
        }
        std::sort(rest.begin(), rest.end());
        int next = 1;
        for (const auto& [low, label] : rest) {
            while (next == 12 || next == 13) ++next;
            relabel[label] = next++;
        }
        const Partition p16 = grouped.relabeled(relabel);
        p16.check_invariants();

        // Colours: tile 12 reads (6, 2, 4, 1); other ids by first use.
        const Protoset forced = adjacency_protoset(p16);
        const WangTile& t12 = forced[12];
        if (t12.r == t12.l || t12.t == t12.b) throw std::runtime_error("tile 12 anchors collide");
        std::map<ColorId, ColorId> h{{t12.r, 6}, {t12.l, 4}}, vc{{t12.t, 2}, {t12.b, 1}};
        auto assign = [](std::map<ColorId, ColorId>& m, ColorId c) {
            if (m.count(c)) return;
            std::set<ColorId> used;
            for (const auto& [k, x] : m) used.insert(x);
            ColorId id = 1;
            while (used.count(id)) ++id;
            m[c] = id;
        };
        for (const auto& t : forced.tiles()) {
            assign(h, t.r);
            assign(h, t.l);
            assign(vc, t.t);
            assign(vc, t.b);
        }
        std::vector<WangTile> tiles;
        for (const auto& t : forced.tiles()) tiles.push_back({h[t.r], vc[t.t], h[t.l], vc[t.b]});
        const Protoset t16(std::move(tiles), "ammann16");

        const auto refined = refine_side_partitions(side_partitions_from(p16, t16), p16);
        if (refined.tiles.size() != 16 || !color_renaming(refined.tiles, t16))
            throw std::runtime_error("ammann16 does not survive refinement");
        const auto rep24 = consistency_check(p24, t24);
        std::cerr << "p24 consistency: " << rep24.mismatches.size() << " mismatches\n";

        write(dir + "/p24.json", partition_to_json(p24));
        write(dir + "/p16.json", partition_to_json(p16));
        write(dir + "/ammann16.json", protoset_to_json(t16));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
