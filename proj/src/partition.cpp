#include "wangtori/partition.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace wangtori {

namespace {

ConvexCell make_domain(const Lattice2& l) {
    auto c = ConvexCell::make({GPoint{}, l.g1, l.g1 + l.g2, l.g2});
    if (!c) throw SingularMatrix();
    return *c;
}

struct LineKey {
    bool vertical = false;
    Golden slope;
    Golden offset;
};

struct LineKeyLess {
    bool operator()(const LineKey& l, const LineKey& r) const {
        if (l.vertical != r.vertical) return l.vertical < r.vertical;
        if (Golden::lex_less(l.slope, r.slope)) return true;
        if (Golden::lex_less(r.slope, l.slope)) return false;
        return Golden::lex_less(l.offset, r.offset);
    }
};

LineKey line_of(const GPoint& a, const GPoint& b) {
    const GPoint d = b - a;
    if (d.x.is_zero()) return {true, Golden(), a.x};
    const Golden s = d.y / d.x;
    return {false, s, a.y - s * a.x};
}

Golden param(const LineKey& k, const GPoint& p) { return k.vertical ? p.y : p.x; }

GPoint point_at(const LineKey& k, const Golden& t) {
    if (k.vertical) return {k.offset, t};
    return {t, k.slope * t + k.offset};
}

std::string label_list(const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
}

}  // namespace

Partition::Partition(Lattice2 lattice, std::vector<Atom> atoms, bool validate)
    : torus_(std::move(lattice)), atoms_(std::move(atoms)), domain_(make_domain(torus_.lattice())) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& l, const Atom& r) { return l.label < r.label; });
    for (long k = -1; k <= 1; ++k)
        for (long l = -1; l <= 1; ++l) shifts_.push_back(torus_.lattice_vector(k, l));
    if (validate) check_invariants();
}

const Atom& Partition::atom(int label) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), label,
                               [](const Atom& a, int l) { return a.label < l; });
    if (it == atoms_.end() || it->label != label)
        throw UnknownLabel("no atom labelled " + std::to_string(label));
    return *it;
}

void Partition::check_invariants() const {
    if (atoms_.empty()) throw InvariantViolation("partition has no atoms");
    for (size_t i = 1; i < atoms_.size(); ++i)
        if (atoms_[i].label == atoms_[i - 1].label)
            throw InvariantViolation("duplicate atom label " + std::to_string(atoms_[i].label));
    std::vector<std::pair<int, const ConvexCell*>> all;
    Golden total;
    for (const auto& a : atoms_) {
        if (a.cells.empty()) throw InvariantViolation("atom " + std::to_string(a.label) + " is empty");
        for (const auto& c : a.cells) {
            auto inside = intersect(c, domain_);
            if (!inside || inside->area2() != c.area2())
                throw InvariantViolation("atom " + std::to_string(a.label) +
                                         " leaves the fundamental domain");
            total += c.area();
            all.emplace_back(a.label, &c);
        }
    }
    const Golden det = torus_.lattice().det().abs();
    if (total != det)
        throw InvariantViolation("atom areas sum to " + total.to_string() + ", expected " +
                                 det.to_string());
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (intersect(*all[i].second, *all[j].second))
                throw InvariantViolation("atoms " + std::to_string(all[i].first) + " and " +
                                         std::to_string(all[j].first) + " overlap");
}

Location Partition::locate_point(const GPoint& p) const {
    std::set<int> labels;
    for (const auto& s : shifts_) {
        const GPoint q = p - s;
        for (const auto& a : atoms_) {
            if (labels.count(a.label)) continue;
            for (const auto& c : a.cells) {
                if (c.locate(q) >= 0) {
                    labels.insert(a.label);
                    break;
                }
            }
        }
    }
    if (labels.empty()) throw NotCovered("point " + p.to_string() + " is in no atom");
    return {std::vector<int>(labels.begin(), labels.end())};
}

int Partition::locate_directional(const GPoint& p, const GPoint& v) const {
    if (v.x.is_zero() && v.y.is_zero()) throw std::invalid_argument("zero direction");
    std::set<int> loose;
    std::set<int> strict;
    for (const auto& s : shifts_) {
        const GPoint q = p - s;
        for (const auto& a : atoms_) {
            for (const auto& c : a.cells) {
                const int where = c.locate(q);
                if (where < 0) continue;
                if (where > 0) return a.label;
                bool ok = true;
                bool all_strict = true;
                const size_t n = c.size();
                for (size_t i = 0; i < n && ok; ++i) {
                    const GPoint e = c[(i + 1) % n] - c[i];
                    if (!cross(e, q - c[i]).is_zero()) continue;
                    const int side = cross(e, v).sign();
                    if (side < 0) ok = false;
                    if (side == 0) all_strict = false;
                }
                if (!ok) continue;
                loose.insert(a.label);
                if (all_strict) strict.insert(a.label);
            }
        }
    }
    if (loose.size() == 1) return *loose.begin();
    if (strict.size() == 1) return *strict.begin();
    if (loose.empty()) throw NotCovered("point " + p.to_string() + " is in no atom");
    throw DirectionParallelToBoundary("direction " + v.to_string() + " runs along the boundary at " +
                                      p.to_string() + " between atoms " +
                                      label_list({loose.begin(), loose.end()}));
}

const std::vector<Segment>& Partition::boundary_segments() const {
    if (!boundary_) boundary_ = compute_boundary();
    return *boundary_;
}

std::vector<Segment> Partition::compute_boundary() const {
    std::map<LineKey, std::vector<std::pair<Golden, Golden>>, LineKeyLess> lines;
    const Golden one(1);
    for (const auto& a : atoms_) {
        for (const auto& c : a.cells) {
            const size_t n = c.size();
            for (size_t i = 0; i < n; ++i) {
                GPoint u = c[i];
                GPoint w = c[(i + 1) % n];
                const GPoint cu = torus_.coefficients(u);
                const GPoint cw = torus_.coefficients(w);
                if (cu.x == one && cw.x == one) {
                    u = u - lattice().g1;
                    w = w - lattice().g1;
                }
                if (cu.y == one && cw.y == one) {
                    u = u - lattice().g2;
                    w = w - lattice().g2;
                }
                const LineKey key = line_of(u, w);
                Golden t0 = param(key, u);
                Golden t1 = param(key, w);
                if (t1 < t0) std::swap(t0, t1);
                lines[key].emplace_back(std::move(t0), std::move(t1));
            }
        }
    }

    std::vector<Segment> out;
    for (const auto& [key, spans] : lines) {
        std::vector<Golden> cuts;
        for (const auto& [t0, t1] : spans) {
            cuts.push_back(t0);
            cuts.push_back(t1);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const GPoint dir = key.vertical ? GPoint{0, 1} : GPoint{1, key.slope};
        const GPoint normal{-dir.y, dir.x};
        std::optional<Segment> open;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const Golden mid = (cuts[i] + cuts[i + 1]) * Golden(Rational(1, 2));
            const bool covered = std::any_of(spans.begin(), spans.end(), [&](const auto& sp) {
                return sp.first < mid && mid < sp.second;
            });
            bool is_boundary = false;
            if (covered) {
                const GPoint m = point_at(key, mid);
                is_boundary = locate_directional(m, normal) != locate_directional(m, -normal);
            }
            if (is_boundary) {
                const GPoint a = point_at(key, cuts[i]);
                const GPoint b = point_at(key, cuts[i + 1]);
                if (open && open->b == a) {
                    open->b = b;
                } else {
                    if (open) out.push_back(*open);
                    open = Segment{a, b};
                }
            }
        }
        if (open) out.push_back(*open);
    }
    return out;
}

bool Partition::on_boundary(const GPoint& p) const {
    for (const auto& s : shifts_) {
        const GPoint q = p - s;
        for (const auto& seg : boundary_segments())
            if (on_segment(q, seg)) return true;
    }
    return false;
}

Partition Partition::relabeled(const std::map<int, int>& mapping) const {
    std::vector<Atom> atoms;
    std::set<int> seen;
    for (const auto& a : atoms_) {
        auto it = mapping.find(a.label);
        if (it == mapping.end()) throw LabelMismatch("relabeling misses " + std::to_string(a.label));
        if (!seen.insert(it->second).second) throw LabelMismatch("relabeling is not injective");
        atoms.push_back({it->second, a.cells});
    }
    return Partition(lattice(), std::move(atoms), false);
}

Partition Partition::translated(const GPoint& d) const {
    std::vector<Atom> atoms;
    for (const auto& a : atoms_)
        atoms.push_back({a.label, merge_convex(fold_region(wangtori::translated(a.cells, d), torus_, domain_))});
    return Partition(lattice(), std::move(atoms), false);
}

Region fold_region(const Region& r, const Torus& torus, const ConvexCell& domain) {
    const GMatrix2& inv = torus.inverse_basis();
    const double i00 = inv.m00.to_double(), i01 = inv.m01.to_double();
    const double i10 = inv.m10.to_double(), i11 = inv.m11.to_double();
    Region out;
    for (const auto& c : r) {
        double lo1 = INFINITY, hi1 = -INFINITY, lo2 = INFINITY, hi2 = -INFINITY;
        for (const auto& p : c.approx()) {
            const double c1 = i00 * p[0] + i01 * p[1];
            const double c2 = i10 * p[0] + i11 * p[1];
            lo1 = std::min(lo1, c1);
            hi1 = std::max(hi1, c1);
            lo2 = std::min(lo2, c2);
            hi2 = std::max(hi2, c2);
        }
        const long k0 = static_cast<long>(std::floor(lo1 - 1e-9));
        const long k1 = static_cast<long>(std::floor(hi1 + 1e-9));
        const long l0 = static_cast<long>(std::floor(lo2 - 1e-9));
        const long l1 = static_cast<long>(std::floor(hi2 + 1e-9));
        for (long k = k0; k <= k1; ++k) {
            for (long l = l0; l <= l1; ++l) {
                const ConvexCell moved = c.translated(-torus.lattice_vector(k, l));
                if (auto piece = intersect(moved, domain)) out.push_back(std::move(*piece));
            }
        }
    }
    return out;
}

Region rotate_region(const Region& r, Vec2i n, const Partition& frame) {
    return fold_region(translated(r, GPoint{Golden(n.x), Golden(n.y)}), frame.torus(),
                       frame.domain());
}

std::optional<Golden> slope_of(const Segment& s) {
    const GPoint d = s.b - s.a;
    if (d.x.is_zero()) return std::nullopt;
    return d.y / d.x;
}

std::vector<Vec2i> invariance_set(const Partition& p, int label, const Window& window) {
    const Region& cells = p.atom(label).cells;
    std::vector<Vec2i> out;
    for (long y = window.y0; y <= window.y1; ++y)
        for (long x = window.x0; x <= window.x1; ++x)
            if (region_equal(rotate_region(cells, {x, y}, p), cells)) out.push_back({x, y});
    return out;
}

SidePartitions side_partitions_from(const Partition& p, const Protoset& tiles) {
    if (p.size() != tiles.size())
        throw LabelMismatch("partition has " + std::to_string(p.size()) + " atoms, protoset " +
                            std::to_string(tiles.size()) + " tiles");
    SidePartitions out;
    for (const auto& a : p.atoms()) {
        if (a.label < 0 || a.label >= tiles.size())
            throw LabelMismatch("atom label " + std::to_string(a.label) + " has no tile");
        const WangTile& t = tiles[a.label];
        auto& r = out.right[t.r];
        r.insert(r.end(), a.cells.begin(), a.cells.end());
        auto& b = out.bottom[t.b];
        b.insert(b.end(), a.cells.begin(), a.cells.end());
    }
    return out;
}

Refinement refine_side_partitions(const SidePartitions& sides, const Partition& frame) {
    SidePartition left;
    SidePartition top;
    for (const auto& [c, r] : sides.right) left[c] = rotate_region(r, {1, 0}, frame);
    for (const auto& [c, r] : sides.bottom) top[c] = rotate_region(r, {0, -1}, frame);

    using Key = std::tuple<ColorId, ColorId, ColorId, ColorId>;  // r, t, l, b
    std::map<Key, Region> pieces;
    for (const auto& [ri, rr] : sides.right) {
        for (const auto& [bi, br] : sides.bottom) {
            const Region rb = intersect(rr, br);
            if (rb.empty()) continue;
            for (const auto& [li, lr] : left) {
                const Region rbl = intersect(rb, lr);
                if (rbl.empty()) continue;
                for (const auto& [ti, tr] : top) {
                    Region all = intersect(rbl, tr);
                    if (!all.empty()) pieces[{ri, ti, li, bi}] = std::move(all);
                }
            }
        }
    }

    std::vector<Atom> atoms;
    std::vector<WangTile> tiles;
    for (auto& [key, region] : pieces) {
        atoms.push_back({static_cast<int>(atoms.size()), std::move(region)});
        tiles.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key)});
    }
    Partition part(frame.lattice(), std::move(atoms), false);
    return {std::move(part), Protoset(std::move(tiles), "derived")};
}

ConsistencyReport consistency_check(const Partition& p, const Protoset& tiles) {
    if (p.size() != tiles.size())
        throw LabelMismatch("partition has " + std::to_string(p.size()) + " atoms, protoset " +
                            std::to_string(tiles.size()) + " tiles");
    for (int i = 0; i < p.size(); ++i)
        if (p.atoms()[static_cast<size_t>(i)].label != i)
            throw LabelMismatch("atom labels must be 0..n-1");

    ConsistencyReport rep;
    const int n = p.size();
    for (int a = 0; a < n; ++a) {
        const Region& cells = p.atom(a).cells;
        const Region right = rotate_region(cells, {1, 0}, p);
        const Region up = rotate_region(cells, {0, 1}, p);
        for (int b = 0; b < n; ++b) {
            const Region& other = p.atom(b).cells;
            const bool h_adj = overlap_area(right, other).sign() > 0;
            const bool h_col = tiles[a].r == tiles[b].l;
            if (h_adj != h_col) rep.mismatches.push_back({Axis::Horizontal, a, b, h_adj, h_col});
            const bool v_adj = overlap_area(up, other).sign() > 0;
            const bool v_col = tiles[a].t == tiles[b].b;
            if (v_adj != v_col) rep.mismatches.push_back({Axis::Vertical, a, b, v_adj, v_col});
            rep.pairs_checked += 2;
        }
    }
    return rep;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<size_t>(x)] != x) {
        parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
        x = parent[static_cast<size_t>(x)];
    }
    return x;
}

void join(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
}

}  // namespace

Partition merge_across_slope(const Partition& p, const std::optional<Golden>& slope) {
    const int n = p.size();
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[p.atoms()[static_cast<size_t>(i)].label] = i;
    std::vector<int> parent(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    for (const auto& a : p.atoms()) {
        for (const auto& c : a.cells) {
            for (size_t i = 0; i < c.size(); ++i) {
                const Segment s{c[i], c[(i + 1) % c.size()]};
                if (slope_of(s) != slope) continue;
                const GPoint mid = (s.a + s.b) * Golden(Rational(1, 2));
                const GPoint d = s.b - s.a;
                const GPoint normal{-d.y, d.x};
                const int l = p.locate_directional(mid, normal);
                const int r = p.locate_directional(mid, -normal);
                join(parent, index[l], index[r]);
            }
        }
    }
    std::map<int, Region> merged;
    for (int i = 0; i < n; ++i) {
        const int root = find_root(parent, i);
        auto& r = merged[p.atoms()[static_cast<size_t>(root)].label];
        const auto& cells = p.atoms()[static_cast<size_t>(i)].cells;
        r.insert(r.end(), cells.begin(), cells.end());
    }
    std::vector<Atom> atoms;
    for (auto& [label, r] : merged) atoms.push_back({label, merge_convex(std::move(r))});
    return Partition(p.lattice(), std::move(atoms), false);
}

Protoset adjacency_protoset(const Partition& p) {
    const int n = p.size();
    // Nodes 0..n-1 are right (top) sides, n..2n-1 left (bottom) sides.
    auto colours = [&](Vec2i step) {
        std::vector<int> parent(static_cast<size_t>(2 * n));
        for (int i = 0; i < 2 * n; ++i) parent[static_cast<size_t>(i)] = i;
        for (int a = 0; a < n; ++a) {
            const Region moved = rotate_region(p.atoms()[static_cast<size_t>(a)].cells, step, p);
            for (int b = 0; b < n; ++b)
                if (overlap_area(moved, p.atoms()[static_cast<size_t>(b)].cells).sign() > 0)
                    join(parent, a, n + b);
        }
        std::map<int, ColorId> ids;
        std::vector<ColorId> out(static_cast<size_t>(2 * n));
        for (int i = 0; i < 2 * n; ++i) {
            const int root = find_root(parent, i);
            auto it = ids.try_emplace(root, static_cast<ColorId>(ids.size())).first;
            out[static_cast<size_t>(i)] = it->second;
        }
        return out;
    };
    const auto h = colours({1, 0});
    const auto v = colours({0, 1});
    std::vector<WangTile> tiles;
    for (int a = 0; a < n; ++a) {
        const auto i = static_cast<size_t>(a), j = static_cast<size_t>(n + a);
        tiles.push_back({h[i], v[i], h[j], v[j]});
    }
    return Protoset(std::move(tiles), "adjacency");
}

nlohmann::json partition_to_json(const Partition& p) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : p.atoms()) {
        nlohmann::json cells = nlohmann::json::array();
        for (const auto& c : a.cells) {
            nlohmann::json verts = nlohmann::json::array();
            for (const auto& v : c.vertices())
                verts.push_back(nlohmann::json::array({v.x.to_string(), v.y.to_string()}));
            cells.push_back(std::move(verts));
        }
        atoms.push_back({{"label", a.label}, {"cells", std::move(cells)}});
    }
    const Lattice2& l = p.lattice();
    nlohmann::json lattice = nlohmann::json::array();
    lattice.push_back(nlohmann::json::array({l.g1.x.to_string(), l.g1.y.to_string()}));
    lattice.push_back(nlohmann::json::array({l.g2.x.to_string(), l.g2.y.to_string()}));
    return {{"lattice", std::move(lattice)}, {"atoms", std::move(atoms)}};
}

Partition partition_from_json(const nlohmann::json& j) {
    auto golden = [](const nlohmann::json& v) {
        if (!v.is_string()) throw SyntaxError("golden literals must be JSON strings");
        return Golden::parse(v.get<std::string>());
    };
    auto point = [&](const nlohmann::json& v) {
        if (!v.is_array() || v.size() != 2) throw SyntaxError("points are [x, y] pairs");
        return GPoint{golden(v[0]), golden(v[1])};
    };
    if (!j.is_object() || !j.contains("lattice") || !j.contains("atoms"))
        throw SyntaxError("partition needs 'lattice' and 'atoms'");
    const auto& lj = j.at("lattice");
    Lattice2 lattice;
    if (lj.is_string()) {
        lattice = Lattice2::parse(lj.get<std::string>());
    } else {
        if (!lj.is_array() || lj.size() != 2) throw SyntaxError("lattice needs two generators");
        lattice = {point(lj[0]), point(lj[1])};
    }
    std::vector<Atom> atoms;
    for (const auto& aj : j.at("atoms")) {
        Atom a;
        a.label = aj.at("label").get<int>();
        for (const auto& cj : aj.at("cells")) {
            std::vector<GPoint> verts;
            for (const auto& vj : cj) verts.push_back(point(vj));
            auto cell = ConvexCell::make(std::move(verts));
            if (!cell) throw InvariantViolation("degenerate cell in atom " + std::to_string(a.label));
            a.cells.push_back(std::move(*cell));
        }
        atoms.push_back(std::move(a));
    }
    return Partition(std::move(lattice), std::move(atoms), true);
}

}  // namespace wangtori
