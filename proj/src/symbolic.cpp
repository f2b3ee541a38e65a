#include "wangtori/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace wangtori {

void check_direction(const Partition& p, const GPoint& v) {
    if (v.x.is_zero() && v.y.is_zero()) throw DirectionParallelToBoundary("zero direction");
    for (const auto& s : p.boundary_segments())
        if (cross(s.b - s.a, v).is_zero())
            throw DirectionParallelToBoundary("direction " + v.to_string() +
                                              " is parallel to the boundary segment " +
                                              s.a.to_string() + " - " + s.b.to_string());
}

Patch sr_encode(const Partition& p, const GPoint& start, const GPoint& v, const Window& window) {
    check_direction(p, v);
    const Torus& torus = p.torus();
    const TorusPoint base = torus.reduce(start);
    Patch out({window.x0, window.y0}, static_cast<int>(window.width()),
              static_cast<int>(window.height()));
    for (long y = window.y0; y <= window.y1; ++y) {
        for (long x = window.x0; x <= window.x1; ++x) {
            const GPoint pt = torus.embed(torus.rotate(base, {x, y}));
            const Location loc = p.locate_point(pt);
            out.set({x, y}, loc.on_boundary() ? p.locate_directional(pt, v) : loc.label());
        }
    }
    return out;
}

HitSet boundary_hits(const Partition& p, const GPoint& start, const Window& window) {
    const Torus& torus = p.torus();
    const TorusPoint base = torus.reduce(start);
    HitSet hits;
    for (long y = window.y0; y <= window.y1; ++y) {
        for (long x = window.x0; x <= window.x1; ++x) {
            const GPoint pt = torus.embed(torus.rotate(base, {x, y}));
            if (!p.on_boundary(pt)) continue;
            hits.positions.push_back({x, y});
            hits.labels[{x, y}] = p.locate_point(pt).labels;
        }
    }
    std::sort(hits.positions.begin(), hits.positions.end());
    return hits;
}

Pattern pattern_around_origin(const Patch& patch, long radius) {
    Pattern out;
    for (long y = -radius; y <= radius; ++y) {
        for (long x = -radius; x <= radius; ++x) {
            if (!patch.contains({x, y}))
                throw std::out_of_range("patch does not cover the ball of radius " +
                                        std::to_string(radius));
            out[{x, y}] = patch.at({x, y});
        }
    }
    return out;
}

Region dn_region(const Partition& p, const Pattern& pattern) {
    Region cur;
    bool first = true;
    for (const auto& [k, label] : pattern) {
        const Region pulled = rotate_region(p.atom(label).cells, -k, p);
        cur = first ? pulled : intersect(cur, pulled);
        first = false;
        if (cur.empty()) break;
    }
    return cur;
}

bool region_contains(const Partition& frame, const Region& r, const GPoint& p) {
    const GPoint base = frame.torus().embed(frame.torus().reduce(p));
    for (long k = -1; k <= 1; ++k) {
        for (long l = -1; l <= 1; ++l) {
            const GPoint q = base - frame.torus().lattice_vector(k, l);
            for (const auto& c : r)
                if (c.locate(q) >= 0) return true;
        }
    }
    return false;
}

namespace {

std::vector<Vec2i> primitive_directions(long m) {
    std::vector<Vec2i> out;
    for (long dx = 0; dx <= m; ++dx) {
        for (long dy = -m; dy <= m; ++dy) {
            if (dx == 0 && dy <= 0) continue;
            if (std::gcd(dx, std::abs(dy)) != 1) continue;
            out.push_back({dx, dy});
        }
    }
    return out;
}

std::vector<Strip> strips_along(const std::vector<Vec2i>& pts, Vec2i d, double width) {
    const double len = std::hypot(static_cast<double>(d.x), static_cast<double>(d.y));
    std::vector<std::pair<double, Vec2i>> offs;
    offs.reserve(pts.size());
    for (const auto& p : pts)
        offs.emplace_back(static_cast<double>(d.x * p.y - d.y * p.x) / len, p);
    std::sort(offs.begin(), offs.end());
    std::vector<Strip> out;
    size_t i = 0;
    while (i < offs.size()) {
        Strip s;
        s.offset = offs[i].first;
        while (i < offs.size() && offs[i].first <= s.offset + 2 * width + 1e-12)
            s.members.push_back(offs[i++].second);
        std::sort(s.members.begin(), s.members.end());
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<StripDirection> nonexpansive_directions(const HitSet& hits,
                                                     const StripOptions& options) {
    std::vector<Vec2i> remaining = hits.positions;
    const auto dirs = primitive_directions(options.max_component);
    std::vector<StripDirection> out;
    while (remaining.size() >= options.min_support) {
        size_t best_size = 0;
        Vec2i best_dir;
        std::vector<Strip> best_strips;
        for (const auto& d : dirs) {
            auto strips = strips_along(remaining, d, options.width);
            size_t top = 0;
            for (const auto& s : strips) top = std::max(top, s.members.size());
            if (top > best_size) {
                best_size = top;
                best_dir = d;
                best_strips = std::move(strips);
            }
        }
        if (best_size < options.min_support) break;
        StripDirection sd{best_dir, {}};
        std::set<Vec2i> used;
        for (auto& s : best_strips) {
            if (s.members.size() < options.min_support) continue;
            used.insert(s.members.begin(), s.members.end());
            sd.strips.push_back(std::move(s));
        }
        std::erase_if(remaining, [&](const Vec2i& p) { return used.count(p) > 0; });
        out.push_back(std::move(sd));
    }
    return out;
}

ResolutionPair resolution_pair(const Partition& p, const GPoint& start, const GPoint& v,
                               const Window& window) {
    ResolutionPair out{sr_encode(p, start, v, window), sr_encode(p, start, -v, window), {}};
    for (long y = window.y0; y <= window.y1; ++y)
        for (long x = window.x0; x <= window.x1; ++x)
            if (out.plus.at({x, y}) != out.minus.at({x, y})) out.differences.push_back({x, y});
    return out;
}

GPoint random_rational_point(const Partition& frame, std::mt19937_64& rng) {
    const auto box = frame.domain().bbox();
    constexpr long kDen = 100003;
    auto coord = [&](double lo, double hi) {
        const auto lo_n = static_cast<long>(std::ceil(lo * kDen));
        const auto hi_n = static_cast<long>(std::floor(hi * kDen));
        const auto span = static_cast<uint64_t>(std::max(1L, hi_n - lo_n));
        return Golden(Rational(lo_n + static_cast<long>(rng() % span), kDen));
    };
    return {coord(box[0], box[2]), coord(box[1], box[3])};
}

SubsetReport empirical_subset_check(const Partition& p, const Protoset& tiles, int trials,
                                    const Window& window, uint64_t seed) {
    if (p.size() != tiles.size()) throw LabelMismatch("atom and tile counts differ");
    std::mt19937_64 rng(seed);
    const GPoint v{Golden(-1), Golden::phi() * Golden(3) + Golden(Rational(1, 7))};
    SubsetReport rep;
    for (int i = 0; i < trials; ++i) {
        const GPoint start = random_rational_point(p, rng);
        auto violations = check_validity(sr_encode(p, start, v, window), tiles);
        ++rep.trials;
        if (!violations.empty()) rep.failures.push_back({start, std::move(violations)});
    }
    return rep;
}

std::string hits_to_csv(const HitSet& hits) {
    std::ostringstream out;
    out << "n_x,n_y,labels\n";
    for (const auto& n : hits.positions) {
        out << n.x << ',' << n.y << ',';
        const auto& ls = hits.labels.at(n);
        for (size_t i = 0; i < ls.size(); ++i) out << (i ? ";" : "") << ls[i];
        out << '\n';
    }
    return out.str();
}

std::string positions_to_csv(const std::vector<Vec2i>& positions, const Patch& plus,
                             const Patch& minus) {
    std::ostringstream out;
    out << "n_x,n_y,labels\n";
    for (const auto& n : positions) out << n.x << ',' << n.y << ',' << plus.at(n) << ';' << minus.at(n) << '\n';
    return out.str();
}

}  // namespace wangtori
