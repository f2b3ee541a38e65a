#include "wangtori/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wangtori {

namespace {

constexpr double kSlack = 1e-9;

double cross_d(const std::array<double, 2>& o, const std::array<double, 2>& d,
               const std::array<double, 2>& p) {
    return d[0] * (p[1] - o[1]) - d[1] * (p[0] - o[0]);
}

std::array<double, 2> to_approx(const GPoint& p) { return {p.x.to_double(), p.y.to_double()}; }

bool boxes_apart(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[2] < b[0] - kSlack || b[2] < a[0] - kSlack || a[3] < b[1] - kSlack ||
           b[3] < a[1] - kSlack;
}

}  // namespace

ConvexCell::ConvexCell(std::vector<GPoint> v) : v_(std::move(v)) {
    a_.reserve(v_.size());
    box_ = {INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (const auto& p : v_) {
        a_.push_back(to_approx(p));
        box_[0] = std::min(box_[0], a_.back()[0]);
        box_[1] = std::min(box_[1], a_.back()[1]);
        box_[2] = std::max(box_[2], a_.back()[0]);
        box_[3] = std::max(box_[3], a_.back()[1]);
    }
}

std::optional<ConvexCell> ConvexCell::make(std::vector<GPoint> v) {
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        std::vector<GPoint> out;
        const size_t n = v.size();
        for (size_t i = 0; i < n; ++i) {
            const GPoint& prev = v[(i + n - 1) % n];
            const GPoint& cur = v[i];
            const GPoint& next = v[(i + 1) % n];
            if (cur == next || cross(cur - prev, next - cur).is_zero()) {
                changed = true;
                continue;
            }
            out.push_back(cur);
        }
        v = std::move(out);
    }
    if (v.size() < 3) return std::nullopt;
    Golden a2;
    for (size_t i = 0; i < v.size(); ++i) a2 += cross(v[i], v[(i + 1) % v.size()]);
    const int s = a2.sign();
    if (s == 0) return std::nullopt;
    if (s < 0) std::reverse(v.begin(), v.end());
    for (size_t i = 0; i < v.size(); ++i) {
        const GPoint& a = v[i];
        const GPoint& b = v[(i + 1) % v.size()];
        const GPoint& c = v[(i + 2) % v.size()];
        if (cross(b - a, c - b).sign() <= 0) return std::nullopt;
    }
    // Start at the lexicographically smallest vertex so equal cells compare equal.
    auto first = std::min_element(v.begin(), v.end(), [](const GPoint& l, const GPoint& r) {
        return GPoint::lex_less(l, r);
    });
    std::rotate(v.begin(), first, v.end());
    return ConvexCell(std::move(v));
}

Golden ConvexCell::area2() const {
    Golden a2;
    for (size_t i = 0; i < v_.size(); ++i) a2 += cross(v_[i], v_[(i + 1) % v_.size()]);
    return a2;
}

ConvexCell ConvexCell::translated(const GPoint& d) const {
    std::vector<GPoint> v;
    v.reserve(v_.size());
    for (const auto& p : v_) v.push_back(p + d);
    return ConvexCell(std::move(v));
}

std::optional<ConvexCell> ConvexCell::clip(const GPoint& origin, const GPoint& dir) const {
    const auto o = to_approx(origin);
    const auto d = to_approx(dir);
    const double scale = std::max(1.0, std::max(std::abs(d[0]), std::abs(d[1])));
    bool all_in = true;
    bool all_out = true;
    for (const auto& p : a_) {
        const double s = cross_d(o, d, p);
        if (s < kSlack * scale * 16) all_in = false;
        if (s > -kSlack * scale * 16) all_out = false;
    }
    if (all_in) return *this;
    if (all_out) return std::nullopt;

    const size_t n = v_.size();
    std::vector<Golden> side(n);
    for (size_t i = 0; i < n; ++i) side[i] = cross(dir, v_[i] - origin);
    std::vector<GPoint> out;
    for (size_t i = 0; i < n; ++i) {
        const size_t j = (i + 1) % n;
        const int si = side[i].sign();
        const int sj = side[j].sign();
        if (si >= 0) out.push_back(v_[i]);
        if ((si > 0 && sj < 0) || (si < 0 && sj > 0)) {
            const Golden t = side[i] / (side[i] - side[j]);
            out.push_back(v_[i] + (v_[j] - v_[i]) * t);
        }
    }
    return make(std::move(out));
}

int ConvexCell::locate(const GPoint& p) const {
    const auto q = to_approx(p);
    if (q[0] < box_[0] - kSlack || q[0] > box_[2] + kSlack || q[1] < box_[1] - kSlack ||
        q[1] > box_[3] + kSlack)
        return -1;
    const size_t n = v_.size();
    bool sure_inside = true;
    for (size_t i = 0; i < n; ++i) {
        const auto& a = a_[i];
        const auto& b = a_[(i + 1) % n];
        const double s = cross_d(a, {b[0] - a[0], b[1] - a[1]}, q);
        if (s < -kSlack) return -1;
        if (s < kSlack) sure_inside = false;
    }
    if (sure_inside) return 1;
    int result = 1;
    for (size_t i = 0; i < n; ++i) {
        const int s = cross(v_[(i + 1) % n] - v_[i], p - v_[i]).sign();
        if (s < 0) return -1;
        if (s == 0) result = 0;
    }
    return result;
}

std::optional<ConvexCell> intersect(const ConvexCell& a, const ConvexCell& b) {
    if (boxes_apart(a.bbox(), b.bbox())) return std::nullopt;
    std::optional<ConvexCell> cur = a;
    const size_t n = b.size();
    for (size_t i = 0; i < n && cur; ++i) cur = cur->clip(b[i], b[(i + 1) % n] - b[i]);
    return cur;
}

Region intersect(const Region& a, const Region& b) {
    Region out;
    for (const auto& ca : a)
        for (const auto& cb : b)
            if (auto c = intersect(ca, cb)) out.push_back(std::move(*c));
    return out;
}

Golden area(const Region& r) {
    Golden s;
    for (const auto& c : r) s += c.area();
    return s;
}

Region translated(const Region& r, const GPoint& d) {
    Region out;
    out.reserve(r.size());
    for (const auto& c : r) out.push_back(c.translated(d));
    return out;
}

Golden overlap_area(const Region& a, const Region& b) { return area(intersect(a, b)); }

bool region_equal(const Region& a, const Region& b) {
    const Golden aa = area(a);
    if (aa != area(b)) return false;
    return overlap_area(a, b) == aa;
}

bool on_segment(const GPoint& p, const Segment& s) {
    const GPoint d = s.b - s.a;
    const GPoint w = p - s.a;
    const auto da = to_approx(d);
    const auto wa = to_approx(w);
    const double len = std::hypot(da[0], da[1]);
    if (std::abs(da[0] * wa[1] - da[1] * wa[0]) > kSlack * 16 * std::max(1.0, len)) return false;
    if (!cross(d, w).is_zero()) return false;
    const Golden t = dot(w, d);
    return t.sign() >= 0 && t <= dot(d, d);
}

double shared_edge_length(const ConvexCell& a, const ConvexCell& b) {
    const auto& pa = a.approx();
    const auto& pb = b.approx();
    double total = 0;
    for (size_t i = 0; i < pa.size(); ++i) {
        const auto& p = pa[i];
        const auto& q = pa[(i + 1) % pa.size()];
        const double dx = q[0] - p[0], dy = q[1] - p[1];
        const double len = std::hypot(dx, dy);
        for (size_t j = 0; j < pb.size(); ++j) {
            const auto& r = pb[j];
            const auto& s = pb[(j + 1) % pb.size()];
            auto off = [&](const std::array<double, 2>& z) {
                return (dx * (z[1] - p[1]) - dy * (z[0] - p[0])) / len;
            };
            if (std::abs(off(r)) > 1e-9 || std::abs(off(s)) > 1e-9) continue;
            auto t = [&](const std::array<double, 2>& z) {
                return (dx * (z[0] - p[0]) + dy * (z[1] - p[1])) / len;
            };
            const double lo = std::max(0.0, std::min(t(r), t(s)));
            const double hi = std::min(len, std::max(t(r), t(s)));
            if (hi > lo) total += hi - lo;
        }
    }
    return total;
}

std::vector<GPoint> convex_hull(std::vector<GPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](const GPoint& l, const GPoint& r) {
        return l.x < r.x || (l.x == r.x && l.y < r.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<GPoint> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]).sign() <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

Region merge_convex(Region cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < cells.size() && !changed; ++i) {
            for (size_t j = i + 1; j < cells.size() && !changed; ++j) {
                const auto bi = cells[i].bbox(), bj = cells[j].bbox();
                if (bi[2] < bj[0] - 1e-9 || bj[2] < bi[0] - 1e-9 || bi[3] < bj[1] - 1e-9 ||
                    bj[3] < bi[1] - 1e-9)
                    continue;
                if (shared_edge_length(cells[i], cells[j]) <= 0) continue;
                std::vector<GPoint> pts = cells[i].vertices();
                pts.insert(pts.end(), cells[j].vertices().begin(), cells[j].vertices().end());
                auto h = ConvexCell::make(convex_hull(std::move(pts)));
                if (!h || h->area2() != cells[i].area2() + cells[j].area2()) continue;
                cells[i] = std::move(*h);
                cells.erase(cells.begin() + static_cast<long>(j));
                changed = true;
            }
        }
    }
    std::sort(cells.begin(), cells.end(), [](const ConvexCell& l, const ConvexCell& r) {
        return GPoint::lex_less(l[0], r[0]);
    });
    return cells;
}

}  // namespace wangtori
