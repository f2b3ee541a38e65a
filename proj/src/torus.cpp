#include "wangtori/torus.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace wangtori {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s) {
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::logic_error&) {
        throw SyntaxError("expected integer, got '" + s + "'");
    }
    if (used != s.size()) throw SyntaxError("expected integer, got '" + s + "'");
    return v;
}

}  // namespace

Lattice2 Lattice2::parse(std::string_view text) {
    const auto vecs = split(text, ';');
    if (vecs.size() != 2) throw SyntaxError("lattice literal needs two generators separated by ';'");
    Lattice2 out;
    GPoint* dst[2] = {&out.g1, &out.g2};
    for (int i = 0; i < 2; ++i) {
        const auto xy = split(vecs[static_cast<size_t>(i)], ',');
        if (xy.size() != 2) throw SyntaxError("lattice generator needs two coordinates");
        *dst[i] = {Golden::parse(xy[0]), Golden::parse(xy[1])};
    }
    if (out.det().is_zero()) throw SingularMatrix();
    return out;
}

std::string Lattice2::to_string() const {
    return g1.x.to_string() + "," + g1.y.to_string() + ";" + g2.x.to_string() + "," +
           g2.y.to_string();
}

Window Window::parse(std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw SyntaxError("window literal must look like a:b,c:d");
    Window w;
    long* dst[2][2] = {{&w.x0, &w.x1}, {&w.y0, &w.y1}};
    for (int i = 0; i < 2; ++i) {
        const auto& part = parts[static_cast<size_t>(i)];
        const auto colon = part.find(':', 1);
        if (colon == std::string::npos) throw SyntaxError("window range must look like a:b");
        *dst[i][0] = parse_long(part.substr(0, colon));
        *dst[i][1] = parse_long(part.substr(colon + 1));
        if (*dst[i][1] < *dst[i][0]) throw SyntaxError("empty window range");
    }
    return w;
}

Torus::Torus(Lattice2 lattice)
    : lattice_(std::move(lattice)), basis_(lattice_.basis()), inverse_(basis_.inverse()) {
    step_x_ = inverse_.col0();
    step_y_ = inverse_.col1();
}

TorusPoint Torus::reduce(const GPoint& p) const {
    const GPoint c = inverse_ * p;
    return {c.x.frac(), c.y.frac()};
}

TorusPoint Torus::rotate(const TorusPoint& tp, Vec2i n) const {
    const Golden nx(n.x), ny(n.y);
    Golden c1 = tp.c1 + step_x_.x * nx + step_y_.x * ny;
    Golden c2 = tp.c2 + step_x_.y * nx + step_y_.y * ny;
    return {c1.frac(), c2.frac()};
}

std::map<Vec2i, TorusPoint> Torus::orbit_window(const GPoint& p, const Window& w) const {
    std::map<Vec2i, TorusPoint> out;
    const TorusPoint base = reduce(p);
    for (long y = w.y0; y <= w.y1; ++y)
        for (long x = w.x0; x <= w.x1; ++x) out.emplace(Vec2i{x, y}, rotate(base, {x, y}));
    return out;
}

TorusPoint reduce_mod_lattice(const GPoint& p, const Lattice2& lattice) {
    return Torus(lattice).reduce(p);
}

TorusPoint rotate(const TorusPoint& tp, Vec2i n, const Lattice2& lattice) {
    return Torus(lattice).rotate(tp, n);
}

bool lattice_equivalent(const Lattice2& a, const Lattice2& b) {
    const GMatrix2 t = a.basis().inverse() * b.basis();
    for (const Golden* e : {&t.m00, &t.m01, &t.m10, &t.m11})
        if (!e->is_integer()) return false;
    const Golden d = t.det();
    return d == Golden(1) || d == Golden(-1);
}

Rotation1D::Rotation1D(Golden m, Golden c) : modulus(std::move(m)), cut(std::move(c)) {
    if (modulus.sign() <= 0) throw std::invalid_argument("rotation modulus must be positive");
    if (cut.sign() <= 0 || cut >= modulus)
        throw std::invalid_argument("rotation cut must lie strictly inside (0, modulus)");
}

namespace {

Golden mod(const Golden& v, const Golden& m) {
    return v - m * Golden(Rational((v / m).floor()));
}

}  // namespace

std::string rotation1d_encode(const Golden& x, const Rotation1D& rot, long n0, long n1) {
    std::string out;
    for (long n = n0; n <= n1; ++n) {
        const Golden r = mod(x + Golden(n), rot.modulus);
        out.push_back(r < rot.cut ? '0' : '1');
    }
    return out;
}

std::vector<NearReturn> near_return_profile(const Golden& x, const Golden& modulus, long count) {
    if (count < 1) throw std::invalid_argument("near-return profile needs N >= 1");
    if (modulus.sign() <= 0) throw std::invalid_argument("modulus must be positive");
    std::vector<NearReturn> out;
    const Golden base = mod(x, modulus);
    std::optional<Golden> best;
    for (long n = 0; n <= count; ++n) {
        const Golden r = mod(x + Golden(n), modulus);
        Golden d = (r - base).abs();
        if (modulus - d < d) d = modulus - d;
        NearReturn nr{n, d, d.to_double(), false};
        if (n >= 1) {
            if (!best || d < *best) {
                nr.record = true;
                best = d;
            }
        }
        out.push_back(std::move(nr));
    }
    return out;
}

DensityReport orbit_density_check(const GPoint& p, const Lattice2& lattice, double eps, long N) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    DensityReport rep;
    rep.boxes_per_side = static_cast<long>(std::ceil(1.0 / eps - 1e-12));
    const Torus torus(lattice);
    const TorusPoint base = torus.reduce(p);
    std::set<std::pair<long, long>> hit;
    const Golden k(rep.boxes_per_side);
    for (long y = -N; y <= N; ++y) {
        for (long x = -N; x <= N; ++x) {
            const TorusPoint tp = torus.rotate(base, {x, y});
            const long bx = (tp.c1 * k).floor().get_si();
            const long by = (tp.c2 * k).floor().get_si();
            hit.emplace(bx, by);
        }
    }
    rep.covered = static_cast<long>(hit.size());
    rep.fraction = static_cast<double>(rep.covered) /
                   static_cast<double>(rep.boxes_per_side * rep.boxes_per_side);
    return rep;
}

}  // namespace wangtori
