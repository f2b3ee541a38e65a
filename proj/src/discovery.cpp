#include "wangtori/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace wangtori {

namespace {

constexpr double kPhi = 1.6180339887498948482;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- dots

DotPattern pullback_dots(const Patch& patch, const GMatrix2& a, std::string source) {
    const GMatrix2 inv = a.inverse();
    DotPattern out;
    out.matrix = a;
    out.source = std::move(source);
    out.dots.reserve(patch.cells().size());
    for (int j = 0; j < patch.height(); ++j) {
        for (int i = 0; i < patch.width(); ++i) {
            const int label = patch.local(i, j);
            if (label == kUnassigned) throw std::invalid_argument("patch is not fully assigned");
            const Vec2i n = patch.origin() + Vec2i{i, j};
            const GPoint c = inv * GPoint{Golden(n.x), Golden(n.y)};
            const GPoint f{c.x.frac(), c.y.frac()};
            out.dots.push_back({f.x.to_double(), f.y.to_double(), label, f, n});
        }
    }
    return out;
}

double resolvedness_score(const DotPattern& dots, int k) {
    const size_t n = dots.dots.size();
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (n < static_cast<size_t>(k) + 1)
        throw TooFewDots("need at least " + std::to_string(k + 1) + " dots, have " +
                         std::to_string(n));
    // Pulled-back dots differ by A^-1 (n_j - n_i) mod 1, so distances depend
    // only on cell differences and survive a shift of the patch bit for bit.
    const bool from_cells = std::all_of(dots.dots.begin(), dots.dots.end(),
                                        [](const Dot& x) { return x.exact.has_value(); });
    double inv[4] = {0, 0, 0, 0};
    if (from_cells) {
        const GMatrix2 m = dots.matrix.inverse();
        inv[0] = m.m00.to_double();
        inv[1] = m.m01.to_double();
        inv[2] = m.m10.to_double();
        inv[3] = m.m11.to_double();
    }
    std::vector<std::pair<double, size_t>> d(n);
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        const Dot& a = dots.dots[i];
        size_t m = 0;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double dx, dy;
            if (from_cells) {
                const auto cx = static_cast<double>(dots.dots[j].cell.x - a.cell.x);
                const auto cy = static_cast<double>(dots.dots[j].cell.y - a.cell.y);
                dx = inv[0] * cx + inv[1] * cy;
                dy = inv[2] * cx + inv[3] * cy;
                dx = std::abs(dx - std::round(dx));
                dy = std::abs(dy - std::round(dy));
            } else {
                dx = std::abs(a.x - dots.dots[j].x);
                dy = std::abs(a.y - dots.dots[j].y);
                dx = std::min(dx, 1 - dx);
                dy = std::min(dy, 1 - dy);
            }
            d[m++] = {dx * dx + dy * dy, j};
        }
        std::partial_sort(d.begin(), d.begin() + k, d.begin() + static_cast<long>(m));
        int same = 0;
        for (int t = 0; t < k; ++t) same += dots.dots[d[static_cast<size_t>(t)].second].label == a.label;
        total += static_cast<double>(same) / k;
    }
    return total / static_cast<double>(n);
}

// ---------------------------------------------------------------- lattice search

LatticeGrid LatticeGrid::standard() {
    return {{std::vector<long>{-1, 0, 1}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2, 3}}};
}

LatticeGrid LatticeGrid::parse(const std::string& text) {
    if (text == "default") return standard();
    LatticeGrid g;
    std::stringstream groups(text);
    std::string group;
    size_t i = 0;
    while (std::getline(groups, group, ';')) {
        if (i >= 5) throw SyntaxError("grid has more than five groups");
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            try {
                size_t used = 0;
                g.ranges[i].push_back(std::stol(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw SyntaxError("bad grid value '" + item + "'");
            }
        }
        ++i;
    }
    if (i != 5) throw SyntaxError("grid needs five ';'-separated groups");
    return g;
}

size_t LatticeGrid::size() const {
    size_t n = 1;
    for (const auto& r : ranges) n *= r.size();
    return n;
}

std::vector<LatticeCandidate> lattice_search(const Patch& patch, const LatticeGrid& grid, int k,
                                             unsigned threads) {
    std::vector<LatticeCandidate> cands;
    for (long p0 : grid.ranges[0])
        for (long p1 : grid.ranges[1])
            for (long p2 : grid.ranges[2])
                for (long p3 : grid.ranges[3])
                    for (long p4 : grid.ranges[4]) {
                        const GPoint g1{Golden::phi() + Golden(p0), Golden(0)};
                        const GPoint g2{Golden::phi() * Golden(p1) + Golden(p2),
                                        Golden::phi() * Golden(p3) + Golden(p4)};
                        const Lattice2 l{g1, g2};
                        if (l.det().is_zero()) continue;
                        cands.push_back({{p0, p1, p2, p3, p4}, l, 0});
                    }
    if (cands.empty()) return cands;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cands.size()));
    auto work = [&](size_t first) {
        for (size_t i = first; i < cands.size(); i += threads)
            cands[i].score = resolvedness_score(pullback_dots(patch, cands[i].lattice.basis()), k);
    };
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) jobs.push_back(std::async(std::launch::async, work, t));
    for (auto& j : jobs) j.get();

    std::stable_sort(cands.begin(), cands.end(),
                     [](const LatticeCandidate& l, const LatticeCandidate& r) {
                         if (l.score != r.score) return l.score > r.score;
                         return l.params < r.params;
                     });
    return cands;
}

// ---------------------------------------------------------------- fibonacci signatures

bool is_fibonacci(long d) {
    const auto& f = fibonacci_numbers();
    return std::binary_search(f.begin(), f.end(), d);
}

LineSignature line_signature(const std::vector<int>& line, long motif) {
    const long n = static_cast<long>(line.size());
    if (motif < 1) throw std::invalid_argument("motif length must be positive");
    if (n < 2 * motif)
        throw WindowTooSmall("line of length " + std::to_string(n) + " is shorter than twice the motif");
    LineSignature sig;
    for (long d = 1; d + motif <= n; ++d) {
        long run = 0;
        bool hit = false;
        for (long i = 0; i + d < n && !hit; ++i) {
            run = line[static_cast<size_t>(i)] == line[static_cast<size_t>(i + d)] ? run + 1 : 0;
            hit = run >= motif;
        }
        if (hit) {
            sig.distances.push_back(d);
            sig.fibonacci.push_back(is_fibonacci(d));
        }
    }
    return sig;
}

SignatureReport fib_signature(const Patch& patch, Axis axis, long motif) {
    SignatureReport rep;
    rep.axis = axis;
    rep.motif = motif;
    const int lines = axis == Axis::Horizontal ? patch.height() : patch.width();
    const int len = axis == Axis::Horizontal ? patch.width() : patch.height();
    for (int a = 0; a < lines; ++a) {
        std::vector<int> seq(static_cast<size_t>(len));
        for (int b = 0; b < len; ++b)
            seq[static_cast<size_t>(b)] = axis == Axis::Horizontal ? patch.local(b, a) : patch.local(a, b);
        LineSignature sig = line_signature(seq, motif);
        sig.index = axis == Axis::Horizontal ? patch.origin().y + a : patch.origin().x + a;
        if (auto m = sig.minimal()) {
            ++rep.lines_with_recurrence;
            if (is_fibonacci(*m)) ++rep.minimal_fibonacci;
        }
        rep.lines.push_back(std::move(sig));
    }
    rep.fraction = rep.lines_with_recurrence
                       ? static_cast<double>(rep.minimal_fibonacci) / rep.lines_with_recurrence
                       : 0.0;
    return rep;
}

// ---------------------------------------------------------------- boundary lines

std::string BoundaryLine::to_string() const {
    if (!slope) return "x = " + intercept.to_string();
    return "y = (" + slope->to_string() + ") x + " + intercept.to_string();
}

std::vector<std::optional<Golden>> parse_slopes(const std::string& text) {
    std::vector<std::optional<Golden>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) continue;
        if (item == "inf" || item == "infinity" || item == "oo") {
            out.emplace_back(std::nullopt);
            continue;
        }
        const auto slash = item.find('/');
        if (slash != std::string::npos) {
            const Golden num = Golden::parse(item.substr(0, slash));
            const Golden den = Golden::parse(item.substr(slash + 1));
            out.emplace_back(num / den);
        } else {
            out.emplace_back(Golden::parse(item));
        }
    }
    if (out.empty()) throw SyntaxError("no slopes given");
    return out;
}

namespace {

// A slope family: y - s x = c, or x = c.
struct Family {
    std::optional<Golden> slope;
    double s = 0;
    bool vertical() const { return !slope; }
    double lin(double x, double y) const { return vertical() ? x : y - s * x; }
    Golden lin(const GPoint& p) const { return vertical() ? p.x : p.y - *slope * p.x; }
    std::array<double, 2> coeffs() const {
        return vertical() ? std::array<double, 2>{1, 0} : std::array<double, 2>{-s, 1};
    }
    GPoint origin(const Golden& c) const { return vertical() ? GPoint{c, 0} : GPoint{0, c}; }
    GPoint direction() const { return vertical() ? GPoint{0, 1} : GPoint{1, *slope}; }
};

struct PlanePoint {
    double x, y;
    int label;
};

struct Pair {
    PlanePoint a, b;
};

struct Detected {
    int family;
    double lo, hi;
};

struct LineClass {
    int family;
    double lo, hi;  // intercept interval of the representative
};

struct SnapResult {
    Golden value;
    long complexity;
};

std::optional<SnapResult> snap_interval(double lo, double hi, long bound) {
    std::optional<SnapResult> best;
    double best_gap = 0;
    const double mid = (lo + hi) / 2;
    for (long j = -2 * bound; j <= 2 * bound; ++j) {
        const double base = j * 0.5 * kPhi;
        const long i0 = std::max(-2 * bound, static_cast<long>(std::ceil(2 * (lo - base) - 1e-12)));
        const long i1 = std::min(2 * bound, static_cast<long>(std::floor(2 * (hi - base) + 1e-12)));
        for (long i = i0; i <= i1; ++i) {
            const long cx = std::abs(i) + std::abs(j);
            const double v = 0.5 * i + base;
            const double gap = std::abs(v - mid);
            if (!best || cx < best->complexity || (cx == best->complexity && gap < best_gap)) {
                best = SnapResult{Golden(Rational(i, 2), Rational(j, 2)), cx};
                best_gap = gap;
            }
        }
    }
    return best;
}

struct Frame {
    GMatrix2 basis;
    std::array<double, 4> b;    // basis as doubles m00 m01 m10 m11
    std::array<double, 4> inv;  // inverse as doubles

    explicit Frame(const GMatrix2& m) : basis(m) {
        b = {m.m00.to_double(), m.m01.to_double(), m.m10.to_double(), m.m11.to_double()};
        const GMatrix2 i = m.inverse();
        inv = {i.m00.to_double(), i.m01.to_double(), i.m10.to_double(), i.m11.to_double()};
    }
    std::array<double, 2> plane(double c1, double c2) const {
        return {b[0] * c1 + b[1] * c2, b[2] * c1 + b[3] * c2};
    }
    std::array<double, 2> coeff(double x, double y) const {
        return {inv[0] * x + inv[1] * y, inv[2] * x + inv[3] * y};
    }
    std::array<double, 2> lattice(long k, long l) const { return plane(k, l); }
    std::array<double, 2> fold(double x, double y) const {
        auto c = coeff(x, y);
        c[0] -= std::floor(c[0]);
        c[1] -= std::floor(c[1]);
        return plane(c[0], c[1]);
    }
};

std::vector<Pair> neighbour_pairs(const std::vector<PlanePoint>& dots, const Frame& f, int k) {
    constexpr double kMargin = 0.2;
    std::vector<PlanePoint> pts;
    for (const auto& d : dots) {
        const auto c = f.coeff(d.x, d.y);
        for (long kx = -1; kx <= 1; ++kx) {
            for (long ky = -1; ky <= 1; ++ky) {
                const double c1 = c[0] + kx, c2 = c[1] + ky;
                if (c1 < -kMargin || c1 > 1 + kMargin || c2 < -kMargin || c2 > 1 + kMargin) continue;
                const auto p = f.plane(c1, c2);
                pts.push_back({p[0], p[1], d.label});
            }
        }
    }
    // Neighbours of every point in the enlarged window, so pairs straddling the
    // seam are seen from both sides.
    std::vector<Pair> out;
    std::set<std::array<long long, 4>> seen;
    std::vector<std::pair<double, size_t>> dist(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        size_t m = 0;
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
            dist[m++] = {dx * dx + dy * dy, j};
        }
        const size_t kk = std::min<size_t>(static_cast<size_t>(k), m);
        std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(kk),
                          dist.begin() + static_cast<long>(m));
        for (size_t t = 0; t < kk; ++t) {
            const size_t j = dist[t].second;
            if (pts[i].label == pts[j].label) continue;
            const size_t lo = std::min(i, j), hi = std::max(i, j);
            if (!seen.insert({static_cast<long long>(lo), static_cast<long long>(hi), 0, 0}).second)
                continue;
            out.push_back({pts[lo], pts[hi]});
        }
    }
    return out;
}

std::vector<Detected> detect_lines(const std::vector<Pair>& pairs,
                                   const std::vector<Family>& fams, int min_support) {
    std::vector<bool> active(pairs.size(), true);
    std::vector<Detected> out;
    while (true) {
        long best_depth = 0;
        Detected best{-1, 0, 0};
        for (size_t fi = 0; fi < fams.size(); ++fi) {
            std::vector<std::pair<double, int>> ev;
            for (size_t p = 0; p < pairs.size(); ++p) {
                if (!active[p]) continue;
                const double ca = fams[fi].lin(pairs[p].a.x, pairs[p].a.y);
                const double cb = fams[fi].lin(pairs[p].b.x, pairs[p].b.y);
                if (std::abs(ca - cb) < 1e-9) continue;
                ev.emplace_back(std::min(ca, cb), 0);
                ev.emplace_back(std::max(ca, cb), 1);
            }
            std::sort(ev.begin(), ev.end());
            long depth = 0;
            for (size_t e = 0; e < ev.size(); ++e) {
                if (ev[e].second == 0) {
                    ++depth;
                    if (depth > best_depth && e + 1 < ev.size()) {
                        best_depth = depth;
                        best = {static_cast<int>(fi), ev[e].first, ev[e + 1].first};
                    }
                } else {
                    --depth;
                }
            }
        }
        if (best_depth < min_support) break;
        const Family& fam = fams[static_cast<size_t>(best.family)];
        for (size_t p = 0; p < pairs.size(); ++p) {
            if (!active[p]) continue;
            const double ca = fam.lin(pairs[p].a.x, pairs[p].a.y);
            const double cb = fam.lin(pairs[p].b.x, pairs[p].b.y);
            if (std::min(ca, cb) <= best.lo && std::max(ca, cb) >= best.hi) active[p] = false;
        }
        out.push_back(best);
    }
    return out;
}

// Lattice translates of a line shift its intercept by lin(g).
double shift_of(const Family& fam, const Frame& f, long k, long l) {
    const auto g = f.lattice(k, l);
    return fam.lin(g[0], g[1]);
}

std::vector<LineClass> group_classes(const std::vector<Detected>& lines,
                                     const std::vector<Family>& fams, const Frame& f,
                                     double slack) {
    std::vector<int> parent(lines.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)];
        return x;
    };
    // offset[i] maps member i's interval onto its root's frame.
    std::vector<double> offset(lines.size(), 0);
    for (size_t i = 0; i < lines.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (lines[i].family != lines[j].family) continue;
            const Family& fam = fams[static_cast<size_t>(lines[i].family)];
            for (long k = -2; k <= 2; ++k) {
                for (long l = -2; l <= 2; ++l) {
                    const double s = shift_of(fam, f, k, l);
                    if (lines[i].lo + s <= lines[j].hi + slack && lines[j].lo <= lines[i].hi + s + slack) {
                        const int ri = find(static_cast<int>(i));
                        const int rj = find(static_cast<int>(j));
                        if (ri != rj) {
                            // i is still its own root: only earlier lines are merged into roots.
                            parent[static_cast<size_t>(ri)] = rj;
                            offset[static_cast<size_t>(ri)] = s + offset[j] - offset[i];
                        }
                    }
                }
            }
        }
    }
    std::map<int, LineClass> classes;
    for (size_t i = 0; i < lines.size(); ++i) {
        // Accumulate the offset up the chain.
        double off = 0;
        int x = static_cast<int>(i);
        while (parent[static_cast<size_t>(x)] != x) {
            off += offset[static_cast<size_t>(x)];
            x = parent[static_cast<size_t>(x)];
        }
        const double lo = lines[i].lo + off, hi = lines[i].hi + off;
        auto it = classes.find(x);
        if (it == classes.end()) {
            classes[x] = {lines[i].family, lo, hi};
        } else {
            const double nlo = std::max(it->second.lo, lo), nhi = std::min(it->second.hi, hi);
            if (nlo <= nhi) {
                it->second.lo = nlo;
                it->second.hi = nhi;
            } else {
                it->second.lo = std::min(it->second.lo, lo);
                it->second.hi = std::max(it->second.hi, hi);
            }
        }
    }
    std::vector<LineClass> out;
    for (auto& [root, c] : classes) out.push_back(c);
    return out;
}

std::optional<SnapResult> snap_class(const LineClass& c, double lo, double hi,
                                     const std::vector<Family>& fams, const Frame& f, long bound,
                                     const GMatrix2& basis) {
    const Family& fam = fams[static_cast<size_t>(c.family)];
    std::optional<SnapResult> best;
    for (long k = -2; k <= 2; ++k) {
        for (long l = -2; l <= 2; ++l) {
            const double s = shift_of(fam, f, k, l);
            auto r = snap_interval(lo + s, hi + s, bound);
            if (!r) continue;
            if (!best || r->complexity < best->complexity) {
                // Report the intercept of the class representative itself.
                const GPoint g = basis * GPoint{Golden(k), Golden(l)};
                best = SnapResult{r->value - fam.lin(g), r->complexity};
            }
        }
    }
    return best;
}

struct DoubleLine {
    int family;
    double c;
};

long misclassified_by_signature(const std::vector<PlanePoint>& dots, const std::vector<DoubleLine>& lines,
                                const std::vector<Family>& fams, const Frame& f, double tx, double ty) {
    std::map<std::string, std::map<int, long>> votes;
    std::string sig(lines.size(), '0');
    for (const auto& d : dots) {
        const auto q = f.fold(d.x - tx, d.y - ty);
        for (size_t i = 0; i < lines.size(); ++i)
            sig[i] = fams[static_cast<size_t>(lines[i].family)].lin(q[0], q[1]) > lines[i].c ? '1' : '0';
        ++votes[sig][d.label];
    }
    long wrong = 0;
    for (const auto& [s, v] : votes) {
        long total = 0, top = 0;
        for (const auto& [l, n] : v) {
            total += n;
            top = std::max(top, n);
        }
        wrong += total - top;
    }
    return wrong;
}

// Every lattice translate of the representatives that crosses the open domain.
std::vector<std::pair<int, Golden>> lines_in_domain(const std::vector<std::pair<int, Golden>>& reps,
                                                    const std::vector<Family>& fams,
                                                    const Lattice2& lattice) {
    const std::array<GPoint, 4> corners = {GPoint{}, lattice.g1, lattice.g1 + lattice.g2, lattice.g2};
    std::vector<std::pair<int, Golden>> out;
    for (const auto& [fi, c] : reps) {
        const Family& fam = fams[static_cast<size_t>(fi)];
        for (long k = -3; k <= 3; ++k) {
            for (long l = -3; l <= 3; ++l) {
                const Golden ck = c + fam.lin(lattice.g1 * Golden(k) + lattice.g2 * Golden(l));
                bool pos = false, neg = false;
                for (const auto& p : corners) {
                    const int s = (fam.lin(p) - ck).sign();
                    pos |= s > 0;
                    neg |= s < 0;
                }
                if (!pos || !neg) continue;
                const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& o) {
                    return o.first == fi && o.second == ck;
                });
                if (!dup) out.emplace_back(fi, ck);
            }
        }
    }
    return out;
}

bool contains_d(const ConvexCell& c, double x, double y) {
    const auto& a = c.approx();
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        const auto& p = a[i];
        const auto& q = a[(i + 1) % n];
        if ((q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0]) < -1e-12) return false;
    }
    return true;
}

Rational to_rational(double v) {
    constexpr long kDen = 1L << 40;
    return Rational(static_cast<long>(std::llround(v * kDen)), kDen);
}

}  // namespace

InferenceResult infer_partition(const DotPattern& pattern,
                                const std::vector<std::optional<Golden>>& slopes,
                                const InferOptions& options) {
    if (pattern.dots.empty()) throw TooFewDots("no dots");
    if (slopes.empty()) throw std::invalid_argument("no slopes given");
    const Frame frame(pattern.matrix);
    const Lattice2 lattice{pattern.matrix.col0(), pattern.matrix.col1()};
    std::vector<Family> fams;
    for (const auto& s : slopes) fams.push_back({s, s ? s->to_double() : 0.0});

    std::vector<PlanePoint> dots;
    for (const auto& d : pattern.dots) {
        const auto p = frame.plane(d.x, d.y);
        dots.push_back({p[0], p[1], d.label});
    }
    const double scale = std::sqrt(std::abs(pattern.matrix.det().to_double()));
    const double slack = options.delta * scale;

    const auto pairs = neighbour_pairs(dots, frame, options.neighbours);
    const auto detected = detect_lines(pairs, fams, options.min_support);
    const auto classes = group_classes(detected, fams, frame, slack);
    if (classes.empty()) {
        // A single atom explains the dots.
        std::set<int> labels;
        for (const auto& d : dots) labels.insert(d.label);
        if (labels.size() != 1) throw Unresolvable("no boundary lines found between differing labels");
        Partition p(lattice, {Atom{*labels.begin(), {Partition(lattice, {Atom{0, {}}}, false).domain()}}});
        return {std::move(p), {}, {}, 0, 0.0, 0};
    }

    // Choose the translation that makes the intercepts simplest.
    double tx = 0, ty = 0;
    std::vector<std::optional<SnapResult>> snaps(classes.size());
    auto snap_all = [&](double ox, double oy, double widen_x, double widen_y) {
        long score = 0;
        std::vector<std::optional<SnapResult>> out(classes.size());
        for (size_t i = 0; i < classes.size(); ++i) {
            const Family& fam = fams[static_cast<size_t>(classes[i].family)];
            const double shift = fam.lin(ox, oy);
            const auto co = fam.coeffs();
            const double w = std::abs(co[0]) * widen_x + std::abs(co[1]) * widen_y + slack;
            out[i] = snap_class(classes[i], classes[i].lo - shift - w, classes[i].hi - shift + w, fams,
                                frame, options.snap_bound, pattern.matrix);
            score += out[i] ? out[i]->complexity : 100;
        }
        return std::make_pair(score, out);
    };

    if (options.anchoring == Anchoring::None) {
        // Detected intervals are only good to about one dot spacing.
        const double spacing = scale / std::sqrt(static_cast<double>(dots.size()));
        snaps = snap_all(0, 0, spacing, spacing).second;
    } else {
        long best = -1;
        for (size_t a = 0; a < classes.size(); ++a) {
            for (size_t b = 0; b < classes.size(); ++b) {
                if (classes[a].family == classes[b].family) continue;
                const Family& fa = fams[static_cast<size_t>(classes[a].family)];
                const Family& fb = fams[static_cast<size_t>(classes[b].family)];
                const auto ca = fa.coeffs(), cb = fb.coeffs();
                const double det = ca[0] * cb[1] - ca[1] * cb[0];
                if (std::abs(det) < 1e-12) continue;
                for (long k = -1; k <= 1; ++k) {
                    for (long l = -1; l <= 1; ++l) {
                        const double sb = shift_of(fb, frame, k, l);
                        const double ma = (classes[a].lo + classes[a].hi) / 2;
                        const double mb = (classes[b].lo + classes[b].hi) / 2 + sb;
                        const double x = (ma * cb[1] - ca[1] * mb) / det;
                        const double y = (ca[0] * mb - ma * cb[0]) / det;
                        const auto c = frame.coeff(x, y);
                        if (c[0] < -0.1 || c[0] > 1.1 || c[1] < -0.1 || c[1] > 1.1) continue;
                        const double ra = (classes[a].hi - classes[a].lo) / 2;
                        const double rb = (classes[b].hi - classes[b].lo) / 2;
                        const double wx = (std::abs(cb[1]) * ra + std::abs(ca[1]) * rb) / std::abs(det);
                        const double wy = (std::abs(cb[0]) * ra + std::abs(ca[0]) * rb) / std::abs(det);
                        auto [score, out] = snap_all(x, y, wx, wy);
                        if (best < 0 || score < best) {
                            best = score;
                            tx = x;
                            ty = y;
                            snaps = std::move(out);
                        }
                    }
                }
            }
        }
        if (best < 0) snaps = snap_all(0, 0, 0, 0).second;
    }

    auto exact_reps = [&]() {
        std::vector<std::pair<int, Golden>> reps;
        for (size_t i = 0; i < classes.size(); ++i)
            if (snaps[i]) reps.emplace_back(classes[i].family, snaps[i]->value);
        return reps;
    };
    auto double_lines = [&](const std::vector<std::pair<int, Golden>>& in_domain) {
        std::vector<DoubleLine> out;
        for (const auto& [fi, c] : in_domain) out.push_back({fi, c.to_double()});
        return out;
    };

    if (options.anchoring != Anchoring::None) {
        // Refine the translation against the snapped lines, then snap again.
        for (int round = 0; round < 2; ++round) {
            const auto dl = double_lines(lines_in_domain(exact_reps(), fams, lattice));
            const double radius = 0.03 * scale;
            const int steps = 15;
            long best = -1;
            std::vector<std::pair<double, double>> ties;
            for (int i = -steps; i <= steps; ++i) {
                for (int j = -steps; j <= steps; ++j) {
                    const double x = tx + radius * i / steps, y = ty + radius * j / steps;
                    const long wrong = misclassified_by_signature(dots, dl, fams, frame, x, y);
                    if (best < 0 || wrong < best) {
                        best = wrong;
                        ties.clear();
                    }
                    if (wrong == best) ties.emplace_back(x, y);
                }
            }
            double cx = 0, cy = 0;
            for (const auto& [x, y] : ties) {
                cx += x;
                cy += y;
            }
            cx /= static_cast<double>(ties.size());
            cy /= static_cast<double>(ties.size());
            auto nearest = std::min_element(ties.begin(), ties.end(), [&](const auto& l, const auto& r) {
                return std::hypot(l.first - cx, l.second - cy) < std::hypot(r.first - cx, r.second - cy);
            });
            if (misclassified_by_signature(dots, dl, fams, frame, cx, cy) == best) {
                tx = cx;
                ty = cy;
            } else {
                tx = nearest->first;
                ty = nearest->second;
            }
            auto [score, again] = snap_all(tx, ty, 0, 0);
            for (size_t i = 0; i < classes.size(); ++i)
                if (again[i]) snaps[i] = again[i];
        }
    }

    // Drop lines that explain fewer than min_support dots, most complex first.

    {
        std::vector<size_t> order;
        for (size_t i = 0; i < classes.size(); ++i)
            if (snaps[i]) order.push_back(i);
        std::stable_sort(order.begin(), order.end(), [&](size_t l, size_t r) {
            return snaps[l]->complexity > snaps[r]->complexity;
        });
        auto wrong_now = [&]() {
            return misclassified_by_signature(
                dots, double_lines(lines_in_domain(exact_reps(), fams, lattice)), fams, frame, tx, ty);
        };
        long base = wrong_now();
        for (size_t i : order) {
            auto keep = snaps[i];
            snaps[i].reset();
            const long without = wrong_now();
            if (without - base >= options.min_support) {
                snaps[i] = keep;
            } else {
                base = without;

            }
        }
    }

    const auto reps = exact_reps();
    const auto in_domain = lines_in_domain(reps, fams, lattice);

    // Arrangement of the fundamental domain.
    Region cells{Partition(lattice, {Atom{0, {}}}, false).domain()};
    for (const auto& [fi, c] : in_domain) {
        const Family& fam = fams[static_cast<size_t>(fi)];
        const GPoint o = fam.origin(c), d = fam.direction();
        Region next;
        for (const auto& cell : cells) {
            auto left = cell.clip(o, d);
            auto right = cell.clip(o, -d);
            if (left && right) {
                next.push_back(std::move(*left));
                next.push_back(std::move(*right));
            } else {
                next.push_back(cell);
            }
        }
        cells = std::move(next);
    }

    std::vector<std::map<int, long>> votes(cells.size());
    for (const auto& d : dots) {
        const auto q = frame.fold(d.x - tx, d.y - ty);
        for (size_t i = 0; i < cells.size(); ++i) {
            if (contains_d(cells[i], q[0], q[1])) {
                ++votes[i][d.label];
                break;
            }
        }
    }
    std::vector<int> label(cells.size(), kUnassigned);
    long wrong = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
        long total = 0, top = 0;
        for (const auto& [l, n] : votes[i]) {
            total += n;
            if (n > top) {
                top = n;
                label[i] = l;
            }
        }
        wrong += total - top;
    }
    // Cells without dots take the label of the neighbour sharing the longest edge.
    for (bool progress = true; progress;) {
        progress = false;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (label[i] != kUnassigned) continue;
            double best = 0;
            int pick = kUnassigned;
            for (size_t j = 0; j < cells.size(); ++j) {
                if (label[j] == kUnassigned) continue;
                for (long k = -1; k <= 1; ++k) {
                    for (long l = -1; l <= 1; ++l) {
                        const double e = shared_edge_length(cells[i], cells[j].translated(lattice.g1 * Golden(k) +
                                                                                   lattice.g2 * Golden(l)));
                        if (e > best + 1e-12) {
                            best = e;
                            pick = label[j];
                        }
                    }
                }
            }
            if (pick != kUnassigned) {
                label[i] = pick;
                progress = true;
            }
        }
    }

    std::map<int, Region> grouped;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (label[i] == kUnassigned) throw Unresolvable("arrangement cell has no labelled neighbour");
        grouped[label[i]].push_back(cells[i]);
    }
    std::vector<Atom> atoms;
    for (auto& [l, r] : grouped) atoms.push_back({l, merge_convex(std::move(r))});

    InferenceResult res{Partition(lattice, std::move(atoms)),
                        {},
                        GPoint{Golden(to_rational(tx)), Golden(to_rational(ty))},
                        wrong,
                        static_cast<double>(wrong) / static_cast<double>(dots.size()),
                        0};
    for (size_t i = 0; i < classes.size(); ++i) {
        if (snaps[i])
            res.lines.push_back({fams[static_cast<size_t>(classes[i].family)].slope, snaps[i]->value});
        else
            ++res.dropped_lines;
    }
    std::sort(res.lines.begin(), res.lines.end(), [](const BoundaryLine& l, const BoundaryLine& r) {
        if (l.slope.has_value() != r.slope.has_value()) return l.slope.has_value();
        if (l.slope && *l.slope != *r.slope) return *l.slope < *r.slope;
        return l.intercept < r.intercept;
    });
    if (res.misclassified_fraction > options.max_misclassified)
        throw Unresolvable(std::to_string(wrong) + " of " + std::to_string(dots.size()) +
                           " dots disagree with the snapped arrangement");
    return res;
}

// ---------------------------------------------------------------- frequencies

FrequencyReport frequency_report(const Patch& patch, const Partition& p) {
    std::map<int, long> counts;
    for (const auto& a : p.atoms()) counts[a.label] = 0;
    long cells = 0;
    for (int t : patch.cells()) {
        if (t == kUnassigned) continue;
        auto it = counts.find(t);
        if (it == counts.end()) throw LabelMismatch("patch label " + std::to_string(t) + " has no atom");
        ++it->second;
        ++cells;
    }
    if (cells == 0) throw std::invalid_argument("patch has no assigned cells");
    FrequencyReport rep;
    rep.cells = cells;
    const Golden det = p.lattice().det().abs();
    for (const auto& [label, n] : counts) {
        FrequencyRow row;
        row.label = label;
        row.count = n;
        row.fraction = static_cast<double>(n) / static_cast<double>(cells);
        row.area_fraction = p.atom_area(label) / det;
        row.deviation = row.fraction - row.area_fraction.to_double();
        rep.max_deviation = std::max(rep.max_deviation, std::abs(row.deviation));
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------- text formats

std::string dots_to_csv(const DotPattern& dots) {
    std::string out = "x,y,label\n";
    for (const auto& d : dots.dots)
        out += fmt("%.17g", d.x) + "," + fmt("%.17g", d.y) + "," + std::to_string(d.label) + "\n";
    return out;
}

DotPattern dots_from_csv(const std::string& text, const GMatrix2& matrix) {
    DotPattern out;
    out.matrix = matrix;
    std::stringstream ss(text);
    std::string line;
    long row = 0;
    while (std::getline(ss, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
        std::stringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ','))
            throw SyntaxError("line " + std::to_string(row) + ": expected x,y,label");
        try {
            Dot d;
            d.x = std::stod(a);
            d.y = std::stod(b);
            d.label = std::stoi(c);
            out.dots.push_back(d);
        } catch (const std::exception&) {
            throw SyntaxError("line " + std::to_string(row) + ": expected x,y,label");
        }
    }
    return out;
}

namespace {

const std::array<const char*, 24> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd",
    "#e6550d", "#31a354", "#756bb1", "#636363", "#fd8d3c", "#74c476", "#9e9ac8", "#fdd0a2"};

const char* colour(int label) {
    return kPalette[static_cast<size_t>(((label % 24) + 24) % 24)];
}

std::string svg_open(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", w) + "\" height=\"" +
           fmt("%.0f", h) + "\" viewBox=\"0 0 " + fmt("%.0f", w) + " " + fmt("%.0f", h) + "\">\n";
}

}  // namespace

std::string dots_svg(const DotPattern& dots) {
    constexpr double kSize = 600;
    std::string out = svg_open(kSize, kSize);
    out += "<rect width=\"600\" height=\"600\" fill=\"white\" stroke=\"black\"/>\n";
    for (const auto& d : dots.dots)
        out += "<circle cx=\"" + fmt("%.3f", d.x * kSize) + "\" cy=\"" +
               fmt("%.3f", (1 - d.y) * kSize) + "\" r=\"2.5\" fill=\"" + colour(d.label) + "\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string partition_svg(const Partition& p) {
    const auto box = p.domain().bbox();
    const double w = box[2] - box[0], h = box[3] - box[1];
    const double s = 600 / std::max(w, h);
    std::string out = svg_open(w * s, h * s);
    for (const auto& a : p.atoms()) {
        double cx = 0, cy = 0, area = 0;
        for (const auto& c : a.cells) {
            out += "<polygon points=\"";
            bool first = true;
            for (const auto& v : c.approx()) {
                out += (first ? "" : " ") + fmt("%.3f", (v[0] - box[0]) * s) + "," +
                       fmt("%.3f", (box[3] - v[1]) * s);
                first = false;
            }
            out += std::string("\" fill=\"") + colour(a.label) + "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
            const double ca = c.area().to_double();
            for (const auto& v : c.approx()) {
                cx += v[0] * ca / static_cast<double>(c.size());
                cy += v[1] * ca / static_cast<double>(c.size());
            }
            area += ca;
        }
        if (area > 0)
            out += "<text x=\"" + fmt("%.3f", (cx / area - box[0]) * s) + "\" y=\"" +
                   fmt("%.3f", (box[3] - cy / area) * s) +
                   "\" font-size=\"14\" text-anchor=\"middle\">" + std::to_string(a.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string patch_svg(const Patch& patch) {
    constexpr double kCell = 12;
    const double w = patch.width() * kCell, h = patch.height() * kCell;
    std::string out = svg_open(w, h);
    for (int j = 0; j < patch.height(); ++j) {
        for (int i = 0; i < patch.width(); ++i) {
            const int t = patch.local(i, j);
            out += "<rect x=\"" + fmt("%.0f", i * kCell) + "\" y=\"" +
                   fmt("%.0f", (patch.height() - 1 - j) * kCell) + "\" width=\"12\" height=\"12\" fill=\"" +
                   (t == kUnassigned ? "white" : colour(t)) + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace wangtori
