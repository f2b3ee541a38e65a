#pragma once

// Convex polygons with golden vertices and the few set operations partitions need.

#include "wangtori/golden.hpp"

#include <array>
#include <optional>
#include <vector>

namespace wangtori {

/// Strictly convex polygon, counter-clockwise, no repeated or collinear vertices.
/// A double-precision shadow of the vertices backs cheap rejection tests.
class ConvexCell {
public:
    ConvexCell() = default;

    /// Normalizes orientation and drops duplicate / collinear vertices.
    /// Returns nothing when the result has zero area.
    static std::optional<ConvexCell> make(std::vector<GPoint> vertices);

    const std::vector<GPoint>& vertices() const { return v_; }
    size_t size() const { return v_.size(); }
    const GPoint& operator[](size_t i) const { return v_[i]; }

    /// Twice the signed area (positive).
    Golden area2() const;
    Golden area() const { return area2() * Golden(Rational(1, 2)); }

    ConvexCell translated(const GPoint& d) const;

    std::array<double, 4> bbox() const { return box_; }  // xmin, ymin, xmax, ymax
    const std::vector<std::array<double, 2>>& approx() const { return a_; }

    /// Part of the cell on the closed left side of the directed line through
    /// `origin` with direction `dir`.
    std::optional<ConvexCell> clip(const GPoint& origin, const GPoint& dir) const;

    /// -1 outside, 0 on the boundary, +1 strictly inside.
    int locate(const GPoint& p) const;

    friend bool operator==(const ConvexCell& l, const ConvexCell& r) { return l.v_ == r.v_; }

private:
    explicit ConvexCell(std::vector<GPoint> v);
    std::vector<GPoint> v_;
    std::vector<std::array<double, 2>> a_;
    std::array<double, 4> box_{};
};

using Region = std::vector<ConvexCell>;

std::optional<ConvexCell> intersect(const ConvexCell& a, const ConvexCell& b);
Region intersect(const Region& a, const Region& b);
Golden area(const Region& r);
Region translated(const Region& r, const GPoint& d);

/// Area of the overlap of two regions, each a union of interior-disjoint cells.
Golden overlap_area(const Region& a, const Region& b);

/// Equal as point sets up to measure zero.
bool region_equal(const Region& a, const Region& b);

struct Segment {
    GPoint a;
    GPoint b;
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Closed-segment membership, exact.
bool on_segment(const GPoint& p, const Segment& s);

/// Length of the boundary two cells share, in floating point.
double shared_edge_length(const ConvexCell& a, const ConvexCell& b);
/// Counter-clockwise hull without collinear points.
std::vector<GPoint> convex_hull(std::vector<GPoint> points);
/// Repeatedly replaces two edge-sharing cells by their union when it is convex.
Region merge_convex(Region cells);

}  // namespace wangtori
