#pragma once

// Polygonal partitions of a golden torus into labelled atoms.

#include "wangtori/geometry.hpp"
#include "wangtori/torus.hpp"
#include "wangtori/wang.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wangtori {

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownLabel : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct LabelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotCovered : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DirectionParallelToBoundary : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Atom {
    int label = 0;
    Region cells;  // inside the closed fundamental parallelogram
};

/// Result of point location: one label for interior points, every atom whose
/// closure contains the point otherwise.
struct Location {
    std::vector<int> labels;  // sorted

    bool on_boundary() const { return labels.size() > 1; }
    int label() const { return labels.front(); }
};

class Partition {
public:
    /// Atoms are sorted by label. With `validate`, cover and disjointness are
    /// checked exactly and InvariantViolation is thrown on failure.
    Partition(Lattice2 lattice, std::vector<Atom> atoms, bool validate = true);

    const Torus& torus() const { return torus_; }
    const Lattice2& lattice() const { return torus_.lattice(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    int size() const { return static_cast<int>(atoms_.size()); }
    const Atom& atom(int label) const;
    /// The fundamental parallelogram spanned by the generators.
    const ConvexCell& domain() const { return domain_; }

    Golden atom_area(int label) const { return area(atom(label).cells); }

    Location locate(const TorusPoint& tp) const { return locate_point(torus_.embed(tp)); }
    Location locate_point(const GPoint& p) const;

    /// Label of the atom entered by p + eps * v for infinitesimal eps > 0.
    int locate_directional(const GPoint& p, const GPoint& v) const;

    /// Maximal boundary segments in canonical order. Segments on the far
    /// sides of the parallelogram are reported on the near sides.
    const std::vector<Segment>& boundary_segments() const;
    bool on_boundary(const GPoint& p) const;

    void check_invariants() const;

    /// Same atoms under new labels; `mapping` must be a bijection on labels.
    Partition relabeled(const std::map<int, int>& mapping) const;
    /// Every atom moved by d on the torus.
    Partition translated(const GPoint& d) const;

private:
    Torus torus_;
    std::vector<Atom> atoms_;
    ConvexCell domain_;
    std::vector<GPoint> shifts_;  // the 3x3 block of lattice vectors
    mutable std::optional<std::vector<Segment>> boundary_;

    std::vector<Segment> compute_boundary() const;
};

/// Folds a region of the plane into the fundamental parallelogram.
Region fold_region(const Region& r, const Torus& torus, const ConvexCell& domain);
/// R^n applied to a region already inside the fundamental parallelogram.
Region rotate_region(const Region& r, Vec2i n, const Partition& frame);

/// Direction of a segment: the slope, or nothing for vertical segments.
std::optional<Golden> slope_of(const Segment& s);

/// Every n in the window with R^n(atom) = atom.
std::vector<Vec2i> invariance_set(const Partition& p, int label, const Window& window);

using SidePartition = std::map<ColorId, Region>;

struct SidePartitions {
    SidePartition right;
    SidePartition bottom;
};

SidePartitions side_partitions_from(const Partition& p, const Protoset& tiles);

struct Refinement {
    Partition partition;
    Protoset tiles;  // tile i labels atom i
};

/// Left sides are R^(1,0) of right sides, top sides R^(0,-1) of bottom sides.
/// Atoms are the nonempty right/top/left/bottom intersections in tuple order.
Refinement refine_side_partitions(const SidePartitions& sides, const Partition& frame);

struct ConsistencyMismatch {
    Axis axis = Axis::Horizontal;
    int first = 0;   // left or lower atom
    int second = 0;  // right or upper atom
    bool adjacent = false;  // translated interiors overlap
    bool colors_match = false;
};

struct ConsistencyReport {
    long pairs_checked = 0;
    std::vector<ConsistencyMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Checks, for every ordered pair (a, b), that R^(1,0)(P_a) meets P_b exactly when
/// Right(a) = Left(b), and R^(0,1)(P_a) meets P_b exactly when Top(a) = Bottom(b).
ConsistencyReport consistency_check(const Partition& p, const Protoset& tiles);

/// Merges atoms across every boundary edge of the given slope (nothing = vertical).
/// Each merged atom keeps the smallest label of its members.
Partition merge_across_slope(const Partition& p, const std::optional<Golden>& slope);

/// The finest edge colouring compatible with the partition: sides are joined
/// whenever translated atoms overlap. Tile i belongs to the i-th atom in label order.
/// Throws DuplicateTile when two atoms end up with the same sides.
Protoset adjacency_protoset(const Partition& p);

nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

}  // namespace wangtori
