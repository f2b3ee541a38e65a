#pragma once

// Orbits through a partitioned torus read as configurations.

#include "wangtori/partition.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace wangtori {

/// Throws DirectionParallelToBoundary when v is zero or parallel to a boundary segment.
void check_direction(const Partition& p, const GPoint& v);

/// Cell n carries the atom containing R^n(start); on the boundary, the atom
/// entered in direction v.
Patch sr_encode(const Partition& p, const GPoint& start, const GPoint& v, const Window& window);

struct HitSet {
    std::vector<Vec2i> positions;              // sorted
    std::map<Vec2i, std::vector<int>> labels;  // atoms whose closure holds R^n(start)
    bool contains(Vec2i n) const { return labels.count(n) > 0; }
};

HitSet boundary_hits(const Partition& p, const GPoint& start, const Window& window);

using Pattern = std::map<Vec2i, int>;

/// Pattern of the patch on the Chebyshev ball of the given radius around the origin.
Pattern pattern_around_origin(const Patch& patch, long radius);

/// Intersection of R^-k(P_w(k)) over the support. Empty iff the pattern is not allowed.
Region dn_region(const Partition& p, const Pattern& pattern);

/// True when the closed region contains the point, modulo the lattice.
bool region_contains(const Partition& frame, const Region& r, const GPoint& p);

struct Strip {
    double offset = 0;  // signed perpendicular offset of the strip's lower edge
    std::vector<Vec2i> members;
};

struct StripDirection {
    Vec2i direction;
    std::vector<Strip> strips;
};

struct StripOptions {
    long max_component = 8;
    double width = 1.5;
    size_t min_support = 5;
};

/// Greedy strip cover: repeatedly take the primitive direction with the fullest
/// strip, report all its strips of at least min_support hits, drop those hits.
std::vector<StripDirection> nonexpansive_directions(const HitSet& hits,
                                                     const StripOptions& options = {});

struct ResolutionPair {
    Patch plus;
    Patch minus;
    std::vector<Vec2i> differences;
};

ResolutionPair resolution_pair(const Partition& p, const GPoint& start, const GPoint& v,
                               const Window& window);

struct SubsetFailure {
    GPoint start;
    std::vector<Violation> violations;
};

struct SubsetReport {
    int trials = 0;
    std::vector<SubsetFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Encodes `trials` random rational starting points and checks each window for validity.
SubsetReport empirical_subset_check(const Partition& p, const Protoset& tiles, int trials,
                                    const Window& window, uint64_t seed = 1);

/// Random point with rational coordinates in the bounding box of the fundamental parallelogram.
GPoint random_rational_point(const Partition& frame, std::mt19937_64& rng);

std::string hits_to_csv(const HitSet& hits);
std::string positions_to_csv(const std::vector<Vec2i>& positions, const Patch& plus,
                             const Patch& minus);

}  // namespace wangtori
