#pragma once

// Pulling tilings back onto tori, scoring dot patterns, searching lattices
// and recovering exact partitions from dots.

#include "wangtori/partition.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wangtori {

struct TooFewDots : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WindowTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Unresolvable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dot {
    double x = 0;  // coefficient coordinates in [0,1)
    double y = 0;
    int label = 0;
    std::optional<GPoint> exact;
    Vec2i cell;
};

struct DotPattern {
    std::vector<Dot> dots;
    GMatrix2 matrix;  // columns span the lattice
    std::string source;
};

/// Dot for cell n at frac(A^-1 n), labelled by the tile at n.
DotPattern pullback_dots(const Patch& patch, const GMatrix2& a, std::string source = {});

/// Mean fraction of the k nearest neighbours (torus metric on the unit square)
/// sharing a dot's label. Ties are broken by dot index.
double resolvedness_score(const DotPattern& dots, int k = 8);

struct LatticeGrid {
    std::array<std::vector<long>, 5> ranges;

    static LatticeGrid standard();
    /// "a,b,c;...;..." with five groups of comma separated integers.
    static LatticeGrid parse(const std::string& text);
    size_t size() const;
};

struct LatticeCandidate {
    std::array<long, 5> params{};
    Lattice2 lattice;
    double score = 0;
};

/// Lattices gamma1 = (phi + P0, 0), gamma2 = (P1 phi + P2, P3 phi + P4) over the
/// grid, singular ones skipped, best score first, ties by params.
std::vector<LatticeCandidate> lattice_search(const Patch& patch, const LatticeGrid& grid, int k = 8,
                                             unsigned threads = 0);

inline const std::vector<long>& fibonacci_numbers() {
    static const std::vector<long> f = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    return f;
}
bool is_fibonacci(long d);

struct LineSignature {
    long index = 0;  // row y or column x
    std::vector<long> distances;
    std::vector<bool> fibonacci;
    std::optional<long> minimal() const {
        if (distances.empty()) return std::nullopt;
        return distances.front();
    }
};

struct SignatureReport {
    Axis axis = Axis::Horizontal;
    long motif = 0;
    std::vector<LineSignature> lines;
    long lines_with_recurrence = 0;
    long minimal_fibonacci = 0;
    double fraction = 0;  // minimal_fibonacci / lines_with_recurrence
};

/// Every d for which the sequence agrees with itself shifted by d on at least
/// `motif` consecutive positions.
LineSignature line_signature(const std::vector<int>& line, long motif);
SignatureReport fib_signature(const Patch& patch, Axis axis, long motif);

/// A line y = slope x + intercept, or x = intercept when the slope is absent.
struct BoundaryLine {
    std::optional<Golden> slope;
    Golden intercept;

    friend bool operator==(const BoundaryLine&, const BoundaryLine&) = default;
    std::string to_string() const;
};

/// "0,1,inf,phi,1/phi"
std::vector<std::optional<Golden>> parse_slopes(const std::string& text);

enum class Anchoring {
    None,          // dots are taken at their positions
    Intersection,  // a crossing of two detected lines is moved to the origin
};

struct InferOptions {
    long snap_bound = 4;  // intercepts u + v phi with u, v in Z/2, |u|, |v| <= bound
    double delta = 1e-3;  // slack added to intercept intervals, coefficient units
    int neighbours = 8;
    int min_support = 3;
    double max_misclassified = 0.005;
    Anchoring anchoring = Anchoring::Intersection;
};

struct InferenceResult {
    Partition partition;
    std::vector<BoundaryLine> lines;  // representatives, one per lattice class
    GPoint offset;                    // dots were moved by -offset before labelling
    long misclassified = 0;
    double misclassified_fraction = 0;
    long dropped_lines = 0;  // detected but unsnappable or explaining too few dots
};

/// Throws Unresolvable when no arrangement explains the dots well enough.
InferenceResult infer_partition(const DotPattern& dots,
                                const std::vector<std::optional<Golden>>& slopes,
                                const InferOptions& options = {});

struct FrequencyRow {
    int label = 0;
    long count = 0;
    double fraction = 0;
    Golden area_fraction;
    double deviation = 0;  // fraction - area_fraction
};

struct FrequencyReport {
    long cells = 0;
    std::vector<FrequencyRow> rows;
    double max_deviation = 0;
};

FrequencyReport frequency_report(const Patch& patch, const Partition& p);

std::string dots_to_csv(const DotPattern& dots);
DotPattern dots_from_csv(const std::string& text, const GMatrix2& matrix);

std::string dots_svg(const DotPattern& dots);
std::string partition_svg(const Partition& p);
std::string patch_svg(const Patch& patch);

}  // namespace wangtori
