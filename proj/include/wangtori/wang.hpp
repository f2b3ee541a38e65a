#pragma once

// Wang tiles, protosets and finite configurations.

#include "wangtori/golden.hpp"

#include <json.hpp>

#include <array>
#include <map>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wangtori {

using ColorId = int;
using TileIndex = int;

inline constexpr TileIndex kUnassigned = -1;

struct Vec2i {
    long x = 0;
    long y = 0;

    Vec2i operator+(const Vec2i& o) const { return {x + o.x, y + o.y}; }
    Vec2i operator-(const Vec2i& o) const { return {x - o.x, y - o.y}; }
    Vec2i operator-() const { return {-x, -y}; }
    friend auto operator<=>(const Vec2i&, const Vec2i&) = default;
};

/// Edge colors in the order (right, top, left, bottom).
struct WangTile {
    ColorId r = 0;
    ColorId t = 0;
    ColorId l = 0;
    ColorId b = 0;

    friend auto operator<=>(const WangTile&, const WangTile&) = default;
};

struct DuplicateTile : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct MalformedRecord : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct NoCommonWindow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Protoset {
public:
    Protoset() = default;
    explicit Protoset(std::vector<WangTile> tiles, std::string name = {});

    const std::vector<WangTile>& tiles() const { return tiles_; }
    const WangTile& operator[](TileIndex i) const { return tiles_.at(static_cast<size_t>(i)); }
    int size() const { return static_cast<int>(tiles_.size()); }
    const std::string& name() const { return name_; }

private:
    std::vector<WangTile> tiles_;
    std::string name_;
};

/// Builds a protoset from raw (r, t, l, b) records.
Protoset load_protoset(const std::vector<std::vector<long>>& records, std::string name = {});

/// Colour bijections (horizontal and vertical separately) taking the tile set of
/// `a` onto that of `b`, tile order ignored. Nothing when none exists.
struct ColorRenaming {
    std::map<ColorId, ColorId> horizontal;
    std::map<ColorId, ColorId> vertical;
};
std::optional<ColorRenaming> color_renaming(const Protoset& a, const Protoset& b);

struct ForbiddenPairs {
    std::vector<std::pair<TileIndex, TileIndex>> horizontal;  // Right(i) != Left(j)
    std::vector<std::pair<TileIndex, TileIndex>> vertical;    // Top(i) != Bottom(j)
};

ForbiddenPairs forbidden_pairs(const Protoset& protoset);

/// A rectangular window of a configuration. Cell (i, j), 0 <= i < width,
/// 0 <= j < height, sits at position origin + (i, j); cells are row-major
/// with j = 0 the bottom row.
class Patch {
public:
    Patch() = default;
    Patch(Vec2i origin, int width, int height, TileIndex fill = kUnassigned);

    Vec2i origin() const { return origin_; }
    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<TileIndex>& cells() const { return cells_; }

    bool contains(Vec2i pos) const;
    TileIndex at(Vec2i pos) const;  // absolute position
    void set(Vec2i pos, TileIndex tile);
    TileIndex local(int i, int j) const { return cells_[static_cast<size_t>(j) * width_ + i]; }
    void set_local(int i, int j, TileIndex tile) {
        cells_[static_cast<size_t>(j) * width_ + i] = tile;
    }
    bool fully_assigned() const;

    Patch shifted(Vec2i n) const;

    friend bool operator==(const Patch&, const Patch&) = default;

private:
    Vec2i origin_;
    int width_ = 0;
    int height_ = 0;
    std::vector<TileIndex> cells_;
};

enum class Axis { Horizontal, Vertical };

struct Violation {
    Vec2i position;  // lower/left cell of the mismatching pair
    Axis axis;
    std::pair<ColorId, ColorId> colors;

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> check_validity(const Patch& patch, const Protoset& protoset);

/// Translates the patch by n: the cell at m moves to m + n.
Patch shift_patch(const Patch& patch, Vec2i n);

struct ConfigDistance {
    Rational value;           // 2^-m, or 0
    bool agrees_on_window;    // no disagreement inside the shared window
};

/// Ultrametric 2^-m where m is the smallest Chebyshev norm of a disagreeing
/// position inside the window both patches cover.
ConfigDistance config_distance(const Patch& x, const Patch& y);

// JSON file formats. Writers are canonical (sorted keys, integers only).
nlohmann::json protoset_to_json(const Protoset& protoset);
Protoset protoset_from_json(const nlohmann::json& j, std::string name = {});
nlohmann::json patch_to_json(const Patch& patch, const std::string& protoset_name);
Patch patch_from_json(const nlohmann::json& j, std::string* protoset_name = nullptr,
                      std::optional<Protoset>* inline_protoset = nullptr);

}  // namespace wangtori
