#include "wangtori/wang.hpp"

#include <algorithm>
#include <set>

namespace wangtori {

Protoset::Protoset(std::vector<WangTile> tiles, std::string name)
    : tiles_(std::move(tiles)), name_(std::move(name)) {
    if (tiles_.empty()) throw MalformedRecord("protoset must not be empty");
    std::set<WangTile> seen;
    for (size_t i = 0; i < tiles_.size(); ++i) {
        const WangTile& t = tiles_[i];
        if (t.r < 0 || t.t < 0 || t.l < 0 || t.b < 0)
            throw MalformedRecord("tile " + std::to_string(i) + " has a negative color");
        if (!seen.insert(t).second)
            throw DuplicateTile("tile " + std::to_string(i) + " duplicates an earlier tile");
    }
}

Protoset load_protoset(const std::vector<std::vector<long>>& records, std::string name) {
    std::vector<WangTile> tiles;
    tiles.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.size() != 4)
            throw MalformedRecord("record " + std::to_string(i) + " does not have 4 entries");
        for (long c : rec)
            if (c < 0 || c > 1'000'000)
                throw MalformedRecord("record " + std::to_string(i) + " has an invalid color");
        tiles.push_back({static_cast<ColorId>(rec[0]), static_cast<ColorId>(rec[1]),
                         static_cast<ColorId>(rec[2]), static_cast<ColorId>(rec[3])});
    }
    return Protoset(std::move(tiles), std::move(name));
}

ForbiddenPairs forbidden_pairs(const Protoset& protoset) {
    ForbiddenPairs out;
    const int n = protoset.size();
    for (TileIndex i = 0; i < n; ++i) {
        for (TileIndex j = 0; j < n; ++j) {
            if (protoset[i].r != protoset[j].l) out.horizontal.emplace_back(i, j);
            if (protoset[i].t != protoset[j].b) out.vertical.emplace_back(i, j);
        }
    }
    return out;
}

Patch::Patch(Vec2i origin, int width, int height, TileIndex fill)
    : origin_(origin), width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("patch dimensions must be positive");
    cells_.assign(static_cast<size_t>(width) * height, fill);
}

bool Patch::contains(Vec2i pos) const {
    return pos.x >= origin_.x && pos.y >= origin_.y && pos.x < origin_.x + width_ &&
           pos.y < origin_.y + height_;
}

TileIndex Patch::at(Vec2i pos) const {
    if (!contains(pos)) throw IndexOutOfRange("position outside patch");
    return local(static_cast<int>(pos.x - origin_.x), static_cast<int>(pos.y - origin_.y));
}

void Patch::set(Vec2i pos, TileIndex tile) {
    if (!contains(pos)) throw IndexOutOfRange("position outside patch");
    set_local(static_cast<int>(pos.x - origin_.x), static_cast<int>(pos.y - origin_.y), tile);
}

bool Patch::fully_assigned() const {
    return std::none_of(cells_.begin(), cells_.end(), [](TileIndex t) { return t == kUnassigned; });
}

Patch Patch::shifted(Vec2i n) const {
    Patch out = *this;
    out.origin_ = origin_ + n;
    return out;
}

std::vector<Violation> check_validity(const Patch& patch, const Protoset& protoset) {
    for (TileIndex t : patch.cells())
        if (t != kUnassigned && (t < 0 || t >= protoset.size()))
            throw IndexOutOfRange("tile index " + std::to_string(t) + " not in protoset");

    std::vector<Violation> out;
    const Vec2i o = patch.origin();
    for (int j = 0; j < patch.height(); ++j) {
        for (int i = 0; i < patch.width(); ++i) {
            const TileIndex here = patch.local(i, j);
            if (here == kUnassigned) continue;
            const WangTile& a = protoset[here];
            if (i + 1 < patch.width()) {
                const TileIndex right = patch.local(i + 1, j);
                if (right != kUnassigned && a.r != protoset[right].l)
                    out.push_back({{o.x + i, o.y + j}, Axis::Horizontal, {a.r, protoset[right].l}});
            }
            if (j + 1 < patch.height()) {
                const TileIndex up = patch.local(i, j + 1);
                if (up != kUnassigned && a.t != protoset[up].b)
                    out.push_back({{o.x + i, o.y + j}, Axis::Vertical, {a.t, protoset[up].b}});
            }
        }
    }
    return out;
}

Patch shift_patch(const Patch& patch, Vec2i n) { return patch.shifted(n); }

ConfigDistance config_distance(const Patch& x, const Patch& y) {
    const long x0 = std::max(x.origin().x, y.origin().x);
    const long y0 = std::max(x.origin().y, y.origin().y);
    const long x1 = std::min(x.origin().x + x.width(), y.origin().x + y.width());
    const long y1 = std::min(x.origin().y + x.height(), y.origin().y + y.height());
    if (x0 > 0 || y0 > 0 || x1 <= 0 || y1 <= 0)
        throw NoCommonWindow("patches do not share a window containing the origin");

    long best = -1;
    for (long py = y0; py < y1; ++py) {
        for (long px = x0; px < x1; ++px) {
            if (x.at({px, py}) == y.at({px, py})) continue;
            const long norm = std::max(std::labs(px), std::labs(py));
            if (best < 0 || norm < best) best = norm;
        }
    }
    if (best < 0) return {Rational(0), true};
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(best));
    return {Rational(Integer(1), den), false};
}

nlohmann::json protoset_to_json(const Protoset& protoset) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : protoset.tiles()) arr.push_back({t.r, t.t, t.l, t.b});
    return arr;
}

Protoset protoset_from_json(const nlohmann::json& j, std::string name) {
    if (!j.is_array()) throw MalformedRecord("protoset JSON must be an array");
    std::vector<std::vector<long>> records;
    for (const auto& rec : j) {
        if (!rec.is_array()) throw MalformedRecord("protoset record must be an array");
        std::vector<long> r;
        for (const auto& c : rec) {
            if (!c.is_number_integer()) throw MalformedRecord("color must be an integer");
            r.push_back(c.get<long>());
        }
        records.push_back(std::move(r));
    }
    return load_protoset(records, std::move(name));
}

nlohmann::json patch_to_json(const Patch& patch, const std::string& protoset_name) {
    nlohmann::json j;
    j["origin"] = {patch.origin().x, patch.origin().y};
    j["width"] = patch.width();
    j["height"] = patch.height();
    j["cells"] = patch.cells();
    j["protoset"] = protoset_name;
    return j;
}

Patch patch_from_json(const nlohmann::json& j, std::string* protoset_name,
                      std::optional<Protoset>* inline_protoset) {
    try {
        const auto& o = j.at("origin");
        Patch p({o.at(0).get<long>(), o.at(1).get<long>()}, j.at("width").get<int>(),
                j.at("height").get<int>());
        const auto& cells = j.at("cells");
        if (cells.size() != p.cells().size()) throw MalformedRecord("cell count mismatch");
        for (int jj = 0; jj < p.height(); ++jj)
            for (int ii = 0; ii < p.width(); ++ii) {
                const int v = cells.at(static_cast<size_t>(jj) * p.width() + ii).get<int>();
                p.set_local(ii, jj, v < 0 ? kUnassigned : v);
            }
        if (j.contains("protoset")) {
            const auto& ps = j.at("protoset");
            if (ps.is_string()) {
                if (protoset_name) *protoset_name = ps.get<std::string>();
            } else if (inline_protoset) {
                *inline_protoset = protoset_from_json(ps);
            }
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(std::string("patch JSON: ") + e.what());
    }
}

}  // namespace wangtori

namespace wangtori {

namespace {

struct Bijection {
    std::map<ColorId, ColorId> fwd;
    std::map<ColorId, ColorId> back;

    // Returns false on conflict; `added` records new entries for undo.
    bool bind(ColorId x, ColorId y, std::vector<ColorId>& added) {
        auto f = fwd.find(x);
        auto b = back.find(y);
        if (f != fwd.end() || b != back.end()) return f != fwd.end() && f->second == y;
        fwd[x] = y;
        back[y] = x;
        added.push_back(x);
        return true;
    }
    void undo(const std::vector<ColorId>& added) {
        for (ColorId x : added) {
            back.erase(fwd[x]);
            fwd.erase(x);
        }
    }
};

bool match_tiles(const std::vector<WangTile>& a, const std::vector<WangTile>& b, size_t i,
                 std::vector<bool>& used, Bijection& h, Bijection& v) {
    if (i == a.size()) return true;
    for (size_t j = 0; j < b.size(); ++j) {
        if (used[j]) continue;
        std::vector<ColorId> ha, va;
        const bool ok = h.bind(a[i].r, b[j].r, ha) && h.bind(a[i].l, b[j].l, ha) &&
                        v.bind(a[i].t, b[j].t, va) && v.bind(a[i].b, b[j].b, va);
        if (ok) {
            used[j] = true;
            if (match_tiles(a, b, i + 1, used, h, v)) return true;
            used[j] = false;
        }
        h.undo(ha);
        v.undo(va);
    }
    return false;
}

}  // namespace

std::optional<ColorRenaming> color_renaming(const Protoset& a, const Protoset& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<bool> used(static_cast<size_t>(b.size()), false);
    Bijection h, v;
    if (!match_tiles(a.tiles(), b.tiles(), 0, used, h, v)) return std::nullopt;
    return ColorRenaming{h.fwd, v.fwd};
}

}  // namespace wangtori
