// wangtori: solve, pull back, infer and verify Wang shifts on golden tori.

#include "wangtori/discovery.hpp"
#include "wangtori/registry.hpp"
#include "wangtori/symbolic.hpp"
#include "wangtori/tilesolver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace wangtori;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kError = 3, kUnsat = 4 };

bool g_json = false;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const json& report, const std::string& text) {
    if (g_json)
        std::cout << dump(report);
    else
        std::cout << text;
}

bool is_file(const std::string& s) { return std::filesystem::is_regular_file(s); }

Protoset resolve_protoset(const std::string& name) {
    if (is_file(name)) return protoset_from_json(json::parse(read_file(name)), name);
    return builtin_protoset(name);
}

Partition resolve_partition(const std::string& name) {
    if (is_file(name)) return partition_from_json(json::parse(read_file(name)));
    return builtin_partition(name);
}

Lattice2 resolve_lattice(const std::string& text) {
    if (text.find(';') != std::string::npos) return Lattice2::parse(text);
    return builtin_lattice(text);
}

GPoint parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw SyntaxError("expected \"x,y\", got \"" + text + "\"");
    return {Golden::parse(text.substr(0, comma)), Golden::parse(text.substr(comma + 1))};
}

std::pair<long, long> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw SyntaxError("expected \"a:b\", got \"" + text + "\"");
    return {std::stol(text.substr(0, colon)), std::stol(text.substr(colon + 1))};
}

struct LoadedPatch {
    Patch patch;
    std::optional<Protoset> protoset;
    std::string protoset_name;
};

LoadedPatch load_patch(const std::string& path) {
    LoadedPatch out;
    std::optional<Protoset> inline_set;
    out.patch = patch_from_json(json::parse(read_file(path)), &out.protoset_name, &inline_set);
    if (inline_set)
        out.protoset = inline_set;
    else if (!out.protoset_name.empty())
        out.protoset = resolve_protoset(out.protoset_name);
    return out;
}

json violations_json(const std::vector<Violation>& vs) {
    json arr = json::array();
    for (const auto& v : vs)
        arr.push_back({{"position", {v.position.x, v.position.y}},
                       {"axis", v.axis == Axis::Horizontal ? "horizontal" : "vertical"},
                       {"colors", {v.colors.first, v.colors.second}}});
    return arr;
}

std::string vec_string(Vec2i v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

std::string fixed(double x, int digits = 6) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

// ---- solve / validate ----------------------------------------------------

struct SolveArgs {
    std::string protoset, preassign, engine = "internal", out, dimacs, model;
    int width = 0, height = 0;
    uint64_t seed = 0;
    long timeout = 600;
};

int run_solve(const SolveArgs& a) {
    SolveRequest req;
    req.protoset = resolve_protoset(a.protoset);
    req.width = a.width;
    req.height = a.height;
    req.seed = a.seed;
    req.timeout = std::chrono::seconds(a.timeout);
    if (a.engine == "internal")
        req.engine = Engine::Internal;
    else if (a.engine == "dimacs-export")
        req.engine = Engine::DimacsExport;
    else if (a.engine == "dimacs-import")
        req.engine = Engine::DimacsImport;
    else
        throw std::invalid_argument("unknown engine " + a.engine);
    req.dimacs_path = a.dimacs;
    req.model_path = a.model;
    if (!a.preassign.empty()) {
        const auto eq = a.preassign.find('=');
        if (eq == std::string::npos || a.preassign.substr(0, eq) != "bottom")
            throw SyntaxError("--preassign expects bottom=K");
        const int tile = std::stoi(a.preassign.substr(eq + 1));
        for (int x = 0; x < a.width; ++x) req.preassigned[{x, 0}] = tile;
    }
    const auto res = solve_patch(req);
    const char* status = res.status == SolveStatus::Sat        ? "sat"
                         : res.status == SolveStatus::Unsat    ? "unsat"
                         : res.status == SolveStatus::Timeout  ? "timeout"
                                                               : "exported";
    json report{{"status", status}, {"width", a.width}, {"height", a.height}, {"seed", a.seed}};
    std::string text = std::string("status: ") + status + "\n";
    if (res.patch) {
        const auto violations = check_validity(*res.patch, req.protoset);
        report["violations"] = violations.size();
        text += "violations: " + std::to_string(violations.size()) + "\n";
        const std::string name = req.protoset.name().empty() ? a.protoset : req.protoset.name();
        json pj = patch_to_json(*res.patch, name);
        if (is_file(a.protoset)) pj["protoset"] = protoset_to_json(req.protoset);
        if (!a.out.empty()) {
            write_file(a.out, dump(pj));
            report["out"] = a.out;
            text += "wrote " + a.out + "\n";
        }
    }
    if (res.status == SolveStatus::Exported) {
        report["dimacs"] = a.dimacs;
        text += "wrote " + a.dimacs + "\n";
    }
    emit(report, text);
    return res.status == SolveStatus::Sat || res.status == SolveStatus::Exported ? kOk : kUnsat;
}

int run_validate(const std::string& path, const std::string& protoset) {
    auto loaded = load_patch(path);
    if (!protoset.empty()) loaded.protoset = resolve_protoset(protoset);
    if (!loaded.protoset) throw std::invalid_argument("patch names no protoset; pass --protoset");
    const auto violations = check_validity(loaded.patch, *loaded.protoset);
    json report{{"patch", path},
                {"cells", static_cast<long>(loaded.patch.width()) * loaded.patch.height()},
                {"violations", violations_json(violations)},
                {"valid", violations.empty()}};
    std::string text = std::to_string(violations.size()) + " violations\n";
    for (const auto& v : violations)
        text += "  " + vec_string(v.position) +
                (v.axis == Axis::Horizontal ? " horizontal " : " vertical ") +
                std::to_string(v.colors.first) + " != " + std::to_string(v.colors.second) + "\n";
    emit(report, text);
    return violations.empty() ? kOk : kFailed;
}

// ---- discovery -----------------------------------------------------------

int run_pullback(const std::string& path, const std::string& lattice, const std::string& out,
                 const std::string& svg, int k) {
    const auto loaded = load_patch(path);
    const Lattice2 lat = resolve_lattice(lattice);
    const auto dots = pullback_dots(loaded.patch, lat.basis(), path);
    const double score = resolvedness_score(dots, k);
    if (!out.empty()) write_file(out, dots_to_csv(dots));
    if (!svg.empty()) write_file(svg, dots_svg(dots));
    json report{{"lattice", lat.to_string()}, {"dots", dots.dots.size()}, {"score", score}, {"k", k}};
    emit(report, "lattice " + lat.to_string() + "\n" + std::to_string(dots.dots.size()) +
                     " dots, resolvedness " + fixed(score) + " (k=" + std::to_string(k) + ")\n");
    return kOk;
}

int run_search(const std::string& path, const std::string& grid, int top, int k, unsigned jobs) {
    const auto loaded = load_patch(path);
    const auto g = LatticeGrid::parse(grid);
    const auto cands = lattice_search(loaded.patch, g, k, jobs);
    json arr = json::array();
    std::string text = "rank  score     params               lattice\n";
    for (int i = 0; i < top && i < static_cast<int>(cands.size()); ++i) {
        const auto& c = cands[static_cast<size_t>(i)];
        arr.push_back({{"rank", i + 1},
                       {"params", c.params},
                       {"lattice", c.lattice.to_string()},
                       {"score", c.score}});
        std::string params;
        for (size_t j = 0; j < c.params.size(); ++j) params += (j ? "," : "") + std::to_string(c.params[j]);
        text += std::to_string(i + 1) + "     " + fixed(c.score) + "  " + params + "  " +
                c.lattice.to_string() + "\n";
    }
    emit(json{{"candidates", arr}, {"grid_size", g.size()}}, text);
    return kOk;
}

struct InferArgs {
    std::string dots, lattice = "gamma24", slopes = "0,1,inf,phi,1/phi", out, svg;
    InferOptions options;
    bool no_anchor = false;
};

int run_infer(const InferArgs& a) {
    const Lattice2 lat = resolve_lattice(a.lattice);
    const auto dots = dots_from_csv(read_file(a.dots), lat.basis());
    InferOptions opt = a.options;
    if (a.no_anchor) opt.anchoring = Anchoring::None;
    const auto res = infer_partition(dots, parse_slopes(a.slopes), opt);
    if (!a.out.empty()) write_file(a.out, dump(partition_to_json(res.partition)));
    if (!a.svg.empty()) write_file(a.svg, partition_svg(res.partition));
    json lines = json::array();
    std::string text;
    for (const auto& l : res.lines) {
        lines.push_back(l.to_string());
        text += "  " + l.to_string() + "\n";
    }
    json report{{"atoms", res.partition.size()},
                {"lines", lines},
                {"offset", {res.offset.x.to_string(), res.offset.y.to_string()}},
                {"misclassified", res.misclassified},
                {"misclassified_fraction", res.misclassified_fraction},
                {"dropped_lines", res.dropped_lines}};
    emit(report, std::to_string(res.partition.size()) + " atoms, " +
                     std::to_string(res.misclassified) + " misclassified dots\nlines:\n" + text);
    return kOk;
}

// ---- symbolic ------------------------------------------------------------

int run_encode(const std::string& partition, const std::string& point, const std::string& window,
               const std::string& direction, const std::string& protoset, const std::string& out,
               const std::string& svg) {
    const Partition p = resolve_partition(partition);
    const auto patch = sr_encode(p, parse_point(point), parse_point(direction), Window::parse(window));
    std::string name = protoset;
    if (name.empty() && !is_file(partition)) name = partition_protoset(partition);
    json report{{"width", patch.width()}, {"height", patch.height()}};
    std::string text = "encoded " + std::to_string(patch.width()) + "x" + std::to_string(patch.height()) + "\n";
    int code = kOk;
    if (!name.empty()) {
        const auto violations = check_validity(patch, resolve_protoset(name));
        report["violations"] = violations.size();
        text += "violations: " + std::to_string(violations.size()) + "\n";
        if (!violations.empty()) code = kFailed;
    }
    if (!out.empty()) write_file(out, dump(patch_to_json(patch, name)));
    if (!svg.empty()) write_file(svg, patch_svg(patch));
    emit(report, text);
    return code;
}

int run_orbit_boundary(const std::string& partition, const std::string& point,
                       const std::string& window, const std::string& out, bool strips) {
    const Partition p = resolve_partition(partition);
    const auto hits = boundary_hits(p, parse_point(point), Window::parse(window));
    if (!out.empty()) write_file(out, hits_to_csv(hits));
    json report{{"hits", hits.positions.size()}};
    std::string text = std::to_string(hits.positions.size()) + " boundary hits\n";
    if (strips) {
        json dirs = json::array();
        for (const auto& d : nonexpansive_directions(hits)) {
            dirs.push_back({{"direction", {d.direction.x, d.direction.y}}, {"strips", d.strips.size()}});
            text += "direction " + vec_string(d.direction) + ": " + std::to_string(d.strips.size()) +
                    " strips\n";
        }
        report["directions"] = dirs;
    }
    emit(report, text);
    return kOk;
}

int run_fib_word(const std::string& x, const std::string& modulus, const std::string& cut,
                 const std::string& range) {
    const auto [n0, n1] = parse_range(range);
    const std::string word =
        rotation1d_encode(Golden::parse(x), Rotation1D(Golden::parse(modulus), Golden::parse(cut)), n0, n1);
    emit(json{{"word", word}, {"range", {n0, n1}}}, word + "\n");
    return kOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
    std::string partition, protoset, window, point = "1/10,1/10", direction = "-1,1";
    int label = 0;
    int trials = 20;
    uint64_t seed = 1;
    double tolerance = 0.015;
};

Protoset verify_protoset(const VerifyArgs& a) {
    if (!a.protoset.empty()) return resolve_protoset(a.protoset);
    if (is_file(a.partition)) throw std::invalid_argument("--protoset is required for partition files");
    return builtin_protoset(partition_protoset(a.partition));
}

std::string axis_name(Axis a) { return a == Axis::Horizontal ? "horizontal" : "vertical"; }

int finish(bool ok, json report, const std::string& text) {
    report["ok"] = ok;
    emit(report, text + (ok ? "PASS\n" : "FAIL\n"));
    return ok ? kOk : kFailed;
}

int verify_refinement(const VerifyArgs& a) {
    const Partition p = resolve_partition(a.partition);
    const Protoset t = verify_protoset(a);
    const auto ref = refine_side_partitions(side_partitions_from(p, t), p);
    const bool renames = static_cast<bool>(color_renaming(ref.tiles, t));
    const bool ok = ref.tiles.size() == t.size() && renames;
    return finish(ok, {{"tiles", ref.tiles.size()}, {"expected", t.size()}, {"color_renaming", renames}},
                  "refinement yields " + std::to_string(ref.tiles.size()) + " tiles (expected " +
                      std::to_string(t.size()) + "), " + (renames ? "" : "not ") +
                      "equal up to color renaming\n");
}

int verify_consistency(const VerifyArgs& a) {
    const Partition p = resolve_partition(a.partition);
    const auto rep = consistency_check(p, verify_protoset(a));
    json arr = json::array();
    long adjacent_only = 0;
    std::string text = std::to_string(rep.pairs_checked) + " ordered pairs, " +
                       std::to_string(rep.mismatches.size()) + " mismatches\n";
    for (const auto& m : rep.mismatches) {
        if (m.adjacent) ++adjacent_only;
        arr.push_back({{"axis", axis_name(m.axis)},
                       {"first", m.first},
                       {"second", m.second},
                       {"adjacent", m.adjacent},
                       {"colors_match", m.colors_match}});
        text += "  " + axis_name(m.axis) + " " + std::to_string(m.first) + " " +
                std::to_string(m.second) + (m.adjacent ? " adjacent, colors differ" : " colors match, not adjacent") +
                "\n";
    }
    return finish(rep.ok(),
                  {{"pairs", rep.pairs_checked}, {"mismatches", arr}, {"forbidden_adjacencies", adjacent_only}},
                  text);
}

int verify_invariance(const VerifyArgs& a) {
    const Partition p = resolve_partition(a.partition);
    const Window w = Window::parse(a.window.empty() ? "-15:15,-15:15" : a.window);
    const auto set = invariance_set(p, a.label, w);
    json arr = json::array();
    std::string text = "atom " + std::to_string(a.label) + " invariant under:";
    for (const auto& n : set) {
        arr.push_back({n.x, n.y});
        text += " " + vec_string(n);
    }
    const bool ok = set == std::vector<Vec2i>{{0, 0}};
    return finish(ok, {{"label", a.label}, {"translations", arr}}, text + "\n");
}

int verify_subset(const VerifyArgs& a) {
    const Partition p = resolve_partition(a.partition);
    const Window w = Window::parse(a.window.empty() ? "0:29,0:29" : a.window);
    const auto rep = empirical_subset_check(p, verify_protoset(a), a.trials, w, a.seed);
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back({{"start", {f.start.x.to_string(), f.start.y.to_string()}},
                         {"violations", f.violations.size()}});
    return finish(rep.ok(), {{"trials", rep.trials}, {"failures", fails}},
                  std::to_string(rep.trials) + " random orbits, " + std::to_string(rep.failures.size()) +
                      " with violations\n");
}

int verify_frequency(const VerifyArgs& a) {
    const Partition p = resolve_partition(a.partition);
    const Protoset t = verify_protoset(a);
    const Window w = Window::parse(a.window.empty() ? "0:99,0:99" : a.window);
    const auto patch = sr_encode(p, parse_point(a.point), parse_point(a.direction), w);
    const auto violations = check_validity(patch, t);
    const auto rep = frequency_report(patch, p);
    json rows = json::array();
    std::string text = "label  count  fraction  area fraction\n";
    for (const auto& r : rep.rows) {
        rows.push_back({{"label", r.label},
                        {"count", r.count},
                        {"fraction", r.fraction},
                        {"area_fraction", r.area_fraction.to_string()},
                        {"area_fraction_approx", r.area_fraction.to_double()},
                        {"deviation", r.deviation}});
        text += std::to_string(r.label) + "  " + std::to_string(r.count) + "  " + fixed(r.fraction, 4) +
                "  " + r.area_fraction.to_string() + " ~ " + fixed(r.area_fraction.to_double(), 4) + "\n";
    }
    text += "violations: " + std::to_string(violations.size()) +
            ", max deviation " + fixed(rep.max_deviation, 4) + "\n";
    const bool ok = violations.empty() && rep.max_deviation <= a.tolerance;
    return finish(ok,
                  {{"cells", rep.cells},
                   {"rows", rows},
                   {"max_deviation", rep.max_deviation},
                   {"tolerance", a.tolerance},
                   {"violations", violations.size()}},
                  text);
}

const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const SyntaxError*>(&e)) return "syntax";
    if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant";
    if (dynamic_cast<const LabelMismatch*>(&e)) return "label-mismatch";
    if (dynamic_cast<const DirectionParallelToBoundary*>(&e)) return "parallel-direction";
    if (dynamic_cast<const Unresolvable*>(&e)) return "unresolvable";
    if (dynamic_cast<const json::exception*>(&e)) return "json";
    if (dynamic_cast<const std::out_of_range*>(&e)) return "not-found";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
    return "runtime";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wang shifts, golden tori and Markov partitions"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "machine-readable output");
    std::function<int()> action;

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "solve a rectangular patch");
    s->add_option("--protoset", solve.protoset, "built-in name or JSON file")->required();
    s->add_option("--width", solve.width)->required()->check(CLI::PositiveNumber);
    s->add_option("--height", solve.height)->required()->check(CLI::PositiveNumber);
    s->add_option("--preassign", solve.preassign, "bottom=K");
    s->add_option("--engine", solve.engine)->check(CLI::IsMember({"internal", "dimacs-export", "dimacs-import"}));
    s->add_option("--seed", solve.seed);
    s->add_option("--timeout", solve.timeout, "seconds");
    s->add_option("--dimacs", solve.dimacs, "CNF written by dimacs-export");
    s->add_option("--model", solve.model, "model read by dimacs-import");
    s->add_option("--out", solve.out);
    unsigned jobs = 1;
    s->add_option("--jobs", jobs, "accepted for symmetry; the internal solver is sequential");
    s->callback([&] { action = [&] { return run_solve(solve); }; });

    std::string patch_path, protoset_name;
    auto* v = app.add_subcommand("validate", "check a patch against its protoset");
    v->add_option("patch", patch_path)->required();
    v->add_option("--protoset", protoset_name);
    v->callback([&] { action = [&] { return run_validate(patch_path, protoset_name); }; });

    std::string lattice = "gamma0", out, svg;
    int k = 8;
    auto* pb = app.add_subcommand("pullback", "dot pattern of a patch on a torus");
    pb->add_option("patch", patch_path)->required();
    pb->add_option("--lattice", lattice, "built-in name or \"gx,gy;hx,hy\"");
    pb->add_option("--out", out, "CSV of dots");
    pb->add_option("--svg", svg);
    pb->add_option("-k,--neighbours", k);
    pb->callback([&] { action = [&] { return run_pullback(patch_path, lattice, out, svg, k); }; });

    std::string grid = "default";
    int top = 5;
    auto* sl = app.add_subcommand("search-lattice", "rank lattices by resolvedness");
    sl->add_option("patch", patch_path)->required();
    sl->add_option("--grid", grid, "\"default\" or five ';' separated integer lists");
    sl->add_option("--top", top);
    sl->add_option("-k,--neighbours", k);
    sl->add_option("--jobs", jobs);
    sl->callback([&] { action = [&] { return run_search(patch_path, grid, top, k, jobs); }; });

    InferArgs infer;
    auto* ip = app.add_subcommand("infer-partition", "exact partition from a dot pattern");
    ip->add_option("dots", infer.dots)->required();
    ip->add_option("--lattice", infer.lattice);
    ip->add_option("--slopes", infer.slopes);
    ip->add_option("--snap-bound", infer.options.snap_bound);
    ip->add_option("--delta", infer.options.delta);
    ip->add_option("--min-support", infer.options.min_support);
    ip->add_option("--max-misclassified", infer.options.max_misclassified);
    ip->add_flag("--no-anchor", infer.no_anchor, "keep dots at their pulled-back positions");
    ip->add_option("--out", infer.out);
    ip->add_option("--svg", infer.svg);
    ip->callback([&] { action = [&] { return run_infer(infer); }; });

    std::string partition, point, window, direction = "-1,1";
    auto* en = app.add_subcommand("encode", "configuration spelled by an orbit");
    en->add_option("--partition", partition)->required();
    en->add_option("--point", point)->required();
    en->add_option("--window", window)->required();
    en->add_option("--direction", direction);
    en->add_option("--protoset", protoset_name, "checked for validity");
    en->add_option("--out", out);
    en->add_option("--svg", svg);
    en->callback([&] {
        action = [&] { return run_encode(partition, point, window, direction, protoset_name, out, svg); };
    });

    bool strips = false;
    auto* ob = app.add_subcommand("orbit-boundary", "orbit positions on atom boundaries");
    ob->add_option("--partition", partition)->required();
    ob->add_option("--point", point)->required();
    ob->add_option("--window", window)->required();
    ob->add_option("--out", out, "CSV of hits");
    ob->add_flag("--strips", strips, "group hits into strips along nonexpansive directions");
    ob->callback([&] { action = [&] { return run_orbit_boundary(partition, point, window, out, strips); }; });

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "dynamical checks of a partition and protoset");
    ver->require_subcommand(1);
    auto add_common = [&](CLI::App* c) {
        c->add_option("--partition", va.partition)->required();
        c->add_option("--protoset", va.protoset);
    };
    auto* vr = ver->add_subcommand("refinement", "side partitions refine to the protoset");
    add_common(vr);
    vr->callback([&] { action = [&] { return verify_refinement(va); }; });
    auto* vc = ver->add_subcommand("consistency", "adjacency of atoms matches colors");
    add_common(vc);
    vc->callback([&] { action = [&] { return verify_consistency(va); }; });
    auto* vi = ver->add_subcommand("invariance", "atom is invariant only under (0,0)");
    add_common(vi);
    vi->add_option("--label", va.label);
    vi->add_option("--window", va.window);
    vi->callback([&] { action = [&] { return verify_invariance(va); }; });
    auto* vs = ver->add_subcommand("subset", "random orbits encode valid patches");
    add_common(vs);
    vs->add_option("--trials", va.trials);
    vs->add_option("--window", va.window);
    vs->add_option("--seed", va.seed);
    vs->callback([&] { action = [&] { return verify_subset(va); }; });
    auto* vf = ver->add_subcommand("frequency", "tile frequencies match atom areas");
    add_common(vf);
    vf->add_option("--point", va.point);
    vf->add_option("--direction", va.direction);
    vf->add_option("--window", va.window);
    vf->add_option("--tolerance", va.tolerance);
    vf->callback([&] { action = [&] { return verify_frequency(va); }; });

    std::string x = "0", modulus = "phi+1", cut = "phi", range = "0:20";
    auto* fw = app.add_subcommand("fib-word", "coding of a circle rotation");
    fw->add_option("--x", x);
    fw->add_option("--modulus", modulus);
    fw->add_option("--cut", cut);
    fw->add_option("--range", range);
    fw->callback([&] { action = [&] { return run_fib_word(x, modulus, cut, range); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        const json err{{"error", error_kind(e)}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return kError;
    }
}
