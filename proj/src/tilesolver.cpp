#include "wangtori/tilesolver.hpp"

#include "wangtori/sat.hpp"

#include <fstream>
#include <sstream>

namespace wangtori {

void validate_request(const SolveRequest& request) {
    if (request.width <= 0 || request.height <= 0)
        throw std::invalid_argument("window dimensions must be positive");
    for (const auto& [pos, tile] : request.preassigned) {
        if (pos.first < 0 || pos.second < 0 || pos.first >= request.width ||
            pos.second >= request.height)
            throw IndexOutOfRange("preassigned position outside the window");
        if (tile < 0 || tile >= request.protoset.size())
            throw IndexOutOfRange("preassigned tile index out of range");
    }
}

VariableMap variable_map(const SolveRequest& request) {
    return {request.width, request.height, request.protoset.size()};
}

Cnf encode_cnf(const SolveRequest& request) {
    validate_request(request);
    const VariableMap vm = variable_map(request);
    const int W = request.width;
    const int H = request.height;
    const int T = request.protoset.size();
    const ForbiddenPairs fp = forbidden_pairs(request.protoset);

    Cnf cnf;
    cnf.num_vars = vm.num_vars();
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            std::vector<int> alo;
            for (TileIndex t = 0; t < T; ++t) alo.push_back(vm.var(x, y, t));
            cnf.clauses.push_back(std::move(alo));
            for (TileIndex s = 0; s < T; ++s)
                for (TileIndex t = s + 1; t < T; ++t)
                    cnf.clauses.push_back({-vm.var(x, y, s), -vm.var(x, y, t)});
        }
    }
    for (int y = 0; y < H; ++y)
        for (int x = 0; x + 1 < W; ++x)
            for (const auto& [i, j] : fp.horizontal)
                cnf.clauses.push_back({-vm.var(x, y, i), -vm.var(x + 1, y, j)});
    for (int y = 0; y + 1 < H; ++y)
        for (int x = 0; x < W; ++x)
            for (const auto& [i, j] : fp.vertical)
                cnf.clauses.push_back({-vm.var(x, y, i), -vm.var(x, y + 1, j)});
    for (const auto& [pos, tile] : request.preassigned)
        cnf.clauses.push_back({vm.var(pos.first, pos.second, tile)});
    return cnf;
}

void write_dimacs(const Cnf& cnf, std::ostream& out) {
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& c : cnf.clauses) {
        for (int l : c) out << l << ' ';
        out << "0\n";
    }
}

void export_dimacs(const Cnf& cnf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_dimacs(cnf, out);
}

Cnf read_dimacs(std::istream& in) {
    Cnf cnf;
    std::string line;
    bool header = false;
    size_t declared = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> cnf.num_vars >> declared) || fmt != "cnf")
                throw ParseError("malformed DIMACS header: " + line);
            header = true;
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        int lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::abs(lit) > cnf.num_vars) throw ParseError("literal exceeds variable count");
                current.push_back(lit);
            }
        }
        if (!ls.eof()) throw ParseError("non-integer token in clause: " + line);
    }
    if (!header) throw ParseError("missing DIMACS header");
    if (!current.empty()) cnf.clauses.push_back(std::move(current));
    if (cnf.clauses.size() != declared) throw ParseError("clause count does not match header");
    return cnf;
}

std::vector<int> read_model(std::istream& in) {
    std::vector<int> lits;
    std::string tok;
    while (in >> tok) {
        if (tok == "v" || tok == "s" || tok == "SAT" || tok == "SATISFIABLE") continue;
        if (tok == "UNSAT" || tok == "UNSATISFIABLE") throw ParseError("model file reports UNSAT");
        try {
            size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw ParseError("bad literal token '" + tok + "'");
            if (v == 0) break;
            lits.push_back(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad literal token '" + tok + "'");
        }
    }
    return lits;
}

Patch decode_model(const std::vector<int>& literals, const VariableMap& map) {
    std::vector<uint8_t> truth(static_cast<size_t>(map.num_vars()) + 1, 0);
    for (int l : literals) {
        if (l > 0 && l <= map.num_vars()) truth[static_cast<size_t>(l)] = 1;
    }
    Patch patch({0, 0}, map.width, map.height);
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            TileIndex chosen = kUnassigned;
            for (TileIndex t = 0; t < map.num_tiles; ++t) {
                if (!truth[static_cast<size_t>(map.var(x, y, t))]) continue;
                if (chosen != kUnassigned)
                    throw InconsistentModel("cell (" + std::to_string(x) + "," + std::to_string(y) +
                                            ") has two tiles");
                chosen = t;
            }
            if (chosen == kUnassigned)
                throw InconsistentModel("cell (" + std::to_string(x) + "," + std::to_string(y) +
                                        ") has no tile");
            patch.set_local(x, y, chosen);
        }
    }
    return patch;
}

Patch import_model(const std::string& path, const VariableMap& map) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path);
    return decode_model(read_model(in), map);
}

SolveResult solve_patch(const SolveRequest& request) {
    validate_request(request);
    const VariableMap vm = variable_map(request);

    switch (request.engine) {
        case Engine::DimacsExport: {
            if (request.dimacs_path.empty()) throw std::invalid_argument("no DIMACS output path");
            export_dimacs(encode_cnf(request), request.dimacs_path);
            return {SolveStatus::Exported, std::nullopt};
        }
        case Engine::DimacsImport: {
            if (request.model_path.empty()) throw std::invalid_argument("no model input path");
            Patch p = import_model(request.model_path, vm);
            for (const auto& [pos, tile] : request.preassigned)
                if (p.local(pos.first, pos.second) != tile)
                    throw InconsistentModel("model ignores a preassigned cell");
            if (!check_validity(p, request.protoset).empty())
                throw InconsistentModel("imported model is not a valid patch");
            return {SolveStatus::Sat, std::move(p)};
        }
        case Engine::Internal:
            break;
    }

    const Cnf cnf = encode_cnf(request);
    sat::Solver solver(cnf.num_vars, request.seed);
    for (const auto& c : cnf.clauses)
        if (!solver.add_clause(c)) return {SolveStatus::Unsat, std::nullopt};
    const auto deadline = std::chrono::steady_clock::now() + request.timeout;
    switch (solver.solve(deadline)) {
        case sat::Result::Unsat:
            return {SolveStatus::Unsat, std::nullopt};
        case sat::Result::Unknown:
            return {SolveStatus::Timeout, std::nullopt};
        case sat::Result::Sat:
            break;
    }
    std::vector<int> model;
    for (int v = 1; v <= cnf.num_vars; ++v) model.push_back(solver.value(v) ? v : -v);
    return {SolveStatus::Sat, decode_model(model, vm)};
}

}  // namespace wangtori
