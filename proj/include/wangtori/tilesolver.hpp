#pragma once

// Finite Wang patches as SAT instances.

#include "wangtori/wang.hpp"

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wangtori {

enum class Engine { Internal, DimacsExport, DimacsImport };

struct SolveRequest {
    Protoset protoset;
    int width = 1;
    int height = 1;
    std::map<std::pair<int, int>, TileIndex> preassigned;  // local (x, y) -> tile
    Engine engine = Engine::Internal;
    uint64_t seed = 0;
    std::chrono::seconds timeout{600};
    std::string dimacs_path;  // written by DimacsExport
    std::string model_path;   // read by DimacsImport
};

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

/// v(x, y, t) = ((y * W + x) * |T| + t + 1)
struct VariableMap {
    int width = 0;
    int height = 0;
    int num_tiles = 0;

    int var(int x, int y, TileIndex t) const { return (y * width + x) * num_tiles + t + 1; }
    int num_vars() const { return width * height * num_tiles; }
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate_request(const SolveRequest& request);
VariableMap variable_map(const SolveRequest& request);

/// Clause order: per cell (row-major) at-least-one then pairwise at-most-one,
/// then horizontal forbidden pairs, vertical forbidden pairs, preassignment units.
Cnf encode_cnf(const SolveRequest& request);

enum class SolveStatus { Sat, Unsat, Timeout, Exported };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    std::optional<Patch> patch;  // set when status == Sat
};

SolveResult solve_patch(const SolveRequest& request);

void write_dimacs(const Cnf& cnf, std::ostream& out);
void export_dimacs(const Cnf& cnf, const std::string& path);
Cnf read_dimacs(std::istream& in);

/// Reads whitespace-separated signed literals (an optional leading "s ..." line
/// and "v" prefixes, as printed by common solvers, are tolerated; 0 terminates).
std::vector<int> read_model(std::istream& in);
Patch decode_model(const std::vector<int>& literals, const VariableMap& map);
Patch import_model(const std::string& path, const VariableMap& map);

}  // namespace wangtori
