#include "wangtori/registry.hpp"

#include "embedded_data.hpp"

#include <map>

namespace wangtori {

namespace {

using Records = std::vector<std::vector<long>>;

const Records kJeandelRao = {{2, 4, 2, 1}, {2, 2, 2, 0}, {1, 1, 3, 1}, {1, 2, 3, 2},
                             {3, 1, 3, 3}, {0, 1, 3, 1}, {0, 0, 0, 1}, {3, 1, 0, 2},
                             {0, 2, 1, 2}, {1, 2, 1, 4}, {3, 3, 1, 2}};

const Records kJeandelRaoCandidate = {{0, 1, 0, 0}, {0, 3, 0, 2}, {1, 2, 1, 0}, {1, 0, 2, 0},
                                      {1, 3, 3, 3}, {2, 0, 1, 3}, {2, 0, 2, 4}, {2, 3, 2, 1},
                                      {2, 4, 3, 3}, {3, 0, 2, 0}, {3, 3, 2, 3}};

const Records kPenrose24 = {
    {9, 1, 4, 5},    {3, 6, 10, 2},  {17, 7, 12, 18}, {11, 18, 17, 8}, {10, 14, 15, 6},
    {16, 5, 9, 13},  {15, 1, 4, 14}, {3, 13, 16, 2},  {11, 5, 17, 1},  {17, 2, 12, 6},
    {4, 18, 9, 8},   {10, 7, 3, 18}, {3, 6, 9, 13},   {10, 14, 4, 5},  {16, 5, 10, 2},
    {9, 1, 15, 6},   {12, 13, 11, 1}, {15, 8, 3, 7},  {12, 2, 11, 14}, {4, 8, 16, 7},
    {4, 18, 10, 7},  {12, 6, 17, 1}, {9, 8, 3, 18},   {17, 2, 11, 5}};

struct PartitionEntry {
    const char* file;
    const char* protoset;
    Provenance provenance;
};

const std::map<std::string, PartitionEntry>& partition_table() {
    static const std::map<std::string, PartitionEntry> table = {
        {"p0", {"p0.json", "jr0", Provenance::DerivedByInference}},
        {"p2", {"p2.json", "jr2", Provenance::DerivedByInference}},
        {"p16", {"p16.json", "ammann16", Provenance::DerivedByInference}},
        {"p24", {"p24.json", "penrose24", Provenance::DerivedByInference}},
    };
    return table;
}

std::string require_data(const std::string& file) {
    auto text = embedded_dataset(file);
    if (!text) throw std::out_of_range("dataset " + file + " was not built into this binary");
    return std::string(*text);
}

}  // namespace

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Listing:
            return "paper-listing";
        case Provenance::DerivedByInference:
            return "derived-by-inference";
        case Provenance::DerivedByRefinement:
            return "derived-by-refinement";
    }
    return "unknown";
}

Protoset builtin_protoset(const std::string& name) {
    if (name == "jr0") return load_protoset(kJeandelRao, name);
    if (name == "jr2") return load_protoset(kJeandelRaoCandidate, name);
    if (name == "penrose24") return load_protoset(kPenrose24, name);
    if (name == "ammann16")
        return protoset_from_json(nlohmann::json::parse(require_data("ammann16.json")), name);
    throw std::out_of_range("unknown protoset '" + name + "'");
}

Provenance protoset_provenance(const std::string& name) {
    if (name == "ammann16") return Provenance::DerivedByRefinement;
    builtin_protoset(name);
    return Provenance::Listing;
}

std::vector<std::string> builtin_protoset_names() { return {"ammann16", "jr0", "jr2", "penrose24"}; }

Lattice2 builtin_lattice(const std::string& name) {
    if (name == "gamma0") return Lattice2::parse("phi,0;1,phi+3");
    if (name == "gamma2") return Lattice2::parse("phi,0;2-phi,phi+3");
    if (name == "gamma24" || name == "gamma16") return Lattice2::parse("phi,0;0,phi");
    throw std::out_of_range("unknown lattice '" + name + "'");
}

std::vector<std::string> builtin_lattice_names() { return {"gamma0", "gamma2", "gamma24"}; }

Partition builtin_partition(const std::string& name) {
    auto it = partition_table().find(name);
    if (it == partition_table().end()) throw std::out_of_range("unknown partition '" + name + "'");
    return partition_from_json(nlohmann::json::parse(require_data(it->second.file)));
}

Provenance partition_provenance(const std::string& name) {
    auto it = partition_table().find(name);
    if (it == partition_table().end()) throw std::out_of_range("unknown partition '" + name + "'");
    return it->second.provenance;
}

std::string partition_protoset(const std::string& name) {
    auto it = partition_table().find(name);
    if (it == partition_table().end()) throw std::out_of_range("unknown partition '" + name + "'");
    return it->second.protoset;
}

std::vector<std::string> builtin_partition_names() {
    std::vector<std::string> out;
    for (const auto& [name, entry] : partition_table())
        if (embedded_dataset(entry.file)) out.push_back(name);
    return out;
}

}  // namespace wangtori
