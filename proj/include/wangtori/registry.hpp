#pragma once

// Built-in datasets: protosets, lattices and partitions referred to by name.

#include "wangtori/partition.hpp"
#include "wangtori/torus.hpp"
#include "wangtori/wang.hpp"

#include <string>
#include <vector>

namespace wangtori {

enum class Provenance { Listing, DerivedByInference, DerivedByRefinement };

std::string to_string(Provenance p);

Protoset builtin_protoset(const std::string& name);
Provenance protoset_provenance(const std::string& name);
std::vector<std::string> builtin_protoset_names();

Lattice2 builtin_lattice(const std::string& name);
std::vector<std::string> builtin_lattice_names();

Partition builtin_partition(const std::string& name);
Provenance partition_provenance(const std::string& name);
/// Protoset whose labels the named partition carries.
std::string partition_protoset(const std::string& name);
std::vector<std::string> builtin_partition_names();

}  // namespace wangtori
