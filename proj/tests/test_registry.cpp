#include "wangtori/registry.hpp"

#include <doctest.h>

using namespace wangtori;

TEST_CASE("names and provenance") {
    CHECK(builtin_protoset_names() == std::vector<std::string>{"ammann16", "jr0", "jr2", "penrose24"});
    CHECK(protoset_provenance("jr0") == Provenance::Listing);
    CHECK(protoset_provenance("penrose24") == Provenance::Listing);
    CHECK(protoset_provenance("ammann16") == Provenance::DerivedByRefinement);
    CHECK(to_string(Provenance::DerivedByInference) == "derived-by-inference");
    CHECK_THROWS_AS(builtin_protoset("nope"), std::out_of_range);
    CHECK_THROWS_AS(protoset_provenance("nope"), std::out_of_range);

    for (const auto& name : builtin_lattice_names()) CHECK_FALSE(builtin_lattice(name).det().is_zero());
    CHECK(lattice_equivalent(builtin_lattice("gamma2"), Lattice2::parse("phi,0;2,phi+3")));
    CHECK_THROWS_AS(builtin_lattice("gamma9"), std::out_of_range);

    const auto parts = builtin_partition_names();
    CHECK(parts == std::vector<std::string>{"p16", "p24"});
    for (const auto& name : parts) CHECK(partition_provenance(name) == Provenance::DerivedByInference);
    CHECK(partition_protoset("p16") == "ammann16");
    CHECK(partition_protoset("p24") == "penrose24");
    CHECK_THROWS_AS(builtin_partition("p0"), std::out_of_range);  // listed but not shipped
}

TEST_CASE("shipped partitions carry their protoset's labels") {
    for (const auto& name : builtin_partition_names()) {
        CAPTURE(name);
        const auto p = builtin_partition(name);
        const auto t = builtin_protoset(partition_protoset(name));
        CHECK(p.size() == static_cast<int>(t.size()));
        Golden total;
        for (const auto& a : p.atoms()) total += area(a.cells);
        CHECK(total == p.lattice().det().abs());

        // No forbidden pair is ever adjacent; some allowed pairs are never realized.
        const auto rep = consistency_check(p, t);
        long forbidden_adjacent = 0;
        for (const auto& m : rep.mismatches) forbidden_adjacent += m.adjacent;
        CHECK(forbidden_adjacent == 0);
        for (const auto& m : rep.mismatches) CHECK(m.colors_match);
    }
}
