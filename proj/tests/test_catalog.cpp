#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "gfact/catalog.hpp"
#include "gfact/subgroups.hpp"

using namespace gfact;

namespace {

std::string data_file() { return std::string(GFACT_DATA_DIR) + "/generators.gfd"; }

Catalog full_catalog() {
    Catalog cat = default_catalog();
    cat.load_generator_data(data_file());
    return cat;
}

}  // namespace

TEST_CASE("catalog roster") {
    Catalog cat = default_catalog();
    int ns = 0, controls = 0;
    for (const auto& e : cat.entries()) {
        if (e.tag == CatalogTag::non_supersolvable) {
            ++ns;
            REQUIRE(e.order <= 60);
        }
        if (e.tag == CatalogTag::control) ++controls;
    }
    REQUIRE(ns == 20);
    REQUIRE(controls == 6);
    REQUIRE(cat.find("S5") != nullptr);
    REQUIRE(cat.find("S5")->order == 120);
    REQUIRE(cat.find("no such group") == nullptr);
    REQUIRE_THROWS_AS(cat.build("no such group"), UnknownGroup);
    // data-backed entries refuse to build until the file is loaded
    REQUIRE_THROWS_AS(cat.build("A4 : C4"), ConstructionError);
}

TEST_CASE("every entry builds at the advertised order with the right tag") {
    Catalog cat = full_catalog();
    for (const auto& e : cat.entries()) {
        Group G = cat.build(e.id);
        REQUIRE(G.n == e.order);
        REQUIRE(G.id == e.id);
        REQUIRE_NOTHROW(G.validate());
        if (e.tag == CatalogTag::non_supersolvable) REQUIRE(!is_supersolvable(G));
        if (e.tag == CatalogTag::control) REQUIRE(is_supersolvable(G));
    }
}

TEST_CASE("the ten order-48 groups are pairwise non-isomorphic by fingerprint") {
    Catalog cat = full_catalog();
    std::vector<GroupFingerprint> fps;
    for (const auto& e : cat.entries()) {
        if (e.order != 48 || e.tag != CatalogTag::non_supersolvable) continue;
        fps.push_back(fingerprint(cat.build(e.id)));
    }
    REQUIRE(fps.size() == 10);
    for (std::size_t i = 0; i < fps.size(); ++i)
        for (std::size_t j = i + 1; j < fps.size(); ++j)
            REQUIRE(!(fps[i] == fps[j]));
}

TEST_CASE("generator data fingerprints act as an oracle for the builders") {
    Catalog cat = full_catalog();
    // the loader froze an expected fingerprint for each data entry; build()
    // already enforces it, so the mere success of these builds is the check
    for (const char* id :
         {"C2 . S4 = SL(2,3) . C2", "((C4 x C2) : C2) : C3", "A4 : C4"}) {
        const CatalogEntry* e = cat.find(id);
        REQUIRE(e != nullptr);
        REQUIRE(e->expected.has_value());
        Group G = cat.build(id);
        REQUIRE(fingerprint(G) == *e->expected);
    }
    // structural spot checks pinning the three groups
    Group dq = cat.build("C2 . S4 = SL(2,3) . C2");
    int involutions = 0;
    for (int g = 1; g < dq.n; ++g)
        if (dq.element_order(g) == 2) ++involutions;
    REQUIRE(involutions == 1);  // binary octahedral: unique involution
    Group cp = cat.build("((C4 x C2) : C2) : C3");
    REQUIRE(center(cp).order() == 4);
    REQUIRE(derived_subgroup(cp).order() == 8);
    Group aq = cat.build("A4 : C4");
    REQUIRE(center(aq).order() == 2);
    REQUIRE(derived_subgroup(aq).order() == 12);
}

TEST_CASE("a tampered fingerprint is rejected at build time") {
    Catalog cat = default_catalog();
    // copy the data file with a corrupted center order for one record
    std::ifstream in(data_file());
    REQUIRE(in.good());
    std::string tmp = "tampered_generators.gfd";
    {
        std::ofstream out(tmp);
        std::string line;
        bool done = false;
        while (std::getline(in, line)) {
            if (!done && line == "fingerprint_center: 2") {
                out << "fingerprint_center: 4\n";
                done = true;
            } else {
                out << line << "\n";
            }
        }
        REQUIRE(done);
    }
    cat.load_generator_data(tmp);
    REQUIRE_THROWS_AS(cat.build("C2 . S4 = SL(2,3) . C2"), FingerprintMismatch);
    std::remove(tmp.c_str());
}

TEST_CASE("generator data parse errors") {
    Catalog cat = default_catalog();
    REQUIRE_THROWS_AS(cat.load_generator_data("/nonexistent/file.gfd"), ParseError);
    auto write_and_load = [&](const std::string& body) {
        std::string tmp = "bad_record.gfd";
        std::ofstream(tmp) << body;
        try {
            cat.load_generator_data(tmp);
            std::remove(tmp.c_str());
            return false;
        } catch (const ParseError&) {
            std::remove(tmp.c_str());
            return true;
        }
    };
    REQUIRE(write_and_load("id: X\norder: 6\n"));                     // no kind
    REQUIRE(write_and_load("id: X\norder: 6\nkind: perm\n"));         // no gens
    REQUIRE(write_and_load("not a key value line\n"));
    REQUIRE(write_and_load("id: X\norder: 6\nkind: magic\ngen: (1 2)\n"));
    REQUIRE(write_and_load(
        "id: A4\norder: 13\nkind: perm\ndegree: 4\ngen: (1 2 3)\n"
        "fingerprint_orders: 1:1\nfingerprint_classes: 1\nfingerprint_center: 1\n"
        "fingerprint_derived: 1\nfingerprint_abelianization: 3\n"));  // order clash
}

TEST_CASE("cycle notation parser") {
    auto p = detail::parse_cycles("(1 2 3)(4 5)", 6);
    REQUIRE(p == std::vector<int>{1, 2, 0, 4, 3, 5});
    REQUIRE(detail::parse_cycles("()", 3) == std::vector<int>{0, 1, 2});
    REQUIRE(detail::parse_cycles("(1,2)", 2) == std::vector<int>{1, 0});
    REQUIRE_THROWS_AS(detail::parse_cycles("(1 7)", 4), ParseError);
    REQUIRE_THROWS_AS(detail::parse_cycles("(1 2", 4), ParseError);
    REQUIRE_THROWS_AS(detail::parse_cycles("1 2)", 4), ParseError);
}

TEST_CASE("frozen maximal subgroup orders for order 48") {
    Catalog cat = full_catalog();
    int rows = 0;
    for (const auto& e : cat.entries()) {
        if (!e.expected_maximal_orders) continue;
        ++rows;
        Group G = cat.build(e.id);
        REQUIRE(maximal_subgroup_orders(G) == *e.expected_maximal_orders);
    }
    REQUIRE(rows == 10);
}

TEST_CASE("S5 sanity") {
    Catalog cat = default_catalog();
    Group S5 = cat.build("S5");
    REQUIRE(S5.n == 120);
    REQUIRE(conjugacy_classes(S5).size() == 7);
    REQUIRE(derived_subgroup(S5).order() == 60);
    REQUIRE(!is_supersolvable(S5));
}

TEST_CASE("the order-72 experiment group") {
    Catalog cat = default_catalog();
    Group G = cat.build("(C3 x C3) : Q8");
    REQUIRE(G.n == 72);
    REQUIRE(center(G).order() == 1);
    // Sylow subgroups: elementary abelian C3 x C3 and quaternion Q8
    REQUIRE(sylow(G, 3).order() == 9);
    auto [P2, up] = subgroup_as_group(G, sylow(G, 2));
    REQUIRE(P2.n == 8);
    REQUIRE(fingerprint(P2) == fingerprint(cat.build("Q8")));
}
