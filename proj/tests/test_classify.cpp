#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "gfact/classify.hpp"

using namespace gfact;

namespace {

Catalog& full_catalog() {
    static Catalog cat = [] {
        Catalog c = default_catalog();
        c.load_generator_data(std::string(GFACT_DATA_DIR) + "/generators.gfd");
        return c;
    }();
    return cat;
}

CertificateStore& seeded_store() {
    static CertificateStore store = [] {
        CertificateStore s;
        seed_known_certificates(full_catalog(), s);
        return s;
    }();
    return store;
}

}  // namespace

TEST_CASE("A4 is not multifold-factorizable") {
    GroupVerdict v = is_multifold(full_catalog().build("A4"));
    REQUIRE(!v.multifold);
    REQUIRE(!v.supersolvable);
    REQUIRE(v.failing_shape == Shape({2, 3, 2}));
    // the negative class is evaluated first and stops the loop
    REQUIRE(v.outcomes.size() == 1);
    REQUIRE(v.outcomes[0].second.kind == Decision::Kind::none);
}

TEST_CASE("S4 is multifold-factorizable with two reversal classes") {
    Group S4 = full_catalog().build("S4");
    GroupVerdict v = is_multifold(S4);
    REQUIRE(v.multifold);
    REQUIRE(!v.failing_shape.has_value());
    REQUIRE(v.outcomes.size() == 2);  // (2,2,2,3) and (2,2,3,2) mod reversal
    for (const auto& [s, d] : v.outcomes) {
        REQUIRE(d.kind == Decision::Kind::found);
        REQUIRE_NOTHROW(verify_certificate(S4, d.cert));
    }
}

TEST_CASE("SL(2,3) is multifold and its (2,2,3,2) class certifies") {
    Group S = full_catalog().build("SL(2,3)");
    GroupVerdict v = is_multifold(S, {}, &seeded_store());
    REQUIRE(v.multifold);
    bool saw = false;
    for (const auto& [s, d] : v.outcomes) {
        REQUIRE(d.kind == Decision::Kind::found);
        if (s == Shape({2, 2, 3, 2})) saw = true;
    }
    REQUIRE(saw);
}

TEST_CASE("supersolvable groups are settled wholesale by chain peeling") {
    Group C = full_catalog().build("C6 x C6");
    GroupVerdict v = is_multifold(C);
    REQUIRE(v.supersolvable);
    REQUIRE(v.multifold);
    REQUIRE(v.outcomes.size() == prime_shapes_mod_reversal(36).size());
    for (const auto& [s, d] : v.outcomes) REQUIRE(d.cert.method == Method::chain);
    // prime orders are trivially multifold
    GroupVerdict w = is_multifold(cyclic(7));
    REQUIRE(w.multifold);
    REQUIRE(w.outcomes.empty());
}

TEST_CASE("budget exhaustion surfaces as an error, not a verdict") {
    Group A5 = full_catalog().build("A5");
    // a decider that can only say inconclusive
    DecideFn stub = [](const Group&, const SubgroupSet&, const Shape&,
                       const SearchBudget&, const CertificateStore*) {
        return Decision{};  // kind defaults to inconclusive
    };
    REQUIRE_THROWS_AS(is_multifold(A5, {}, nullptr, stub), BudgetExhausted);
}

TEST_CASE("classification up to order 36") {
    ClassificationReport rep = classify_catalog(full_catalog(), 36, {}, &seeded_store());
    REQUIRE(rep.negatives ==
            std::vector<std::string>{"A4", "(C2 x C2) : C9", "C3 x A4"});
    // verdict list covers exactly the non-supersolvable entries of order <= 36
    REQUIRE(rep.verdicts.size() == 7);
    for (const auto& v : rep.verdicts) REQUIRE(!v.supersolvable);
    // every negative has an independently completed cross-check search
    for (const auto& v : rep.verdicts) {
        if (v.multifold) continue;
        REQUIRE(v.cross_checks.size() == 1);
        const auto& [shape, ev] = v.cross_checks[0];
        REQUIRE(shape == Shape({2, v.order / 4, 2}));
        REQUIRE(ev.kind == NonexistenceEvidence::Kind::exhaustive_complete);
        REQUIRE(ev.complete);
    }
    // controls of order <= 36 re-verified
    REQUIRE(rep.controls.size() == 6);
    for (const auto& c : rep.controls) REQUIRE(c.multifold);
}

TEST_CASE("classification refuses when a recipe is missing") {
    // default catalog without the generator data cannot build the order-48
    // data entries
    REQUIRE_THROWS_AS(classify_catalog(default_catalog(), 60, {}, &seeded_store()),
                      CatalogIncomplete);
}

TEST_CASE("monotone consistency: negatives have no certified refinement on record") {
    // a stored certificate for any shape of a negative group would contradict
    // the classification; the seeded store must not contain one
    ClassificationReport rep = classify_catalog(full_catalog(), 36, {}, &seeded_store());
    for (const std::string& id : rep.negatives) {
        Group G = full_catalog().build(id);
        for (const Shape& s : ordered_factorizations(G.n, omega(G.n)))
            REQUIRE(seeded_store().find(id, s) == nullptr);
    }
}

TEST_CASE("S5 certifies all ten reversal classes") {
    GroupVerdict v = s5_suite(full_catalog(), {}, &seeded_store());
    REQUIRE(v.multifold);
    REQUIRE(v.outcomes.size() == 10);
    Group S5 = full_catalog().build("S5");
    for (const auto& [s, d] : v.outcomes) {
        REQUIRE(d.kind == Decision::Kind::found);
        REQUIRE_NOTHROW(verify_certificate(S5, d.cert));
        REQUIRE(gf2_exactness_check(S5, certificate_masks(d.cert)));
    }
}
