#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "gfact/catalog.hpp"
#include "gfact/gf2.hpp"
#include "gfact/gf2_identities.hpp"
#include "gfact/group.hpp"

using namespace gfact;

namespace {

// parity-counting oracle for the GF(2) convolution
Mask128 convolve_oracle(const Group& G, const Mask128& u, const Mask128& v) {
    std::vector<int> cnt(G.n, 0);
    for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h)
            if (u.test(g) && v.test(h)) cnt[G.mul(g, h)]++;
    Mask128 out;
    for (int w = 0; w < G.n; ++w)
        if (cnt[w] & 1) out.set(w);
    return out;
}

Mask128 random_mask(const Group& G, std::mt19937& rng) {
    Mask128 m;
    for (int g = 0; g < G.n; ++g)
        if (rng() & 1) m.set(g);
    return m;
}

}  // namespace

TEST_CASE("gf2_mul matches the parity-counting oracle") {
    Group S4 = from_permutation_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    Group A4 = from_permutation_generators("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    std::mt19937 rng(20240817);
    for (const Group* Gp : {&S4, &A4}) {
        const Group& G = *Gp;
        for (int it = 0; it < 200; ++it) {
            Mask128 u = random_mask(G, rng), v = random_mask(G, rng);
            AlgElement r = gf2_mul(G, set_sum(G, u), set_sum(G, v));
            REQUIRE(r.coeffs == convolve_oracle(G, u, v));
        }
    }
}

TEST_CASE("group algebra laws hold on random elements") {
    Group S4 = from_permutation_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    std::mt19937 rng(7);
    AlgElement one = set_sum(S4, Mask128::single(0));
    for (int it = 0; it < 100; ++it) {
        AlgElement a = set_sum(S4, random_mask(S4, rng));
        AlgElement b = set_sum(S4, random_mask(S4, rng));
        AlgElement c = set_sum(S4, random_mask(S4, rng));
        // addition is xor
        REQUIRE(gf2_add(a, a).coeffs.empty());
        REQUIRE(gf2_add(a, b) == gf2_add(b, a));
        // unit
        REQUIRE(gf2_mul(S4, one, a) == a);
        REQUIRE(gf2_mul(S4, a, one) == a);
        // associativity
        REQUIRE(gf2_mul(S4, gf2_mul(S4, a, b), c) == gf2_mul(S4, a, gf2_mul(S4, b, c)));
        // distributivity
        REQUIRE(gf2_mul(S4, a, gf2_add(b, c)) ==
                gf2_add(gf2_mul(S4, a, b), gf2_mul(S4, a, c)));
    }
    // f(G)^2 = |G| f(G) = 0 for even |G|
    AlgElement fG = set_sum(S4, S4.all_mask());
    REQUIRE(gf2_mul(S4, fG, fG).coeffs.empty());
}

TEST_CASE("group mismatch is rejected") {
    Group A4 = from_permutation_generators("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    Group C12 = cyclic(12);
    REQUIRE_THROWS_AS(gf2_add(set_sum(A4, Mask128::single(0)), set_sum(C12, Mask128::single(0))),
                      GroupMismatch);
    REQUIRE_THROWS_AS(gf2_mul(A4, set_sum(A4, Mask128::single(0)), set_sum(C12, Mask128::single(0))),
                      GroupMismatch);
}

TEST_CASE("gf2_exactness_check enforces the size precondition") {
    Group A4 = from_permutation_generators("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
    std::vector<Mask128> bad{Mask128::full(2), Mask128::full(3)};  // 2*3 != 12
    REQUIRE_THROWS_AS(gf2_exactness_check(A4, bad), SizeMismatch);
}

TEST_CASE("exactness check agrees with the setwise product") {
    Group S4 = from_permutation_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
    // a genuine factorization: S4 = <4-cycle> * point-stabilizer, C4 * S3 with
    // trivial intersection
    std::vector<int> c4 = closure_of(S4, {S4.generator_indices[1]});
    std::vector<int> s3;
    for (int g = 0; g < S4.n && s3.empty(); ++g)
        for (int h = 0; h < S4.n && s3.empty(); ++h) {
            if (S4.element_order(g) != 2 || S4.element_order(h) != 3) continue;
            auto cl = closure_of(S4, {g, h});
            if (cl.size() == 6) s3 = cl;
        }
    REQUIRE(c4.size() == 4);
    REQUIRE(s3.size() == 6);
    Mask128 mc4, ms3;
    for (int e : c4) mc4.set(e);
    for (int e : s3) ms3.set(e);
    REQUIRE(gf2_exactness_check(S4, {mc4, ms3}));
    REQUIRE(product_exact(S4, {mc4, ms3}) == std::make_pair(24, true));
    // break it: replace the C4 by a conjugate V inside A4 sharing elements
    Mask128 notfact = mc4;
    // perturb one element
    int lo = -1, sub = -1;
    mc4.for_each([&](int e) {
        if (e != 0) lo = e;
    });
    for (int g = 0; g < S4.n; ++g)
        if (!mc4.test(g)) sub = g;
    notfact.clear(lo);
    notfact.set(sub);
    REQUIRE(gf2_exactness_check(S4, {notfact, ms3}) ==
            product_exact(S4, {notfact, ms3}).second);
}

TEST_CASE("the four displayed identities verify and emit certificates") {
    Catalog cat = default_catalog();
    Group G44 = cat.build("(C4 x C4) : C3");
    Group G24 = cat.build("(C2 x C2 x C2 x C2) : C3");
    CertificateStore store;
    IdentityReport rep = verify_paper_identities(G44, G24, store);
    REQUIRE(rep.checked.size() == 4);
    REQUIRE(rep.emitted.size() == 4);
    REQUIRE(store.size() == 4);
    for (const auto& c : rep.emitted) {
        const Group& G = c.group_id == G44.id ? G44 : G24;
        REQUIRE_NOTHROW(verify_certificate(G, c));
        REQUIRE(gf2_exactness_check(G, certificate_masks(c)));
    }
    // the shapes on record
    REQUIRE(store.find(G44.id, Shape({3, 2, 2, 2, 2})) != nullptr);
    REQUIRE(store.find(G44.id, Shape({2, 2, 3, 2, 2})) != nullptr);
    REQUIRE(store.find(G44.id, Shape({2, 2, 2, 3, 2})) != nullptr);
    REQUIRE(store.find(G24.id, Shape({2, 3, 2, 2, 2})) != nullptr);
    REQUIRE(store.find(G24.id, Shape({2, 2, 3, 2, 2})) == nullptr);
}

TEST_CASE("explicit SL(2,3) certificate") {
    Catalog cat = default_catalog();
    Group S = cat.build("SL(2,3)");
    FactorizationCertificate c = sl23_explicit_certificate(S);
    REQUIRE(c.shape == Shape({2, 2, 3, 2}));
    REQUIRE_NOTHROW(verify_certificate(S, c));
    REQUIRE(gf2_exactness_check(S, certificate_masks(c)));
}

TEST_CASE("seed_known_certificates loads five certificates") {
    Catalog cat = default_catalog();
    CertificateStore store;
    IdentityReport rep = seed_known_certificates(cat, store);
    REQUIRE(rep.checked.size() == 5);
    REQUIRE(store.size() == 5);
    REQUIRE(store.find("SL(2,3)", Shape({2, 2, 3, 2})) != nullptr);
}
