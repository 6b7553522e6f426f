#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "gfact/group.hpp"
#include "gfact/subgroups.hpp"

using namespace gfact;

namespace {

Group make_A4() {
    return from_permutation_generators("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
}
Group make_S4() {
    return from_permutation_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
}

// independent closure using only the Cayley table
std::vector<int> naive_closure(const Group& G, std::vector<int> seed) {
    std::set<int> in(seed.begin(), seed.end());
    in.insert(0);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> cur(in.begin(), in.end());
        for (int a : cur)
            for (int b : cur)
                if (in.insert(G.mul(a, b)).second) changed = true;
    }
    return {in.begin(), in.end()};
}

}  // namespace

TEST_CASE("A4 subgroup lattice matches exhaustive subset scan") {
    Group A4 = make_A4();
    // oracle: test all 2^12 subsets containing the identity for closure
    std::set<std::vector<int>> oracle;
    for (unsigned s = 0; s < (1u << 12); ++s) {
        if (!(s & 1)) continue;  // must contain element 0
        std::vector<int> e;
        for (int i = 0; i < 12; ++i)
            if (s >> i & 1) e.push_back(i);
        bool closed = true;
        for (int a : e) {
            for (int b : e) {
                unsigned bit = 1u << A4.mul(a, b);
                if (!(s & bit)) {
                    closed = false;
                    break;
                }
            }
            if (!closed) break;
        }
        if (closed) oracle.insert(e);
    }
    REQUIRE(oracle.size() == 10);  // 1,3xC2,4xC3,V,A4

    SubgroupSet lat = all_subgroups(A4);
    std::set<std::vector<int>> got;
    for (const auto& h : lat.subgroups) got.insert(h.elements);
    REQUIRE(got == oracle);
}

TEST_CASE("S4 subgroup lattice matches pair-closure oracle") {
    Group S4 = make_S4();
    // every subgroup of S4 is generated by at most two elements
    std::set<std::vector<int>> oracle;
    for (int a = 0; a < 24; ++a)
        for (int b = a; b < 24; ++b) oracle.insert(naive_closure(S4, {a, b}));
    REQUIRE(oracle.size() == 30);

    SubgroupSet lat = all_subgroups(S4);
    REQUIRE(lat.subgroups.size() == 30);
    std::set<std::vector<int>> got;
    for (const auto& h : lat.subgroups) got.insert(h.elements);
    REQUIRE(got == oracle);
    // sorted by (order, elements)
    for (std::size_t i = 1; i < lat.subgroups.size(); ++i)
        REQUIRE(lat.subgroups[i - 1] < lat.subgroups[i]);
    // closed under pairwise join
    for (const auto& h : lat.subgroups)
        for (const auto& k : lat.subgroups) {
            std::vector<int> seed = h.elements;
            seed.insert(seed.end(), k.elements.begin(), k.elements.end());
            REQUIRE(got.count(closure_of(S4, seed)) == 1);
        }
}

TEST_CASE("converse Lagrange (CLT) detection") {
    REQUIRE(!is_CLT(make_A4()));  // no subgroup of order 6
    REQUIRE(is_CLT(make_S4()));
    REQUIRE(is_CLT(cyclic(12)));
    Group A5 = from_permutation_generators("A5", 5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
    REQUIRE(!is_CLT(A5));  // no subgroup of order 15, 20, 30
    SubgroupSet lat = all_subgroups(A5);
    std::set<int> orders;
    for (const auto& h : lat.subgroups) orders.insert(h.order());
    REQUIRE(orders == std::set<int>{1, 2, 3, 4, 5, 6, 10, 12, 60});
}

TEST_CASE("supersolvability") {
    REQUIRE(!is_supersolvable(make_A4()));
    REQUIRE(!is_supersolvable(make_S4()));
    REQUIRE(!is_supersolvable(
        from_permutation_generators("A5", 5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}})));
    REQUIRE(is_supersolvable(from_permutation_generators("S3", 3, {{1, 0, 2}, {1, 2, 0}})));
    REQUIRE(is_supersolvable(cyclic(24)));
    REQUIRE(is_supersolvable(
        from_matrix_generators("Q8", 3, {{0, 1, -1, 0}, {1, 1, 1, -1}})));
    REQUIRE(is_supersolvable(direct_product(cyclic(6), cyclic(6))));
    // (C3 x C3) : C4 with C4 acting irreducibly is minimally non-supersolvable
    Group V9 = direct_product(cyclic(3), cyclic(3));
    // action of order 4 on C3 x C3: (x,y) -> (y, -x); index a*3+b
    std::vector<int> act(9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) act[a * 3 + b] = b * 3 + (3 - a) % 3;
    Group G = semidirect_product(V9, 4, act, "(C3 x C3) : C4");
    REQUIRE(G.n == 36);
    REQUIRE(!is_supersolvable(G));
}

TEST_CASE("coset transversals") {
    Group S4 = make_S4();
    SubgroupSet lat = all_subgroups(S4);
    for (const auto& H : lat.subgroups) {
        for (Side side : {Side::left, Side::right}) {
            Mask128 T = coset_transversal(S4, H, side);
            REQUIRE(T.count() * H.order() == S4.n);
            REQUIRE(T.test(0));
            // the transversal really tiles G
            Mask128 covered;
            T.for_each([&](int t) {
                for (int h : H.elements)
                    covered.set(side == Side::left ? S4.mul(t, h) : S4.mul(h, t));
            });
            REQUIRE(covered == S4.all_mask());
        }
    }
    // transversal inside a proper subgroup
    SubgroupHandle A4sub = derived_subgroup(S4);
    SubgroupHandle V = derived_subgroup(S4);  // placeholder, replaced below
    for (const auto& h : lat.subgroups)
        if (h.order() == 4 && is_normal(S4, h)) V = h;
    Mask128 T = coset_transversal_in(S4, A4sub.elements, V, Side::left);
    REQUIRE(T.count() == 3);
    Mask128 covered;
    T.for_each([&](int t) {
        for (int v : V.elements) covered.set(S4.mul(t, v));
    });
    REQUIRE(covered == A4sub.mask());
}

TEST_CASE("maximal subgroup orders") {
    REQUIRE(maximal_subgroup_orders(make_A4()) == std::vector<int>{4, 3});
    REQUIRE(maximal_subgroup_orders(make_S4()) == std::vector<int>{12, 8, 6});
    Group A5 = from_permutation_generators("A5", 5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
    REQUIRE(maximal_subgroup_orders(A5) == std::vector<int>{12, 10, 6});
}

TEST_CASE("subgroups_of_order") {
    Group S4 = make_S4();
    SubgroupSet lat = all_subgroups(S4);
    REQUIRE(subgroups_of_order(lat, 8).size() == 3);   // the Sylow 2s
    REQUIRE(subgroups_of_order(lat, 3).size() == 4);
    REQUIRE(subgroups_of_order(lat, 12).size() == 1);  // A4
    REQUIRE(subgroups_of_order(lat, 24).size() == 1);
    REQUIRE(subgroups_of_order(lat, 5).empty());
}
