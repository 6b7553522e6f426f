#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "gfact/group.hpp"

namespace gfact {

// Full subgroup lattice, sorted by (order, elements).
struct SubgroupSet {
    std::string parent;
    std::vector<SubgroupHandle> subgroups;

    std::vector<const SubgroupHandle*> of_order(int m) const {
        std::vector<const SubgroupHandle*> out;
        for (const auto& h : subgroups)
            if (h.order() == m) out.push_back(&h);
        return out;
    }
};

// Complete enumeration: all cyclic subgroups, then pairwise joins to a fixed
// point. Every subgroup is a join of cyclic ones, so this terminates on the
// full lattice.
inline SubgroupSet all_subgroups(const Group& G) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    auto add = [&](std::vector<int> elems) {
        if (seen.insert(elems).second) work.push_back(std::move(elems));
    };
    add({0});
    for (int g = 1; g < G.n; ++g) add(closure_of(G, {g}));
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<int> seed = work[i];
            seed.insert(seed.end(), work[j].begin(), work[j].end());
            add(closure_of(G, std::move(seed)));
        }
    }
    SubgroupSet S;
    S.parent = G.id;
    for (auto& e : seen) S.subgroups.push_back({G.id, e});
    std::sort(S.subgroups.begin(), S.subgroups.end());
    return S;
}

inline bool is_CLT(const Group& G, const SubgroupSet& lat) {
    std::set<int> orders;
    for (const auto& h : lat.subgroups) orders.insert(h.order());
    for (int d = 1; d <= G.n; ++d)
        if (G.n % d == 0 && !orders.count(d)) return false;
    return true;
}

inline bool is_CLT(const Group& G) { return is_CLT(G, all_subgroups(G)); }

// Supersolvable iff some normal subgroup of prime order has a supersolvable
// quotient (recursively). Prime-order subgroups are cyclic, so the lattice is
// not needed.
inline bool is_supersolvable(const Group& G) {
    if (G.n == 1) return true;
    std::set<std::vector<int>> tried;
    for (int g = 1; g < G.n; ++g) {
        int k = G.element_order(g);
        // power g down to prime order
        int p = k;
        for (int d = 2; d * d <= p; ++d)
            while (p % d == 0 && p != d) p /= d;
        int x = g;
        for (int i = 1; i < k / p; ++i) x = G.mul(x, g);
        auto elems = closure_of(G, {x});
        if (!tried.insert(elems).second) continue;
        SubgroupHandle N{G.id, elems};
        if (!is_normal(G, N)) continue;
        if (is_supersolvable(quotient(G, N))) return true;
    }
    return false;
}

enum class Side { left, right };

// Transversal of H inside the subgroup S of G (side=left: S = T*H, side=right:
// S = H*T). Representatives are the least element index per coset; contains 0.
inline Mask128 coset_transversal_in(const Group& G, const std::vector<int>& S,
                                    const SubgroupHandle& H, Side side) {
    Mask128 covered, reps;
    for (int s : S) {
        if (covered.test(s)) continue;
        reps.set(s);
        for (int h : H.elements)
            covered.set(side == Side::left ? G.mul(s, h) : G.mul(h, s));
    }
    return reps;
}

inline Mask128 coset_transversal(const Group& G, const SubgroupHandle& H, Side side) {
    std::vector<int> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    return coset_transversal_in(G, all, H, side);
}

inline std::vector<SubgroupHandle> subgroups_of_order(const SubgroupSet& lat, int m) {
    std::vector<SubgroupHandle> out;
    for (const auto& h : lat.subgroups)
        if (h.order() == m) out.push_back(h);
    return out;
}

// Orders of maximal subgroups, one per conjugacy class of subgroups
// (GAP MaximalSubgroupClassReps convention), descending.
inline std::vector<int> maximal_subgroup_orders(const Group& G, const SubgroupSet& lat) {
    std::vector<const SubgroupHandle*> proper;
    for (const auto& h : lat.subgroups)
        if (h.order() < G.n) proper.push_back(&h);
    std::set<std::vector<int>> maximal;
    for (const auto* h : proper) {
        bool contained = false;
        Mask128 hm = h->mask();
        for (const auto* k : proper) {
            if (k->order() <= h->order()) continue;
            if (k->mask().contains(hm)) {
                contained = true;
                break;
            }
        }
        if (!contained) maximal.insert(h->elements);
    }
    // one representative per conjugacy class
    std::vector<int> orders;
    std::set<std::vector<int>> seen;
    for (const auto& elems : maximal) {
        if (seen.count(elems)) continue;
        SubgroupHandle H{G.id, elems};
        for (int x = 0; x < G.n; ++x) seen.insert(conjugate_subgroup(G, H, x).elements);
        orders.push_back(static_cast<int>(elems.size()));
    }
    std::sort(orders.rbegin(), orders.rend());
    return orders;
}

inline std::vector<int> maximal_subgroup_orders(const Group& G) {
    return maximal_subgroup_orders(G, all_subgroups(G));
}

}  // namespace gfact
