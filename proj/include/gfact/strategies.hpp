#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>

#include "gfact/certificate.hpp"
#include "gfact/gf2.hpp"
#include "gfact/search.hpp"
#include "gfact/subgroups.hpp"

namespace gfact {

namespace detail {

inline std::vector<int> mask_to_list(const Mask128& m) {
    std::vector<int> out;
    m.for_each([&](int e) { out.push_back(e); });
    return out;
}

// Chain recursion inside the subgroup S (element list in parent indices):
// peel a transversal off either end and recurse on the smaller subgroup.
inline std::optional<std::vector<std::vector<int>>> chain_rec(
    const Group& G, const SubgroupSet& lat, const std::vector<int>& S,
    std::span<const int> parts) {
    long long sz = static_cast<long long>(S.size());
    if (parts.size() == 1) {
        if (sz != parts[0]) return std::nullopt;
        return std::vector<std::vector<int>>{S};
    }
    Mask128 Sm;
    for (int e : S) Sm.set(e);
    auto try_side = [&](bool left) -> std::optional<std::vector<std::vector<int>>> {
        int a = left ? parts.front() : parts.back();
        if (sz % a != 0) return std::nullopt;
        long long horder = sz / a;
        for (const auto& H : lat.subgroups) {
            if (H.order() != horder) continue;
            if (!Sm.contains(H.mask())) continue;
            Mask128 T = coset_transversal_in(G, S, H, left ? Side::left : Side::right);
            auto rest = chain_rec(G, lat, H.elements,
                                  left ? parts.subspan(1) : parts.first(parts.size() - 1));
            if (!rest) continue;
            std::vector<std::vector<int>> out;
            if (left) {
                out.push_back(mask_to_list(T));
                for (auto& f : *rest) out.push_back(std::move(f));
            } else {
                out = std::move(*rest);
                out.push_back(mask_to_list(T));
            }
            return out;
        }
        return std::nullopt;
    };
    if (auto r = try_side(true)) return r;
    return try_side(false);
}

}  // namespace detail

// Recursive transversal peeling (always succeeds for supersolvable G).
// NotFound is not evidence of nonexistence.
inline std::optional<FactorizationCertificate> chain_peel_strategy(
    const Group& G, const SubgroupSet& lat, const Shape& shape) {
    if (shape.product() != G.n) throw Error("chain_peel: shape product != |G|");
    std::vector<int> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    auto factors = detail::chain_rec(G, lat, all, shape.parts);
    if (!factors) return std::nullopt;
    FactorizationCertificate c;
    c.group_id = G.id;
    c.shape = shape;
    c.factors = std::move(*factors);
    c.method = Method::chain;
    return c;
}

// Complete double coset decomposition: least-index representatives and sizes.
// Sizes are checked against |AxB| = |A||B| / |A^x n B|.
inline std::pair<std::vector<int>, std::vector<int>> double_cosets(
    const Group& G, const SubgroupHandle& A, const SubgroupHandle& B) {
    std::vector<int> reps, sizes;
    Mask128 covered;
    Mask128 Bm = B.mask();
    for (int x = 0; x < G.n; ++x) {
        if (covered.test(x)) continue;
        Mask128 dc;
        for (int u : A.elements) dc |= G.left_translate(G.mul(u, x), Bm);
        reps.push_back(x);
        sizes.push_back(dc.count());
        covered |= dc;
        // cross-check against the index formula
        Mask128 AxB;
        int inter = 0;
        for (int u : A.elements)
            if (Bm.test(G.conj(u, x))) ++inter;
        if (sizes.back() != A.order() * B.order() / inter)
            throw Error("double_cosets: size disagrees with |A||B|/|A^x n B|");
    }
    return {reps, sizes};
}

namespace detail {

inline bool conjugates_avoid(const Group& G, const SubgroupHandle& A,
                             const Mask128& Bm) {
    // A^x n B = {e} for every x
    for (int x = 0; x < G.n; ++x)
        for (int u : A.elements) {
            if (u == 0) continue;
            if (Bm.test(G.conj(u, x))) return false;
        }
    return true;
}

}  // namespace detail

// Double-coset sandwich: split the shape as (prefix | middle | suffix), find
// subgroups A, B of orders prod(prefix), prod(suffix) with A^x n B = {e} for
// all x, take T = double coset representatives (a subgroup, chain-refined,
// when the middle has more than one part), and refine A and B by chain
// peeling.
inline std::optional<FactorizationCertificate> sandwich_strategy(
    const Group& G, const SubgroupSet& lat, const Shape& shape) {
    if (shape.length() < 3) return std::nullopt;
    if (shape.product() != G.n) throw Error("sandwich: shape product != |G|");
    const int k = shape.length();
    const SubgroupHandle trivial{G.id, {0}};
    for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            if (i == 0 && j == k) continue;  // that is just chain refinement
            std::span<const int> prefix(shape.parts.data(), i);
            std::span<const int> middle(shape.parts.data() + i, j - i);
            std::span<const int> suffix(shape.parts.data() + j, k - j);
            long long ao = 1, mo = 1, bo = 1;
            for (int p : prefix) ao *= p;
            for (int p : middle) mo *= p;
            for (int p : suffix) bo *= p;
            std::vector<SubgroupHandle> As =
                ao == 1 ? std::vector<SubgroupHandle>{trivial}
                        : subgroups_of_order(lat, static_cast<int>(ao));
            std::vector<SubgroupHandle> Bs =
                bo == 1 ? std::vector<SubgroupHandle>{trivial}
                        : subgroups_of_order(lat, static_cast<int>(bo));
            for (const auto& A : As) {
                for (const auto& B : Bs) {
                    Mask128 Bm = B.mask();
                    if (!detail::conjugates_avoid(G, A, Bm)) continue;
                    // every translate AxB now has size ao*bo, so the double
                    // coset count is exactly mo
                    std::optional<std::vector<std::vector<int>>> tfac;
                    if (middle.size() == 1) {
                        auto [reps, sizes] = double_cosets(G, A, B);
                        if (static_cast<long long>(reps.size()) != mo) continue;
                        tfac = std::vector<std::vector<int>>{reps};
                    } else {
                        // T must itself be a subgroup tiling G as A*T*B, then
                        // chain-refined into the middle parts
                        for (const auto& T : subgroups_of_order(lat, static_cast<int>(mo))) {
                            Mask128 un;
                            for (int t : T.elements)
                                for (int u : A.elements)
                                    un |= G.left_translate(G.mul(u, t), Bm);
                            if (un != G.all_mask()) continue;
                            tfac = detail::chain_rec(G, lat, T.elements, middle);
                            if (tfac) break;
                        }
                        if (!tfac) continue;
                    }
                    std::vector<std::vector<int>> afac;
                    if (!prefix.empty()) {
                        auto r = detail::chain_rec(G, lat, A.elements, prefix);
                        if (!r) continue;
                        afac = std::move(*r);
                    }
                    std::vector<std::vector<int>> bfac;
                    if (!suffix.empty()) {
                        auto r = detail::chain_rec(G, lat, B.elements, suffix);
                        if (!r) continue;
                        bfac = std::move(*r);
                    }
                    FactorizationCertificate c;
                    c.group_id = G.id;
                    c.shape = shape;
                    c.factors = std::move(afac);
                    for (auto& f : *tfac) c.factors.push_back(std::move(f));
                    for (auto& f : bfac) c.factors.push_back(std::move(f));
                    c.method = Method::sandwich;
                    return c;
                }
            }
        }
    }
    return std::nullopt;
}

// Hypothesis checks for the certified (2, |G|/4, 2) nonexistence route:
// (i) elementary abelian Sylow 2-subgroup, (ii) a single conjugacy class of
// involutions, (iii) involution centralizers split as (odd-order group) x
// (Sylow 2-subgroup of the centralizer), commuting elementwise.
inline Theorem6Record theorem6_applicable(const Group& G) {
    Theorem6Record r;
    if (G.n % 4 != 0) return r;
    SubgroupHandle P = sylow(G, 2);
    r.sylow2_elementary_abelian = true;
    for (int g : P.elements)
        if (g != 0 && G.element_order(g) != 2) r.sylow2_elementary_abelian = false;
    if (!r.sylow2_elementary_abelian) return r;

    std::vector<int> involutions;
    for (int g = 1; g < G.n; ++g)
        if (G.element_order(g) == 2) involutions.push_back(g);
    Mask128 cls;
    for (int x = 0; x < G.n; ++x) cls.set(G.conj(involutions[0], x));
    r.involutions_conjugate = true;
    for (int g : involutions)
        if (!cls.test(g)) r.involutions_conjugate = false;
    if (!r.involutions_conjugate) return r;

    int a = involutions[0];
    r.involution = a;
    SubgroupHandle C = centralizer(G, a);
    auto [Csub, back] = subgroup_as_group(G, C);
    SubgroupHandle Pc_sub = sylow(Csub, 2);
    std::vector<int> Pc;
    for (int e : Pc_sub.elements) Pc.push_back(back[e]);
    std::vector<int> H;
    for (int e : C.elements)
        if (G.element_order(e) % 2 == 1) H.push_back(e);
    r.odd_part_order = static_cast<int>(H.size());
    r.centralizer_splits = is_subgroup(G, H);
    if (r.centralizer_splits) {
        for (int p : Pc)
            for (int h : H)
                if (G.mul(p, h) != G.mul(h, p)) r.centralizer_splits = false;
    }
    if (r.centralizer_splits) {
        // P * H = C_G(a) exactly
        Mask128 prod;
        for (int p : Pc) {
            Mask128 hm;
            for (int h : H) hm.set(G.mul(p, h));
            prod |= hm;
        }
        if (prod != C.mask() ||
            static_cast<int>(Pc.size()) * static_cast<int>(H.size()) != C.order())
            r.centralizer_splits = false;
    }
    return r;
}

// In-memory store of certificates, keyed by (group id, shape).
class CertificateStore {
  public:
    void put(FactorizationCertificate c) {
        store_[{c.group_id, c.shape}] = std::move(c);
    }
    const FactorizationCertificate* find(const std::string& gid, const Shape& s) const {
        auto it = store_.find({gid, s});
        return it == store_.end() ? nullptr : &it->second;
    }
    std::size_t size() const { return store_.size(); }

  private:
    std::map<std::pair<std::string, Shape>, FactorizationCertificate> store_;
};

// One representative per conjugacy class of the subgroups of order m.
inline std::vector<SubgroupHandle> subgroup_class_reps(const Group& G,
                                                       const SubgroupSet& lat, int m) {
    std::vector<SubgroupHandle> reps;
    std::set<std::vector<int>> seen;
    for (const auto& H : subgroups_of_order(lat, m)) {
        if (seen.count(H.elements)) continue;
        for (int x = 0; x < G.n; ++x)
            seen.insert(conjugate_subgroup(G, H, x).elements);
        reps.push_back(H);
    }
    return reps;
}

inline Decision decide(const Group& G, const SubgroupSet& lat, const Shape& shape,
                       const SearchBudget& budget = {},
                       const CertificateStore* store = nullptr);

namespace detail {

// Peel one end part off through a subgroup of complementary order (G = T*H or
// H*T for any subgroup H, T the matching transversal) and decide the rest of
// the shape inside H. Only positive sub-results lift back: a No inside one
// subgroup proves nothing about G. Conjugate subgroups are isomorphic, so one
// representative per class suffices.
inline std::optional<FactorizationCertificate> peel_recursive(
    const Group& G, const SubgroupSet& lat, const Shape& shape,
    const SearchBudget& budget) {
    if (shape.length() < 2) return std::nullopt;
    for (Side side : {Side::left, Side::right}) {
        int p = side == Side::left ? shape.parts.front() : shape.parts.back();
        if (G.n % p != 0) continue;
        int ho = G.n / p;
        if (ho == 1 || ho == G.n) continue;
        Shape rest;
        rest.parts = side == Side::left
                         ? std::vector<int>(shape.parts.begin() + 1, shape.parts.end())
                         : std::vector<int>(shape.parts.begin(), shape.parts.end() - 1);
        for (const auto& H : subgroup_class_reps(G, lat, ho)) {
            auto [Hg, to_parent] = subgroup_as_group(G, H);
            Decision sub = decide(Hg, all_subgroups(Hg), rest, budget, nullptr);
            if (sub.kind != Decision::Kind::found) continue;
            std::vector<int> T = mask_to_list(coset_transversal(G, H, side));
            FactorizationCertificate c;
            c.group_id = G.id;
            c.shape = shape;
            c.method = sub.cert.method;
            if (side == Side::left) c.factors.push_back(T);
            for (const auto& f : sub.cert.factors) {
                std::vector<int> up;
                for (int e : f) up.push_back(to_parent[e]);
                std::sort(up.begin(), up.end());
                c.factors.push_back(std::move(up));
            }
            if (side == Side::right) c.factors.push_back(T);
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Strategy cascade: chain peel, sandwich, stored certificates (either
// orientation), the Theorem-6 route for shapes merging to (2, |G|/4, 2),
// transversal peel with recursion into a subgroup, then exhaustive search
// (exact cover on small 3-shapes). Every Found is re-verified from scratch.
inline Decision decide(const Group& G, const SubgroupSet& lat, const Shape& shape,
                       const SearchBudget& budget,
                       const CertificateStore* store) {
    if (shape.product() != G.n) throw Error("decide: shape product != |G|");
    auto accept = [&](FactorizationCertificate c) {
        verify_certificate(G, c);
        Decision d;
        d.kind = Decision::Kind::found;
        d.cert = std::move(c);
        return d;
    };
    if (auto c = chain_peel_strategy(G, lat, shape)) return accept(std::move(*c));
    if (auto c = sandwich_strategy(G, lat, shape)) return accept(std::move(*c));
    if (store) {
        if (const auto* c = store->find(G.id, shape)) return accept(*c);
        if (const auto* c = store->find(G.id, shape.reversed()))
            return accept(reverse_certificate(G, *c));
    }
    if (shape.length() >= 3 && shape.parts.front() == 2 && shape.parts.back() == 2) {
        Theorem6Record rec = theorem6_applicable(G);
        if (rec.applicable()) {
            Decision d;
            d.kind = Decision::Kind::none;
            d.evidence.group_id = G.id;
            d.evidence.shape = shape;
            d.evidence.kind = NonexistenceEvidence::Kind::theorem6;
            d.evidence.merged_to = Shape({2, G.n / 4, 2});
            d.evidence.hypotheses = rec;
            d.evidence.complete = true;
            return d;
        }
    }
    if (auto c = detail::peel_recursive(G, lat, shape, budget))
        return accept(std::move(*c));
    if (shape.length() == 3 && shape.parts[0] * shape.parts[2] <= 16)
        return exact_cover_decide(G, shape, budget);
    return exhaustive_decide(G, shape, budget);
}

inline Decision decide(const Group& G, const Shape& shape,
                       const SearchBudget& budget = {},
                       const CertificateStore* store = nullptr) {
    return decide(G, all_subgroups(G), shape, budget, store);
}

}  // namespace gfact
