#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfact/gf2_identities.hpp"
#include "gfact/shapes.hpp"
#include "gfact/strategies.hpp"

namespace gfact {

using DecideFn =
    std::function<Decision(const Group&, const SubgroupSet&, const Shape&,
                           const SearchBudget&, const CertificateStore*)>;

inline DecideFn default_decider() {
    return [](const Group& G, const SubgroupSet& lat, const Shape& s,
              const SearchBudget& b, const CertificateStore* st) {
        return decide(G, lat, s, b, st);
    };
}

struct GroupVerdict {
    std::string group_id;
    int order = 0;
    bool supersolvable = false;
    bool multifold = false;
    // per-shape decisions in evaluation order; a negative verdict stops at its
    // failing shape, so later classes stay unevaluated
    std::vector<std::pair<Shape, Decision>> outcomes;
    std::optional<Shape> failing_shape;
    // completed searches confirming theorem6 targets independently
    std::vector<std::pair<Shape, NonexistenceEvidence>> cross_checks;
};

struct ClassificationReport {
    int max_order = 60;
    std::vector<GroupVerdict> verdicts;   // the non-supersolvable entries
    std::vector<GroupVerdict> controls;   // supersolvable control sample
    std::vector<std::string> negatives;   // sorted by order, then id
};

// Decides multifold-factorizability: one decision per reversal class of the
// all-prime shapes of |G|. Supersolvable groups are settled wholesale by chain
// peeling; otherwise classes likely to be negative (both outer parts 2, where
// the Theorem-6 route can apply) are evaluated first so a negative group stops
// early. Inconclusive anywhere is an error, never a guess.
inline GroupVerdict is_multifold(const Group& G, const SearchBudget& budget = {},
                                 const CertificateStore* store = nullptr,
                                 const DecideFn& decider = default_decider()) {
    GroupVerdict v;
    v.group_id = G.id;
    v.order = G.n;
    v.supersolvable = is_supersolvable(G);
    if (omega(G.n) <= 1) {
        v.multifold = true;  // no multi-part prime shape exists
        return v;
    }
    SubgroupSet lat = all_subgroups(G);
    std::vector<Shape> shapes = prime_shapes_mod_reversal(G.n);
    if (v.supersolvable) {
        for (const Shape& s : shapes) {
            auto c = chain_peel_strategy(G, lat, s);
            if (!c)
                throw Error(G.id + ": supersolvable but chain peeling failed for " +
                            s.str());
            verify_certificate(G, *c);
            Decision d;
            d.kind = Decision::Kind::found;
            d.cert = std::move(*c);
            v.outcomes.emplace_back(s, std::move(d));
        }
        v.multifold = true;
        return v;
    }
    std::stable_partition(shapes.begin(), shapes.end(), [](const Shape& s) {
        return s.parts.front() == 2 && s.parts.back() == 2;
    });
    v.multifold = true;
    for (const Shape& s : shapes) {
        Decision d = decider(G, lat, s, budget, store);
        if (d.kind == Decision::Kind::inconclusive)
            throw BudgetExhausted(G.id + ": undecided shape " + s.str());
        bool negative = d.kind == Decision::Kind::none;
        v.outcomes.emplace_back(s, std::move(d));
        if (negative) {
            v.multifold = false;
            v.failing_shape = s;
            break;
        }
    }
    return v;
}

// Classifies every non-supersolvable catalog group of order <= max_order and
// re-checks the supersolvable controls. Negative verdicts resting on the
// Theorem-6 route additionally get their merged (2, m, 2) target confirmed by
// a completed search, so no nonexistence claim depends on the theorem alone.
inline ClassificationReport classify_catalog(
    const Catalog& cat, int max_order = 60, const SearchBudget& budget = {},
    const CertificateStore* store = nullptr,
    const DecideFn& decider = default_decider()) {
    CertificateStore local;
    if (!store) {
        seed_known_certificates(cat, local);
        store = &local;
    }
    ClassificationReport rep;
    rep.max_order = max_order;
    for (const auto& e : cat.entries()) {
        if (e.order > max_order) continue;
        if (e.tag != CatalogTag::non_supersolvable && e.tag != CatalogTag::control)
            continue;
        if (!e.builder)
            throw CatalogIncomplete("no recipe loaded for \"" + e.id + "\"");
        Group G = cat.build(e.id);
        GroupVerdict v = is_multifold(G, budget, store, decider);
        if (e.tag == CatalogTag::control) {
            if (!v.multifold)
                throw Error("control group " + e.id + " classified negative");
            rep.controls.push_back(std::move(v));
            continue;
        }
        if (!v.multifold) {
            const Decision& d = v.outcomes.back().second;
            if (d.evidence.kind == NonexistenceEvidence::Kind::theorem6) {
                Decision chk = exact_cover_decide(G, d.evidence.merged_to, budget);
                if (chk.kind == Decision::Kind::inconclusive)
                    throw BudgetExhausted(G.id + ": cross-check of " +
                                          d.evidence.merged_to.str() + " undecided");
                if (chk.kind != Decision::Kind::none)
                    throw Error(G.id + ": search contradicts theorem6 on " +
                                d.evidence.merged_to.str());
                v.cross_checks.emplace_back(d.evidence.merged_to, chk.evidence);
            }
        }
        rep.verdicts.push_back(std::move(v));
    }
    std::vector<const GroupVerdict*> neg;
    for (const auto& v : rep.verdicts)
        if (!v.multifold) neg.push_back(&v);
    std::sort(neg.begin(), neg.end(), [](const GroupVerdict* a, const GroupVerdict* b) {
        return std::tie(a->order, a->group_id) < std::tie(b->order, b->group_id);
    });
    for (const auto* v : neg) rep.negatives.push_back(v->group_id);
    return rep;
}

// Certifies all ten reversal classes of the prime shapes of 120 for S5.
// Any failure is fatal: S5 is multifold-factorizable.
inline GroupVerdict s5_suite(const Catalog& cat, const SearchBudget& budget = {},
                             const CertificateStore* store = nullptr) {
    Group S5 = cat.build("S5");
    GroupVerdict v = is_multifold(S5, budget, store);
    if (!v.multifold)
        throw Error("s5_suite: S5 reported non-factorizable at " +
                    v.failing_shape->str());
    if (v.outcomes.size() != 10)
        throw Error("s5_suite: expected 10 reversal classes for 120");
    return v;
}

}  // namespace gfact
