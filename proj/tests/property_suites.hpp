#pragma once

// Randomized property suites shared by test_properties and the acceptance
// runner. Each suite returns (cases run, failures) with a short description of
// the first failure for diagnosis. Seeds are fixed: the suites are
// deterministic.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gfact/catalog.hpp"
#include "gfact/gf2_identities.hpp"
#include "gfact/strategies.hpp"

namespace gfact::props {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++failures;
        if (first_failure.empty()) first_failure = what;
    }
};

struct CertPool {
    std::vector<Group> groups;
    std::vector<std::pair<int, FactorizationCertificate>> certs;  // group index, cert

    const Group& group_of(std::size_t ci) const { return groups[certs[ci].first]; }
    const FactorizationCertificate& cert(std::size_t ci) const {
        return certs[ci].second;
    }
};

// Certificates harvested by deciding every shape of a spread of catalog
// groups, plus the seeded closed-form ones.
inline CertPool build_pool(const Catalog& cat) {
    CertPool pool;
    CertificateStore store;
    seed_known_certificates(cat, store);
    const char* ids[] = {"S3", "D4", "Q8", "A4", "(C3 x C3) : C2", "SL(2,3)",
                         "S4", "C24", "C2 x A4"};
    for (const char* id : ids) {
        Group G = cat.build(id);
        SubgroupSet lat = all_subgroups(G);
        int gi = static_cast<int>(pool.groups.size());
        for (int k = 2; k <= omega(G.n); ++k) {
            for (const Shape& s : ordered_factorizations(G.n, k)) {
                Decision d = decide(G, lat, s, {}, &store);
                if (d.kind == Decision::Kind::found)
                    pool.certs.emplace_back(gi, d.cert);
            }
        }
        pool.groups.push_back(std::move(G));
    }
    return pool;
}

// Every prefix of a verified factorization is exact.
inline SuiteResult prefix_exactness_suite(const CertPool& pool, int min_cases = 1000) {
    SuiteResult r;
    r.name = "prefix exactness of verified certificates";
    std::mt19937 rng(101);
    while (r.cases < min_cases) {
        std::size_t ci = rng() % pool.certs.size();
        const Group& G = pool.group_of(ci);
        const auto& c = pool.cert(ci);
        auto masks = certificate_masks(c);
        int len = 1 + static_cast<int>(rng() % masks.size());
        std::vector<Mask128> prefix(masks.begin(), masks.begin() + len);
        ++r.cases;
        if (!product_exact(G, prefix).second)
            r.fail(G.id + " " + c.shape.str() + " prefix " + std::to_string(len));
    }
    return r;
}

// Reversal and adjacent merges of certificates stay certificates.
inline SuiteResult reversal_merge_suite(const CertPool& pool, int min_cases = 1000) {
    SuiteResult r;
    r.name = "reversal and merge closure";
    std::mt19937 rng(202);
    while (r.cases < min_cases) {
        std::size_t ci = rng() % pool.certs.size();
        const Group& G = pool.group_of(ci);
        const auto& c = pool.cert(ci);
        ++r.cases;
        if (rng() & 1 || c.factors.size() < 2) {
            if (!certificate_ok(G, reverse_certificate(G, c)))
                r.fail("reverse of " + G.id + " " + c.shape.str());
        } else {
            int i = static_cast<int>(rng() % (c.factors.size() - 1));
            if (!certificate_ok(G, merge_adjacent(G, c, i)))
                r.fail("merge " + std::to_string(i) + " of " + G.id + " " + c.shape.str());
        }
    }
    return r;
}

// Exactness survives translating the outer factors and conjugating everything.
inline SuiteResult invariance_suite(const CertPool& pool, int min_cases = 1000) {
    SuiteResult r;
    r.name = "translation/conjugation invariance of exactness";
    std::mt19937 rng(303);
    while (r.cases < min_cases) {
        std::size_t ci = rng() % pool.certs.size();
        const Group& G = pool.group_of(ci);
        FactorizationCertificate c = pool.cert(ci);
        int g = static_cast<int>(rng() % G.n);
        switch (rng() % 3) {
            case 0:  // left-translate the first factor: g*A1
                for (int& e : c.factors.front()) e = G.mul(g, e);
                break;
            case 1:  // right-translate the last factor: Ak*g
                for (int& e : c.factors.back()) e = G.mul(e, g);
                break;
            default:  // conjugate every factor
                for (auto& f : c.factors)
                    for (int& e : f) e = G.conj(e, g);
                break;
        }
        for (auto& f : c.factors) std::sort(f.begin(), f.end());
        ++r.cases;
        if (!certificate_ok(G, c))
            r.fail(G.id + " " + c.shape.str() + " g=" + std::to_string(g));
    }
    return r;
}

// gf2_exactness_check agrees with product_exact whenever sizes multiply to
// |G|: on certificates (both true), perturbed certificates, and random sets.
inline SuiteResult gf2_equivalence_suite(const CertPool& pool, int min_cases = 1000) {
    SuiteResult r;
    r.name = "gf2_exactness_check == product_exact under the size precondition";
    std::mt19937 rng(404);
    auto random_subset = [&](const Group& G, int size) {
        std::set<int> s;
        while (static_cast<int>(s.size()) < size) s.insert(rng() % G.n);
        Mask128 m;
        for (int e : s) m.set(e);
        return m;
    };
    while (r.cases < min_cases) {
        std::size_t ci = rng() % pool.certs.size();
        const Group& G = pool.group_of(ci);
        const auto& c = pool.cert(ci);
        std::vector<Mask128> masks = certificate_masks(c);
        switch (rng() % 3) {
            case 0:  // the certificate itself: both must say yes
                break;
            case 1: {  // one factor replaced by a random same-size set
                std::size_t i = rng() % masks.size();
                masks[i] = random_subset(G, c.shape.parts[i]);
                break;
            }
            default:  // fully random sets of the right sizes
                for (std::size_t i = 0; i < masks.size(); ++i)
                    masks[i] = random_subset(G, c.shape.parts[i]);
                break;
        }
        ++r.cases;
        bool viaProduct = product_exact(G, masks).second;
        bool viaGf2 = gf2_exactness_check(G, masks);
        if (viaGf2 != viaProduct)
            r.fail(G.id + " " + c.shape.str() + " gf2=" + std::to_string(viaGf2));
    }
    return r;
}

// |AxB| = |A||B| / |A^x n B| against a directly computed double coset, plus
// the partition property.
inline SuiteResult double_coset_suite(const CertPool& pool, int min_cases = 1000) {
    SuiteResult r;
    r.name = "double-coset size formula vs direct partition";
    std::mt19937 rng(505);
    std::vector<SubgroupSet> lats;
    for (const Group& G : pool.groups) lats.push_back(all_subgroups(G));
    while (r.cases < min_cases) {
        std::size_t gi = rng() % pool.groups.size();
        const Group& G = pool.groups[gi];
        const auto& subs = lats[gi].subgroups;
        const SubgroupHandle& A = subs[rng() % subs.size()];
        const SubgroupHandle& B = subs[rng() % subs.size()];
        ++r.cases;
        try {
            auto [reps, sizes] = double_cosets(G, A, B);
            // direct, independent recomputation
            std::vector<bool> covered(G.n, false);
            for (std::size_t i = 0; i < reps.size(); ++i) {
                std::set<int> dc;
                for (int u : A.elements)
                    for (int v : B.elements) dc.insert(G.mul(G.mul(u, reps[i]), v));
                int inter = 0;
                for (int u : A.elements)
                    if (B.mask().test(G.conj(u, reps[i]))) ++inter;
                if (static_cast<int>(dc.size()) != sizes[i] ||
                    sizes[i] != A.order() * B.order() / inter) {
                    r.fail(G.id + " size mismatch at rep " + std::to_string(reps[i]));
                    break;
                }
                for (int e : dc) {
                    if (covered[e]) {
                        r.fail(G.id + " double cosets overlap");
                        break;
                    }
                    covered[e] = true;
                }
            }
            for (int e = 0; e < G.n; ++e)
                if (!covered[e]) {
                    r.fail(G.id + " double cosets miss element " + std::to_string(e));
                    break;
                }
        } catch (const Error& ex) {
            r.fail(std::string("double_cosets threw: ") + ex.what());
        }
    }
    return r;
}

// Deterministic: the two complete solvers agree on every in-domain 3-shape of
// every catalog group of order <= 36.
inline SuiteResult exact_cover_agreement_suite(const Catalog& cat) {
    SuiteResult r;
    r.name = "exact_cover_decide == exhaustive_decide on 3-shapes (order <= 36)";
    for (const auto& e : cat.entries()) {
        if (e.order > 36 || !e.builder) continue;
        Group G = cat.build(e.id);
        for (const Shape& s : ordered_factorizations(G.n, 3)) {
            if (s.parts[0] * s.parts[2] > 16) continue;
            ++r.cases;
            Decision ec = exact_cover_decide(G, s);
            Decision ex = exhaustive_decide(G, s);
            if (ec.kind != ex.kind) {
                r.fail(G.id + " " + s.str() + " disagree");
                continue;
            }
            if (ec.kind == Decision::Kind::found &&
                (!certificate_ok(G, ec.cert) || !certificate_ok(G, ex.cert)))
                r.fail(G.id + " " + s.str() + " certificate invalid");
        }
    }
    return r;
}

inline std::vector<SuiteResult> run_all(const Catalog& cat) {
    CertPool pool = build_pool(cat);
    return {
        prefix_exactness_suite(pool),  reversal_merge_suite(pool),
        invariance_suite(pool),        gf2_equivalence_suite(pool),
        double_coset_suite(pool),      exact_cover_agreement_suite(cat),
    };
}

}  // namespace gfact::props
