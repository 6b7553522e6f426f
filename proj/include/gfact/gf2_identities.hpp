#pragma once

#include <string>
#include <vector>

#include "gfact/catalog.hpp"
#include "gfact/certificate.hpp"
#include "gfact/gf2.hpp"
#include "gfact/strategies.hpp"

namespace gfact {

struct IdentityReport {
    std::vector<std::string> checked;   // names of verified identities
    std::vector<FactorizationCertificate> emitted;
};

namespace detail {

inline AlgElement elems(const Group& G, std::initializer_list<int> xs) {
    Mask128 m;
    for (int x : xs) m.set(x);
    return {G.id, m};
}

inline AlgElement prod(const Group& G, const std::vector<AlgElement>& fs) {
    AlgElement acc = elems(G, {0});
    for (const auto& f : fs) acc = gf2_mul(G, acc, f);
    return acc;
}

}  // namespace detail

// Checks the four displayed group-algebra identities in the two special
// order-48 groups by direct computation, and emits the corresponding
// factorization certificates into the store.
//
// G44: (C4 x C4) : C3 with generators a, b, t.
// G24: (C2 x C2 x C2 x C2) : C3 with generators a1, a2, b1, b2, t.
inline IdentityReport verify_paper_identities(const Group& G44, const Group& G24,
                                              CertificateStore& store) {
    IdentityReport rep;
    using detail::elems;
    auto fail = [](const std::string& name) {
        throw IdentityFailed("group algebra identity failed: " + name);
    };
    auto put = [&](FactorizationCertificate c) {
        for (auto& f : c.factors) std::sort(f.begin(), f.end());
        rep.emitted.push_back(c);
        store.put(std::move(c));
    };

    {
        const Group& G = G44;
        int a = G.generator_indices[0], b = G.generator_indices[1],
            t = G.generator_indices[2];
        int a2 = G.mul(a, a);
        int b2 = G.mul(b, b);
        int t2 = G.mul(t, t);
        AlgElement fG = {G.id, G.all_mask()};
        AlgElement ea = elems(G, {0, a}), ea3 = detail::prod(G, {ea, ea, ea});
        AlgElement eb = elems(G, {0, b}), eb3 = detail::prod(G, {eb, eb, eb});
        AlgElement ett = elems(G, {0, t, t2});

        // f(G) = (e+t+t^2)(e+a)^3(e+b)^3
        if (detail::prod(G, {ett, ea3, eb3}) != fG) fail("order-48 (C4xC4):C3, form 1");
        rep.checked.push_back("(e+t+t^2)(e+a)^3(e+b)^3");
        // (e+a)^3 = (e+a)(e+a^2), so the same product refines to a
        // (3,2,2,2,2) factorization
        put({G.id, Shape({3, 2, 2, 2, 2}),
                   {{0, t, t2}, {0, a}, {0, a2}, {0, b}, {0, b2}},
                   Method::gf2_catalog});

        // f(G) = (e+a^2)(e+b^2)(e+t+t^2)(e+a)(e+b)
        AlgElement ea2 = elems(G, {0, a2}), eb2 = elems(G, {0, b2});
        if (detail::prod(G, {ea2, eb2, ett, ea, eb}) != fG)
            fail("order-48 (C4xC4):C3, form 2");
        rep.checked.push_back("(e+a^2)(e+b^2)(e+t+t^2)(e+a)(e+b)");
        put({G.id, Shape({2, 2, 3, 2, 2}),
                   {{0, a2}, {0, b2}, {0, t, t2}, {0, a}, {0, b}},
                   Method::gf2_catalog});

        // f(G) = (e+a^2)(e+ab^2)(e+t^2)(e+ta+t^2b^2)(e+b)
        int ab2 = G.mul(a, b2);
        int ta = G.mul(t, a), t2b2 = G.mul(t2, b2);
        AlgElement eab2 = elems(G, {0, ab2});
        AlgElement et2 = elems(G, {0, t2});
        AlgElement mid = elems(G, {0, ta, t2b2});
        if (detail::prod(G, {ea2, eab2, et2, mid, eb}) != fG)
            fail("order-48 (C4xC4):C3, form 3");
        rep.checked.push_back("(e+a^2)(e+ab^2)(e+t^2)(e+ta+t^2b^2)(e+b)");
        put({G.id, Shape({2, 2, 2, 3, 2}),
                   {{0, a2}, {0, ab2}, {0, t2}, {0, ta, t2b2}, {0, b}},
                   Method::gf2_catalog});
    }

    {
        const Group& G = G24;
        int a1 = G.generator_indices[0], a2 = G.generator_indices[1],
            b1 = G.generator_indices[2], b2 = G.generator_indices[3],
            t = G.generator_indices[4];
        int t2 = G.mul(t, t);
        int tb2 = G.mul(t, b2), ta2b1 = G.mul(t, G.mul(a2, b1)),
            a1b1 = G.mul(a1, b1);
        AlgElement fG = {G.id, G.all_mask()};
        // f(G) = (e+a1)(e+t b2+t^2)(e+t a2 b1)(e+a1 b1)(e+b2)
        auto lhs = detail::prod(G, {elems(G, {0, a1}), elems(G, {0, tb2, t2}),
                                    elems(G, {0, ta2b1}), elems(G, {0, a1b1}),
                                    elems(G, {0, b2})});
        if (lhs != fG) fail("order-48 (C2^4):C3");
        rep.checked.push_back("(e+a1)(e+tb2+t^2)(e+ta2b1)(e+a1b1)(e+b2)");
        put({G.id, Shape({2, 3, 2, 2, 2}),
                   {{0, a1}, {0, tb2, t2}, {0, ta2b1}, {0, a1b1}, {0, b2}},
                   Method::gf2_catalog});
    }

    return rep;
}

// The classical explicit (2,2,3,2) factorization of SL(2,3):
// {e,a} {e,b} {e,t,t^2} {e,-e} with a = [[0,1],[-1,0]], b = [[1,1],[1,-1]],
// t = [[1,1],[0,1]]; note t^2 = [[1,-1],[0,1]] and a^2 = -e.
inline FactorizationCertificate sl23_explicit_certificate(const Group& G) {
    int a = G.generator_indices[0], b = G.generator_indices[1],
        t = G.generator_indices[2];
    int t2 = G.mul(t, t);
    int me = G.mul(a, a);
    FactorizationCertificate c;
    c.group_id = G.id;
    c.shape = Shape({2, 2, 3, 2});
    c.factors = {{0, a}, {0, b}, {0, t, t2}, {0, me}};
    for (auto& f : c.factors) std::sort(f.begin(), f.end());
    c.method = Method::manual;
    return c;
}

// Loads every certificate that is known in closed form into the store: the
// four group-algebra identities for the two order-48 groups without order-24
// subgroups, plus the explicit SL(2,3) one. All are verified before storing.
inline IdentityReport seed_known_certificates(const Catalog& cat,
                                              CertificateStore& store) {
    Group G44 = cat.build("(C4 x C4) : C3");
    Group G24 = cat.build("(C2 x C2 x C2 x C2) : C3");
    IdentityReport rep = verify_paper_identities(G44, G24, store);

    Group S = cat.build("SL(2,3)");
    FactorizationCertificate c = sl23_explicit_certificate(S);
    verify_certificate(S, c);
    rep.checked.push_back("SL(2,3) = {e,a}{e,b}{e,t,t^2}{e,-e}");
    rep.emitted.push_back(c);
    store.put(std::move(c));
    return rep;
}

}  // namespace gfact
