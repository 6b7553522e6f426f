#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfact/errors.hpp"
#include "gfact/group.hpp"
#include "gfact/shapes.hpp"

namespace gfact {

enum class Method { chain, sandwich, gf2_catalog, exhaustive, manual };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::chain: return "chain";
        case Method::sandwich: return "sandwich";
        case Method::gf2_catalog: return "gf2_catalog";
        case Method::exhaustive: return "exhaustive";
        case Method::manual: return "manual";
    }
    return "?";
}

// Explicit factor subsets witnessing G = A1 * ... * Ak.
struct FactorizationCertificate {
    std::string group_id;
    Shape shape;
    std::vector<std::vector<int>> factors;  // element indices, each sorted
    Method method = Method::manual;

    bool operator==(const FactorizationCertificate& o) const {
        return group_id == o.group_id && shape == o.shape && factors == o.factors;
    }
};

struct Theorem6Record {
    bool sylow2_elementary_abelian = false;
    bool involutions_conjugate = false;
    bool centralizer_splits = false;
    int involution = -1;       // witness involution checked for (iii)
    int odd_part_order = 0;    // |H| in C_G(a) = P x H
    bool applicable() const {
        return sylow2_elementary_abelian && involutions_conjugate && centralizer_splits;
    }
};

struct NonexistenceEvidence {
    std::string group_id;
    Shape shape;
    enum class Kind { exhaustive_complete, theorem6 } kind = Kind::exhaustive_complete;
    // exhaustive_complete
    std::uint64_t nodes_visited = 0;
    std::vector<std::string> normalizations_used;
    bool complete = false;
    // theorem6
    Shape merged_to;
    Theorem6Record hypotheses;
    double elapsed_seconds = 0.0;
};

struct SearchBudget {
    std::uint64_t max_nodes = 0;   // 0 = unlimited
    double max_seconds = 0.0;      // 0 = unlimited
    bool parallel = false;
};

// Iterated setwise product size of the factors, and whether it is exact
// (size == product of factor sizes == |G| when claimed as a factorization).
inline std::pair<int, bool> product_exact(const Group& G,
                                          const std::vector<Mask128>& factors) {
    Mask128 acc = Mask128::single(0);
    long long expect = 1;
    for (const Mask128& f : factors) {
        expect *= f.count();
        Mask128 next;
        f.for_each([&](int g) { next |= G.right_translate(acc, g); });
        acc = next;
    }
    int size = acc.count();
    return {size, size == expect};
}

inline std::vector<Mask128> certificate_masks(const FactorizationCertificate& c) {
    std::vector<Mask128> out;
    for (const auto& f : c.factors) {
        Mask128 m;
        for (int e : f) m.set(e);
        out.push_back(m);
    }
    return out;
}

// Recomputes exactness from scratch; throws VerifyFailed on the first
// violated condition.
inline void verify_certificate(const Group& G, const FactorizationCertificate& c) {
    if (c.group_id != G.id) throw VerifyFailed("certificate is for group " + c.group_id);
    if (c.shape.length() != static_cast<int>(c.factors.size()))
        throw VerifyFailed("factor count differs from shape length");
    if (c.shape.product() != G.n)
        throw VerifyFailed("shape product " + std::to_string(c.shape.product()) +
                           " != |G| = " + std::to_string(G.n));
    for (std::size_t i = 0; i < c.factors.size(); ++i) {
        const auto& f = c.factors[i];
        if (static_cast<int>(f.size()) != c.shape.parts[i])
            throw VerifyFailed("factor " + std::to_string(i) + " has wrong size");
        Mask128 m;
        for (int e : f) {
            if (e < 0 || e >= G.n)
                throw VerifyFailed("factor " + std::to_string(i) + " has an element out of range");
            if (m.test(e))
                throw VerifyFailed("factor " + std::to_string(i) + " has a repeated element");
            m.set(e);
        }
    }
    auto masks = certificate_masks(c);
    // prefix exactness, culminating in the full product
    Mask128 acc = Mask128::single(0);
    long long expect = 1;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        expect *= masks[i].count();
        Mask128 next;
        masks[i].for_each([&](int g) { next |= G.right_translate(acc, g); });
        acc = next;
        if (acc.count() != expect)
            throw VerifyFailed("prefix product through factor " + std::to_string(i) +
                               " is not exact");
    }
    if (acc != G.all_mask()) throw VerifyFailed("product does not cover G");
}

inline bool certificate_ok(const Group& G, const FactorizationCertificate& c) {
    try {
        verify_certificate(G, c);
        return true;
    } catch (const VerifyFailed&) {
        return false;
    }
}

// G = A1...Ak  =>  G = Ak^-1 ... A1^-1
inline FactorizationCertificate reverse_certificate(const Group& G,
                                                    const FactorizationCertificate& c) {
    FactorizationCertificate r;
    r.group_id = c.group_id;
    r.shape = c.shape.reversed();
    r.method = c.method;
    for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it) {
        std::vector<int> f;
        for (int e : *it) f.push_back(G.inv[e]);
        std::sort(f.begin(), f.end());
        r.factors.push_back(std::move(f));
    }
    return r;
}

// Replaces factors i and i+1 by their setwise product.
inline FactorizationCertificate merge_adjacent(const Group& G,
                                               const FactorizationCertificate& c, int i) {
    if (i < 0 || i + 1 >= static_cast<int>(c.factors.size()))
        throw Error("merge_adjacent: index out of range");
    FactorizationCertificate r;
    r.group_id = c.group_id;
    r.method = c.method;
    for (int j = 0; j < static_cast<int>(c.factors.size()); ++j) {
        if (j == i) {
            Mask128 prod;
            for (int a : c.factors[i])
                for (int b : c.factors[i + 1]) prod.set(G.mul(a, b));
            std::vector<int> f;
            prod.for_each([&](int e) { f.push_back(e); });
            r.factors.push_back(std::move(f));
        } else if (j != i + 1) {
            r.factors.push_back(c.factors[j]);
        }
    }
    for (const auto& f : r.factors) r.shape.parts.push_back(static_cast<int>(f.size()));
    return r;
}

}  // namespace gfact
