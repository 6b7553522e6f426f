#pragma once

#include <string>

#include "gfact/errors.hpp"
#include "gfact/group.hpp"

namespace gfact {

// Element of the group algebra over GF(2): bit g is the coefficient of g.
struct AlgElement {
    std::string group_id;
    Mask128 coeffs;

    bool operator==(const AlgElement&) const = default;
};

inline AlgElement set_sum(const Group& G, const Mask128& X) {
    return {G.id, X};
}

inline AlgElement gf2_add(const AlgElement& u, const AlgElement& v) {
    if (u.group_id != v.group_id)
        throw GroupMismatch("gf2_add: elements of different groups");
    return {u.group_id, u.coeffs ^ v.coeffs};
}

// GF(2) convolution: bit w of the result is the parity of
// #{(g,h): g in u, h in v, g*h = w}. Accumulates the left-translates of the
// denser operand over the set bits of the sparser one, XOR being the parity
// bookkeeping.
inline AlgElement gf2_mul(const Group& G, const AlgElement& u, const AlgElement& v) {
    if (u.group_id != v.group_id || u.group_id != G.id)
        throw GroupMismatch("gf2_mul: elements of different groups");
    Mask128 acc;
    if (u.coeffs.count() <= v.coeffs.count()) {
        u.coeffs.for_each([&](int g) { acc ^= G.left_translate(g, v.coeffs); });
    } else {
        v.coeffs.for_each([&](int h) { acc ^= G.right_translate(u.coeffs, h); });
    }
    return {G.id, acc};
}

// True iff the product of the factor set-sums equals f(G). Under the size
// precondition (product of |factors| = |G|) this is equivalent to exactness of
// the factorization; without it the equivalence fails, so the size is enforced.
inline bool gf2_exactness_check(const Group& G, const std::vector<Mask128>& factors) {
    long long prod = 1;
    for (const Mask128& f : factors) prod *= f.count();
    if (prod != G.n)
        throw SizeMismatch("gf2_exactness_check: factor sizes do not multiply to |G|");
    AlgElement acc = set_sum(G, Mask128::single(0));
    for (const Mask128& f : factors) acc = gf2_mul(G, acc, set_sum(G, f));
    return acc.coeffs == G.all_mask();
}

}  // namespace gfact
