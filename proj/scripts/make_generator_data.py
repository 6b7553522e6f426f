#!/usr/bin/env python3
"""Derives data/generators.gfd: matrix/permutation generators plus frozen
fingerprints for the three order-48 catalog groups that have no convenient
direct/semidirect construction.

Everything here is computed independently of the C++ library (pure Python
closure / conjugacy / quotient code) so the fingerprints in the data file act
as an external oracle for the C++ builders.

  * "C2 . S4 = SL(2,3) . C2": the order-48 subgroup of SL(2,7).  Every
    involution of SL(2,p) is -I, so any order-48 subgroup has a unique
    involution, which pins down this group among the double covers of S4.
  * "((C4 x C2) : C2) : C3": the central product C4 o SL(2,3), realized in
    GL(2,5) as <SL(2,3), 2I> (2 has order 4 in F5*, and 2^2 = -1 glues the
    centers).
  * "A4 : C4": degree-8 permutation group <(1 2 3), (1 2)(5 6 7 8)>.
"""

import itertools
import os
import sys

# ---------------------------------------------------------------------------
# generic finite group machinery over hashable elements


def closure(gens, mul, ident, limit=400):
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            x = mul(elems[i], g)
            if x not in index:
                if len(elems) >= limit:
                    raise RuntimeError("closure limit exceeded")
                index[x] = len(elems)
                elems.append(x)
        i += 1
    return elems, index


class FG:
    """Finite group with explicit element list and multiplication."""

    def __init__(self, gens, mul, ident):
        self.elems, self.index = closure(gens, mul, ident)
        self.mul_raw = mul
        self.n = len(self.elems)
        self.ident = ident

    def mul(self, a, b):
        return self.mul_raw(a, b)

    def inv(self, a):
        x = a
        while self.mul(x, a) != self.ident:
            x = self.mul(x, a)
        return x

    def order_of(self, a):
        k, x = 1, a
        while x != self.ident:
            x = self.mul(x, a)
            k += 1
        return k

    def order_histogram(self):
        h = {}
        for a in self.elems:
            k = self.order_of(a)
            h[k] = h.get(k, 0) + 1
        return h

    def conjugacy_class_sizes(self):
        seen = set()
        sizes = []
        for a in self.elems:
            if a in seen:
                continue
            cls = {self.mul(self.mul(self.inv(x), a), x) for x in self.elems}
            seen |= cls
            sizes.append(len(cls))
        return sorted(sizes)

    def center_order(self):
        return sum(
            1
            for a in self.elems
            if all(self.mul(a, b) == self.mul(b, a) for b in self.elems)
        )

    def derived_elements(self):
        comms = {
            self.mul(
                self.mul(self.inv(a), self.inv(b)), self.mul(a, b)
            )
            for a in self.elems
            for b in self.elems
        }
        sub, _ = closure(list(comms), self.mul_raw, self.ident)
        return frozenset(sub)

    def quotient(self, normal_elems):
        """Quotient by a normal subgroup given as a set of elements.
        Elements of the quotient are frozensets (the cosets)."""
        coset_of = {}
        cosets = []
        for g in self.elems:
            if g in coset_of:
                continue
            c = frozenset(self.mul(g, x) for x in normal_elems)
            for x in c:
                coset_of[x] = c
            cosets.append(c)

        def qmul(a, b):
            return coset_of[self.mul(next(iter(a)), next(iter(b)))]

        ident = coset_of[self.ident]
        q = FG.__new__(FG)
        q.elems = cosets
        q.index = {c: i for i, c in enumerate(cosets)}
        q.mul_raw = qmul
        q.n = len(cosets)
        q.ident = ident
        return q

    def abelian_invariant_factors(self):
        """Invariant factors of an abelian group, largest first (greedy
        maximal-order cyclic quotient, mirrors the canonical decomposition)."""
        if self.n == 1:
            return []
        best = max(self.elems, key=self.order_of)
        k = self.order_of(best)
        cyc = set()
        x = self.ident
        for _ in range(k):
            cyc.add(x)
            x = self.mul(x, best)
        return [k] + self.quotient(frozenset(cyc)).abelian_invariant_factors()

    def fingerprint(self):
        der = self.derived_elements()
        ab = self.quotient(der).abelian_invariant_factors()
        return {
            "order": self.n,
            "orders": self.order_histogram(),
            "classes": self.conjugacy_class_sizes(),
            "center": self.center_order(),
            "derived": len(der),
            "abelianization": ab,
        }


# ---------------------------------------------------------------------------
# element domains

def mat_mul(p):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)
    return mul


MAT_I = (1, 0, 0, 1)


def gl_elements(p):
    for m in itertools.product(range(p), repeat=4):
        if (m[0] * m[3] - m[1] * m[2]) % p != 0:
            yield m


def sl_elements(p):
    for m in gl_elements(p):
        if (m[0] * m[3] - m[1] * m[2]) % p == 1:
            yield m


def perm_mul(x, y):
    return tuple(y[i] for i in x)


def element_order(mul, ident, a):
    k, x = 1, a
    while x != ident:
        x = mul(x, a)
        k += 1
    return k


# ---------------------------------------------------------------------------
# the three constructions

def find_2O():
    """First (in lexicographic generator order) order-48 subgroup of SL(2,7)."""
    mul = mat_mul(7)
    sl = list(sl_elements(7))
    # the binary octahedral group contains elements of order 8 and 3
    ord8 = [m for m in sl if element_order(mul, MAT_I, m) == 8]
    ord3 = [m for m in sl if element_order(mul, MAT_I, m) == 3]
    for g in ord8:
        for h in ord3:
            try:
                elems, _ = closure([g, h], mul, MAT_I, limit=49)
            except RuntimeError:
                continue
            if len(elems) == 48:
                G = FG([g, h], mul, MAT_I)
                invol = [a for a in G.elems if G.order_of(a) == 2]
                assert invol == [(6, 0, 0, 6)], "unique involution must be -I"
                return G, [g, h]
    raise RuntimeError("no order-48 subgroup of SL(2,7) found")


def find_C4oSL23():
    """<SL(2,3) copy, 2I> inside GL(2,5): the central product C4 o SL(2,3)."""
    mul = mat_mul(5)
    sl = list(sl_elements(5))
    ord4 = [m for m in sl if element_order(mul, MAT_I, m) == 4]
    ord6 = [m for m in sl if element_order(mul, MAT_I, m) == 6]
    two_i = (2, 0, 0, 2)
    for g in ord4:
        for h in ord6:
            try:
                elems, _ = closure([g, h], mul, MAT_I, limit=25)
            except RuntimeError:
                continue
            if len(elems) == 24:
                G = FG([g, h, two_i], mul, MAT_I)
                assert G.n == 48
                assert G.center_order() == 4, "center must be the C4 of scalars"
                assert len(G.derived_elements()) == 8, "derived must be Q8"
                return G, [g, h, two_i]
    raise RuntimeError("no SL(2,3) copy in SL(2,5) found")


def build_A4C4():
    # 0-based images of (1 2 3), (1 2)(3 4) -- generating A4 on {1..4} -- and
    # s = (1 2)(5 6 7 8), which conjugates A4 by the outer transposition while
    # s^2 is central, so <A4, s> = A4 : C4 of order 48
    a = (1, 2, 0, 3, 4, 5, 6, 7)
    v = (1, 0, 3, 2, 4, 5, 6, 7)
    s = (1, 0, 2, 3, 5, 6, 7, 4)
    ident = tuple(range(8))
    G = FG([a, v, s], perm_mul, ident)
    assert G.n == 48
    assert element_order(perm_mul, ident, s) == 4
    return G, [a, v, s]


# ---------------------------------------------------------------------------
# output

def cycles_1based(perm):
    seen = set()
    out = ""
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out += "(" + " ".join(str(x + 1) for x in cyc) + ")"
    return out if out else "()"


def emit(f, rec_id, kind, gens, fp, *, degree=None, prime=None):
    print(f"id: {rec_id}", file=f)
    print(f"order: {fp['order']}", file=f)
    print(f"kind: {kind}", file=f)
    if degree is not None:
        print(f"degree: {degree}", file=f)
    if prime is not None:
        print(f"prime: {prime}", file=f)
    for g in gens:
        if kind == "perm":
            print(f"gen: {cycles_1based(g)}", file=f)
        else:
            print(f"gen: {g[0]} {g[1]} {g[2]} {g[3]}", file=f)
    orders = " ".join(f"{k}:{v}" for k, v in sorted(fp["orders"].items()))
    print(f"fingerprint_orders: {orders}", file=f)
    print("fingerprint_classes: " + " ".join(map(str, fp["classes"])), file=f)
    print(f"fingerprint_center: {fp['center']}", file=f)
    print(f"fingerprint_derived: {fp['derived']}", file=f)
    ab = " ".join(map(str, fp["abelianization"]))
    print(f"fingerprint_abelianization: {ab}", file=f)
    print(file=f)


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "data", "generators.gfd")
    os.makedirs(os.path.dirname(out_path), exist_ok=True)

    g2o, gens_2o = find_2O()
    gc4, gens_c4 = find_C4oSL23()
    ga4, gens_a4 = build_A4C4()

    fps = [g2o.fingerprint(), gc4.fingerprint(), ga4.fingerprint()]
    for i in range(3):
        for j in range(i + 1, 3):
            assert fps[i] != fps[j], "fingerprints must be pairwise distinct"

    with open(out_path, "w") as f:
        print("# generated by scripts/make_generator_data.py -- do not edit", file=f)
        print(file=f)
        emit(f, "C2 . S4 = SL(2,3) . C2", "matrix", gens_2o, fps[0], prime=7)
        emit(f, "((C4 x C2) : C2) : C3", "matrix", gens_c4, fps[1], prime=5)
        emit(f, "A4 : C4", "perm", gens_a4, fps[2], degree=8)
    print(f"wrote {out_path}")
    for rec_id, fp in zip(
        ["C2 . S4 = SL(2,3) . C2", "((C4 x C2) : C2) : C3", "A4 : C4"], fps
    ):
        print(rec_id, fp)


if __name__ == "__main__":
    main()
