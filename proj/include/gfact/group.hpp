#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gfact/errors.hpp"
#include "gfact/mask.hpp"

namespace gfact {

inline constexpr int kMaxOrder = 128;

// Finite group as an explicit Cayley table. Immutable after construction;
// element 0 is always the identity.
struct Group {
    std::string id;
    int n = 1;
    std::vector<std::uint8_t> table;   // row-major: table[g*n + h] = g*h
    std::vector<std::uint8_t> rtable;  // rtable[g*n + x] = x*g (column slice of table)
    std::vector<std::uint8_t> inv;
    std::vector<std::string> labels;
    std::vector<int> generator_indices;

    int mul(int g, int h) const { return table[g * n + h]; }
    int inverse(int g) const { return inv[g]; }
    int conj(int g, int x) const {  // g^x = x^-1 g x
        return mul(mul(inv[x], g), x);
    }

    Mask128 all_mask() const { return Mask128::full(n); }

    // {x*g : x in m}
    Mask128 right_translate(const Mask128& m, int g) const {
        Mask128 r;
        const std::uint8_t* row = &rtable[g * n];
        m.for_each([&](int x) { r.set(row[x]); });
        return r;
    }
    // {g*x : x in m}
    Mask128 left_translate(int g, const Mask128& m) const {
        Mask128 r;
        const std::uint8_t* row = &table[g * n];
        m.for_each([&](int x) { r.set(row[x]); });
        return r;
    }

    int element_order(int g) const {
        int k = 1, x = g;
        while (x != 0) {
            x = mul(x, g);
            ++k;
        }
        return k;
    }

    void finish_tables() {
        rtable.assign(static_cast<std::size_t>(n) * n, 0);
        for (int g = 0; g < n; ++g)
            for (int x = 0; x < n; ++x)
                rtable[g * n + x] = table[x * n + g];
        inv.assign(n, 0);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (mul(g, h) == 0) {
                    inv[g] = static_cast<std::uint8_t>(h);
                    break;
                }
        }
    }

    // Checks every Group invariant, including full associativity.
    // Throws ValidationError naming the first failure.
    void validate() const {
        for (int g = 0; g < n; ++g) {
            if (mul(0, g) != g || mul(g, 0) != g)
                throw ValidationError(id + ": element 0 is not an identity at g=" +
                                      std::to_string(g));
        }
        std::vector<bool> seen(n);
        for (int g = 0; g < n; ++g) {
            std::fill(seen.begin(), seen.end(), false);
            for (int h = 0; h < n; ++h) {
                int x = mul(g, h);
                if (x < 0 || x >= n || seen[x])
                    throw ValidationError(id + ": row " + std::to_string(g) +
                                          " is not a permutation");
                seen[x] = true;
            }
            std::fill(seen.begin(), seen.end(), false);
            for (int h = 0; h < n; ++h) {
                int x = mul(h, g);
                if (seen[x])
                    throw ValidationError(id + ": column " + std::to_string(g) +
                                          " is not a permutation");
                seen[x] = true;
            }
        }
        for (int g = 0; g < n; ++g)
            if (mul(g, inv[g]) != 0 || mul(inv[g], g) != 0)
                throw ValidationError(id + ": bad inverse for g=" + std::to_string(g));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int ab = mul(a, b);
                for (int c = 0; c < n; ++c)
                    if (mul(ab, c) != mul(a, mul(b, c)))
                        throw ValidationError(
                            id + ": associativity fails at (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
            }
    }
};

// Sorted element list of a subgroup, tied to its parent group.
struct SubgroupHandle {
    std::string parent;
    std::vector<int> elements;  // sorted, contains 0

    int order() const { return static_cast<int>(elements.size()); }
    Mask128 mask() const {
        Mask128 m;
        for (int e : elements) m.set(e);
        return m;
    }
    bool operator==(const SubgroupHandle& o) const { return elements == o.elements; }
    bool operator<(const SubgroupHandle& o) const {
        if (elements.size() != o.elements.size())
            return elements.size() < o.elements.size();
        return elements < o.elements;
    }
};

inline std::vector<int> closure_of(const Group& G, std::vector<int> seed) {
    Mask128 in;
    in.set(0);
    std::vector<int> queue{0};
    for (int s : seed)
        if (!in.test(s)) {
            in.set(s);
            queue.push_back(s);
        }
    std::vector<int> gens = seed;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (int g : gens) {
            int x = G.mul(queue[i], g);
            if (!in.test(x)) {
                in.set(x);
                queue.push_back(x);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

inline SubgroupHandle subgroup_from(const Group& G, std::vector<int> seed) {
    SubgroupHandle h;
    h.parent = G.id;
    h.elements = closure_of(G, std::move(seed));
    if (G.n % h.order() != 0)
        throw ValidationError(G.id + ": subgroup order does not divide group order");
    return h;
}

inline bool is_subgroup(const Group& G, const std::vector<int>& elems) {
    Mask128 m;
    for (int e : elems) m.set(e);
    if (!m.test(0)) return false;
    for (int a : elems)
        for (int b : elems)
            if (!m.test(G.mul(a, b))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

// Builds the Cayley table from the closure of abstract generators under
// `compose`, BFS order from the identity. Labels are shortest-found words.
template <class Elem, class Compose>
Group closure_group(std::string id, const Elem& identity,
                    const std::vector<Elem>& gens, Compose compose,
                    const std::vector<std::string>& gen_names) {
    std::vector<Elem> elems{identity};
    std::map<Elem, int> index{{identity, 0}};
    std::vector<std::string> labels{"e"};
    std::vector<int> gen_idx;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            Elem x = compose(elems[i], gens[gi]);
            auto [it, fresh] = index.emplace(x, static_cast<int>(elems.size()));
            if (fresh) {
                if (elems.size() >= kMaxOrder)
                    throw ClosureTooLarge(id + ": closure exceeds " +
                                          std::to_string(kMaxOrder) + " elements");
                elems.push_back(x);
                labels.push_back(labels[i] == "e" ? gen_names[gi]
                                                  : labels[i] + "*" + gen_names[gi]);
            }
        }
    }
    Group G;
    G.id = std::move(id);
    G.n = static_cast<int>(elems.size());
    G.labels = std::move(labels);
    G.table.assign(static_cast<std::size_t>(G.n) * G.n, 0);
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b) {
            auto it = index.find(compose(elems[a], elems[b]));
            if (it == index.end())
                throw ConstructionError(G.id + ": closure not multiplication-closed");
            G.table[a * G.n + b] = static_cast<std::uint8_t>(it->second);
        }
    for (const Elem& g : gens) G.generator_indices.push_back(index.at(g));
    G.finish_tables();
    G.validate();
    return G;
}

inline std::string gen_name(std::size_t i) {
    return std::string(1, static_cast<char>('a' + i));
}

}  // namespace detail

// gens: permutations of 0..degree-1 given as image vectors.
inline Group from_permutation_generators(std::string id, int degree,
                                         const std::vector<std::vector<int>>& gens) {
    if (degree < 1 || degree > 16)
        throw ConstructionError(id + ": permutation degree must be 1..16");
    std::vector<int> ident(degree);
    std::iota(ident.begin(), ident.end(), 0);
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != degree)
            throw ConstructionError(id + ": generator has wrong degree");
        auto s = g;
        std::sort(s.begin(), s.end());
        if (s != ident) throw ConstructionError(id + ": generator is not a permutation");
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back(detail::gen_name(i));
    auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
        return r;
    };
    return detail::closure_group(std::move(id), ident, gens, compose, names);
}

// 2x2 matrices over F_p, row-major {a,b,c,d}.
using Mat2 = std::array<int, 4>;

inline Group from_matrix_generators(std::string id, int p,
                                    const std::vector<Mat2>& gens) {
    if (p != 2 && p != 3 && p != 5 && p != 7)
        throw ConstructionError(id + ": prime must be one of 2,3,5,7");
    auto norm = [p](int x) { return ((x % p) + p) % p; };
    std::vector<Mat2> ng;
    for (Mat2 m : gens) {
        for (int& x : m) x = norm(x);
        int det = norm(m[0] * m[3] - m[1] * m[2]);
        if (det == 0) throw SingularGenerator(id + ": singular generator matrix");
        ng.push_back(m);
    }
    Mat2 ident{1, 0, 0, 1};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back(detail::gen_name(i));
    auto compose = [norm](const Mat2& x, const Mat2& y) {
        return Mat2{norm(x[0] * y[0] + x[1] * y[2]), norm(x[0] * y[1] + x[1] * y[3]),
                    norm(x[2] * y[0] + x[3] * y[2]), norm(x[2] * y[1] + x[3] * y[3])};
    };
    return detail::closure_group(std::move(id), ident, ng, compose, names);
}

inline Group cyclic(int m, std::string id = "") {
    if (m < 1 || m > kMaxOrder) throw OrderTooLarge("cyclic: order out of range");
    Group G;
    G.id = id.empty() ? "C" + std::to_string(m) : std::move(id);
    G.n = m;
    G.table.assign(static_cast<std::size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) G.table[a * m + b] = static_cast<std::uint8_t>((a + b) % m);
    G.labels.resize(m);
    G.labels[0] = "e";
    for (int i = 1; i < m; ++i)
        G.labels[i] = i == 1 ? "a" : "a^" + std::to_string(i);
    if (m > 1) G.generator_indices = {1};
    G.finish_tables();
    G.validate();
    return G;
}

// element (g,h) indexed as g*|H| + h
inline Group direct_product(const Group& A, const Group& B, std::string id = "") {
    if (A.n * B.n > kMaxOrder)
        throw OrderTooLarge("direct_product: order " + std::to_string(A.n * B.n) +
                            " exceeds " + std::to_string(kMaxOrder));
    Group G;
    G.id = id.empty() ? A.id + " x " + B.id : std::move(id);
    G.n = A.n * B.n;
    G.table.assign(static_cast<std::size_t>(G.n) * G.n, 0);
    for (int a1 = 0; a1 < A.n; ++a1)
        for (int b1 = 0; b1 < B.n; ++b1)
            for (int a2 = 0; a2 < A.n; ++a2)
                for (int b2 = 0; b2 < B.n; ++b2) {
                    int x = a1 * B.n + b1, y = a2 * B.n + b2;
                    G.table[x * G.n + y] =
                        static_cast<std::uint8_t>(A.mul(a1, a2) * B.n + B.mul(b1, b2));
                }
    G.labels.resize(G.n);
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
            G.labels[a * B.n + b] = "(" + A.labels[a] + "," + B.labels[b] + ")";
    for (int g : A.generator_indices) G.generator_indices.push_back(g * B.n);
    for (int g : B.generator_indices) G.generator_indices.push_back(g);
    G.finish_tables();
    G.validate();
    return G;
}

// N  x|  C_m with the C_m generator t acting by `action` (t^-1 x t = action[x]).
// Elements (x, t^j) indexed x*m + j.
inline Group semidirect_product(const Group& N, int m, const std::vector<int>& action,
                                std::string id = "") {
    if (N.n * m > kMaxOrder) throw OrderTooLarge("semidirect_product: order exceeds cap");
    if (static_cast<int>(action.size()) != N.n)
        throw NotAutomorphism("semidirect_product: action has wrong size");
    {
        std::vector<int> s = action;
        std::sort(s.begin(), s.end());
        for (int i = 0; i < N.n; ++i)
            if (s[i] != i) throw NotAutomorphism("semidirect_product: action not bijective");
    }
    if (action[0] != 0) throw NotAutomorphism("semidirect_product: action moves identity");
    for (int a = 0; a < N.n; ++a)
        for (int b = 0; b < N.n; ++b)
            if (action[N.mul(a, b)] != N.mul(action[a], action[b]))
                throw NotAutomorphism("semidirect_product: action not multiplicative");
    // phi^m must be the identity map
    {
        std::vector<int> pw(N.n);
        std::iota(pw.begin(), pw.end(), 0);
        for (int k = 0; k < m; ++k) {
            std::vector<int> nx(N.n);
            for (int i = 0; i < N.n; ++i) nx[i] = action[pw[i]];
            pw = std::move(nx);
        }
        for (int i = 0; i < N.n; ++i)
            if (pw[i] != i)
                throw ActionOrderMismatch("semidirect_product: action order does not divide m");
    }
    // iterated action powers
    std::vector<std::vector<int>> phi(m, std::vector<int>(N.n));
    std::iota(phi[0].begin(), phi[0].end(), 0);
    for (int k = 1; k < m; ++k)
        for (int i = 0; i < N.n; ++i) phi[k][i] = action[phi[k - 1][i]];

    Group G;
    G.id = id.empty() ? "(" + N.id + ") : C" + std::to_string(m) : std::move(id);
    G.n = N.n * m;
    G.table.assign(static_cast<std::size_t>(G.n) * G.n, 0);
    // t^-1 y t = phi(y), so t^i y = phi^-i(y) t^i and
    // (x t^i)(y t^j) = x phi^(m-i)(y) t^(i+j)
    for (int x = 0; x < N.n; ++x)
        for (int i = 0; i < m; ++i)
            for (int y = 0; y < N.n; ++y)
                for (int j = 0; j < m; ++j) {
                    int xi = x * m + i, yj = y * m + j;
                    int z = N.mul(x, phi[(m - i) % m][y]);
                    G.table[xi * G.n + yj] =
                        static_cast<std::uint8_t>(z * m + (i + j) % m);
                }
    G.labels.resize(G.n);
    for (int x = 0; x < N.n; ++x)
        for (int j = 0; j < m; ++j) {
            std::string t = j == 0 ? "" : (j == 1 ? "t" : "t^" + std::to_string(j));
            if (x == 0)
                G.labels[x * m + j] = t.empty() ? "e" : t;
            else
                G.labels[x * m + j] = t.empty() ? N.labels[x] : N.labels[x] + "*" + t;
        }
    for (int g : N.generator_indices) G.generator_indices.push_back(g * m);
    if (m > 1) G.generator_indices.push_back(1);  // (e, t)
    G.finish_tables();
    G.validate();
    return G;
}

inline bool is_normal(const Group& G, const SubgroupHandle& N) {
    Mask128 m = N.mask();
    for (int g = 0; g < G.n; ++g)
        for (int x : N.elements)
            if (!m.test(G.conj(x, g))) return false;
    return true;
}

// Quotient on least-index coset representatives.
inline Group quotient(const Group& G, const SubgroupHandle& N, std::string id = "") {
    if (!is_normal(G, N)) throw NotNormal(G.id + ": subgroup is not normal");
    std::vector<int> rep(G.n, -1);
    std::vector<int> reps;
    for (int g = 0; g < G.n; ++g) {
        if (rep[g] != -1) continue;
        // coset gN; g is its least element because we scan ascending
        reps.push_back(g);
        for (int x : N.elements) rep[G.mul(g, x)] = g;
    }
    std::vector<int> idx(G.n, -1);
    for (std::size_t i = 0; i < reps.size(); ++i) idx[reps[i]] = static_cast<int>(i);
    Group Q;
    Q.id = id.empty() ? G.id + "/N" + std::to_string(N.order()) : std::move(id);
    Q.n = static_cast<int>(reps.size());
    Q.table.assign(static_cast<std::size_t>(Q.n) * Q.n, 0);
    for (int a = 0; a < Q.n; ++a)
        for (int b = 0; b < Q.n; ++b)
            Q.table[a * Q.n + b] =
                static_cast<std::uint8_t>(idx[rep[G.mul(reps[a], reps[b])]]);
    Q.labels.resize(Q.n);
    for (int a = 0; a < Q.n; ++a) Q.labels[a] = G.labels[reps[a]] + "N";
    for (int g : G.generator_indices) {
        int i = idx[rep[g]];
        if (i != 0) Q.generator_indices.push_back(i);
    }
    Q.finish_tables();
    Q.validate();
    return Q;
}

// ---------------------------------------------------------------------------
// Structural queries

inline std::vector<std::vector<int>> conjugacy_classes(const Group& G) {
    std::vector<std::vector<int>> classes;
    std::vector<bool> seen(G.n, false);
    for (int g = 0; g < G.n; ++g) {
        if (seen[g]) continue;
        Mask128 cls;
        for (int x = 0; x < G.n; ++x) cls.set(G.conj(g, x));
        std::vector<int> c;
        cls.for_each([&](int y) {
            c.push_back(y);
            seen[y] = true;
        });
        classes.push_back(std::move(c));
    }
    return classes;
}

inline SubgroupHandle centralizer(const Group& G, int g) {
    std::vector<int> c;
    for (int x = 0; x < G.n; ++x)
        if (G.mul(x, g) == G.mul(g, x)) c.push_back(x);
    return {G.id, std::move(c)};
}

inline SubgroupHandle centralizer_of_set(const Group& G, const std::vector<int>& S) {
    std::vector<int> c;
    for (int x = 0; x < G.n; ++x) {
        bool ok = true;
        for (int g : S)
            if (G.mul(x, g) != G.mul(g, x)) {
                ok = false;
                break;
            }
        if (ok) c.push_back(x);
    }
    return {G.id, std::move(c)};
}

inline SubgroupHandle conjugate_subgroup(const Group& G, const SubgroupHandle& H, int x) {
    std::vector<int> e;
    e.reserve(H.elements.size());
    for (int h : H.elements) e.push_back(G.conj(h, x));
    std::sort(e.begin(), e.end());
    return {G.id, std::move(e)};
}

inline SubgroupHandle normalizer(const Group& G, const SubgroupHandle& H) {
    Mask128 m = H.mask();
    std::vector<int> c;
    for (int x = 0; x < G.n; ++x) {
        bool ok = true;
        for (int h : H.elements)
            if (!m.test(G.conj(h, x))) {
                ok = false;
                break;
            }
        if (ok) c.push_back(x);
    }
    return {G.id, std::move(c)};
}

inline SubgroupHandle center(const Group& G) {
    std::vector<int> all(G.n);
    std::iota(all.begin(), all.end(), 0);
    return centralizer_of_set(G, all);
}

inline SubgroupHandle derived_subgroup(const Group& G) {
    std::vector<int> comms;
    for (int a = 0; a < G.n; ++a)
        for (int b = 0; b < G.n; ++b)
            comms.push_back(G.mul(G.mul(G.inv[a], G.inv[b]), G.mul(a, b)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return subgroup_from(G, comms);
}

// Sylow p-subgroup by normalizer growth: start from a cyclic p-subgroup and
// lift order-p cosets of N_G(P)/P until |P| is the full p-part of |G|.
inline SubgroupHandle sylow(const Group& G, int p) {
    if (G.n % p != 0) throw PNotDividing(G.id + ": " + std::to_string(p) +
                                         " does not divide group order");
    int ppart = 1;
    for (int m = G.n; m % p == 0; m /= p) ppart *= p;
    // seed: an element of order exactly p
    int seed = 0;
    for (int g = 1; g < G.n && seed == 0; ++g) {
        int k = G.element_order(g);
        if (k % p == 0) {
            int x = g;
            for (int i = 1; i < k / p; ++i) x = G.mul(x, g);
            seed = x;  // g^(k/p)
        }
    }
    SubgroupHandle P = subgroup_from(G, {seed});
    while (P.order() < ppart) {
        SubgroupHandle N = normalizer(G, P);
        Mask128 pm = P.mask();
        bool grown = false;
        for (int y : N.elements) {
            if (pm.test(y)) continue;
            // coset order of yP in N/P
            int k = 1, x = y;
            while (!pm.test(x)) {
                x = G.mul(x, y);
                ++k;
            }
            if (k % p == 0) {
                int lift = y;
                for (int i = 1; i < k / p; ++i) lift = G.mul(lift, y);
                std::vector<int> seedv = P.elements;
                seedv.push_back(lift);
                P = subgroup_from(G, seedv);
                grown = true;
                break;
            }
        }
        if (!grown)
            throw ConstructionError(G.id + ": sylow normalizer growth stalled");
    }
    return P;
}

// ---------------------------------------------------------------------------
// Fingerprint

struct GroupFingerprint {
    int order = 1;
    std::map<int, int> order_histogram;       // element order -> count
    std::vector<int> class_sizes;             // sorted multiset
    int center_order = 1;
    int derived_order = 1;
    std::vector<int> abelianization;          // invariant factors, descending

    bool operator==(const GroupFingerprint&) const = default;
};

namespace detail {

inline std::vector<int> abelian_invariant_factors(const Group& A) {
    if (A.n == 1) return {};
    int best = 1, bestOrd = 1;
    for (int g = 1; g < A.n; ++g) {
        int k = A.element_order(g);
        if (k > bestOrd) {
            bestOrd = k;
            best = g;
        }
    }
    std::vector<int> rest =
        abelian_invariant_factors(quotient(A, subgroup_from(A, {best})));
    std::vector<int> out{bestOrd};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace detail

inline GroupFingerprint fingerprint(const Group& G) {
    GroupFingerprint f;
    f.order = G.n;
    for (int g = 0; g < G.n; ++g) f.order_histogram[G.element_order(g)]++;
    for (const auto& c : conjugacy_classes(G)) f.class_sizes.push_back(static_cast<int>(c.size()));
    std::sort(f.class_sizes.begin(), f.class_sizes.end());
    f.center_order = center(G).order();
    SubgroupHandle D = derived_subgroup(G);
    f.derived_order = D.order();
    f.abelianization = detail::abelian_invariant_factors(quotient(G, D));
    return f;
}

// Extracts the subgroup H as a standalone Group. to_parent maps the new
// element indices back into G.
inline std::pair<Group, std::vector<int>> subgroup_as_group(const Group& G,
                                                            const SubgroupHandle& H,
                                                            std::string id = "") {
    std::vector<int> idx(G.n, -1);
    for (std::size_t i = 0; i < H.elements.size(); ++i)
        idx[H.elements[i]] = static_cast<int>(i);
    Group S;
    S.id = id.empty() ? G.id + "|H" + std::to_string(H.order()) : std::move(id);
    S.n = H.order();
    S.table.assign(static_cast<std::size_t>(S.n) * S.n, 0);
    for (int a = 0; a < S.n; ++a)
        for (int b = 0; b < S.n; ++b)
            S.table[a * S.n + b] =
                static_cast<std::uint8_t>(idx[G.mul(H.elements[a], H.elements[b])]);
    S.labels.resize(S.n);
    for (int a = 0; a < S.n; ++a) S.labels[a] = G.labels[H.elements[a]];
    S.finish_tables();
    S.validate();
    return {std::move(S), H.elements};
}

}  // namespace gfact
