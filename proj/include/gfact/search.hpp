#pragma once

#include <chrono>
#include <future>
#include <optional>
#include <vector>

#include "gfact/certificate.hpp"
#include "gfact/group.hpp"
#include "gfact/shapes.hpp"

namespace gfact {

struct Decision {
    enum class Kind { found, none, inconclusive } kind = Kind::inconclusive;
    FactorizationCertificate cert;      // kind == found
    NonexistenceEvidence evidence;      // kind == none
    std::uint64_t nodes = 0;
};

namespace detail {

// Elements that are the least member of their conjugacy class (excluding e).
// The first non-identity element of the first factor may be restricted to
// these: conjugating a factorization by g maps it to another factorization,
// and the conjugate minimizing the first factor's least non-identity element
// has that element least in its class.
inline std::vector<bool> class_least(const Group& G) {
    std::vector<bool> least(G.n, false);
    std::vector<bool> seen(G.n, false);
    for (int g = 1; g < G.n; ++g) {
        if (seen[g]) continue;
        least[g] = true;
        for (int x = 0; x < G.n; ++x) seen[G.conj(g, x)] = true;
    }
    return least;
}

struct BranchResult {
    bool found = false;
    bool complete = false;
    FactorizationCertificate cert;
    std::uint64_t nodes = 0;
};

class ExhaustiveSearch {
  public:
    ExhaustiveSearch(const Group& G, const Shape& shape, const SearchBudget& budget)
        : G_(G), shape_(shape), budget_(budget), full_(G.all_mask()),
          deadline_set_(budget.max_seconds > 0) {
        if (deadline_set_)
            deadline_ = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(budget_.max_seconds));
    }

    // Runs the branch whose first factor's least non-identity element is
    // `first`. Complete DFS within the branch; returns the first certificate
    // in enumeration order, if any.
    BranchResult run_branch(int first) {
        res_ = BranchResult{};
        factors_.assign(1, {0});
        Mask128 P = Mask128::single(0);
        Mask128 U = P;
        aborted_ = false;
        if (try_place(0, first, P, U)) {
            // found within place
        }
        res_.complete = !aborted_;
        return res_;
    }

  private:
    bool budget_hit() {
        if (budget_.max_nodes && res_.nodes > budget_.max_nodes) return true;
        if (deadline_set_ && (res_.nodes & 0x1fff) == 0 &&
            std::chrono::steady_clock::now() > deadline_)
            return true;
        return false;
    }

    // Attempt to add element x to the factor currently being built (index
    // factors_.size()-1). P is the product of completed factors, U the
    // running product P * (current partial factor).
    bool try_place(std::size_t fi, int x, const Mask128& P, const Mask128& U) {
        ++res_.nodes;
        if (budget_hit()) {
            aborted_ = true;
            return false;
        }
        Mask128 Px = G_.right_translate(P, x);
        if (Px.intersects(U)) return false;
        factors_[fi].push_back(x);
        Mask128 U2 = U | Px;
        bool found = extend(fi, x, P, U2);
        factors_[fi].pop_back();
        return found;
    }

    // Continue the search with the current factor state.
    bool extend(std::size_t fi, int last, const Mask128& P, const Mask128& U) {
        if (static_cast<int>(factors_[fi].size()) == shape_.parts[fi]) {
            if (fi + 1 == factors_.size() && factors_.size() ==
                static_cast<std::size_t>(shape_.length())) {
                // all factors complete; sizes force U == G
                res_.found = true;
                res_.cert.group_id = G_.id;
                res_.cert.shape = shape_;
                res_.cert.factors = factors_;
                res_.cert.method = Method::exhaustive;
                return true;
            }
            factors_.push_back({0});
            bool found = fill_factor(fi + 1, U, U);
            factors_.pop_back();
            return found;
        }
        // continue current factor with elements > last
        for (int x = last + 1; x < G_.n; ++x) {
            if (try_place(fi, x, P, U)) return true;
            if (aborted_) return false;
        }
        return false;
    }

    bool fill_factor(std::size_t fi, const Mask128& P, const Mask128& U) {
        // last factor of size 2: the one non-identity element d must satisfy
        // P*d = G \ P, so solve directly instead of searching
        if (fi + 1 == static_cast<std::size_t>(shape_.length()) &&
            shape_.parts[fi] == 2) {
            // right-translation is injective, so P*d = G\P iff P*d avoids P
            for (int d = 1; d < G_.n; ++d) {
                ++res_.nodes;
                if (budget_hit()) {
                    aborted_ = true;
                    return false;
                }
                const std::uint8_t* row = &G_.rtable[d * G_.n];
                bool ok = true;
                Mask128 Pm = P;
                while (ok) {
                    int p = Pm.lowest();
                    if (p < 0) break;
                    Pm.clear(p);
                    if (P.test(row[p])) ok = false;
                }
                if (ok) {
                    factors_[fi].push_back(d);
                    res_.found = true;
                    res_.cert.group_id = G_.id;
                    res_.cert.shape = shape_;
                    res_.cert.factors = factors_;
                    res_.cert.method = Method::exhaustive;
                    factors_[fi].pop_back();
                    return true;
                }
            }
            return false;
        }
        for (int x = 1; x < G_.n; ++x) {
            if (try_place(fi, x, P, U)) return true;
            if (aborted_) return false;
        }
        return false;
    }

    const Group& G_;
    Shape shape_;
    SearchBudget budget_;
    Mask128 full_;
    std::vector<std::vector<int>> factors_;
    BranchResult res_;
    bool aborted_ = false;
    bool deadline_set_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

inline Decision reduce_branches(const Group& G, const Shape& shape,
                                const std::vector<BranchResult>& branches,
                                std::vector<std::string> normalizations) {
    Decision d;
    std::uint64_t nodes = 0;
    for (const auto& b : branches) {
        nodes += b.nodes;
        if (b.found) {
            d.kind = Decision::Kind::found;
            d.cert = b.cert;
            d.nodes = nodes;
            return d;
        }
        if (!b.complete) {
            d.kind = Decision::Kind::inconclusive;
            d.nodes = nodes;
            return d;
        }
    }
    d.kind = Decision::Kind::none;
    d.nodes = nodes;
    d.evidence.group_id = G.id;
    d.evidence.shape = shape;
    d.evidence.kind = NonexistenceEvidence::Kind::exhaustive_complete;
    d.evidence.nodes_visited = nodes;
    d.evidence.complete = true;
    d.evidence.normalizations_used = std::move(normalizations);
    return d;
}

}  // namespace gfact::detail

// Complete DFS over normalized factor tuples. NoneComplete only on full
// traversal; budget exhaustion yields Inconclusive. Budgets are accounted per
// first-factor branch so the parallel and sequential runs decide identically.
inline Decision exhaustive_decide(const Group& G, const Shape& shape,
                                  const SearchBudget& budget = {}) {
    if (shape.product() != G.n) throw Error("exhaustive_decide: shape product != |G|");
    std::vector<std::string> norms{"identity-in-every-factor",
                                   "ascending-elements-within-factor",
                                   "first-factor-conjugacy-representative",
                                   "last-factor-of-2-complement-match"};
    if (G.n == 1) {
        Decision d;
        d.kind = Decision::Kind::found;
        d.cert = {G.id, shape, {{0}}, Method::exhaustive};
        return d;
    }
    auto least = detail::class_least(G);
    std::vector<int> firsts;
    for (int g = 1; g < G.n; ++g)
        if (least[g]) firsts.push_back(g);

    std::vector<detail::BranchResult> branches(firsts.size());
    if (budget.parallel && firsts.size() > 1) {
        std::vector<std::future<detail::BranchResult>> futs;
        for (int f : firsts)
            futs.push_back(std::async(std::launch::async, [&, f] {
                detail::ExhaustiveSearch s(G, shape, budget);
                return s.run_branch(f);
            }));
        for (std::size_t i = 0; i < futs.size(); ++i) branches[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < firsts.size(); ++i) {
            detail::ExhaustiveSearch s(G, shape, budget);
            branches[i] = s.run_branch(firsts[i]);
            if (branches[i].found || !branches[i].complete) {
                branches.resize(i + 1);
                break;
            }
        }
    }
    return detail::reduce_branches(G, shape, branches, std::move(norms));
}

// ---------------------------------------------------------------------------
// Exact-cover specialization for 3-shapes (a, m, b), a*b <= 16: for each
// normalized (A, B), decide whether G is exactly covered by m pairwise
// disjoint translates AxB of size a*b.

namespace detail {

struct CoverProblem {
    const Group* G;
    std::vector<Mask128> candidates;  // distinct translates of size a*b
    std::uint64_t nodes = 0;
    std::uint64_t max_nodes = 0;
    bool aborted = false;
    std::vector<int> chosen;

    // Most-constrained element first, ties by least element index.
    bool solve(const Mask128& covered, int remaining) {
        if (remaining == 0) return covered == G->all_mask();
        ++nodes;
        if (max_nodes && nodes > max_nodes) {
            aborted = true;
            return false;
        }
        int bestElem = -1, bestCount = 1 << 30;
        Mask128 uncovered = covered.complement(G->n);
        uncovered.for_each([&](int e) {
            if (bestElem != -1 && bestCount == 0) return;
            int c = 0;
            for (const Mask128& cand : candidates)
                if (cand.test(e) && !cand.intersects(covered)) ++c;
            if (c < bestCount) {
                bestCount = c;
                bestElem = e;
            }
        });
        if (bestElem == -1) return false;
        if (bestCount == 0) return false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Mask128& cand = candidates[i];
            if (!cand.test(bestElem) || cand.intersects(covered)) continue;
            chosen.push_back(static_cast<int>(i));
            if (solve(covered | cand, remaining - 1)) return true;
            chosen.pop_back();
            if (aborted) return false;
        }
        return false;
    }
};

// ascending subsets of size k from {from..n-1} appended to cur
template <class Fn>
void enumerate_subsets(int n, int from, int k, std::vector<int>& cur, Fn&& fn) {
    if (k == 0) {
        fn(cur);
        return;
    }
    for (int x = from; x <= n - k; ++x) {
        cur.push_back(x);
        enumerate_subsets(n, x + 1, k - 1, cur, fn);
        cur.pop_back();
    }
}

}  // namespace gfact::detail

inline Decision exact_cover_decide(const Group& G, const Shape& shape,
                                   const SearchBudget& budget = {}) {
    if (shape.length() != 3) throw Error("exact_cover_decide: shape must have length 3");
    if (shape.product() != G.n) throw Error("exact_cover_decide: shape product != |G|");
    const int a = shape.parts[0], m = shape.parts[1], b = shape.parts[2];
    if (a * b > 16) throw Error("exact_cover_decide: a*b must be <= 16");

    auto least = detail::class_least(G);
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration<double>(budget.max_seconds > 0
                                                      ? budget.max_seconds
                                                      : 1e9);

    // enumerate normalized first factors: {e} + class-least second element +
    // ascending rest
    std::vector<std::vector<int>> As;
    for (int r = 1; r < G.n; ++r) {
        if (!least[r]) continue;
        std::vector<int> cur{0, r};
        detail::enumerate_subsets(G.n, r + 1, a - 2, cur,
                                  [&](const std::vector<int>& s) { As.push_back(s); });
    }
    std::vector<std::vector<int>> Bs;
    {
        std::vector<int> cur{0};
        detail::enumerate_subsets(G.n, 1, b - 1, cur,
                                  [&](const std::vector<int>& s) { Bs.push_back(s); });
    }

    std::uint64_t nodes = 0;
    bool aborted = false;
    Decision d;
    auto run_pair = [&](const std::vector<int>& A,
                        const std::vector<int>& B) -> std::optional<Decision> {
        Mask128 Bm;
        for (int e : B) Bm.set(e);
        detail::CoverProblem cp;
        cp.G = &G;
        cp.max_nodes = budget.max_nodes;
        std::vector<Mask128> seen;
        std::vector<int> witness;  // one x per distinct candidate
        for (int x = 0; x < G.n; ++x) {
            Mask128 t;
            for (int u : A) {
                int ux = G.mul(u, x);
                t |= G.left_translate(ux, Bm);
            }
            if (t.count() != a * b) continue;
            bool dup = false;
            for (const Mask128& s : seen)
                if (s == t) {
                    dup = true;
                    break;
                }
            if (!dup) {
                seen.push_back(t);
                witness.push_back(x);
            }
        }
        cp.candidates = seen;
        if (cp.solve(Mask128{}, m)) {
            FactorizationCertificate c;
            c.group_id = G.id;
            c.shape = shape;
            std::vector<int> T;
            for (int ci : cp.chosen) T.push_back(witness[ci]);
            std::sort(T.begin(), T.end());
            c.factors = {A, T, B};
            c.method = Method::exhaustive;
            Decision f;
            f.kind = Decision::Kind::found;
            f.cert = std::move(c);
            return f;
        }
        nodes += cp.nodes;
        if (cp.aborted) aborted = true;
        return std::nullopt;
    };

    for (const auto& A : As) {
        for (const auto& B : Bs) {
            auto r = run_pair(A, B);
            if (r) {
                r->nodes = nodes;
                return *r;
            }
            if (aborted || std::chrono::steady_clock::now() > deadline) {
                d.kind = Decision::Kind::inconclusive;
                d.nodes = nodes;
                return d;
            }
        }
    }
    d.kind = Decision::Kind::none;
    d.nodes = nodes;
    d.evidence.group_id = G.id;
    d.evidence.shape = shape;
    d.evidence.kind = NonexistenceEvidence::Kind::exhaustive_complete;
    d.evidence.nodes_visited = nodes;
    d.evidence.complete = true;
    d.evidence.normalizations_used = {"identity-in-outer-factors",
                                      "first-factor-conjugacy-representative",
                                      "distinct-translate-exact-cover"};
    return d;
}

}  // namespace gfact
