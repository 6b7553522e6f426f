#pragma once

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gfact/group.hpp"
#include "gfact/subgroups.hpp"

namespace gfact {

enum class CatalogTag { non_supersolvable, control, extra };

enum class RecipeKind { perm, matrix, cyclic, direct, semidirect, data };

struct CatalogEntry {
    std::string id;  // GAP structure-description string
    int order = 0;
    CatalogTag tag = CatalogTag::extra;
    RecipeKind kind = RecipeKind::data;
    std::function<Group()> builder;                 // empty for unloaded data recipes
    std::optional<GroupFingerprint> expected;       // frozen fingerprint guard
    std::optional<std::vector<int>> expected_maximal_orders;
};

namespace detail {

// Extend generator images to the full automorphism permutation of N.
inline std::vector<int> automorphism_from_gen_images(const Group& N,
                                                     const std::vector<int>& images) {
    std::vector<int> img(N.n, -1);
    img[0] = 0;
    for (std::size_t i = 0; i < N.generator_indices.size(); ++i)
        img[N.generator_indices[i]] = images[i];
    std::vector<int> queue{0};
    Mask128 in = Mask128::single(0);
    while (!queue.empty()) {
        std::vector<int> next;
        for (int x : queue)
            for (std::size_t i = 0; i < N.generator_indices.size(); ++i) {
                int g = N.generator_indices[i];
                int y = N.mul(x, g);
                if (!in.test(y)) {
                    in.set(y);
                    img[y] = N.mul(img[x], images[i]);
                    next.push_back(y);
                }
            }
        queue = std::move(next);
    }
    for (int x = 0; x < N.n; ++x)
        if (img[x] < 0)
            throw ConstructionError(N.id + ": generators do not generate N");
    return img;
}

// one-based cycle notation, e.g. "(1 2 3)(4 5)"
inline std::vector<int> parse_cycles(const std::string& s, int degree) {
    std::vector<int> p(degree);
    std::iota(p.begin(), p.end(), 0);
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') {
            if (!std::isspace(static_cast<unsigned char>(s[i])))
                throw ParseError("bad cycle notation: " + s);
            ++i;
            continue;
        }
        std::size_t close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("unclosed cycle: " + s);
        std::istringstream cyc(s.substr(i + 1, close - i - 1));
        std::vector<int> pts;
        std::string tok;
        while (cyc >> tok) {
            for (char& c : tok)
                if (c == ',') c = ' ';
            std::istringstream t2(tok);
            int v;
            while (t2 >> v) {
                if (v < 1 || v > degree) throw ParseError("cycle point out of range: " + s);
                pts.push_back(v - 1);
            }
        }
        for (std::size_t j = 0; j < pts.size(); ++j)
            p[pts[j]] = pts[(j + 1) % pts.size()];
        i = close + 1;
    }
    return p;
}

}  // namespace detail

class Catalog {
  public:
    const std::vector<CatalogEntry>& entries() const { return entries_; }

    const CatalogEntry* find(const std::string& id) const {
        for (const auto& e : entries_)
            if (e.id == id) return &e;
        return nullptr;
    }

    // Build and validate one catalog group. Fingerprint guard is enforced
    // whenever the entry carries an expected fingerprint.
    Group build(const std::string& id) const {
        const CatalogEntry* e = find(id);
        if (!e) throw UnknownGroup("catalog: unknown group \"" + id + "\"");
        if (!e->builder)
            throw ConstructionError("catalog: entry \"" + id +
                                    "\" has no loaded recipe (generator data missing)");
        Group G = e->builder();
        G.id = id;
        if (G.n != e->order)
            throw ConstructionError("catalog: \"" + id + "\" built with order " +
                                    std::to_string(G.n) + ", expected " +
                                    std::to_string(e->order));
        if (e->expected && fingerprint(G) != *e->expected)
            throw FingerprintMismatch("catalog: fingerprint mismatch for \"" + id + "\"");
        return G;
    }

    // Amend entries from a generator data file (see data/generators.gfd for
    // the grammar). Records must carry a fingerprint block; the built group is
    // checked against it.
    void load_generator_data(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open generator data file: " + path);
        std::map<std::string, std::vector<std::string>> rec;
        std::string line;
        auto flush = [&] {
            if (!rec.empty()) apply_record(rec);
            rec.clear();
        };
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) {
                flush();
                continue;
            }
            if (line[0] == '#') continue;
            auto colon = line.find(':');
            if (colon == std::string::npos) throw ParseError("bad line: " + line);
            std::string key = line.substr(0, colon);
            std::string val = line.substr(colon + 1);
            while (!val.empty() && val.front() == ' ') val.erase(val.begin());
            rec[key].push_back(val);
        }
        flush();
    }

    void add(CatalogEntry e) { entries_.push_back(std::move(e)); }

  private:
    void apply_record(const std::map<std::string, std::vector<std::string>>& rec) {
        auto one = [&](const std::string& key) -> const std::string& {
            auto it = rec.find(key);
            if (it == rec.end() || it->second.size() != 1)
                throw ParseError("generator data: missing field \"" + key + "\"");
            return it->second.front();
        };
        std::string id = one("id");
        int order = std::stoi(one("order"));
        std::string kind = one("kind");
        auto git = rec.find("gen");
        if (git == rec.end()) throw ParseError("generator data: no generators for " + id);
        std::vector<std::string> gens = git->second;

        std::function<Group()> builder;
        if (kind == "perm") {
            int degree = std::stoi(one("degree"));
            std::vector<std::vector<int>> perms;
            for (const auto& g : gens) perms.push_back(detail::parse_cycles(g, degree));
            builder = [id, degree, perms] {
                return from_permutation_generators(id, degree, perms);
            };
        } else if (kind == "matrix") {
            int p = std::stoi(one("prime"));
            std::vector<Mat2> mats;
            for (const auto& g : gens) {
                std::istringstream is(g);
                Mat2 m{};
                for (int& x : m)
                    if (!(is >> x)) throw ParseError("bad matrix entry for " + id);
                mats.push_back(m);
            }
            builder = [id, p, mats] { return from_matrix_generators(id, p, mats); };
        } else {
            throw ParseError("generator data: unknown kind \"" + kind + "\"");
        }

        GroupFingerprint fp;
        fp.order = order;
        {
            std::istringstream is(one("fingerprint_orders"));
            std::string tok;
            while (is >> tok) {
                auto c = tok.find(':');
                if (c == std::string::npos) throw ParseError("bad fingerprint_orders");
                fp.order_histogram[std::stoi(tok.substr(0, c))] =
                    std::stoi(tok.substr(c + 1));
            }
        }
        {
            std::istringstream is(one("fingerprint_classes"));
            int v;
            while (is >> v) fp.class_sizes.push_back(v);
            std::sort(fp.class_sizes.begin(), fp.class_sizes.end());
        }
        fp.center_order = std::stoi(one("fingerprint_center"));
        fp.derived_order = std::stoi(one("fingerprint_derived"));
        {
            std::istringstream is(one("fingerprint_abelianization"));
            int v;
            while (is >> v) fp.abelianization.push_back(v);
        }

        for (auto& e : entries_) {
            if (e.id == id) {
                if (e.order != order)
                    throw ParseError("generator data: order mismatch for " + id);
                e.builder = std::move(builder);
                e.expected = std::move(fp);
                return;
            }
        }
        // unknown ids become extra entries
        CatalogEntry e;
        e.id = id;
        e.order = order;
        e.tag = CatalogTag::extra;
        e.kind = kind == "perm" ? RecipeKind::perm : RecipeKind::matrix;
        e.builder = std::move(builder);
        e.expected = std::move(fp);
        entries_.push_back(std::move(e));
    }

    std::vector<CatalogEntry> entries_;
};

namespace detail {

inline Group build_A4() {
    return from_permutation_generators("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
}
inline Group build_S4() {
    return from_permutation_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
}
inline Group build_A5() {
    return from_permutation_generators("A5", 5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}});
}
inline Group build_S5() {
    return from_permutation_generators("S5", 5, {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}});
}
inline Group build_SL23() {
    return from_matrix_generators("SL(2,3)", 3,
                                  {{0, 1, -1, 0}, {1, 1, 1, -1}, {1, 1, 0, 1}});
}
inline Group build_GL23() {
    return from_matrix_generators("GL(2,3)", 3, {{1, 1, 0, 1}, {0, 1, 1, 0}});
}

inline Group elementary_abelian_2(int k) {
    Group G = cyclic(2);
    for (int i = 1; i < k; ++i) G = direct_product(G, cyclic(2));
    return G;
}

inline Group build_c2c2_c9() {
    Group N = direct_product(cyclic(2), cyclic(2));
    int a = N.generator_indices[0], b = N.generator_indices[1];
    auto phi = automorphism_from_gen_images(N, {b, N.mul(a, b)});
    return semidirect_product(N, 9, phi, "(C2 x C2) : C9");
}

inline Group build_c3c3_c4() {
    Group N = direct_product(cyclic(3), cyclic(3));
    int a = N.generator_indices[0], b = N.generator_indices[1];
    int b2 = N.mul(b, b), a2 = N.mul(a, a);
    auto phi = automorphism_from_gen_images(N, {N.mul(a, b2), N.mul(a2, b2)});
    return semidirect_product(N, 4, phi, "(C3 x C3) : C4");
}

inline Group build_c4c4_c3() {
    Group N = direct_product(cyclic(4), cyclic(4));
    int a = N.generator_indices[0], b = N.generator_indices[1];
    int ainvbinv = N.mul(N.inv[a], N.inv[b]);
    auto phi = automorphism_from_gen_images(N, {b, ainvbinv});
    return semidirect_product(N, 3, phi, "(C4 x C4) : C3");
}

inline Group build_c2e4_c3() {
    Group N = elementary_abelian_2(4);
    int a1 = N.generator_indices[0], a2 = N.generator_indices[1];
    int b1 = N.generator_indices[2], b2 = N.generator_indices[3];
    auto phi = automorphism_from_gen_images(
        N, {a2, N.mul(a1, a2), b2, N.mul(b1, b2)});
    return semidirect_product(N, 3, phi, "(C2 x C2 x C2 x C2) : C3");
}

inline Group build_c2e3_c7() {
    Group N = elementary_abelian_2(3);
    int a = N.generator_indices[0], b = N.generator_indices[1], c = N.generator_indices[2];
    auto phi = automorphism_from_gen_images(N, {b, c, N.mul(a, c)});
    return semidirect_product(N, 7, phi, "(C2 x C2 x C2) : C7");
}

}  // namespace detail

// The 20 non-supersolvable groups of order <= 60, S5, and a set of
// supersolvable controls.
inline Catalog default_catalog() {
    Catalog cat;
    auto add = [&](std::string id, int order, CatalogTag tag, RecipeKind kind,
                   std::function<Group()> b) {
        CatalogEntry e;
        e.id = std::move(id);
        e.order = order;
        e.tag = tag;
        e.kind = kind;
        e.builder = std::move(b);
        cat.add(std::move(e));
    };
    using detail::build_A4;
    const auto ns = CatalogTag::non_supersolvable;

    add("A4", 12, ns, RecipeKind::perm, build_A4);
    add("SL(2,3)", 24, ns, RecipeKind::matrix, detail::build_SL23);
    add("S4", 24, ns, RecipeKind::perm, detail::build_S4);
    add("C2 x A4", 24, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(2), build_A4(), "C2 x A4"); });
    add("(C2 x C2) : C9", 36, ns, RecipeKind::semidirect, detail::build_c2c2_c9);
    add("(C3 x C3) : C4", 36, ns, RecipeKind::semidirect, detail::build_c3c3_c4);
    add("C3 x A4", 36, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(3), build_A4(), "C3 x A4"); });
    add("(C4 x C4) : C3", 48, ns, RecipeKind::semidirect, detail::build_c4c4_c3);
    add("C2 . S4 = SL(2,3) . C2", 48, ns, RecipeKind::data, nullptr);
    add("GL(2,3)", 48, ns, RecipeKind::matrix, detail::build_GL23);
    add("A4 : C4", 48, ns, RecipeKind::data, nullptr);
    add("C4 x A4", 48, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(4), build_A4(), "C4 x A4"); });
    add("C2 x SL(2,3)", 48, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(2), detail::build_SL23(), "C2 x SL(2,3)"); });
    add("((C4 x C2) : C2) : C3", 48, ns, RecipeKind::data, nullptr);
    add("C2 x S4", 48, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(2), detail::build_S4(), "C2 x S4"); });
    add("C2 x C2 x A4", 48, ns, RecipeKind::direct, [] {
        return direct_product(direct_product(cyclic(2), cyclic(2)), build_A4(),
                              "C2 x C2 x A4");
    });
    add("(C2 x C2 x C2 x C2) : C3", 48, ns, RecipeKind::semidirect, detail::build_c2e4_c3);
    add("(C2 x C2 x C2) : C7", 56, ns, RecipeKind::semidirect, detail::build_c2e3_c7);
    add("A5", 60, ns, RecipeKind::perm, detail::build_A5);
    add("C5 x A4", 60, ns, RecipeKind::direct,
        [] { return direct_product(cyclic(5), build_A4(), "C5 x A4"); });

    add("S5", 120, CatalogTag::extra, RecipeKind::perm, detail::build_S5);

    // the affine group V x| S over F3 (translations of the plane extended by
    // the quaternion subgroup of SL(2,3)), used by the question4-p3 experiment
    add("(C3 x C3) : Q8", 72, CatalogTag::extra, RecipeKind::perm, [] {
        auto pt = [](int x, int y) { return (((x % 3) + 3) % 3) * 3 + (((y % 3) + 3) % 3); };
        std::vector<int> t1(9), t2(9), mi(9), mj(9);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                t1[pt(x, y)] = pt(x + 1, y);
                t2[pt(x, y)] = pt(x, y + 1);
                mi[pt(x, y)] = pt(-y, x);         // [[0,-1],[1,0]]
                mj[pt(x, y)] = pt(x + y, x - y);  // [[1,1],[1,-1]]
            }
        return from_permutation_generators("(C3 x C3) : Q8", 9, {t1, t2, mi, mj});
    });

    // supersolvable controls
    add("C24", 24, CatalogTag::control, RecipeKind::cyclic, [] { return cyclic(24, "C24"); });
    add("S3", 6, CatalogTag::control, RecipeKind::perm, [] {
        return from_permutation_generators("S3", 3, {{1, 0, 2}, {1, 2, 0}});
    });
    add("D4", 8, CatalogTag::control, RecipeKind::semidirect, [] {
        Group N = cyclic(4);
        return semidirect_product(N, 2, {0, 3, 2, 1}, "D4");
    });
    add("Q8", 8, CatalogTag::control, RecipeKind::matrix, [] {
        return from_matrix_generators("Q8", 3, {{0, 1, -1, 0}, {1, 1, 1, -1}});
    });
    add("(C3 x C3) : C2", 18, CatalogTag::control, RecipeKind::semidirect, [] {
        Group N = direct_product(cyclic(3), cyclic(3));
        std::vector<int> invmap(N.n);
        for (int x = 0; x < N.n; ++x) invmap[x] = N.inv[x];
        return semidirect_product(N, 2, invmap, "(C3 x C3) : C2");
    });
    add("C6 x C6", 36, CatalogTag::control, RecipeKind::direct,
        [] { return direct_product(cyclic(6), cyclic(6), "C6 x C6"); });

    // frozen maximal-subgroup-order table for the ten order-48 groups,
    // cross-checked against GAP's MaximalSubgroupClassReps
    const std::map<std::string, std::vector<int>> max48 = {
        {"(C4 x C4) : C3", {16, 12}},
        {"C2 . S4 = SL(2,3) . C2", {24, 16, 12}},
        {"GL(2,3)", {24, 16, 12}},
        {"A4 : C4", {24, 16, 12}},
        {"C4 x A4", {24, 16, 12}},
        {"C2 x SL(2,3)", {24, 16, 12}},
        {"((C4 x C2) : C2) : C3", {24, 16, 12}},
        {"C2 x S4", {24, 24, 24, 16, 12}},
        {"C2 x C2 x A4", {24, 24, 24, 16, 12}},
        {"(C2 x C2 x C2 x C2) : C3", {16, 12, 12, 12, 12, 12}},
    };
    Catalog out;
    for (auto e : cat.entries()) {
        auto it = max48.find(e.id);
        if (it != max48.end()) e.expected_maximal_orders = it->second;
        out.add(std::move(e));
    }
    return out;
}

}  // namespace gfact
