#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfact/certificate.hpp"
#include "gfact/search.hpp"
#include "gfact/strategies.hpp"

namespace gfact {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "gfact 1.0.0";

// One decision, serializable. Factors carry element labels next to the
// indices so records read back to a human; verification trusts indices only.
struct ResultRecord {
    int schema_version = kSchemaVersion;
    std::string tool_version = kToolVersion;
    std::string group_id;
    Shape shape;
    std::string outcome;  // "found" | "none" | "inconclusive"
    std::optional<FactorizationCertificate> certificate;
    std::vector<std::vector<std::string>> factor_labels;
    std::optional<NonexistenceEvidence> evidence;
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
};

inline ResultRecord make_record(const Group& G, const Shape& shape,
                                const Decision& d, double elapsed_seconds) {
    ResultRecord r;
    r.group_id = G.id;
    r.shape = shape;
    r.nodes = d.nodes;
    r.elapsed_seconds = elapsed_seconds;
    switch (d.kind) {
        case Decision::Kind::found:
            r.outcome = "found";
            r.certificate = d.cert;
            for (const auto& f : d.cert.factors) {
                std::vector<std::string> ls;
                for (int e : f) ls.push_back(G.labels[e]);
                r.factor_labels.push_back(std::move(ls));
            }
            break;
        case Decision::Kind::none:
            r.outcome = "none";
            r.evidence = d.evidence;
            break;
        case Decision::Kind::inconclusive:
            r.outcome = "inconclusive";
            break;
    }
    return r;
}

namespace detail {

inline Method method_from_name(const std::string& s) {
    for (Method m : {Method::chain, Method::sandwich, Method::gf2_catalog,
                     Method::exhaustive, Method::manual})
        if (s == method_name(m)) return m;
    throw ParseError("unknown method \"" + s + "\"");
}

}  // namespace detail

inline nlohmann::json record_to_json(const ResultRecord& r) {
    nlohmann::json j;
    j["schema_version"] = r.schema_version;
    j["tool_version"] = r.tool_version;
    j["group_id"] = r.group_id;
    j["shape"] = r.shape.parts;
    j["outcome"] = r.outcome;
    if (r.certificate) {
        nlohmann::json c;
        c["method"] = method_name(r.certificate->method);
        nlohmann::json factors = nlohmann::json::array();
        for (std::size_t i = 0; i < r.certificate->factors.size(); ++i) {
            nlohmann::json f = nlohmann::json::array();
            for (std::size_t k = 0; k < r.certificate->factors[i].size(); ++k) {
                nlohmann::json e;
                e["index"] = r.certificate->factors[i][k];
                if (i < r.factor_labels.size() && k < r.factor_labels[i].size())
                    e["label"] = r.factor_labels[i][k];
                f.push_back(std::move(e));
            }
            factors.push_back(std::move(f));
        }
        c["factors"] = std::move(factors);
        j["certificate"] = std::move(c);
    }
    if (r.evidence) {
        const NonexistenceEvidence& ev = *r.evidence;
        nlohmann::json e;
        e["kind"] = ev.kind == NonexistenceEvidence::Kind::theorem6
                        ? "theorem6"
                        : "exhaustive_complete";
        e["complete"] = ev.complete;
        e["nodes_visited"] = ev.nodes_visited;
        e["normalizations"] = ev.normalizations_used;
        if (ev.kind == NonexistenceEvidence::Kind::theorem6) {
            e["merged_to"] = ev.merged_to.parts;
            e["hypotheses"] = {
                {"sylow2_elementary_abelian", ev.hypotheses.sylow2_elementary_abelian},
                {"involutions_conjugate", ev.hypotheses.involutions_conjugate},
                {"centralizer_splits", ev.hypotheses.centralizer_splits},
                {"involution", ev.hypotheses.involution},
                {"odd_part_order", ev.hypotheses.odd_part_order},
            };
        }
        j["evidence"] = std::move(e);
    }
    j["stats"] = {{"nodes", r.nodes}, {"elapsed_seconds", r.elapsed_seconds}};
    return j;
}

inline ResultRecord record_from_json(const nlohmann::json& j) {
    ResultRecord r;
    try {
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kSchemaVersion)
            throw ParseError("unsupported schema_version " +
                             std::to_string(r.schema_version));
        r.tool_version = j.at("tool_version").get<std::string>();
        r.group_id = j.at("group_id").get<std::string>();
        r.shape.parts = j.at("shape").get<std::vector<int>>();
        r.outcome = j.at("outcome").get<std::string>();
        if (r.outcome != "found" && r.outcome != "none" && r.outcome != "inconclusive")
            throw ParseError("unknown outcome \"" + r.outcome + "\"");
        if (j.contains("certificate")) {
            const auto& c = j.at("certificate");
            FactorizationCertificate cert;
            cert.group_id = r.group_id;
            cert.shape = r.shape;
            cert.method = detail::method_from_name(c.at("method").get<std::string>());
            for (const auto& f : c.at("factors")) {
                std::vector<int> idx;
                std::vector<std::string> ls;
                for (const auto& e : f) {
                    idx.push_back(e.at("index").get<int>());
                    ls.push_back(e.value("label", std::string{}));
                }
                cert.factors.push_back(std::move(idx));
                r.factor_labels.push_back(std::move(ls));
            }
            r.certificate = std::move(cert);
        }
        if (j.contains("evidence")) {
            const auto& e = j.at("evidence");
            NonexistenceEvidence ev;
            ev.group_id = r.group_id;
            ev.shape = r.shape;
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "theorem6")
                ev.kind = NonexistenceEvidence::Kind::theorem6;
            else if (kind == "exhaustive_complete")
                ev.kind = NonexistenceEvidence::Kind::exhaustive_complete;
            else
                throw ParseError("unknown evidence kind \"" + kind + "\"");
            ev.complete = e.at("complete").get<bool>();
            ev.nodes_visited = e.at("nodes_visited").get<std::uint64_t>();
            ev.normalizations_used =
                e.value("normalizations", std::vector<std::string>{});
            if (ev.kind == NonexistenceEvidence::Kind::theorem6) {
                ev.merged_to.parts = e.at("merged_to").get<std::vector<int>>();
                const auto& h = e.at("hypotheses");
                ev.hypotheses.sylow2_elementary_abelian =
                    h.at("sylow2_elementary_abelian").get<bool>();
                ev.hypotheses.involutions_conjugate =
                    h.at("involutions_conjugate").get<bool>();
                ev.hypotheses.centralizer_splits =
                    h.at("centralizer_splits").get<bool>();
                ev.hypotheses.involution = h.at("involution").get<int>();
                ev.hypotheses.odd_part_order = h.at("odd_part_order").get<int>();
            }
            r.evidence = std::move(ev);
        }
        const auto& s = j.at("stats");
        r.nodes = s.at("nodes").get<std::uint64_t>();
        r.elapsed_seconds = s.at("elapsed_seconds").get<double>();
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed record: ") + ex.what());
    }
    return r;
}

inline void save_record(const std::string& path, const ResultRecord& r) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << record_to_json(r).dump(2) << "\n";
}

inline ResultRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("invalid record file: ") + ex.what());
    }
    return record_from_json(j);
}

// Full re-verification of a loaded record against the rebuilt group.
// "found" recomputes exactness (set product and GF(2) algebra); "none" with
// theorem6 re-derives every hypothesis; "none" claiming a completed search is
// checked for internal consistency (the search itself is not repeated).
inline void verify_record(const Group& G, const ResultRecord& r) {
    if (r.group_id != G.id)
        throw VerifyFailed("record is for group " + r.group_id + ", not " + G.id);
    if (r.shape.product() != G.n)
        throw VerifyFailed("shape product does not match group order");
    if (r.outcome == "found") {
        if (!r.certificate) throw VerifyFailed("found record lacks a certificate");
        verify_certificate(G, *r.certificate);
        if (!gf2_exactness_check(G, certificate_masks(*r.certificate)))
            throw VerifyFailed("GF(2) exactness check failed");
        return;
    }
    if (r.outcome == "none") {
        if (!r.evidence) throw VerifyFailed("none record lacks evidence");
        const NonexistenceEvidence& ev = *r.evidence;
        if (ev.kind == NonexistenceEvidence::Kind::exhaustive_complete) {
            if (!ev.complete)
                throw VerifyFailed("exhaustive evidence with incomplete search");
            return;
        }
        if (r.shape.parts.front() != 2 || r.shape.parts.back() != 2)
            throw VerifyFailed("theorem6 evidence on a shape without outer 2s");
        if (ev.merged_to != Shape({2, G.n / 4, 2}))
            throw VerifyFailed("theorem6 merged shape is not (2, |G|/4, 2)");
        Theorem6Record rec = theorem6_applicable(G);
        if (!rec.applicable())
            throw VerifyFailed("theorem6 hypotheses do not hold for " + G.id);
        return;
    }
    // inconclusive: nothing further to check
}

// ---------------------------------------------------------------------------
// Content-addressed result cache

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 1469598103934665603ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

// Keyed by the Cayley table content, the shape, and the budget class -- never
// by the group's name, so a changed construction invalidates its entries.
inline std::string cache_key(const Group& G, const Shape& shape,
                             const SearchBudget& budget) {
    std::uint64_t h = fnv1a64(G.table.data(), G.table.size());
    for (int p : shape.parts) {
        std::uint32_t v = static_cast<std::uint32_t>(p);
        h = fnv1a64(&v, sizeof v, h);
    }
    h = fnv1a64(&budget.max_nodes, sizeof budget.max_nodes, h);
    h = fnv1a64(&budget.max_seconds, sizeof budget.max_seconds, h);
    unsigned char par = budget.parallel ? 1 : 0;
    h = fnv1a64(&par, sizeof par, h);
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

class ResultCache {
  public:
    explicit ResultCache(std::string dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    std::optional<ResultRecord> get(const std::string& key) const {
        auto path = dir_ / (key + ".json");
        if (!std::filesystem::exists(path)) return std::nullopt;
        return load_record(path.string());
    }

    void put(const std::string& key, const ResultRecord& r) const {
        save_record((dir_ / (key + ".json")).string(), r);
    }

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

// Decision reconstructed from a record (for cache hits).
inline Decision record_to_decision(const ResultRecord& r) {
    Decision d;
    d.nodes = r.nodes;
    if (r.outcome == "found") {
        d.kind = Decision::Kind::found;
        d.cert = *r.certificate;
    } else if (r.outcome == "none") {
        d.kind = Decision::Kind::none;
        d.evidence = *r.evidence;
    } else {
        d.kind = Decision::Kind::inconclusive;
    }
    return d;
}

}  // namespace gfact
