// gfact command line front end: catalog inspection, single-shape decisions,
// the full classification run, record verification, and the question4-p3
// experiment.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gfact/classify.hpp"
#include "gfact/records.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNone = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitInvalid = 5;

std::string data_dir() {
    if (const char* env = std::getenv("GFACT_DATA_DIR")) return env;
#ifdef GFACT_DATA_DIR
    return GFACT_DATA_DIR;
#else
    return "data";
#endif
}

gfact::Catalog load_catalog() {
    gfact::Catalog cat = gfact::default_catalog();
    std::string path = data_dir() + "/generators.gfd";
    if (std::filesystem::exists(path)) cat.load_generator_data(path);
    return cat;
}

gfact::Shape parse_shape(const std::string& s) {
    gfact::Shape shape;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::size_t used = 0;
        int v;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw gfact::ParseError("bad shape component \"" + tok + "\"");
        }
        if (used != tok.size() || v < 2)
            throw gfact::ParseError("shape parts must be integers >= 2");
        shape.parts.push_back(v);
    }
    if (shape.parts.empty()) throw gfact::ParseError("empty shape");
    return shape;
}

std::string factor_str(const gfact::Group& G, const std::vector<int>& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ", ";
        s += G.labels[f[i]];
    }
    return s + "}";
}

void print_decision(const gfact::Group& G, const gfact::Shape& shape,
                    const gfact::Decision& d) {
    using K = gfact::Decision::Kind;
    if (d.kind == K::found) {
        std::cout << G.id << " " << shape.str() << ": found ("
                  << gfact::method_name(d.cert.method) << ")\n";
        for (const auto& f : d.cert.factors)
            std::cout << "  " << factor_str(G, f) << "\n";
    } else if (d.kind == K::none) {
        std::cout << G.id << " " << shape.str() << ": none (";
        if (d.evidence.kind == gfact::NonexistenceEvidence::Kind::theorem6)
            std::cout << "theorem6 via merged shape " << d.evidence.merged_to.str();
        else
            std::cout << "complete search, " << d.evidence.nodes_visited << " nodes";
        std::cout << ")\n";
    } else {
        std::cout << G.id << " " << shape.str()
                  << ": inconclusive (budget exhausted, " << d.nodes << " nodes)\n";
    }
}

int decision_exit(const gfact::Decision& d) {
    switch (d.kind) {
        case gfact::Decision::Kind::found: return kExitOk;
        case gfact::Decision::Kind::none: return kExitNone;
        default: return kExitInconclusive;
    }
}

int cmd_list(const gfact::Catalog& cat) {
    std::cout << "id | order | supersolvable | tag\n";
    for (const auto& e : cat.entries()) {
        std::string ss = "?";
        if (e.builder) {
            gfact::Group G = cat.build(e.id);
            ss = gfact::is_supersolvable(G) ? "yes" : "no";
        }
        const char* tag = e.tag == gfact::CatalogTag::non_supersolvable
                              ? "non-supersolvable"
                              : (e.tag == gfact::CatalogTag::control ? "control"
                                                                     : "extra");
        std::cout << e.id << " | " << e.order << " | " << ss << " | " << tag << "\n";
    }
    return kExitOk;
}

int cmd_info(const gfact::Catalog& cat, const std::string& id) {
    gfact::Group G = cat.build(id);
    gfact::SubgroupSet lat = gfact::all_subgroups(G);
    gfact::GroupFingerprint fp = gfact::fingerprint(G);
    std::cout << "id: " << G.id << "\norder: " << G.n << "\n";
    std::cout << "supersolvable: " << (gfact::is_supersolvable(G) ? "true" : "false")
              << "\nCLT: " << (gfact::is_CLT(G, lat) ? "true" : "false") << "\n";
    std::cout << "element orders:";
    for (const auto& [k, c] : fp.order_histogram) std::cout << " " << k << ":" << c;
    std::cout << "\nconjugacy class sizes:";
    for (int c : fp.class_sizes) std::cout << " " << c;
    std::cout << "\ncenter order: " << fp.center_order
              << "\nderived subgroup order: " << fp.derived_order
              << "\nabelianization invariants:";
    if (fp.abelianization.empty()) std::cout << " (trivial)";
    for (int c : fp.abelianization) std::cout << " " << c;
    std::cout << "\nmaximal subgroup orders:";
    for (int c : gfact::maximal_subgroup_orders(G, lat)) std::cout << " " << c;
    gfact::Theorem6Record t6 = gfact::theorem6_applicable(G);
    std::cout << "\ntheorem6: " << (t6.applicable() ? "applicable" : "not applicable");
    if (t6.applicable())
        std::cout << " (odd part " << t6.odd_part_order << ", witness involution "
                  << G.labels[t6.involution] << ")";
    std::cout << "\nsubgroup count: " << lat.subgroups.size() << "\n";
    return kExitOk;
}

int cmd_factorize(const gfact::Catalog& cat, const std::string& id,
                  const std::string& shape_str, const gfact::SearchBudget& budget,
                  const std::string& json_out) {
    gfact::Group G = cat.build(id);
    gfact::Shape shape = parse_shape(shape_str);
    if (shape.product() != G.n) {
        std::cerr << "shape product " << shape.product() << " != |" << id
                  << "| = " << G.n << "\n";
        return kExitUsage;
    }
    gfact::CertificateStore store;
    gfact::seed_known_certificates(cat, store);
    auto t0 = std::chrono::steady_clock::now();
    gfact::Decision d = gfact::decide(G, shape, budget, &store);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    print_decision(G, shape, d);
    if (!json_out.empty())
        gfact::save_record(json_out, gfact::make_record(G, shape, d, secs));
    return decision_exit(d);
}

gfact::DecideFn caching_decider(std::optional<gfact::ResultCache>& cache) {
    return [&cache](const gfact::Group& G, const gfact::SubgroupSet& lat,
                    const gfact::Shape& s, const gfact::SearchBudget& b,
                    const gfact::CertificateStore* st) {
        std::string key;
        if (cache) {
            key = gfact::cache_key(G, s, b);
            if (auto r = cache->get(key)) {
                gfact::verify_record(G, *r);
                return gfact::record_to_decision(*r);
            }
        }
        auto t0 = std::chrono::steady_clock::now();
        gfact::Decision d = gfact::decide(G, lat, s, b, st);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (cache) cache->put(key, gfact::make_record(G, s, d, secs));
        return d;
    };
}

nlohmann::json verdict_to_json(const gfact::Catalog& cat, const gfact::GroupVerdict& v) {
    gfact::Group G = cat.build(v.group_id);
    nlohmann::json j;
    j["group_id"] = v.group_id;
    j["order"] = v.order;
    j["supersolvable"] = v.supersolvable;
    j["multifold"] = v.multifold;
    if (v.failing_shape) j["failing_shape"] = v.failing_shape->parts;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [s, d] : v.outcomes)
        outs.push_back(gfact::record_to_json(gfact::make_record(G, s, d, 0.0)));
    j["outcomes"] = std::move(outs);
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& [s, ev] : v.cross_checks) {
        gfact::Decision d;
        d.kind = gfact::Decision::Kind::none;
        d.evidence = ev;
        d.nodes = ev.nodes_visited;
        checks.push_back(gfact::record_to_json(gfact::make_record(G, s, d, 0.0)));
    }
    j["cross_checks"] = std::move(checks);
    return j;
}

int cmd_classify(const gfact::Catalog& cat, int max_order,
                 const gfact::SearchBudget& budget, const std::string& json_out,
                 const std::string& cache_dir) {
    std::optional<gfact::ResultCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    gfact::CertificateStore store;
    gfact::seed_known_certificates(cat, store);
    gfact::ClassificationReport rep = gfact::classify_catalog(
        cat, max_order, budget, &store, caching_decider(cache));

    std::cout << "classification up to order " << max_order << "\n";
    std::cout << "id | order | verdict | detail\n";
    for (const auto& v : rep.verdicts) {
        std::cout << v.group_id << " | " << v.order << " | "
                  << (v.multifold ? "multifold" : "NOT multifold") << " | ";
        if (v.failing_shape)
            std::cout << "no " << v.failing_shape->str() << "-factorization";
        else
            std::cout << v.outcomes.size() << " shape classes certified";
        std::cout << "\n";
    }
    std::cout << rep.controls.size()
              << " supersolvable controls re-certified (all multifold)\n";
    std::cout << "negatives (" << rep.negatives.size() << "):";
    for (const auto& id : rep.negatives) std::cout << " [" << id << "]";
    std::cout << "\n";

    if (!json_out.empty()) {
        nlohmann::json j;
        j["schema_version"] = gfact::kSchemaVersion;
        j["tool_version"] = gfact::kToolVersion;
        j["max_order"] = rep.max_order;
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& v : rep.verdicts) vs.push_back(verdict_to_json(cat, v));
        j["verdicts"] = std::move(vs);
        nlohmann::json cs = nlohmann::json::array();
        for (const auto& v : rep.controls) cs.push_back(verdict_to_json(cat, v));
        j["controls"] = std::move(cs);
        j["negatives"] = rep.negatives;
        std::ofstream out(json_out);
        if (!out) throw gfact::Error("cannot write " + json_out);
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_verify(const gfact::Catalog& cat, const std::string& path) {
    gfact::ResultRecord rec = gfact::load_record(path);
    const gfact::CatalogEntry* e = cat.find(rec.group_id);
    if (!e || !e->builder) {
        std::cerr << "record references unknown group \"" << rec.group_id << "\"\n";
        return kExitInvalid;
    }
    gfact::Group G = cat.build(rec.group_id);
    try {
        gfact::verify_record(G, rec);
    } catch (const gfact::VerifyFailed& ex) {
        std::cerr << "invalid record: " << ex.what() << "\n";
        return kExitInvalid;
    }
    std::cout << "record ok: " << rec.group_id << " " << rec.shape.str() << " "
              << rec.outcome << "\n";
    return kExitOk;
}

int cmd_experiment(const gfact::Catalog& cat, const std::string& name,
                   double budget_secs, const std::string& json_out) {
    if (name == "question4-p7") {
        std::cerr << "out of scope (order 784 exceeds cap)\n";
        return kExitUsage;
    }
    if (name != "question4-p3") {
        std::cerr << "unknown experiment \"" << name << "\"\n";
        return kExitUsage;
    }
    gfact::Group G = cat.build("(C3 x C3) : Q8");
    std::cout << "built " << G.id << ", order " << G.n << "\n";
    gfact::Shape shape({3, 8, 3});
    gfact::SearchBudget budget;
    budget.max_seconds = budget_secs;
    auto t0 = std::chrono::steady_clock::now();
    gfact::Decision d = gfact::decide(G, shape, budget, nullptr);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    print_decision(G, shape, d);
    if (!json_out.empty())
        gfact::save_record(json_out, gfact::make_record(G, shape, d, secs));
    return decision_exit(d);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite group subset-factorization engine"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "print the group catalog");

    std::string info_id;
    auto* info = app.add_subcommand("info", "structural facts about one group");
    info->add_option("group-id", info_id)->required();

    std::string fac_id, fac_shape, fac_json;
    gfact::SearchBudget budget;
    auto* fac = app.add_subcommand("factorize", "decide one shape for one group");
    fac->add_option("group-id", fac_id)->required();
    fac->add_option("shape", fac_shape, "comma separated sizes, e.g. 2,3,2")->required();
    fac->add_option("--budget-nodes", budget.max_nodes);
    fac->add_option("--budget-secs", budget.max_seconds);
    fac->add_flag("--parallel", budget.parallel);
    fac->add_option("--json", fac_json, "write the decision as a record");

    int max_order = 60;
    std::string cls_json, cls_cache;
    if (const char* env = std::getenv("GFACT_CACHE_DIR")) cls_cache = env;
    auto* cls = app.add_subcommand("classify", "classify the catalog");
    cls->add_option("--max-order", max_order);
    cls->add_option("--budget-nodes", budget.max_nodes);
    cls->add_option("--budget-secs", budget.max_seconds);
    cls->add_flag("--parallel", budget.parallel);
    cls->add_option("--json", cls_json, "write the full report");
    cls->add_option("--cache", cls_cache, "result cache directory");

    std::string ver_path;
    auto* ver = app.add_subcommand("verify", "re-verify a stored record");
    ver->add_option("record", ver_path)->required();

    std::string exp_name, exp_json;
    double exp_secs = 60.0;
    auto* exp = app.add_subcommand("experiment", "run a named experiment");
    exp->add_option("name", exp_name)->required();
    exp->add_option("--budget-secs", exp_secs);
    exp->add_option("--json", exp_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        gfact::Catalog cat = load_catalog();
        if (list->parsed()) return cmd_list(cat);
        if (info->parsed()) return cmd_info(cat, info_id);
        if (fac->parsed()) return cmd_factorize(cat, fac_id, fac_shape, budget, fac_json);
        if (cls->parsed()) return cmd_classify(cat, max_order, budget, cls_json, cls_cache);
        if (ver->parsed()) return cmd_verify(cat, ver_path);
        if (exp->parsed()) return cmd_experiment(cat, exp_name, exp_secs, exp_json);
    } catch (const gfact::UnknownGroup& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const gfact::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const gfact::BudgetExhausted& e) {
        std::cerr << e.what() << "\n";
        return kExitInconclusive;
    } catch (const gfact::VerifyFailed& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalid;
    } catch (const gfact::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
