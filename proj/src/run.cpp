#include "carleson/run.hpp"

#include "carleson/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace carleson {

using nlohmann::json;

void RunConfig::validate() const {
    if (K < 6 || K > 16) throw std::invalid_argument("config: K must be in [6,16]");
    const int kmax = k_max < 0 ? K - 3 : k_max;
    if (k_min < 3 || k_min > kmax || kmax > K - 3) {
        throw std::invalid_argument("config: need 3 <= k_min <= k_max <= K-3");
    }
    if (n_mass < 1) throw std::invalid_argument("config: n_mass must be >= 1");
    if (c <= 0.0 || c_forest <= 0.0 || C_G <= 0.0) {
        throw std::invalid_argument("config: c, c_forest, C_G must be positive");
    }
    if (!(p > 1.0)) throw std::invalid_argument("config: p must exceed 1");
    static const std::vector<std::string> known = {"a",  "tree",        "b",      "c",  "d",
                                                   "oq", "corollaries", "sjolin", "all",
                                                   "consistency"};
    for (const auto& chk : checks) {
        if (std::find(known.begin(), known.end(), chk) == known.end()) {
            throw std::invalid_argument("config: unknown check family: " + chk);
        }
    }
    if (g_spec != "full" && g_spec != "half" && g_spec.rfind("interval:", 0) != 0) {
        throw std::invalid_argument("config: g_spec must be full, half or interval:lo:hi");
    }
}

KernelConfig RunConfig::kernel() const { return {K, k_min, k_max < 0 ? K - 3 : k_max}; }

json RunConfig::to_json() const {
    return {{"K", K},
            {"k_min", k_min},
            {"k_max", k_max},
            {"n_mass", n_mass},
            {"n_max", n_max},
            {"c", c},
            {"c_forest", c_forest},
            {"C_G", C_G},
            {"p", p},
            {"gamma_scale", gamma_scale},
            {"tree_split_cap", tree_split_cap},
            {"seed", seed},
            {"f", f_spec},
            {"N", n_spec},
            {"G", g_spec},
            {"checks", checks},
            {"thresholds", threshold_overrides},
            {"out_dir", out_dir}};
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
    };
    get("K", cfg.K);
    get("k_min", cfg.k_min);
    get("k_max", cfg.k_max);
    get("n_mass", cfg.n_mass);
    get("n_max", cfg.n_max);
    get("c", cfg.c);
    get("c_forest", cfg.c_forest);
    get("C_G", cfg.C_G);
    get("p", cfg.p);
    get("gamma_scale", cfg.gamma_scale);
    get("tree_split_cap", cfg.tree_split_cap);
    get("seed", cfg.seed);
    get("f", cfg.f_spec);
    get("N", cfg.n_spec);
    get("G", cfg.g_spec);
    get("checks", cfg.checks);
    get("thresholds", cfg.threshold_overrides);
    get("out_dir", cfg.out_dir);
    return cfg;
}

namespace {
TorusSet parse_g(const std::string& spec) {
    if (spec == "full") return TorusSet::full();
    if (spec == "half") return TorusSet::from_interval(0.0, 0.5);
    // interval:lo:hi
    auto c1 = spec.find(':'), c2 = spec.find(':', c1 + 1);
    return TorusSet::from_interval(std::stod(spec.substr(c1 + 1, c2 - c1 - 1)),
                                   std::stod(spec.substr(c2 + 1)));
}

bool enabled(const RunConfig& cfg, const std::string& family) {
    for (const auto& chk : cfg.checks) {
        if (chk == family || chk == "all") return true;
    }
    return false;
}
} // namespace

VerificationReport run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    GridFunction f = gen::parse_f(cfg.f_spec, cfg.K, cfg.seed);
    LinearizingFunction N = gen::parse_n(cfg.n_spec, cfg.K, cfg.seed + 1);
    PipelineParams params;
    params.c = cfg.c;
    params.c_forest = cfg.c_forest;
    params.n_max = cfg.n_max;
    params.n_mass = cfg.n_mass;
    return run_checks(cfg, build_pipeline(f, N, cfg.kernel(), params));
}

VerificationReport run_checks(const RunConfig& cfg, const Pipeline& pl) {
    cfg.validate();
    const KernelConfig kc = cfg.kernel();
    Thresholds th = Thresholds::defaults();
    for (const auto& [name, value] : cfg.threshold_overrides) th.constants[name] = value;

    VerificationReport rep;
    rep.meta["K"] = std::to_string(cfg.K);
    rep.meta["seed"] = std::to_string(cfg.seed);
    rep.meta["f"] = cfg.f_spec;
    rep.meta["N"] = cfg.n_spec;
    rep.meta["G"] = cfg.g_spec;
    rep.meta["k_min"] = std::to_string(kc.k_min);
    rep.meta["k_max"] = std::to_string(kc.k_max);

    if (enabled(cfg, "a")) verify_theorem_a(pl, th, rep);
    if (enabled(cfg, "tree")) verify_tree_estimates(pl, th, rep, cfg.tree_split_cap);
    if (enabled(cfg, "b")) verify_theorem_b(pl, parse_g(cfg.g_spec), cfg.C_G, th, rep);
    if (enabled(cfg, "c")) verify_theorem_c(pl, cfg.p, th, rep);
    if (enabled(cfg, "d")) verify_theorem_d(pl, cfg.p, th, rep);
    if (enabled(cfg, "corollaries")) verify_corollaries(pl, th, rep);
    if (enabled(cfg, "sjolin")) verify_sjolin_split(pl, cfg.gamma_scale, th, rep);
    if (enabled(cfg, "oq")) probe_open_question(pl, th, rep);
    if (enabled(cfg, "consistency")) verify_consistency(pl, cfg.seed + 2, th, rep);
    rep.finalize_summary();
    return rep;
}

json report_to_json(const VerificationReport& rep) {
    json meta = json::object();
    for (const auto& [k, v] : rep.meta) meta[k] = v;
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json rec = {{"name", c.name}, {"lhs", c.lhs},   {"rhs", c.rhs},
                    {"ratio", c.ratio}, {"pass", c.pass}, {"context", c.context}};
        checks.push_back(std::move(rec));
    }
    json summary = json::object();
    for (const auto& [k, v] : rep.summary) summary[k] = v;
    return {{"meta", std::move(meta)},
            {"checks", std::move(checks)},
            {"summary", std::move(summary)}};
}

std::string report_to_csv(const VerificationReport& rep) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string out = "name,lhs,rhs,ratio,pass,context\n";
    for (const auto& c : rep.checks) {
        out += c.name + "," + fmt(c.lhs) + "," + fmt(c.rhs) + "," + fmt(c.ratio) + "," +
               (c.pass ? "1" : "0") + "," + c.context + "\n";
    }
    return out;
}

} // namespace carleson
