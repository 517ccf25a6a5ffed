#include "carleson/generators.hpp"
#include "carleson/io.hpp"
#include "carleson/run.hpp"
#include "carleson/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

namespace {

using namespace carleson;

std::string path_in(const RunConfig& cfg, const std::string& name) {
    return cfg.out_dir + "/" + name;
}

int cmd_generate(const RunConfig& cfg) {
    GridFunction f = gen::parse_f(cfg.f_spec, cfg.K, cfg.seed);
    LinearizingFunction N = gen::parse_n(cfg.n_spec, cfg.K, cfg.seed + 1);
    io::write_file(path_in(cfg, "f.csv"), io::grid_to_csv(f));
    io::write_file(path_in(cfg, "N.csv"), io::linearizing_to_csv(N));
    io::write_file(path_in(cfg, "f.json"), io::grid_to_json(f).dump(2) + "\n");
    std::printf("wrote f.csv, f.json, N.csv (K=%d)\n", cfg.K);
    return 0;
}

Pipeline make_pipeline(const RunConfig& cfg) {
    GridFunction f = gen::parse_f(cfg.f_spec, cfg.K, cfg.seed);
    LinearizingFunction N = gen::parse_n(cfg.n_spec, cfg.K, cfg.seed + 1);
    PipelineParams params;
    params.c = cfg.c;
    params.c_forest = cfg.c_forest;
    params.n_max = cfg.n_max;
    params.n_mass = cfg.n_mass;
    return build_pipeline(f, N, cfg.kernel(), params);
}

int cmd_decompose(const RunConfig& cfg) {
    Pipeline pl = make_pipeline(cfg);
    io::write_file(path_in(cfg, "mass.json"),
                   io::mass_decomposition_to_json(pl.mass).dump(2) + "\n");
    nlohmann::json cz = nlohmann::json::object();
    for (const auto& [n, czd] : pl.cz) {
        cz[std::to_string(n)] = io::cz_decomposition_to_json(czd);
    }
    io::write_file(path_in(cfg, "cz.json"), cz.dump(2) + "\n");
    std::printf("wrote mass.json (%zu levels), cz.json\n", pl.mass.levels.size());
    return 0;
}

int cmd_verify(const RunConfig& cfg, bool quiet) {
    VerificationReport rep = run_pipeline(cfg);
    io::write_file(path_in(cfg, "report.json"), report_to_json(rep).dump(2) + "\n");
    io::write_file(path_in(cfg, "report.csv"), report_to_csv(rep));
    std::size_t failed = 0;
    for (const auto& c : rep.checks) {
        if (!c.pass) ++failed;
    }
    if (!quiet) {
        for (const auto& [family, ratio] : rep.summary) {
            std::printf("%-22s max ratio %.6g\n", family.c_str(), ratio);
        }
    }
    std::printf("%zu checks, %zu failed\n", rep.checks.size(), failed);
    return failed == 0 ? 0 : 1;
}

int cmd_plot(const RunConfig& cfg) {
    Pipeline pl = make_pipeline(cfg);
    VerificationReport rep = run_checks(cfg, pl);
    io::write_file(path_in(cfg, "tiles.svg"), svg::tiles_svg(pl.mass, &pl.cz, cfg.K));
    io::write_file(path_in(cfg, "decay.svg"), svg::decay_svg(rep));
    std::printf("wrote tiles.svg, decay.svg\n");
    return 0;
}

int cmd_all(const RunConfig& cfg) {
    cmd_generate(cfg);
    Pipeline pl = make_pipeline(cfg);
    io::write_file(path_in(cfg, "mass.json"),
                   io::mass_decomposition_to_json(pl.mass).dump(2) + "\n");
    nlohmann::json cz = nlohmann::json::object();
    for (const auto& [n, czd] : pl.cz) cz[std::to_string(n)] = io::cz_decomposition_to_json(czd);
    io::write_file(path_in(cfg, "cz.json"), cz.dump(2) + "\n");
    VerificationReport rep = run_checks(cfg, pl);
    io::write_file(path_in(cfg, "report.json"), report_to_json(rep).dump(2) + "\n");
    io::write_file(path_in(cfg, "report.csv"), report_to_csv(rep));
    io::write_file(path_in(cfg, "tiles.svg"), svg::tiles_svg(pl.mass, &pl.cz, cfg.K));
    io::write_file(path_in(cfg, "decay.svg"), svg::decay_svg(rep));
    std::size_t failed = 0;
    for (const auto& c : rep.checks) {
        if (!c.pass) ++failed;
    }
    std::printf("%zu checks, %zu failed\n", rep.checks.size(), failed);
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tile discretization laboratory for a maximal modulated singular integral"};
    app.require_subcommand(1);

    carleson::RunConfig cfg;
    std::string config_path;
    std::vector<std::string> checks;

    // load --config first so explicit flags override the file values
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }
    if (!config_path.empty()) {
        try {
            cfg = carleson::RunConfig::from_json(
                nlohmann::json::parse(carleson::io::read_file(config_path)));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
    }

    std::string config_path_dummy;
    app.add_option("--config", config_path_dummy, "JSON configuration file");
    app.add_option("--K", cfg.K, "grid exponent, 2^K cells");
    app.add_option("--k-min", cfg.k_min, "coarsest kernel scale");
    app.add_option("--k-max", cfg.k_max, "finest kernel scale (-1: K-3)");
    app.add_option("--n-mass", cfg.n_mass, "mass decay exponent");
    app.add_option("--n-max", cfg.n_max, "largest mass level (-1: K+1)");
    app.add_option("--c", cfg.c, "exceptional-set constant");
    app.add_option("--c-forest", cfg.c_forest, "forest counting constant");
    app.add_option("--C-G", cfg.C_G, "weak (1,1) level constant");
    app.add_option("--p", cfg.p, "exponent for the L^p checks");
    app.add_option("--gamma-scale", cfg.gamma_scale, "excised-set gamma scale");
    app.add_option("--tree-split-cap", cfg.tree_split_cap,
                   "mean-zero split checks per (n,alpha), -1 for all");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--f", cfg.f_spec, "f generator spec, e.g. indicator:0.25");
    app.add_option("--N", cfg.n_spec, "N generator spec, e.g. chirp");
    app.add_option("--G", cfg.g_spec, "weak (1,1) target set: full|half|interval:lo:hi");
    app.add_option("--check", checks, "check families: all|a|tree|b|c|d|corollaries|sjolin|oq");
    app.add_option("--out", cfg.out_dir, "output directory");

    app.add_subcommand("generate", "write the f and N instances")->fallthrough();
    app.add_subcommand("decompose", "write the mass and CZ decompositions")->fallthrough();
    app.add_subcommand("verify", "run the enabled checks and write the report")->fallthrough();
    app.add_subcommand("plot", "write the tile diagram and decay chart")->fallthrough();
    app.add_subcommand("all", "generate, decompose, verify and plot")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!checks.empty()) cfg.checks = checks;
        cfg.validate();

        if (app.got_subcommand("generate")) return cmd_generate(cfg);
        if (app.got_subcommand("decompose")) return cmd_decompose(cfg);
        if (app.got_subcommand("verify")) return cmd_verify(cfg, false);
        if (app.got_subcommand("plot")) return cmd_plot(cfg);
        return cmd_all(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
