#pragma once

#include "carleson/verification.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace carleson {

/// Full description of one reproducible run. The report is a pure function of
/// this structure.
struct RunConfig {
    int K = 10;
    int k_min = 3;
    int k_max = -1; // -1: K - 3
    int n_mass = 10;
    int n_max = -1; // -1: K + 1
    double c = 4.0;
    double c_forest = 4.0;
    double C_G = 8.0;
    double p = 2.0;           // exponent for the L^p and interpolation checks
    double gamma_scale = 1.0; // excised-set gamma = gamma_scale * norm^(2/3)
    int tree_split_cap = 4;   // mean-zero split checks per (n,alpha); -1 = all
    std::uint64_t seed = 1;
    std::string f_spec = "indicator:0.25";
    std::string n_spec = "chirp";
    std::string g_spec = "full"; // G for the weak (1,1) check: full | half
    std::vector<std::string> checks = {"a", "tree", "b", "c", "d", "consistency"};
    std::map<std::string, double> threshold_overrides;
    std::string out_dir = ".";

    void validate() const; // throws std::invalid_argument on bad ranges
    KernelConfig kernel() const;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

/// build pipeline -> run the enabled check families -> report
VerificationReport run_pipeline(const RunConfig& cfg);
/// check half only, on an already built pipeline
VerificationReport run_checks(const RunConfig& cfg, const Pipeline& pl);

nlohmann::json report_to_json(const VerificationReport& rep);
std::string report_to_csv(const VerificationReport& rep);

} // namespace carleson
