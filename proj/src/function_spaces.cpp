#include "carleson/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace carleson {

double phi_eval(PhiProfile phi, double t) {
    switch (phi) {
    case PhiProfile::Log:
        return std::log1p(t);
    case PhiProfile::LogLog:
        return std::log1p(t) * std::log(std::log(std::numbers::e_v<double> + t));
    case PhiProfile::LogLogLog:
        return std::log1p(t) * std::max(0.0, std::log(std::log(std::log(10.0 + t))));
    case PhiProfile::SoriaPhi1:
        if (t == 0.0) return 0.0;
        return t * (1.0 + std::max(0.0, std::log(1.0 / t)));
    }
    throw std::invalid_argument("phi_eval: unknown profile");
}

std::string phi_name(PhiProfile phi) {
    switch (phi) {
    case PhiProfile::Log: return "log";
    case PhiProfile::LogLog: return "loglog";
    case PhiProfile::LogLogLog: return "logloglog";
    case PhiProfile::SoriaPhi1: return "soria_phi1";
    }
    return "?";
}

PhiProfile phi_from_name(const std::string& name) {
    if (name == "log") return PhiProfile::Log;
    if (name == "loglog") return PhiProfile::LogLog;
    if (name == "logloglog") return PhiProfile::LogLogLog;
    if (name == "soria_phi1") return PhiProfile::SoriaPhi1;
    throw std::invalid_argument("unknown phi profile: " + name);
}

double orlicz_modular(const GridFunction& f, PhiProfile phi) {
    double s = 0.0;
    for (const auto& v : f.values) {
        double a = std::abs(v);
        s += a * std::abs(phi_eval(phi, a));
    }
    return s * f.cell_width();
}

double orlicz_norm(const GridFunction& f, PhiProfile phi) {
    return orlicz_modular(decreasing_rearrangement(f), phi);
}

SoriaNorms soria_norms(const GridFunction& f) {
    // breakpoints of the distribution function
    std::vector<double> vals;
    vals.reserve(f.size() + 1);
    vals.push_back(0.0);
    for (const auto& v : f.values) vals.push_back(std::abs(v));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    SoriaNorms out;
    bool zero = vals.size() == 1 && vals[0] == 0.0;
    // ||f||_phi1 = sum over pieces [t_i, t_{i+1}) of phi1(lambda_f(t_i)) * dt
    std::vector<std::pair<double, double>> pieces; // (phi1(lambda), dt)
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        double lambda = distribution_function(f, vals[i]);
        pieces.push_back({phi_eval(PhiProfile::SoriaPhi1, lambda), vals[i + 1] - vals[i]});
    }
    for (auto [p, dt] : pieces) out.norm += p * dt;
    if (zero) return out; // starred norm undefined for f = 0; left at 0 by convention
    if (out.norm <= 0.0) throw std::invalid_argument("soria_norms: starred norm needs f != 0");
    for (auto [p, dt] : pieces) {
        if (p > 0.0) out.starred_norm += p * (1.0 + std::log(out.norm / p)) * dt;
    }
    return out;
}

namespace {
double qa_sum(const std::vector<std::pair<double, double>>& terms) {
    // terms: (||f_j||_1, ||f_j||_p), already ordered; j starts at 1
    double s = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        auto [l1, lp] = terms[j];
        if (l1 <= 0.0) continue;
        s += (1.0 + std::log(static_cast<double>(j + 1))) * l1 *
             std::log(std::numbers::e_v<double> * lp / l1);
    }
    return s;
}
} // namespace

double qa_upper(const GridFunction& f, double p, QaStrategy strategy) {
    if (!(p > 1.0)) throw std::invalid_argument("qa_upper: need p in (1, inf]");
    double l1 = lp_norm(f, 1.0);
    if (l1 == 0.0) return 0.0;

    double single = qa_sum({{l1, lp_norm(f, p)}});
    if (strategy == QaStrategy::Single) return single;

    // dyadic level sets Q_l = {|f| in [2^l, 2^(l+1))}
    std::vector<std::pair<double, double>> terms;
    double vmax = lp_norm(f, std::numeric_limits<double>::infinity());
    int l_hi = static_cast<int>(std::ceil(std::log2(vmax))) + 1;
    int l_lo = l_hi - 64; // values below 2^-63 * vmax are treated as zero
    for (int l = l_lo; l <= l_hi; ++l) {
        double lo = std::pow(2.0, l), hi = std::pow(2.0, l + 1);
        GridFunction fl = GridFunction::zero(f.K);
        bool any = false;
        for (std::size_t x = 0; x < f.size(); ++x) {
            double a = std::abs(f.values[x]);
            if (a >= lo && a < hi) {
                fl.values[x] = f.values[x];
                any = true;
            }
        }
        if (any) terms.push_back({lp_norm(fl, 1.0), lp_norm(fl, p)});
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double levels = qa_sum(terms);
    if (strategy == QaStrategy::Levels) return levels;
    return std::min(single, levels);
}

} // namespace carleson
