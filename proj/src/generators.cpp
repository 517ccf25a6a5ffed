#include "carleson/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace carleson::gen {

GridFunction indicator(int K, double measure) {
    if (measure < 0.0 || measure > 1.0) throw std::invalid_argument("indicator: measure in [0,1]");
    const std::size_t n = std::size_t{1} << K;
    auto cells = static_cast<std::size_t>(std::llround(measure * static_cast<double>(n)));
    GridFunction f = GridFunction::zero(K);
    for (std::size_t x = 0; x < cells && x < n; ++x) f.values[x] = 1.0;
    return f;
}

GridFunction levels(int K, const std::map<int, double>& level_measures) {
    const std::size_t n = std::size_t{1} << K;
    GridFunction f = GridFunction::zero(K);
    std::size_t cursor = 0;
    for (const auto& [l, measure] : level_measures) {
        auto cells = static_cast<std::size_t>(std::llround(measure * static_cast<double>(n)));
        if (cursor + cells > n) throw std::invalid_argument("levels: total measure exceeds 1");
        double v = std::pow(2.0, l);
        for (std::size_t x = 0; x < cells; ++x) f.values[cursor + x] = v;
        cursor += cells;
    }
    return f;
}

GridFunction orlicz_extremal(int K, PhiProfile phi, int n_levels) {
    // pick |Q_l| proportional to 1/(2^l phi(2^l)) so each level carries the
    // same modular share; scale so the total measure is 1/2
    std::map<int, double> measures;
    double total = 0.0;
    for (int l = 1; l <= n_levels; ++l) {
        double w = 1.0 / (std::pow(2.0, l) * std::max(phi_eval(phi, std::pow(2.0, l)), 1e-12));
        measures[l] = w;
        total += w;
    }
    double min_cell = 1.0 / static_cast<double>(std::size_t{1} << K);
    for (auto& [l, w] : measures) w = std::max(min_cell, 0.5 * w / total);
    return levels(K, measures);
}

GridFunction random_step(int K, int cells, int max_level, std::uint64_t seed) {
    if (cells < 1) throw std::invalid_argument("random_step: cells >= 1");
    const std::size_t n = std::size_t{1} << K;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pos(0, n);
    std::uniform_int_distribution<int> lev(0, max_level);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<std::size_t> cuts{0, n};
    for (int i = 1; i < cells; ++i) cuts.push_back(pos(rng));
    std::sort(cuts.begin(), cuts.end());
    GridFunction f = GridFunction::zero(K);
    for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
        double v = std::pow(2.0, lev(rng)) * (sign(rng) ? 1.0 : -1.0);
        for (std::size_t x = cuts[b]; x < cuts[b + 1]; ++x) f.values[x] = v;
    }
    return f;
}

LinearizingFunction constant_freq(int K, std::uint32_t n0) {
    return LinearizingFunction::constant(K, n0);
}

LinearizingFunction chirp(int K) { return LinearizingFunction::chirp(K); }

LinearizingFunction random_piecewise(int K, int blocks, std::uint64_t seed) {
    if (blocks < 1) throw std::invalid_argument("random_piecewise: blocks >= 1");
    const std::size_t n = std::size_t{1} << K;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> freq(0, static_cast<std::uint32_t>(n - 1));
    LinearizingFunction N{K, std::vector<std::uint32_t>(n)};
    const std::size_t width = (n + blocks - 1) / blocks;
    for (std::size_t x = 0; x < n; x += width) {
        std::uint32_t v = freq(rng);
        for (std::size_t y = x; y < std::min(n, x + width); ++y) N.values[y] = v;
    }
    return N;
}

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}
} // namespace

GridFunction parse_f(const std::string& spec, int K, std::uint64_t seed) {
    auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    if (kind == "indicator") {
        return indicator(K, parts.size() > 1 ? std::stod(parts[1]) : 0.25);
    }
    if (kind == "levels") {
        std::map<int, double> m;
        for (std::size_t i = 1; i + 1 < parts.size(); i += 2) {
            m[std::stoi(parts[i])] = std::stod(parts[i + 1]);
        }
        return levels(K, m);
    }
    if (kind == "orlicz_extremal") {
        PhiProfile phi = parts.size() > 1 ? phi_from_name(parts[1]) : PhiProfile::Log;
        int nl = parts.size() > 2 ? std::stoi(parts[2]) : 6;
        return orlicz_extremal(K, phi, nl);
    }
    if (kind == "random_step") {
        int cells = parts.size() > 1 ? std::stoi(parts[1]) : 16;
        int maxl = parts.size() > 2 ? std::stoi(parts[2]) : 5;
        return random_step(K, cells, maxl, seed);
    }
    throw std::invalid_argument("unknown f generator: " + spec);
}

LinearizingFunction parse_n(const std::string& spec, int K, std::uint64_t seed) {
    auto parts = split(spec, ':');
    const std::string& kind = parts[0];
    if (kind == "constant") {
        return constant_freq(K, parts.size() > 1 ? static_cast<std::uint32_t>(std::stoul(parts[1])) : 0);
    }
    if (kind == "chirp") return chirp(K);
    if (kind == "random_piecewise") {
        int blocks = parts.size() > 1 ? std::stoi(parts[1]) : 8;
        return random_piecewise(K, blocks, seed);
    }
    throw std::invalid_argument("unknown N generator: " + spec);
}

} // namespace carleson::gen
