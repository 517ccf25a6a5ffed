#include "carleson/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carleson::io {

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace

std::string grid_to_csv(const GridFunction& f) {
    std::string out = "index,re,im\n";
    for (std::size_t x = 0; x < f.size(); ++x) {
        out += std::to_string(x) + "," + fmt(f.values[x].real()) + "," + fmt(f.values[x].imag()) +
               "\n";
    }
    return out;
}

GridFunction grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "index,re,im")
        throw std::invalid_argument("grid_from_csv: bad header");
    std::vector<std::complex<double>> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("grid_from_csv: bad row");
        values.emplace_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                            std::stod(line.substr(c2 + 1)));
    }
    int K = 0;
    while ((std::size_t{1} << K) < values.size()) ++K;
    if ((std::size_t{1} << K) != values.size())
        throw std::invalid_argument("grid_from_csv: row count must be a power of two");
    return {K, std::move(values)};
}

json grid_to_json(const GridFunction& f) {
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back({v.real(), v.imag()});
    return {{"K", f.K}, {"values", std::move(vals)}};
}

GridFunction grid_from_json(const json& j) {
    GridFunction f = GridFunction::zero(j.at("K").get<int>());
    const auto& vals = j.at("values");
    if (vals.size() != f.size()) throw std::invalid_argument("grid_from_json: size mismatch");
    for (std::size_t x = 0; x < f.size(); ++x) {
        f.values[x] = {vals[x][0].get<double>(), vals[x][1].get<double>()};
    }
    return f;
}

std::string linearizing_to_csv(const LinearizingFunction& N) {
    std::string out = "index,freq\n";
    for (std::size_t x = 0; x < N.values.size(); ++x) {
        out += std::to_string(x) + "," + std::to_string(N.values[x]) + "\n";
    }
    return out;
}

LinearizingFunction linearizing_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "index,freq")
        throw std::invalid_argument("linearizing_from_csv: bad header");
    std::vector<std::uint32_t> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        if (c1 == std::string::npos) throw std::invalid_argument("linearizing_from_csv: bad row");
        values.push_back(static_cast<std::uint32_t>(std::stoul(line.substr(c1 + 1))));
    }
    int K = 0;
    while ((std::size_t{1} << K) < values.size()) ++K;
    if ((std::size_t{1} << K) != values.size())
        throw std::invalid_argument("linearizing_from_csv: row count must be a power of two");
    return {K, std::move(values)};
}

json tile_to_json(const Tile& P) { return {{"k", P.k}, {"j", P.j}, {"m", P.m}}; }

Tile tile_from_json(const json& j) {
    return {j.at("k").get<int>(), j.at("j").get<std::uint32_t>(), j.at("m").get<std::uint32_t>()};
}

json tileset_to_json(const TileSet& S) {
    json out = json::array();
    for (const auto& P : S) out.push_back(tile_to_json(P));
    return out;
}

TileSet tileset_from_json(const json& j) {
    std::vector<Tile> tiles;
    tiles.reserve(j.size());
    for (const auto& t : j) tiles.push_back(tile_from_json(t));
    return TileSet(std::move(tiles));
}

json interval_to_json(const DyadicInterval& I) {
    return {{"scale", I.scale}, {"index", I.index}};
}

json torus_set_to_json(const TorusSet& S) {
    json parts = json::array();
    for (auto [lo, hi] : S.parts()) parts.push_back({lo, hi});
    return {{"measure", S.measure()}, {"parts", std::move(parts)}};
}

json mass_decomposition_to_json(const MassDecomposition& dec) {
    json levels = json::object();
    for (const auto& [n, tiles] : dec.levels) levels[std::to_string(n)] = tileset_to_json(tiles);
    json layers = json::object();
    for (const auto& [n, seq] : dec.layers) {
        json arr = json::array();
        for (const auto& L : seq) {
            json intervals = json::array();
            for (const auto& I : L.intervals) intervals.push_back(interval_to_json(I));
            arr.push_back({{"n", L.n},
                           {"k", L.k},
                           {"region", torus_set_to_json(L.region)},
                           {"maximal", tileset_to_json(L.maximal)},
                           {"intervals", std::move(intervals)},
                           {"bmo_norm", L.bmo_norm},
                           {"next_region", torus_set_to_json(L.next_region)}});
        }
        layers[std::to_string(n)] = std::move(arr);
    }
    return {{"levels", std::move(levels)},
            {"layers", std::move(layers)},
            {"discard", tileset_to_json(dec.discard)}};
}

json cz_decomposition_to_json(const CZDecomposition& dec) {
    json by_alpha = json::object();
    for (const auto& [alpha, tiles] : dec.by_alpha)
        by_alpha[std::to_string(alpha)] = tileset_to_json(tiles);
    json stops = json::object();
    for (const auto& [alpha, js] : dec.stops) {
        json arr = json::array();
        for (const auto& J : js) arr.push_back(interval_to_json(J));
        stops[std::to_string(alpha)] = std::move(arr);
    }
    return {{"alpha_lo", dec.alpha_lo},
            {"alpha_hi", dec.alpha_hi},
            {"by_alpha", std::move(by_alpha)},
            {"stops", std::move(stops)}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace carleson::io
