#pragma once

#include "carleson/cz_decomposition.hpp"
#include "carleson/dyadic.hpp"
#include "carleson/mass_decomposition.hpp"
#include "carleson/tile.hpp"

#include <json.hpp>

#include <string>

namespace carleson::io {

using nlohmann::json;

// CSV, header `index,re,im`, one row per grid cell
std::string grid_to_csv(const GridFunction& f);
GridFunction grid_from_csv(const std::string& text);

// JSON { "K": int, "values": [[re,im],...] }
json grid_to_json(const GridFunction& f);
GridFunction grid_from_json(const json& j);

// CSV, header `index,freq`
std::string linearizing_to_csv(const LinearizingFunction& N);
LinearizingFunction linearizing_from_csv(const std::string& text);

json tile_to_json(const Tile& P);
Tile tile_from_json(const json& j);
json tileset_to_json(const TileSet& S);
TileSet tileset_from_json(const json& j);

json interval_to_json(const DyadicInterval& I);
json torus_set_to_json(const TorusSet& S);

json mass_decomposition_to_json(const MassDecomposition& dec);
json cz_decomposition_to_json(const CZDecomposition& dec);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

} // namespace carleson::io
