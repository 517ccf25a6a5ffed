#pragma once

#include "carleson/cz_decomposition.hpp"
#include "carleson/mass_decomposition.hpp"
#include "carleson/verification.hpp"

#include <map>
#include <string>

namespace carleson::svg {

/// Time-frequency tile diagram: rectangles x in I, y = omega / 2^K, filled by
/// mass level n, stroked by alpha when the CZ data is present; a bottom strip
/// plots the first-layer counting function of each level. Pure function of its
/// inputs, byte-stable.
std::string tiles_svg(const MassDecomposition& dec, const std::map<int, CZDecomposition>* cz,
                      int K);

/// Ratio-vs-n decay chart for the per-level check families of a report.
std::string decay_svg(const VerificationReport& rep);

} // namespace carleson::svg
