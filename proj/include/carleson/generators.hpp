#pragma once

#include "carleson/dyadic.hpp"
#include "carleson/function_spaces.hpp"
#include "carleson/tile.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace carleson {

/// Deterministic test-instance generators. All randomness flows through a
/// seeded mt19937_64 so identical (kind, params, seed) reproduce bitwise.
namespace gen {

/// chi_[0, measure) rounded to the grid.
GridFunction indicator(int K, double measure);

/// Step function taking value 2^l on a block of the requested measure for
/// each entry; blocks laid out left to right. Measures are rounded to the
/// grid; total must fit in [0,1].
GridFunction levels(int K, const std::map<int, double>& level_measures);

/// Step function whose dyadic levels contribute equal shares of the Orlicz
/// modular for the given profile.
GridFunction orlicz_extremal(int K, PhiProfile phi, int n_levels);

/// Random step function: `cells` contiguous blocks with values 2^u,
/// u uniform in {0..max_level}; random sign pattern.
GridFunction random_step(int K, int cells, int max_level, std::uint64_t seed);

LinearizingFunction constant_freq(int K, std::uint32_t n0);
LinearizingFunction chirp(int K);
LinearizingFunction random_piecewise(int K, int blocks, std::uint64_t seed);

/// Parse "kind:arg1:arg2" specs used by the CLI, e.g. "indicator:0.25",
/// "random_step:16:6", "constant:0", "chirp", "random_piecewise:8".
GridFunction parse_f(const std::string& spec, int K, std::uint64_t seed);
LinearizingFunction parse_n(const std::string& spec, int K, std::uint64_t seed);

} // namespace gen

} // namespace carleson
