#pragma once

#include "carleson/tile.hpp"

#include <map>
#include <vector>

namespace carleson {

/// One pass of the layer iteration at level n: the region A_n^k, the maximal
/// dense tiles found inside it, their time intervals and counting function,
/// and the exceptional set A_n^{k+1}.
struct MassLayer {
    int n = 0;
    int k = 0;
    TorusSet region;                       // A_n^k
    TileSet maximal;                       // p_n^{k,max}
    std::vector<DyadicInterval> intervals; // I_n^k (multiset)
    GridFunction counting;                 // N_n^k
    double bmo_norm = 0.0;
    TorusSet next_region; // A_n^{k+1}
};

/// The partition P = ⊔_n P_n plus the discard bucket of mass-zero tiles.
struct MassDecomposition {
    std::map<int, TileSet> levels;                // n -> P_n (nonempty only)
    std::map<int, std::vector<MassLayer>> layers; // n -> layer sequence
    TileSet discard;                              // P_infinity
};

/// Tiles in pool with |E(P)|/|I_P| >= 2^-n, maximal for tile_leq among those.
TileSet select_maximal_dense(const TileSet& pool, int n, const MassContext& ctx);

/// Grid set where the counting function of `intervals` exceeds
/// c * bmo_c_norm(intervals).
TorusSet exceptional_set(const std::vector<DyadicInterval>& intervals, double c, int K);

/// A_n^0 = [0,1); iterate maximal-dense selection and exceptional sets until
/// no dense tiles remain.
std::vector<MassLayer> layer_iteration(const TileSet& pool, int n, const MassContext& ctx,
                                       double c, int K);

/// Tiles of pool whose mass relative to (pool, A_n^k) falls in the window
/// [2^-n, 2^-n+1), where k is the deepest layer whose region contains I_P.
TileSet assign_level(const TileSet& pool, int n, const std::vector<MassLayer>& layers,
                     const MassContext& ctx);

MassDecomposition mass_decompose(const TileSet& family, const LinearizingFunction& N, double c,
                                 int n_max, int n_mass);

/// Greedy maximal-tree extraction: repeatedly take the coarsest unassigned
/// tile as top, collect its tree members and close under convexity.
std::vector<Tree> extract_maximal_trees(const TileSet& S);

/// A BMO-forest: ordered sequence of L^infty-forests (groups of trees).
using BmoForest = std::vector<std::vector<Tree>>;

/// Greedy layering of P_n into BMO-forests satisfying the Def-5/6 predicates.
std::vector<BmoForest> forest_decompose(const TileSet& P_n, int n, double c_forest, int K);

} // namespace carleson
