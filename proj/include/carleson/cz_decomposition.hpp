#pragma once

#include "carleson/dyadic.hpp"
#include "carleson/tile.hpp"

#include <map>
#include <vector>

namespace carleson {

/// The f-dependent alpha-discretization of a mass level P_n.
struct CZDecomposition {
    std::map<int, TileSet> by_alpha;                  // alpha -> P_n^alpha (nonempty)
    std::map<int, std::vector<DyadicInterval>> stops; // alpha -> J_alpha
    int alpha_lo = 0; // exclusive: P_n^alpha empty for alpha <= alpha_lo = -(N+1)
    int alpha_hi = 0; // last alpha of the induction (= -M)
};

/// 2^N < ||Mf||_inf <= 2^(N+1) and 2^(M+1) >= int|f| > 2^M.
std::pair<int, int> cz_exponent_bounds(const GridFunction& f);

/// Inductive alpha-partition: P_n^alpha collects residual tiles having some
/// stopping interval J in J_alpha with I_P ∩ 51J != empty and |I_P| <= |J|.
CZDecomposition cz_decompose(const TileSet& P_n, const GridFunction& f);

/// Union of the time intervals of S, as a torus set.
TorusSet time_support(const TileSet& S);

/// The 14 dyadic-length intervals of I_{P*}: [c-17/2|I|, c-3/2|I|] and
/// [c+3/2|I|, c+17/2|I|] mod 1, each aligned of length |I_P|.
std::vector<DyadicInterval> shadow_intervals(const Tile& P);

/// Stopping-time partition of [0,1): maximal dyadic J strictly containing no
/// member; every member is a union of output intervals.
std::vector<DyadicInterval> cz_partition(const std::vector<DyadicInterval>& members);

/// L_p(f) = sum_J (avg over J of f(s) e^{2 pi i omega s}) chi_J.
GridFunction tree_projection(const GridFunction& f, long omega,
                             const std::vector<DyadicInterval>& partition);

/// Per-tree Calderon-Zygmund data at level alpha: minimal-tile shadows, the
/// (possibly refined) partition, and the monitored bound checks.
struct TreeCZ {
    std::vector<DyadicInterval> shadows;   // J_{p*}
    std::vector<DyadicInterval> partition; // CZ(J_{p*}), refined where needed
    int refine_activations = 0;            // cells split to meet the average bound
    int shadow_violations = 0;             // (suppPstar) average-bound failures
};

/// Minimal tiles of a tree (no strictly smaller tile below them).
std::vector<Tile> minimal_tiles(const TileSet& tree);

TreeCZ tree_cz(const TileSet& tree, const GridFunction& f, int alpha);

} // namespace carleson
