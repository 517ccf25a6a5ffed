#pragma once

#include "carleson/dyadic.hpp"

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

namespace carleson {

/// Tile P = [omega, I]: time interval I = [j*2^-k,(j+1)*2^-k) and frequency
/// interval omega = [m*2^k,(m+1)*2^k) on the integer frequency axis, so that
/// |omega|*|I| = 1.
struct Tile {
    int k = 0;           // time scale
    std::uint32_t j = 0; // time index, 0 <= j < 2^k
    std::uint32_t m = 0; // frequency index, omega = [m*2^k, (m+1)*2^k)

    DyadicInterval time() const { return {k, j}; }
    double time_length() const { return 1.0 / static_cast<double>(std::uint32_t{1} << k); }
    double freq_lo() const { return static_cast<double>(std::uint64_t{1} << k) * m; }
    double freq_hi() const { return static_cast<double>(std::uint64_t{1} << k) * (m + 1); }
    double freq_length() const { return static_cast<double>(std::uint64_t{1} << k); }
    double freq_center() const { return 0.5 * (freq_lo() + freq_hi()); }

    std::uint64_t key() const {
        return (static_cast<std::uint64_t>(k) << 48) | (static_cast<std::uint64_t>(j) << 24) |
               static_cast<std::uint64_t>(m);
    }

    friend bool operator==(const Tile&, const Tile&) = default;
    // deterministic global order: (scale, time index, frequency index)
    friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// Measurable integer-valued linearizing frequency N(x) in [0, 2^K).
struct LinearizingFunction {
    int K = 0;
    std::vector<std::uint32_t> values; // size 2^K

    static LinearizingFunction constant(int K, std::uint32_t n0);
    /// N(x_m) = m.
    static LinearizingFunction chirp(int K);
};

/// Finite tile family with deterministic iteration order and O(1) membership.
class TileSet {
public:
    TileSet() = default;
    explicit TileSet(std::vector<Tile> tiles);

    const std::vector<Tile>& tiles() const { return tiles_; }
    std::size_t size() const { return tiles_.size(); }
    bool empty() const { return tiles_.empty(); }
    bool contains(const Tile& t) const { return keys_.count(t.key()) != 0; }

    void insert(const Tile& t);
    void erase(const Tile& t);

    auto begin() const { return tiles_.begin(); }
    auto end() const { return tiles_.end(); }

    friend bool operator==(const TileSet& a, const TileSet& b) { return a.tiles_ == b.tiles_; }

private:
    std::vector<Tile> tiles_; // sorted
    std::unordered_set<std::uint64_t> keys_;
};

/// All tiles with time scale in [k_min,k_max] and omega ⊆ [0,2^K).
TileSet build_tile_family(int K, int k_min, int k_max);

/// E(P) = { x in I | N(x) in omega } as an exact grid set.
TorusSet e_set(const Tile& P, const LinearizingFunction& N);
/// |E(P)| without building the set.
double e_measure(const Tile& P, const LinearizingFunction& N);

/// P1 <= P2 iff I1 ⊆ I2 and omega1 ⊇ omega2.
bool tile_leq(const Tile& P1, const Tile& P2);
/// Strict variant: P1 <= P2 and |I1| < |I2|.
bool tile_lt(const Tile& P1, const Tile& P2);

/// Dilated order "aP <= bP'": I_P ⊆ I_P' and b*omega' ⊆ a*omega, with the
/// dilations concentric.
bool tile_dilated_leq(const Tile& P, double a, const Tile& Pp, double b);

/// Tree-membership test "2P <= 10 P0" under the pinned convention: when
/// 2|omega| < 10|omega0| (containment impossible; this covers the top's own
/// scale and the three scales below it) the condition degenerates to
/// 2*omega ∩ 10*omega0 != empty.
bool tree_member(const Tile& P, const Tile& top);

/// (1 + |I_P'| * gap(10*omega, 10*omega'))^-N_mass; 1 when the dilated
/// frequency intervals intersect.
double decay_factor(const Tile& P, const Tile& Pp, int n_mass);

/// Cached per-tile data shared by mass evaluations: |E(P)| and density.
struct MassContext {
    const TileSet* family = nullptr;
    int n_mass = 10;
    std::vector<double> density;              // |E(P)|/|I_P| per family order
    std::vector<std::size_t> order_of_key;    // family index by lookup
    std::size_t index_of(const Tile& t) const;

    static MassContext build(const TileSet& family, const LinearizingFunction& N, int n_mass);
};

/// Mass of P relative to pool and region (Def: sup over admissible
/// time-ancestors P' in pool with I_P ⊆ I_P' ⊆ region of density(P')*decay).
double mass(const Tile& P, const TileSet& pool, const TorusSet& region, const MassContext& ctx);

/// sup over dyadic J of the packed length of member intervals inside J / |J|.
double bmo_c_norm(const std::vector<DyadicInterval>& intervals);

/// Pointwise count of covering intervals, as a grid function.
GridFunction counting_function(const std::vector<DyadicInterval>& tops, int K);

struct TreeCheck {
    bool ok = true;
    int violated_condition = 0; // 1, 2 or 3; 0 if none
};

/// Def-3 predicate. Conditions 2 and 3 are checked for closure relative to
/// `ambient` (defaults to S itself when null).
TreeCheck is_tree(const TileSet& S, const Tile& top, const TileSet* ambient = nullptr);

/// For every P in S, sum of |I_P'| over P' in S with I_P' ⊆ I_P is <= C|I_P|.
bool is_sparse_tree(const TileSet& S, double C);

struct Tree {
    TileSet tiles;
    Tile top;
};

/// Separation (wellsep) plus counting-function bound <= c_forest * 2^n.
bool is_linf_forest(const std::vector<Tree>& trees, int n, double c_forest, int K);

/// Def-6 ii): inter-group scale separation for j < k pairs with intersecting
/// time intervals.
bool is_bmo_forest(const std::vector<std::vector<Tree>>& groups, int n, double c_forest, int K);

} // namespace carleson
