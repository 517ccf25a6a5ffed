#include "carleson/tile.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace carleson {

LinearizingFunction LinearizingFunction::constant(int K, std::uint32_t n0) {
    return {K, std::vector<std::uint32_t>(std::size_t{1} << K, n0)};
}

LinearizingFunction LinearizingFunction::chirp(int K) {
    LinearizingFunction N{K, std::vector<std::uint32_t>(std::size_t{1} << K)};
    for (std::size_t m = 0; m < N.values.size(); ++m) N.values[m] = static_cast<std::uint32_t>(m);
    return N;
}

TileSet::TileSet(std::vector<Tile> tiles) : tiles_(std::move(tiles)) {
    std::sort(tiles_.begin(), tiles_.end());
    tiles_.erase(std::unique(tiles_.begin(), tiles_.end()), tiles_.end());
    for (const auto& t : tiles_) keys_.insert(t.key());
}

void TileSet::insert(const Tile& t) {
    if (contains(t)) return;
    tiles_.insert(std::lower_bound(tiles_.begin(), tiles_.end(), t), t);
    keys_.insert(t.key());
}

void TileSet::erase(const Tile& t) {
    if (!contains(t)) return;
    tiles_.erase(std::lower_bound(tiles_.begin(), tiles_.end(), t));
    keys_.erase(t.key());
}

TileSet build_tile_family(int K, int k_min, int k_max) {
    if (k_min < 0 || k_min > k_max || k_max > K) {
        throw std::invalid_argument("build_tile_family: need 0 <= k_min <= k_max <= K");
    }
    std::vector<Tile> tiles;
    for (int k = k_min; k <= k_max; ++k) {
        const std::uint32_t nj = std::uint32_t{1} << k;
        const std::uint32_t nm = std::uint32_t{1} << (K - k);
        for (std::uint32_t j = 0; j < nj; ++j) {
            for (std::uint32_t m = 0; m < nm; ++m) tiles.push_back({k, j, m});
        }
    }
    return TileSet(std::move(tiles));
}

double e_measure(const Tile& P, const LinearizingFunction& N) {
    const int K = N.K;
    const std::size_t lo = std::size_t{P.j} << (K - P.k);
    const std::size_t hi = std::size_t{P.j + 1} << (K - P.k);
    const std::uint64_t flo = std::uint64_t{P.m} << P.k;
    const std::uint64_t fhi = std::uint64_t{P.m + 1} << P.k;
    std::size_t count = 0;
    for (std::size_t x = lo; x < hi; ++x) {
        if (N.values[x] >= flo && N.values[x] < fhi) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(std::size_t{1} << K);
}

TorusSet e_set(const Tile& P, const LinearizingFunction& N) {
    const int K = N.K;
    std::vector<std::uint8_t> mask(std::size_t{1} << K, 0);
    const std::size_t lo = std::size_t{P.j} << (K - P.k);
    const std::size_t hi = std::size_t{P.j + 1} << (K - P.k);
    const std::uint64_t flo = std::uint64_t{P.m} << P.k;
    const std::uint64_t fhi = std::uint64_t{P.m + 1} << P.k;
    for (std::size_t x = lo; x < hi; ++x) {
        if (N.values[x] >= flo && N.values[x] < fhi) mask[x] = 1;
    }
    return TorusSet::from_mask(mask);
}

bool tile_leq(const Tile& P1, const Tile& P2) {
    if (P1.k < P2.k) return false;
    const int d = P1.k - P2.k;
    return (P1.j >> d) == P2.j && (P2.m >> d) == P1.m;
}

bool tile_lt(const Tile& P1, const Tile& P2) { return P1.k > P2.k && tile_leq(P1, P2); }

namespace {
struct RealInterval {
    double lo, hi;
};

RealInterval dilated_freq(const Tile& P, double a) {
    double c = P.freq_center();
    double half = 0.5 * a * P.freq_length();
    return {c - half, c + half};
}
} // namespace

bool tile_dilated_leq(const Tile& P, double a, const Tile& Pp, double b) {
    if (!P.time().subset_of(Pp.time())) return false;
    RealInterval wa = dilated_freq(P, a);
    RealInterval wb = dilated_freq(Pp, b);
    return wb.lo >= wa.lo && wb.hi <= wa.hi;
}

bool tree_member(const Tile& P, const Tile& top) {
    if (!P.time().subset_of(top.time())) return false;
    RealInterval w2 = dilated_freq(P, 2.0);
    RealInterval w10 = dilated_freq(top, 10.0);
    if (w2.hi - w2.lo >= w10.hi - w10.lo) {
        return w10.lo >= w2.lo && w10.hi <= w2.hi;
    }
    // containment impossible at the near-top scales: intersection rule
    return w2.hi > w10.lo && w10.hi > w2.lo;
}

double decay_factor(const Tile& P, const Tile& Pp, int n_mass) {
    RealInterval a = dilated_freq(P, 10.0);
    RealInterval b = dilated_freq(Pp, 10.0);
    double gap = std::max({0.0, a.lo - b.hi, b.lo - a.hi});
    if (gap == 0.0) return 1.0;
    return std::pow(1.0 + Pp.time_length() * gap, -n_mass);
}

// ---------------------------------------------------------------------------
// Mass

namespace {
// per-time-interval tile lists, density-descending for early pruning
struct TimeBucket {
    std::vector<std::size_t> idx;
};
} // namespace

struct MassContextImpl; // not needed; buckets rebuilt in build()

std::size_t MassContext::index_of(const Tile& t) const {
    const auto& ts = family->tiles();
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    return static_cast<std::size_t>(it - ts.begin());
}

MassContext MassContext::build(const TileSet& family, const LinearizingFunction& N, int n_mass) {
    MassContext ctx;
    ctx.family = &family;
    ctx.n_mass = n_mass;
    ctx.density.resize(family.size());
    const auto& ts = family.tiles();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ts.size()); ++i) {
        ctx.density[i] = e_measure(ts[i], N) / ts[i].time_length();
    }
    return ctx;
}

double mass(const Tile& P, const TileSet& pool, const TorusSet& region, const MassContext& ctx) {
    const auto& ts = ctx.family->tiles();
    double best = 0.0;
    // ancestors of I_P, coarsening until the region no longer contains them
    for (int kp = P.k; kp >= 0; --kp) {
        DyadicInterval anc{kp, P.j >> (P.k - kp)};
        if (!region.contains(anc)) break;
        // tiles at this time interval occupy a contiguous run in the sorted family
        Tile first{kp, static_cast<std::uint32_t>(anc.index), 0};
        auto it = std::lower_bound(ts.begin(), ts.end(), first);
        for (; it != ts.end() && it->k == kp && it->j == anc.index; ++it) {
            std::size_t i = static_cast<std::size_t>(it - ts.begin());
            double d = ctx.density[i];
            if (d <= best) continue;
            if (!pool.contains(*it)) continue;
            double val = d * decay_factor(P, *it, ctx.n_mass);
            if (val > best) best = val;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// BMO_C norm and counting functions

double bmo_c_norm(const std::vector<DyadicInterval>& intervals) {
    if (intervals.empty()) return 0.0;
    int maxk = 0;
    for (const auto& I : intervals) maxk = std::max(maxk, I.scale);
    // packed[k][j] = sum of member lengths inside the dyadic interval (k,j)
    std::vector<std::vector<double>> packed(maxk + 1);
    for (int k = 0; k <= maxk; ++k) packed[k].assign(std::size_t{1} << k, 0.0);
    for (const auto& I : intervals) packed[I.scale][I.index] += I.length();
    for (int k = maxk; k > 0; --k) {
        for (std::size_t j = 0; j < packed[k].size(); ++j) packed[k - 1][j >> 1] += packed[k][j];
    }
    double best = 0.0;
    for (int k = 0; k <= maxk; ++k) {
        double scale = static_cast<double>(std::size_t{1} << k);
        for (std::size_t j = 0; j < packed[k].size(); ++j) {
            best = std::max(best, packed[k][j] * scale);
        }
    }
    return best;
}

GridFunction counting_function(const std::vector<DyadicInterval>& tops, int K) {
    GridFunction out = GridFunction::zero(K);
    for (const auto& I : tops) {
        const std::size_t lo = I.index << (K - I.scale);
        const std::size_t hi = (I.index + 1) << (K - I.scale);
        for (std::size_t x = lo; x < hi; ++x) out.values[x] += 1.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree and forest predicates

TreeCheck is_tree(const TileSet& S, const Tile& top, const TileSet* ambient) {
    const TileSet& amb = ambient ? *ambient : S;
    for (const auto& P : S) {
        if (!tree_member(P, top)) return {false, 1};
    }
    // condition 2: closure under same-time tiles P' with 2P' <= top
    for (const auto& Pp : amb) {
        if (S.contains(Pp)) continue;
        if (!tile_dilated_leq(Pp, 2.0, top, 1.0)) continue;
        bool time_present = false;
        for (const auto& P : S) {
            if (P.k == Pp.k && P.j == Pp.j) { time_present = true; break; }
        }
        if (time_present) return {false, 2};
    }
    // condition 3: convexity relative to the ambient family
    for (const auto& P : amb) {
        if (S.contains(P)) continue;
        bool below = false, above = false;
        for (const auto& Q : S) {
            if (tile_leq(Q, P)) below = true;
            if (tile_leq(P, Q)) above = true;
            if (below && above) return {false, 3};
        }
    }
    return {true, 0};
}

bool is_sparse_tree(const TileSet& S, double C) {
    for (const auto& P : S) {
        double sum = 0.0;
        for (const auto& Pp : S) {
            if (Pp.time().subset_of(P.time())) sum += Pp.time_length();
        }
        if (sum > C * P.time_length() + 1e-12) return false;
    }
    return true;
}

bool is_linf_forest(const std::vector<Tree>& trees, int n, double c_forest, int K) {
    for (std::size_t a = 0; a < trees.size(); ++a) {
        for (std::size_t b = 0; b < trees.size(); ++b) {
            if (a == b) continue;
            for (const auto& P : trees[a].tiles) {
                if (tree_member(P, trees[b].top)) return false; // violates (wellsep)
            }
        }
    }
    std::vector<DyadicInterval> tops;
    tops.reserve(trees.size());
    for (const auto& t : trees) tops.push_back(t.top.time());
    GridFunction count = counting_function(tops, K);
    double bound = c_forest * std::pow(2.0, n);
    for (const auto& v : count.values) {
        if (v.real() > bound) return false;
    }
    return true;
}

bool is_bmo_forest(const std::vector<std::vector<Tree>>& groups, int n, double c_forest, int K) {
    for (const auto& g : groups) {
        if (!is_linf_forest(g, n, c_forest, K)) return false;
    }
    for (std::size_t j = 0; j + 1 < groups.size(); ++j) {
        for (std::size_t k = j + 1; k < groups.size(); ++k) {
            double ratio = std::pow(2.0, -static_cast<double>(k - j));
            for (const auto& tj : groups[j]) {
                for (const auto& P : tj.tiles) {
                    for (const auto& tk : groups[k]) {
                        for (const auto& Pp : tk.tiles) {
                            const auto &I = P.time(), &Ip = Pp.time();
                            bool intersect = I.subset_of(Ip) || Ip.subset_of(I);
                            if (intersect && Pp.time_length() > ratio * P.time_length() + 1e-12) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

} // namespace carleson
