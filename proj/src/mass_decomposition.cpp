#include "carleson/mass_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carleson {

TileSet select_maximal_dense(const TileSet& pool, int n, const MassContext& ctx) {
    const double threshold = std::pow(2.0, -n);
    std::vector<Tile> dense;
    for (const auto& P : pool) {
        if (ctx.density[ctx.index_of(P)] >= threshold) dense.push_back(P);
    }
    TileSet dense_set(dense);
    std::vector<Tile> maximal;
    for (const auto& P : dense) {
        bool dominated = false;
        // strict ancestors Q > P: coarser time scale, nested freq
        for (int kp = P.k - 1; kp >= 0 && !dominated; --kp) {
            const int d = P.k - kp;
            const std::uint32_t jq = P.j >> d;
            const std::uint32_t m0 = P.m << d;
            for (std::uint32_t dm = 0; dm < (std::uint32_t{1} << d); ++dm) {
                if (dense_set.contains({kp, jq, m0 + dm})) { dominated = true; break; }
            }
        }
        if (!dominated) maximal.push_back(P);
    }
    return TileSet(std::move(maximal));
}

TorusSet exceptional_set(const std::vector<DyadicInterval>& intervals, double c, int K) {
    if (c <= 0.0) throw std::invalid_argument("exceptional_set: c must be positive");
    if (intervals.empty()) return {};
    const double bound = c * bmo_c_norm(intervals);
    GridFunction count = counting_function(intervals, K);
    std::vector<std::uint8_t> mask(count.size(), 0);
    for (std::size_t x = 0; x < count.size(); ++x) mask[x] = count.values[x].real() > bound;
    return TorusSet::from_mask(mask);
}

std::vector<MassLayer> layer_iteration(const TileSet& pool, int n, const MassContext& ctx,
                                       double c, int K) {
    std::vector<MassLayer> out;
    TorusSet region = TorusSet::full();
    for (int k = 0;; ++k) {
        MassLayer layer;
        layer.n = n;
        layer.k = k;
        layer.region = region;
        // restrict to tiles living inside the current region
        std::vector<Tile> inside;
        for (const auto& P : pool) {
            if (region.contains(P.time())) inside.push_back(P);
        }
        layer.maximal = select_maximal_dense(TileSet(std::move(inside)), n, ctx);
        for (const auto& P : layer.maximal) layer.intervals.push_back(P.time());
        layer.counting = counting_function(layer.intervals, K);
        layer.bmo_norm = bmo_c_norm(layer.intervals);
        layer.next_region = exceptional_set(layer.intervals, c, K);
        bool stop = layer.maximal.empty() || layer.next_region.empty();
        region = layer.next_region;
        out.push_back(std::move(layer));
        if (stop) break;
    }
    return out;
}

TileSet assign_level(const TileSet& pool, int n, const std::vector<MassLayer>& layers,
                     const MassContext& ctx) {
    const double lo = std::pow(2.0, -n);
    const double hi = std::pow(2.0, -n + 1);
    const auto& tiles = pool.tiles();
    std::vector<std::uint8_t> take(tiles.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(tiles.size()); ++i) {
        const Tile& P = tiles[i];
        // deepest layer whose region contains I_P (regions are nested)
        std::size_t k = 0;
        while (k + 1 < layers.size() && layers[k + 1].region.contains(P.time())) ++k;
        double m = mass(P, pool, layers[k].region, ctx);
        take[i] = (m >= lo && m < hi);
    }
    std::vector<Tile> assigned;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (take[i]) assigned.push_back(tiles[i]);
    }
    return TileSet(std::move(assigned));
}

MassDecomposition mass_decompose(const TileSet& family, const LinearizingFunction& N, double c,
                                 int n_max, int n_mass) {
    MassDecomposition out;
    MassContext ctx = MassContext::build(family, N, n_mass);
    TileSet residual = family;
    std::size_t total_assigned = 0;
    for (int n = 0; n <= n_max && !residual.empty(); ++n) {
        auto layers = layer_iteration(residual, n, ctx, c, N.K);
        TileSet assigned = assign_level(residual, n, layers, ctx);
        if (!assigned.empty()) {
            total_assigned += assigned.size();
            for (const auto& P : assigned) residual.erase(P);
            out.layers[n] = std::move(layers);
            out.levels[n] = std::move(assigned);
        }
    }
    out.discard = residual;
    if (total_assigned + out.discard.size() != family.size()) {
        throw std::logic_error("mass_decompose: partition violated");
    }
    return out;
}

std::vector<Tree> extract_maximal_trees(const TileSet& S) {
    std::vector<Tree> out;
    TileSet unassigned = S;
    while (!unassigned.empty()) {
        // the sorted order puts the coarsest (largest |I|) tiles first
        Tile top = unassigned.tiles().front();
        std::vector<Tile> collect;
        for (const auto& P : unassigned) {
            if (tree_member(P, top)) collect.push_back(P);
        }
        TileSet tree(collect);
        // convexity closure within the unassigned pool
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& P : unassigned) {
                if (tree.contains(P)) continue;
                bool below = false, above = false;
                for (const auto& Q : tree) {
                    if (tile_leq(Q, P)) below = true;
                    if (tile_leq(P, Q)) above = true;
                    if (below && above) break;
                }
                if (below && above) {
                    tree.insert(P);
                    grew = true;
                }
            }
        }
        for (const auto& P : tree) unassigned.erase(P);
        out.push_back({std::move(tree), top});
    }
    return out;
}

namespace {
bool separated(const Tree& a, const Tree& b) {
    for (const auto& P : a.tiles) {
        if (tree_member(P, b.top)) return false;
    }
    for (const auto& P : b.tiles) {
        if (tree_member(P, a.top)) return false;
    }
    return true;
}

// Def-6 ii) between group at position j and group at position k (j < k).
bool scale_separated(const std::vector<Tree>& gj, const std::vector<Tree>& gk, int j, int k) {
    const double ratio = std::pow(2.0, j - k);
    for (const auto& tj : gj) {
        for (const auto& P : tj.tiles) {
            for (const auto& tk : gk) {
                for (const auto& Pp : tk.tiles) {
                    const auto I = P.time(), Ip = Pp.time();
                    bool intersect = I.subset_of(Ip) || Ip.subset_of(I);
                    if (intersect && Pp.time_length() > ratio * P.time_length() + 1e-12) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}
} // namespace

std::vector<BmoForest> forest_decompose(const TileSet& P_n, int n, double c_forest, int K) {
    auto trees = extract_maximal_trees(P_n);
    const double count_bound = c_forest * std::pow(2.0, n);
    const std::size_t cells = std::size_t{1} << K;

    // pack trees into L^infty-forest groups
    std::vector<std::vector<Tree>> groups;
    std::vector<std::vector<double>> group_count;
    for (auto& tree : trees) {
        bool placed = false;
        for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
            bool ok = true;
            for (const auto& other : groups[g]) {
                if (!separated(tree, other)) { ok = false; break; }
            }
            if (!ok) continue;
            const auto I = tree.top.time();
            const std::size_t lo = I.index << (K - I.scale);
            const std::size_t hi = (I.index + 1) << (K - I.scale);
            for (std::size_t x = lo; x < hi && ok; ++x) {
                if (group_count[g][x] + 1.0 > count_bound) ok = false;
            }
            if (!ok) continue;
            for (std::size_t x = lo; x < hi; ++x) group_count[g][x] += 1.0;
            groups[g].push_back(std::move(tree));
            placed = true;
        }
        if (!placed) {
            const auto I = tree.top.time();
            std::vector<double> cnt(cells, 0.0);
            const std::size_t lo = I.index << (K - I.scale);
            const std::size_t hi = (I.index + 1) << (K - I.scale);
            for (std::size_t x = lo; x < hi; ++x) cnt[x] = 1.0;
            groups.push_back({std::move(tree)});
            group_count.push_back(std::move(cnt));
        }
    }

    // order groups into BMO-forests, splitting where Def-6 ii) fails
    std::vector<BmoForest> forests;
    for (auto& g : groups) {
        bool placed = false;
        for (auto& forest : forests) {
            bool ok = true;
            for (std::size_t j = 0; j < forest.size() && ok; ++j) {
                ok = scale_separated(forest[j], g, static_cast<int>(j),
                                     static_cast<int>(forest.size()));
            }
            if (ok) {
                forest.push_back(std::move(g));
                placed = true;
                break;
            }
        }
        if (!placed) forests.push_back({std::move(g)});
    }
    return forests;
}

} // namespace carleson
