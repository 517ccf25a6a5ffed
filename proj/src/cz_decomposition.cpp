#include "carleson/cz_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace carleson {

std::pair<int, int> cz_exponent_bounds(const GridFunction& f) {
    auto avg = dyadic_averages(f);
    double mf_inf = 0.0;
    for (const auto& level : avg) {
        for (double a : level) mf_inf = std::max(mf_inf, a);
    }
    double int_f = avg[0][0];
    if (int_f <= 0.0) throw std::invalid_argument("cz_exponent_bounds: f is identically zero");
    // 2^N < mf_inf <= 2^(N+1)
    int N = static_cast<int>(std::floor(std::log2(mf_inf)));
    while (std::pow(2.0, N) >= mf_inf) --N;
    while (std::pow(2.0, N + 1) < mf_inf) ++N;
    // 2^M < int_f <= 2^(M+1)
    int M = static_cast<int>(std::floor(std::log2(int_f)));
    while (std::pow(2.0, M) >= int_f) --M;
    while (std::pow(2.0, M + 1) < int_f) ++M;
    return {N, M};
}

TorusSet time_support(const TileSet& S) {
    std::vector<std::pair<double, double>> parts;
    parts.reserve(S.size());
    for (const auto& P : S) parts.push_back({P.time().lo(), P.time().hi()});
    return TorusSet::from_intervals(std::move(parts));
}

CZDecomposition cz_decompose(const TileSet& P_n, const GridFunction& f) {
    CZDecomposition out;
    bool zero = true;
    for (const auto& v : f.values) {
        if (v != std::complex<double>{}) { zero = false; break; }
    }
    if (zero) throw std::invalid_argument("cz_decompose: f must not be identically zero");
    auto [N, M] = cz_exponent_bounds(f);
    out.alpha_lo = -(N + 1);
    out.alpha_hi = -M;
    auto avg = dyadic_averages(f);
    TileSet residual = P_n;
    for (int alpha = -N; alpha <= -M; ++alpha) {
        auto stops = stopping_intervals(avg, std::pow(2.0, -alpha));
        out.stops[alpha] = stops;
        if (residual.empty()) continue;
        std::vector<TorusSet> dilated;
        dilated.reserve(stops.size());
        for (const auto& J : stops) dilated.push_back(dilate_set(J, 51.0));
        std::vector<Tile> selected;
        for (const auto& P : residual) {
            const auto I = P.time();
            TorusSet It = TorusSet::from_dyadic(I);
            for (std::size_t s = 0; s < stops.size(); ++s) {
                if (I.length() <= stops[s].length() && !dilated[s].intersect(It).empty()) {
                    selected.push_back(P);
                    break;
                }
            }
        }
        if (!selected.empty()) {
            TileSet sel(std::move(selected));
            for (const auto& P : sel) residual.erase(P);
            out.by_alpha[alpha] = std::move(sel);
        }
    }
    if (!residual.empty()) {
        throw std::logic_error("cz_decompose: induction left tiles unassigned");
    }
    return out;
}

std::vector<DyadicInterval> shadow_intervals(const Tile& P) {
    std::vector<DyadicInterval> out;
    out.reserve(14);
    const std::uint64_t n = std::uint64_t{1} << P.k;
    // left block [c-17/2|I|, c-3/2|I|]: offsets j-8..j-2; right: j+2..j+8
    for (int r = 0; r < 7; ++r) {
        std::uint64_t idx = (static_cast<std::uint64_t>(P.j) + n - 8 + r) % n;
        out.push_back({P.k, idx});
    }
    for (int r = 0; r < 7; ++r) {
        std::uint64_t idx = (static_cast<std::uint64_t>(P.j) + 2 + r) % n;
        out.push_back({P.k, idx});
    }
    return out;
}

std::vector<DyadicInterval> cz_partition(const std::vector<DyadicInterval>& members) {
    int max_scale = 0;
    for (const auto& m : members) max_scale = std::max(max_scale, m.scale);
    std::vector<DyadicInterval> out;
    std::vector<DyadicInterval> stack{{0, 0}};
    while (!stack.empty()) {
        DyadicInterval J = stack.back();
        stack.pop_back();
        bool split = false;
        if (J.scale < max_scale) {
            for (const auto& m : members) {
                if (m != J && m.subset_of(J)) { split = true; break; }
            }
        }
        if (split) {
            stack.push_back(J.right_child());
            stack.push_back(J.left_child());
        } else {
            out.push_back(J);
        }
    }
    std::sort(out.begin(), out.end(), [](const DyadicInterval& a, const DyadicInterval& b) {
        return a.lo() < b.lo();
    });
    return out;
}

GridFunction tree_projection(const GridFunction& f, long omega,
                             const std::vector<DyadicInterval>& partition) {
    GridFunction out = GridFunction::zero(f.K);
    const std::size_t n = f.size();
    for (const auto& J : partition) {
        const std::size_t lo = J.index << (f.K - J.scale);
        const std::size_t hi = (J.index + 1) << (f.K - J.scale);
        std::complex<double> sum = 0.0;
        for (std::size_t x = lo; x < hi; ++x) {
            double ang = 2.0 * std::numbers::pi * static_cast<double>(omega) *
                         (static_cast<double>(x) / static_cast<double>(n));
            sum += f.values[x] * std::complex<double>{std::cos(ang), std::sin(ang)};
        }
        std::complex<double> avg = sum / static_cast<double>(hi - lo);
        for (std::size_t x = lo; x < hi; ++x) out.values[x] = avg;
    }
    return out;
}

std::vector<Tile> minimal_tiles(const TileSet& tree) {
    std::vector<Tile> out;
    for (const auto& P : tree) {
        bool minimal = true;
        for (const auto& Q : tree) {
            if (tile_lt(Q, P)) { minimal = false; break; }
        }
        if (minimal) out.push_back(P);
    }
    return out;
}

TreeCZ tree_cz(const TileSet& tree, const GridFunction& f, int alpha) {
    TreeCZ out;
    auto avg = dyadic_averages(f);
    const double bound = std::pow(2.0, -alpha + 10);
    for (const auto& P : minimal_tiles(tree)) {
        for (const auto& J : shadow_intervals(P)) {
            out.shadows.push_back(J);
            if (avg[J.scale][J.index] >= bound) ++out.shadow_violations;
        }
    }
    std::sort(out.shadows.begin(), out.shadows.end());
    out.shadows.erase(std::unique(out.shadows.begin(), out.shadows.end()), out.shadows.end());
    // refine partition cells violating the average bound down to grid scale
    std::vector<DyadicInterval> pending = cz_partition(out.shadows);
    while (!pending.empty()) {
        DyadicInterval I = pending.back();
        pending.pop_back();
        if (avg[I.scale][I.index] < bound || I.scale >= f.K) {
            out.partition.push_back(I);
        } else {
            ++out.refine_activations;
            pending.push_back(I.left_child());
            pending.push_back(I.right_child());
        }
    }
    std::sort(out.partition.begin(), out.partition.end(),
              [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo() < b.lo(); });
    return out;
}

} // namespace carleson
