#include "carleson/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace carleson {

void KernelConfig::validate() const {
    if (K < 1 || K > 16) throw std::invalid_argument("KernelConfig: K out of range [1,16]");
    if (k_min < 0 || k_min > k_max || k_max > K) {
        throw std::invalid_argument("KernelConfig: need 0 <= k_min <= k_max <= K");
    }
}

namespace {
double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smoothstep(double t) {
    double a = glue(t);
    double b = glue(1.0 - t);
    return a / (a + b);
}
} // namespace

double eta_profile(double y) {
    if (y <= 4.0) return 1.0;
    if (y >= 8.0) return 0.0;
    return smoothstep((8.0 - y) / 4.0);
}

double psi_base(double y) {
    if (y == 0.0) return 0.0;
    double a = std::abs(y);
    if (a <= 2.0 || a >= 8.0) return 0.0;
    return (eta_profile(a) - eta_profile(2.0 * a)) / y;
}

double psi(double y, int k) {
    double scale = static_cast<double>(std::uint64_t{1} << k);
    return scale * psi_base(scale * y);
}

double truncated_kernel(double y, const KernelConfig& cfg) {
    if (y == 0.0) throw std::invalid_argument("truncated_kernel: y = 0");
    double sum = 0.0;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) sum += psi(y, k);
    double a = std::abs(y);
    double lo = static_cast<double>(std::uint64_t{1} << cfg.k_min);
    double hi = static_cast<double>(std::uint64_t{1} << (cfg.k_max + 1));
    double closed = (eta_profile(lo * a) - eta_profile(hi * a)) / y;
    if (std::abs(sum - closed) > 1e-12) {
        throw std::logic_error("truncated_kernel: telescoping mismatch");
    }
    return closed;
}

std::vector<std::pair<long, double>> kernel_support(int k, int K) {
    const long n = long{1} << K;
    std::vector<std::pair<long, double>> out;
    for (long j = -n / 2 + 1; j <= n / 2; ++j) {
        double y = static_cast<double>(j) / static_cast<double>(n);
        double v = psi(y, k);
        if (v != 0.0) out.push_back({j, v});
    }
    return out;
}

namespace {
// twiddle table: w[t] = exp(2 pi i t / 2^K)
std::vector<std::complex<double>> twiddles(int K) {
    const std::size_t n = std::size_t{1} << K;
    std::vector<std::complex<double>> w(n);
    for (std::size_t t = 0; t < n; ++t) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
        w[t] = {std::cos(ang), std::sin(ang)};
    }
    return w;
}

std::complex<double> scale_point(const GridFunction& f, const LinearizingFunction& N,
                                 const std::vector<std::pair<long, double>>& supp,
                                 const std::vector<std::complex<double>>& w, long n, long m) {
    std::complex<double> acc = 0.0;
    const long freq = static_cast<long>(N.values[m]);
    for (const auto& [j, pv] : supp) {
        long src = (m - j) % n;
        if (src < 0) src += n;
        // e^{2 pi i N(x) y_j} with y_j = j / n
        long t = (freq * j) % n;
        if (t < 0) t += n;
        acc += w[t] * pv * f.values[src];
    }
    return acc / static_cast<double>(n);
}
} // namespace

GridFunction apply_scale_serial(const GridFunction& f, const LinearizingFunction& N, int k,
                                const KernelConfig& cfg) {
    cfg.validate();
    if (k < cfg.k_min || k > cfg.k_max) {
        throw std::invalid_argument("apply_scale: scale out of configured range");
    }
    const long n = long{1} << cfg.K;
    auto supp = kernel_support(k, cfg.K);
    auto w = twiddles(cfg.K);
    GridFunction out = GridFunction::zero(cfg.K);
    for (long m = 0; m < n; ++m) out.values[m] = scale_point(f, N, supp, w, n, m);
    return out;
}

GridFunction apply_scale(const GridFunction& f, const LinearizingFunction& N, int k,
                         const KernelConfig& cfg) {
    cfg.validate();
    if (k < cfg.k_min || k > cfg.k_max) {
        throw std::invalid_argument("apply_scale: scale out of configured range");
    }
    const long n = long{1} << cfg.K;
    auto supp = kernel_support(k, cfg.K);
    auto w = twiddles(cfg.K);
    GridFunction out = GridFunction::zero(cfg.K);
#pragma omp parallel for schedule(static)
    for (long m = 0; m < n; ++m) out.values[m] = scale_point(f, N, supp, w, n, m);
    return out;
}

OperatorCache build_operator_cache(const GridFunction& f, const LinearizingFunction& N,
                                   const KernelConfig& cfg) {
    cfg.validate();
    OperatorCache cache{cfg, {}};
    cache.scale_output.reserve(cfg.k_max - cfg.k_min + 1);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        cache.scale_output.push_back(apply_scale(f, N, k, cfg));
    }
    return cache;
}

GridFunction apply_tile(const GridFunction& f, const LinearizingFunction& N, const Tile& P,
                        const KernelConfig& cfg) {
    GridFunction tk = apply_scale(f, N, P.k, cfg);
    auto mask = e_set(P, N).to_mask(cfg.K);
    for (std::size_t x = 0; x < tk.size(); ++x) {
        if (!mask[x]) tk.values[x] = 0.0;
    }
    return tk;
}

GridFunction apply_tileset(const LinearizingFunction& N, const TileSet& S,
                           const OperatorCache& cache) {
    const KernelConfig& cfg = cache.cfg;
    GridFunction out = GridFunction::zero(cfg.K);
    if (S.empty()) return out;
    const std::size_t n = out.size();
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const GridFunction& tk = cache.at(k);
        for (std::size_t x = 0; x < n; ++x) {
            // at scale k the only tile that can cover x is (k, time(x), freq(N(x)))
            Tile cand{k, static_cast<std::uint32_t>(x >> (cfg.K - k)),
                      static_cast<std::uint32_t>(N.values[x] >> k)};
            if (S.contains(cand)) out.values[x] += tk.values[x];
        }
    }
    return out;
}

GridFunction apply_tileset(const GridFunction& f, const LinearizingFunction& N, const TileSet& S,
                           const KernelConfig& cfg) {
    return apply_tileset(N, S, build_operator_cache(f, N, cfg));
}

GridFunction carleson_apply(const OperatorCache& cache) {
    GridFunction out = GridFunction::zero(cache.cfg.K);
    for (const auto& tk : cache.scale_output) out = out + tk;
    return out;
}

GridFunction carleson_apply(const GridFunction& f, const LinearizingFunction& N,
                            const KernelConfig& cfg) {
    return carleson_apply(build_operator_cache(f, N, cfg));
}

GridFunction apply_tileset_masked(const GridFunction& g, const LinearizingFunction& N_mask,
                                  const LinearizingFunction& N_kernel, const TileSet& S,
                                  const KernelConfig& cfg, const DyadicInterval& window) {
    cfg.validate();
    const long n = long{1} << cfg.K;
    auto w = twiddles(cfg.K);
    GridFunction out = GridFunction::zero(cfg.K);
    if (S.empty()) return out;
    const long lo = static_cast<long>(window.index) << (cfg.K - window.scale);
    const long hi = static_cast<long>(window.index + 1) << (cfg.K - window.scale);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        bool present = false;
        for (const auto& P : S) {
            if (P.k == k) { present = true; break; }
        }
        if (!present) continue;
        auto supp = kernel_support(k, cfg.K);
        for (long m = lo; m < hi; ++m) {
            Tile cand{k, static_cast<std::uint32_t>(m >> (cfg.K - k)),
                      static_cast<std::uint32_t>(N_mask.values[m] >> k)};
            if (!S.contains(cand)) continue;
            out.values[m] += scale_point(g, N_kernel, supp, w, n, m);
        }
    }
    return out;
}

GridFunction apply_tileset_adjoint(const GridFunction& g, const LinearizingFunction& N,
                                   const TileSet& S, const KernelConfig& cfg) {
    cfg.validate();
    const long n = long{1} << cfg.K;
    auto w = twiddles(cfg.K);
    GridFunction out = GridFunction::zero(cfg.K);
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        auto supp = kernel_support(k, cfg.K);
#pragma omp parallel for schedule(static)
        for (long z = 0; z < n; ++z) {
            std::complex<double> acc = 0.0;
            for (const auto& [j, pv] : supp) {
                long x = (z + j) % n; // z = x - y_j
                if (x < 0) x += n;
                Tile cand{k, static_cast<std::uint32_t>(x >> (cfg.K - k)),
                          static_cast<std::uint32_t>(N.values[x] >> k)};
                if (!S.contains(cand)) continue;
                long t = (static_cast<long>(N.values[x]) * j) % n;
                if (t < 0) t += n;
                acc += std::conj(w[t]) * pv * g.values[x];
            }
            out.values[z] += acc / static_cast<double>(n);
        }
    }
    return out;
}

} // namespace carleson
