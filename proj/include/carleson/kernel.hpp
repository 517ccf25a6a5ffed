#pragma once

#include "carleson/dyadic.hpp"
#include "carleson/tile.hpp"

#include <vector>

namespace carleson {

/// Kernel discretization parameters. The discrete Carleson operator is the sum
/// of the scale operators T_k over k in [k_min, k_max].
struct KernelConfig {
    int K = 10;
    int k_min = 3;
    int k_max = 7; // K - 3

    static KernelConfig defaults(int K) { return {K, 3, K - 3}; }
    void validate() const;
};

/// Smooth transition profile: 1 on [0,4], 0 on [8,inf), strictly decreasing in
/// between via the standard exp(-1/t) glue.
double eta_profile(double y);

/// psi(y) = (eta(|y|) - eta(2|y|))/y, psi(0) = 0; odd, supported in 2<|y|<8.
double psi_base(double y);

/// psi_k(y) = 2^k psi(2^k y), supported in 2*2^-k < |y| < 8*2^-k.
double psi(double y, int k);

/// Sum of psi_k over the configured scale range; telescopes to
/// (eta(2^k_min |y|) - eta(2^(k_max+1) |y|))/y. The direct sum and the closed
/// form are both evaluated and must agree to 1e-12.
double truncated_kernel(double y, const KernelConfig& cfg);

/// Signed grid offsets j (y = j*2^-K in (-1/2,1/2]) where psi_k is nonzero,
/// ascending, paired with the kernel value. Fixed summation order for all
/// operator applications.
std::vector<std::pair<long, double>> kernel_support(int k, int K);

/// T_k f(x) = 2^-K sum_y e^{2 pi i N(x) y} psi_k(y) f(x-y). Parallel over
/// output points; bitwise identical to the serial reference.
GridFunction apply_scale(const GridFunction& f, const LinearizingFunction& N, int k,
                         const KernelConfig& cfg);
/// Serial reference implementation, kept for testing and benchmarking.
GridFunction apply_scale_serial(const GridFunction& f, const LinearizingFunction& N, int k,
                                const KernelConfig& cfg);

/// Per-scale outputs T_k f cached once so that tile-set applications reduce to
/// masking.
struct OperatorCache {
    KernelConfig cfg;
    std::vector<GridFunction> scale_output; // index k - cfg.k_min
    const GridFunction& at(int k) const { return scale_output[k - cfg.k_min]; }
};

OperatorCache build_operator_cache(const GridFunction& f, const LinearizingFunction& N,
                                   const KernelConfig& cfg);

/// T_P f = (T_k f) * chi_E(P).
GridFunction apply_tile(const GridFunction& f, const LinearizingFunction& N, const Tile& P,
                        const KernelConfig& cfg);

/// T^S f = sum over P in S of T_P f. At each point x and scale k at most one
/// tile of S can contribute, so this masks the cached scale outputs.
GridFunction apply_tileset(const LinearizingFunction& N, const TileSet& S,
                           const OperatorCache& cache);
GridFunction apply_tileset(const GridFunction& f, const LinearizingFunction& N, const TileSet& S,
                           const KernelConfig& cfg);

/// Full operator Tf = sum_k T_k f.
GridFunction carleson_apply(const GridFunction& f, const LinearizingFunction& N,
                            const KernelConfig& cfg);
GridFunction carleson_apply(const OperatorCache& cache);

/// T^S g with tile membership tested against N_mask while the kernel phase is
/// driven by N_kernel; output restricted to the dyadic window (all tiles of S
/// must have time interval inside it). Summation order matches apply_scale,
/// scales ascending, so cached and direct evaluations agree bitwise.
GridFunction apply_tileset_masked(const GridFunction& g, const LinearizingFunction& N_mask,
                                  const LinearizingFunction& N_kernel, const TileSet& S,
                                  const KernelConfig& cfg, const DyadicInterval& window);

/// Conjugate-transpose action of apply_tileset(., N, S).
GridFunction apply_tileset_adjoint(const GridFunction& g, const LinearizingFunction& N,
                                   const TileSet& S, const KernelConfig& cfg);

} // namespace carleson
