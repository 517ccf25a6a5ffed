#include "carleson/mass_decomposition.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace carleson;

namespace {

LinearizingFunction random_n(int K, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LinearizingFunction N{K, {}};
    N.values.resize(std::size_t{1} << K);
    for (auto& v : N.values) v = static_cast<std::uint32_t>(rng() % N.values.size());
    return N;
}

} // namespace

TEST_CASE("exceptional set worked values") {
    // two disjoint halves: bmo norm 1, counting <= 1 never exceeds 4*1
    std::vector<DyadicInterval> v = {{1, 0}, {1, 1}};
    CHECK(exceptional_set(v, 4.0, 3).empty());
    // heavy stack forces a nonempty exceptional set with small c
    std::vector<DyadicInterval> stack;
    for (int k = 0; k <= 4; ++k) stack.push_back({k, 0});
    auto E = exceptional_set(stack, 1.0, 5);
    CHECK(!E.empty());
    CHECK(E.measure() <= 1.0);
}

TEST_CASE("select_maximal_dense picks tile_leq maximal tiles") {
    int K = 5;
    auto N = LinearizingFunction::constant(K, 0);
    auto fam = build_tile_family(K, 2, 3);
    auto ctx = MassContext::build(fam, N, 10);
    auto sel = select_maximal_dense(fam, 0, ctx); // density >= 1
    CHECK(!sel.empty());
    for (const auto& P : sel) {
        CHECK(e_measure(P, N) / P.time_length() >= 1.0 - 1e-15);
        for (const auto& Q : sel) {
            if (!(P == Q)) CHECK(!tile_lt(P, Q));
        }
        // maximality against the whole pool
        for (const auto& Q : fam) {
            if (tile_lt(P, Q)) CHECK(e_measure(Q, N) / Q.time_length() < 1.0);
        }
    }
}

TEST_CASE("mass decomposition partitions the family") {
    int K = 7;
    auto N = random_n(K, 101);
    auto fam = build_tile_family(K, 3, K - 3);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    std::size_t total = dec.discard.size();
    for (const auto& [n, Pn] : dec.levels) {
        CHECK(!Pn.empty());
        CHECK(n >= 0);
        CHECK(n <= K + 1);
        total += Pn.size();
        for (const auto& P : Pn) {
            CHECK(fam.contains(P));
            CHECK(!dec.discard.contains(P));
        }
    }
    CHECK(total == fam.size());
    // pairwise disjoint levels
    for (auto it = dec.levels.begin(); it != dec.levels.end(); ++it) {
        for (auto jt = std::next(it); jt != dec.levels.end(); ++jt) {
            for (const auto& P : it->second) CHECK(!jt->second.contains(P));
        }
    }
}

TEST_CASE("mass window soundness") {
    int K = 6;
    auto N = random_n(K, 7);
    auto fam = build_tile_family(K, 3, K - 3);
    auto ctx = MassContext::build(fam, N, 10);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    // masses are taken relative to the residual pool of each level
    TileSet residual = fam;
    for (const auto& [n, Pn] : dec.levels) {
        const auto& layers = dec.layers.at(n);
        for (const auto& P : Pn) {
            // deepest region containing I_P (regions are nested)
            std::size_t k = 0;
            while (k + 1 < layers.size() && layers[k + 1].region.contains(P.time())) ++k;
            double m = mass(P, residual, layers[k].region, ctx);
            if (n == 0) {
                CHECK(m >= 1.0 - 1e-12);
            } else {
                CHECK(m >= std::ldexp(1.0, -n) - 1e-12);
                CHECK(m < std::ldexp(1.0, -n + 1) + 1e-12);
            }
        }
        for (const auto& P : Pn) residual.erase(P);
    }
}

TEST_CASE("discarded tiles have empty E sets") {
    int K = 6;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto N = random_n(K, seed);
        auto fam = build_tile_family(K, 3, K - 3);
        auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
        for (const auto& P : dec.discard) {
            CHECK(e_measure(P, N) == 0.0);
        }
        // kept tiles carry positive mass, possibly inherited from a dense
        // time-ancestor even when their own E set is empty
    }
}

TEST_CASE("constant N sends aligned tiles to level zero") {
    int K = 6;
    auto N = LinearizingFunction::constant(K, 0);
    auto fam = build_tile_family(K, 3, K - 3);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    // every tile whose omega contains 0 has density 1, hence mass 1, level 0
    REQUIRE(dec.levels.count(0) == 1);
    for (const auto& P : fam) {
        if (P.m == 0) CHECK(dec.levels.at(0).contains(P));
    }
}

TEST_CASE("layer regions decay geometrically") {
    int K = 7;
    auto N = random_n(K, 55);
    auto fam = build_tile_family(K, 3, K - 3);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    for (const auto& [n, layers] : dec.layers) {
        for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
            CHECK(layers[i + 1].region == layers[i].next_region);
            CHECK(layers[i + 1].region.measure() <= layers[i].region.measure() + 1e-15);
        }
        if (!layers.empty()) CHECK(layers[0].region.is_full());
    }
}

TEST_CASE("extract_maximal_trees covers the level and yields trees") {
    int K = 6;
    auto N = random_n(K, 9);
    auto fam = build_tile_family(K, 3, K - 3);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    for (const auto& [n, Pn] : dec.levels) {
        auto trees = extract_maximal_trees(Pn);
        std::size_t covered = 0;
        for (const auto& t : trees) {
            covered += t.tiles.size();
            CHECK(Pn.contains(t.top));
            auto chk = is_tree(t.tiles, t.top, &Pn);
            CHECK(chk.ok);
        }
        CHECK(covered == Pn.size());
    }
}

TEST_CASE("forest decomposition satisfies the forest predicates") {
    int K = 6;
    auto N = random_n(K, 23);
    auto fam = build_tile_family(K, 3, K - 3);
    auto dec = mass_decompose(fam, N, 4.0, K + 1, 10);
    for (const auto& [n, Pn] : dec.levels) {
        auto forests = forest_decompose(Pn, n, 4.0, K);
        TileSet uni;
        for (const auto& F : forests) {
            CHECK(is_bmo_forest(F, n, 4.0, K));
            for (const auto& group : F) {
                CHECK(is_linf_forest(group, n, 4.0, K));
                for (const auto& t : group) {
                    for (const auto& P : t.tiles) uni.insert(P);
                }
            }
        }
        CHECK(uni == Pn);
    }
}
