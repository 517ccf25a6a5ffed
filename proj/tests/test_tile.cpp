#include "carleson/tile.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace carleson;

TEST_CASE("tile geometry and key") {
    Tile P{2, 1, 3}; // I = [1/4,1/2), omega = [12,16)
    CHECK(P.time() == DyadicInterval{2, 1});
    CHECK(P.time_length() == 0.25);
    CHECK(P.freq_lo() == 12.0);
    CHECK(P.freq_hi() == 16.0);
    CHECK(P.freq_length() == 4.0);
    CHECK(P.freq_center() == 14.0);
    CHECK(P.time_length() * P.freq_length() == doctest::Approx(1.0));
    CHECK(Tile{2, 1, 3}.key() != Tile{2, 3, 1}.key());
    CHECK(Tile{2, 1, 3} == P);
}

TEST_CASE("tile family sizes") {
    CHECK(build_tile_family(3, 1, 1).size() == 8);
    CHECK(build_tile_family(3, 1, 2).size() == 16);
    CHECK(build_tile_family(12, 3, 9).size() == 28672);
    // per scale k: 2^k time slots * 2^(K-k) frequency slots = 2^K
    for (const auto& P : build_tile_family(4, 2, 3)) {
        CHECK(P.k >= 2);
        CHECK(P.k <= 3);
        CHECK(P.freq_hi() <= 16.0);
    }
}

TEST_CASE("tileset membership and order") {
    TileSet S;
    S.insert({3, 1, 0});
    S.insert({2, 0, 1});
    S.insert({3, 1, 0}); // duplicate
    CHECK(S.size() == 2);
    CHECK(S.contains({3, 1, 0}));
    CHECK(!S.contains({3, 0, 0}));
    CHECK(S.tiles()[0] == Tile{2, 0, 1}); // sorted by (k, j, m)
    S.erase({2, 0, 1});
    CHECK(S.size() == 1);
    CHECK(!S.contains({2, 0, 1}));
}

TEST_CASE("e_set worked example") {
    // chirp N on K=3: N(x_m) = m; P = (2,0,0): I = [0,1/4), omega = [0,4)
    auto N = LinearizingFunction::chirp(3);
    Tile P{2, 0, 0};
    auto E = e_set(P, N);
    CHECK(E.measure() == doctest::Approx(0.25)); // cells 0,1 have N in [0,4)? cells 0,1 of [0,1/4)
    CHECK(E.contains_point(0.0625));
    CHECK(e_measure(P, N) == doctest::Approx(E.measure()));
    // single-cell tile with the whole frequency axis captures its cell
    Tile Q{3, 2, 0}; // I = cell 2, omega = [0,8)
    CHECK(e_measure(Q, N) == doctest::Approx(0.125));
}

TEST_CASE("e_measure agrees with e_set on random data") {
    std::mt19937_64 rng(3);
    int K = 6;
    LinearizingFunction N{K, {}};
    N.values.resize(1u << K);
    for (auto& v : N.values) v = static_cast<std::uint32_t>(rng() % (1u << K));
    for (const auto& P : build_tile_family(K, 3, K - 3)) {
        CHECK(e_measure(P, N) == doctest::Approx(e_set(P, N).measure()));
    }
}

TEST_CASE("tile order relations") {
    Tile small{3, 2, 4}; // I=[1/4,3/8), omega=[32,40)
    Tile big{2, 1, 1};   // I=[1/4,1/2),  omega=[4,8)
    CHECK(!tile_leq(small, big)); // omega not containing
    Tile big2{2, 1, 9}; // omega=[36,40)? no: m=9, omega=[36,40)
    CHECK(tile_leq(small, big2));
    CHECK(tile_lt(small, big2));
    CHECK(tile_leq(small, small));
    CHECK(!tile_lt(small, small));
    // partial order properties on a small family
    auto fam = build_tile_family(5, 2, 3);
    std::mt19937_64 rng(17);
    const auto& ts = fam.tiles();
    for (int trial = 0; trial < 300; ++trial) {
        const Tile& a = ts[rng() % ts.size()];
        const Tile& b = ts[rng() % ts.size()];
        const Tile& c = ts[rng() % ts.size()];
        if (tile_leq(a, b) && tile_leq(b, a)) CHECK(a == b);
        if (tile_leq(a, b) && tile_leq(b, c)) CHECK(tile_leq(a, c));
    }
}

TEST_CASE("dilated order and tree membership") {
    Tile top{2, 1, 1};
    // a tile strictly below the top in the dilated order is a member
    Tile below{4, 5, 1}; // I=[5/16,6/16) subset [1/4,1/2)
    CHECK(tree_member(top, top));
    CHECK(below.time().subset_of(top.time()));
    // same-scale tile with equal frequency slot intersects 10*omega0
    Tile same{2, 1, 1};
    CHECK(tree_member(same, top));
    // far frequency at the same scale is excluded
    Tile far{2, 1, 20};
    CHECK(!tree_member(far, top));
    // time interval outside the top is never a member
    Tile outside{3, 0, 2};
    CHECK(!tree_member(outside, top));
}

TEST_CASE("decay factor pinned value") {
    // scale-0 pair, centers 11 apart: 10-dilations have gap exactly 1, |I'| = 1
    Tile P{0, 0, 11};
    Tile Pp{0, 0, 0};
    CHECK(decay_factor(P, Pp, 10) == doctest::Approx(std::ldexp(1.0, -10)));
    // intersecting dilations give exactly 1
    CHECK(decay_factor(P, P, 10) == 1.0);
    CHECK(decay_factor(Tile{0, 0, 1}, Pp, 10) == 1.0);
}

TEST_CASE("mass basic properties") {
    int K = 5;
    auto N = LinearizingFunction::chirp(K);
    auto fam = build_tile_family(K, 2, 3);
    auto ctx = MassContext::build(fam, N, 10);
    auto region = TorusSet::full();
    for (const auto& P : fam) {
        double m = mass(P, fam, region, ctx);
        double dens = e_measure(P, N) / P.time_length();
        CHECK(m >= dens - 1e-15); // P is its own admissible ancestor
        CHECK(m <= 1.0 + 1e-15);
    }
    // monotone in the region: shrinking the region cannot increase mass
    auto half = TorusSet::from_interval(0.0, 0.5);
    for (const auto& P : fam) {
        if (!half.contains(P.time())) continue;
        CHECK(mass(P, fam, half, ctx) <= mass(P, fam, region, ctx) + 1e-15);
    }
}

TEST_CASE("bmo_c norm worked values") {
    std::vector<DyadicInterval> v = {{1, 0}, {2, 0}}; // [0,1/2), [0,1/4)
    CHECK(bmo_c_norm(v) == doctest::Approx(1.5));
    std::vector<DyadicInterval> disj = {{1, 0}, {1, 1}};
    CHECK(bmo_c_norm(disj) == doctest::Approx(1.0));
    CHECK(bmo_c_norm({}) == 0.0);
}

TEST_CASE("counting function worked values") {
    auto cnt = counting_function({{1, 0}, {2, 0}}, 2);
    CHECK(cnt.values[0].real() == 2.0);
    CHECK(cnt.values[1].real() == 1.0);
    CHECK(cnt.values[2].real() == 0.0);
    CHECK(cnt.values[3].real() == 0.0);
}

TEST_CASE("tree predicate") {
    Tile top{2, 1, 1};
    TileSet S;
    S.insert(top);
    CHECK(is_tree(S, top).ok); // singleton tree under the pinned convention
    // adding a member below keeps it a tree
    for (const auto& P : build_tile_family(5, 2, 4)) {
        if (tree_member(P, top) && P.time().subset_of(top.time())) S.insert(P);
    }
    auto chk = is_tree(S, top);
    CHECK(chk.ok);
}

TEST_CASE("sparse tree cascade needs C at least depth") {
    // nested left spine: [0,1), [0,1/2), [0,1/4), [0,1/8) at matching scales
    TileSet S;
    for (int k = 0; k <= 3; ++k) S.insert({k, 0, 0});
    CHECK(!is_sparse_tree(S, 1.5));
    CHECK(is_sparse_tree(S, 4.0)); // sums of nested lengths stay under (d+1)|I|
}
