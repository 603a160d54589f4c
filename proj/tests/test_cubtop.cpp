#include <doctest.h>

#include "ectop/cubtop.hpp"
#include "ectop/graphtop.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ectop;

namespace {

ECCurve oracle_ec(const GridField& f, const FiltrationSpec& spec) {
    ECCurve out;
    for (double level : spec.thresholds()) {
        std::vector<std::uint8_t> on(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) on[i] = spec.admits(f[i], level) ? 1 : 0;
        out.thresholds.push_back(level);
        out.chi.push_back(oracle::alternating(
            oracle::doubled_grid_counts(std::vector<std::size_t>(f.dims().begin(), f.dims().end()), on)));
    }
    return out;
}

}  // namespace

TEST_CASE("superlevel_vertices") {
    const GridField f({5}, {0, 2, 1, 3, 0});
    CHECK(superlevel_vertices(f, 2.5).active == std::vector<std::uint8_t>{0, 0, 0, 1, 0});
    CHECK(superlevel_vertices(f, 0.0).active == std::vector<std::uint8_t>(5, 1));
    CHECK(superlevel_vertices(f, 3.5).active == std::vector<std::uint8_t>(5, 0));
    CHECK(superlevel_vertices(f, 3.0).active == std::vector<std::uint8_t>{0, 0, 0, 1, 0});
    CHECK(sublevel_vertices(f, 1.0).active == std::vector<std::uint8_t>{1, 0, 1, 0, 1});
}

TEST_CASE("cell_counts") {
    const auto square = cell_counts(VertexMask({2, 2}, {1, 1, 1, 1}));
    CHECK(square.counts == std::vector<std::int64_t>{4, 4, 1});
    CHECK(square.euler() == 1);

    const auto ring = cell_counts(VertexMask({3, 3}, {1, 1, 1, 1, 0, 1, 1, 1, 1}));
    CHECK(ring.counts == std::vector<std::int64_t>{8, 8, 0});
    CHECK(ring.euler() == 0);

    const auto cube = cell_counts(VertexMask({2, 2, 2}, std::vector<std::uint8_t>(8, 1)));
    CHECK(cube.counts == std::vector<std::int64_t>{8, 12, 6, 1});
    CHECK(cube.euler() == 1);

    CHECK(cell_counts(VertexMask({4}, {1, 1, 0, 1})).counts == std::vector<std::int64_t>{3, 1});
    CHECK_THROWS_AS(VertexMask({2, 2}, {1, 1, 1}), Error);
}

TEST_CASE("property: cell counts agree with the doubled-grid enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto dims = fixtures::random_dims(rng, 7);
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        std::vector<std::uint8_t> on(n);
        const double p = rng.uniform(0.2, 0.95);
        for (auto& b : on) b = rng.uniform() < p ? 1 : 0;
        CHECK(cell_counts(VertexMask(dims, on)).counts == oracle::doubled_grid_counts(dims, on));
    }
}

TEST_CASE("ec_curve_field on the 1D example") {
    const GridField f({5}, {0, 2, 1, 3, 0});
    const FiltrationSpec spec(Direction::superlevel, {2.5, 1.5, 0.5});
    CHECK(ec_curve_field(f, spec).chi == std::vector<std::int64_t>{1, 2, 1});
    CHECK(ec_curve_field(f, spec) == oracle_ec(f, spec));
    CHECK(ec_curve_incremental(f, spec) == ec_curve_field(f, spec));
}

TEST_CASE("two blobs with three holes give chi = -1") {
    const GridField f = fixtures::two_blobs_three_holes();
    const FiltrationSpec spec(Direction::superlevel, {0.5});
    CHECK(ec_curve_field(f, spec).chi == std::vector<std::int64_t>{-1});
    const auto b = betti_curve_field(f, spec);
    CHECK(b.beta0 == std::vector<std::int64_t>{2});
    CHECK(*b.beta1 == std::vector<std::int64_t>{3});
}

TEST_CASE("constant fields are empty or contractible") {
    for (auto dims : {std::vector<std::size_t>{7}, std::vector<std::size_t>{3, 5}, std::vector<std::size_t>{2, 3, 4}}) {
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        const GridField f(dims, std::vector<double>(n, 4.0));
        const FiltrationSpec spec(Direction::superlevel, {5.0, 4.0, 3.0});
        CHECK(ec_curve_field(f, spec).chi == std::vector<std::int64_t>{0, 1, 1});
        CHECK(ec_curve_incremental(f, spec).chi == std::vector<std::int64_t>{0, 1, 1});
    }
}

TEST_CASE("betti_curve_field") {
    const GridField f({5}, {0, 2, 1, 3, 0});
    const auto b = betti_curve_field(f, FiltrationSpec(Direction::superlevel, {2.5, 1.5, 0.5}));
    CHECK(b.beta0 == std::vector<std::int64_t>{1, 2, 1});
    CHECK_FALSE(b.beta1.has_value());

    const auto ring = betti_curve_field(fixtures::ring3(), FiltrationSpec(Direction::superlevel, {1.0}));
    CHECK(ring.beta0 == std::vector<std::int64_t>{1});
    CHECK(*ring.beta1 == std::vector<std::int64_t>{1});

    const auto none = betti_curve_field(fixtures::ring3(), FiltrationSpec(Direction::superlevel, {2.0}));
    CHECK(none.beta0 == std::vector<std::int64_t>{0});
    CHECK(*none.beta1 == std::vector<std::int64_t>{0});

    const GridField vol({2, 2, 2}, {1, 0, 0, 1, 0, 0, 0, 1});
    const auto b3 = betti_curve_field(vol, FiltrationSpec(Direction::superlevel, {1.0}));
    CHECK(b3.beta0 == std::vector<std::int64_t>{2});
    CHECK_FALSE(b3.beta1.has_value());
}

TEST_CASE("property: incremental sweep equals per-threshold recomputation") {
    Rng rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        const GridField f = fixtures::random_int_field(rng, fixtures::random_dims(rng, 9), 2 + rng.below(10));
        CAPTURE(trial);
        for (auto dir : {Direction::superlevel, Direction::sublevel}) {
            const auto spec = uniform_thresholds(-1.0, 11.0, 25, dir);
            const auto naive = ec_curve_field(f, spec);
            CHECK(ec_curve_incremental(f, spec) == naive);
            CHECK(naive == oracle_ec(f, spec));
        }
        // Thresholds exactly at the data values.
        std::vector<double> levels;
        for (int k = 10; k >= 0; --k) levels.push_back(k);
        const FiltrationSpec at(Direction::superlevel, levels);
        CHECK(ec_curve_incremental(f, at) == ec_curve_field(f, at));
    }
}

TEST_CASE("64x64x50 random field: incremental equals naive at m=100") {
    Rng rng(123);
    std::vector<double> v(64 * 64 * 50);
    for (double& x : v) x = rng.uniform();
    const GridField f({64, 64, 50}, std::move(v));
    const auto spec = uniform_thresholds(0, 1, 100, Direction::superlevel);
    CHECK(ec_curve_incremental(f, spec) == ec_curve_field(f, spec));
}

TEST_CASE("property: 2D identity chi = beta0 - beta1, nesting, translation") {
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const GridField f = fixtures::random_int_field(rng, {1 + rng.below(12), 1 + rng.below(12)}, 6);
        const auto spec = uniform_thresholds(-0.5, 5.5, 13, Direction::superlevel);
        const auto ec = ec_curve_field(f, spec);
        const auto b = betti_curve_field(f, spec);
        for (std::size_t k = 0; k < spec.size(); ++k) CHECK(ec.chi[k] == b.beta0[k] - (*b.beta1)[k]);

        for (std::size_t k = 1; k < spec.size(); ++k) {
            const auto hi = superlevel_vertices(f, spec.thresholds()[k - 1]);
            const auto lo = superlevel_vertices(f, spec.thresholds()[k]);
            for (std::size_t i = 0; i < hi.size(); ++i) CHECK((!hi.active[i] || lo.active[i]));
        }

        const double shift = static_cast<double>(rng.below(7)) - 3.0;
        std::vector<double> moved(f.values().begin(), f.values().end());
        for (double& x : moved) x += shift;
        std::vector<double> moved_t(spec.thresholds().begin(), spec.thresholds().end());
        for (double& t : moved_t) t += shift;
        const auto shifted = ec_curve_incremental(GridField({f.dims()[0], f.dims()[1]}, moved),
                                                  FiltrationSpec(Direction::superlevel, moved_t));
        CHECK(shifted.chi == ec.chi);
        CHECK(shifted.thresholds == moved_t);
    }
}

TEST_CASE("property: sublevel field beta0 equals node filtration of the grid graph") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.below(10), cols = 1 + rng.below(10);
        const GridField f = fixtures::random_int_field(rng, {rows, cols}, 8);
        WeightedGraph g;
        g.node_count = rows * cols;
        g.node_weights.emplace(f.values().begin(), f.values().end());
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                const auto v = static_cast<std::uint32_t>(r * cols + c);
                if (c + 1 < cols) g.edges.push_back({v, v + 1});
                if (r + 1 < rows) g.edges.push_back({v, static_cast<std::uint32_t>(v + cols)});
            }
        const auto spec = uniform_thresholds(-0.5, 7.5, 17, Direction::sublevel);
        CHECK(betti_curve_field(f, spec).beta0 == node_filtration(g, spec).betti.beta0);
    }
}

TEST_CASE("ec_curves_batch keeps input order") {
    Rng rng(8);
    std::vector<GridField> fields;
    for (int i = 0; i < 9; ++i) fields.push_back(fixtures::random_int_field(rng, {10, 10}, 5));
    const auto spec = uniform_thresholds(0, 4, 9, Direction::superlevel);
    for (unsigned threads : {1u, 3u, 0u}) {
        const auto batch = ec_curves_batch(fields, spec, threads);
        REQUIRE(batch.size() == fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) CHECK(batch[i] == ec_curve_field(fields[i], spec));
    }
}
