// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ectop/cubtop.hpp"
#include "ectop/featstats.hpp"
#include "ectop/graphtop.hpp"
#include "ectop/homoracle.hpp"
#include "ectop/rng.hpp"
#include "ectop/synth.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ectop;

namespace {

// Tolerances and budgets.
constexpr double kC1Seconds = 5.0;
constexpr double kC2Seconds = 30.0;
constexpr double kC5Seconds = 60.0;
constexpr double kC6Seconds = 300.0;
constexpr double kC7Seconds = 180.0;
constexpr double kC6MinPurity = 0.9;
constexpr double kC7MinAccuracy = 0.90;
constexpr double kC8Tol = 1e-12;
constexpr double kC10ResidualTol = 1e-8;
constexpr double kC10MassTol = 1e-2;
constexpr double kC10ParsevalTol = 1e-9;
constexpr double kC10ConservationTol = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. graph_ec = b0 - b1, with b0 and b1 taken from the Z/2 incidence rank.
void criterion1() {
    const auto t0 = Clock::now();
    Rng rng(1001);
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
        const WeightedGraph g = oracle::random_graph(rng, 200, rng.uniform(0.0, 0.08));
        const std::int64_t rank = oracle::incidence_rank_z2(g);
        const auto v = static_cast<std::int64_t>(g.node_count);
        const auto e = static_cast<std::int64_t>(g.edges.size());
        const std::int64_t b0 = v - rank, b1 = e - rank;
        ok = ok && graph_ec(g) == b0 - b1 && graph_betti0(g) == b0 && graph_betti1(g) == b1;
    }
    const double t = seconds_since(t0);
    report(1, ok && t < kC1Seconds, "500 graphs, " + fmt("%.3f s", t));
}

// 2. Alternating cell count against the alternating Betti sum from homoracle.
void criterion2() {
    const auto t0 = Clock::now();
    Rng rng(1002);
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        std::vector<std::size_t> dims(1 + rng.below(3));
        for (auto& d : dims) d = 1 + rng.below(6);
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        std::vector<std::uint8_t> on(n);
        const double p = rng.uniform(0.3, 0.95);
        for (auto& b : on) b = rng.uniform() < p ? 1 : 0;
        const VertexMask mask(dims, on);
        ok = ok && cell_counts(mask).euler() == euler_poincare(betti_numbers(build_complex(mask)));
    }
    const double t = seconds_since(t0);
    report(2, ok && t < kC2Seconds, "50 masks, " + fmt("%.3f s", t));
}

// 3. Two components, three holes.
void criterion3() {
    const GridField f = fixtures::two_blobs_three_holes();
    const ECCurve ec = ec_curve_field(f, FiltrationSpec(Direction::superlevel, {0.5}));
    const auto betti = betti_numbers(build_complex(superlevel_vertices(f, 0.5)));
    const bool ok = ec.chi[0] == -1 && betti == std::vector<std::int64_t>{2, 3};
    report(3, ok, "chi = " + std::to_string(ec.chi[0]) + ", betti = [" + std::to_string(betti[0]) + "," +
                      std::to_string(betti[1]) + "]");
}

// 4. The last sublevel threshold reproduces the full graph.
void criterion4() {
    Rng rng(1004);
    std::vector<WeightedGraph> corpus;
    for (int i = 0; i < 200; ++i) corpus.push_back(oracle::random_graph(rng, 60, rng.uniform(0.0, 0.3)));
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 2 + rng.below(12);
        Matrix a(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) a(r, c) = rng.normal();
        Matrix s = a * a.transposed();
        for (std::size_t d = 0; d < n; ++d) s(d, d) += 1.0;
        WeightedGraph g = partial_correlation_graph(precision_matrix(s, 0.0));
        g.node_weights.emplace();
        for (std::size_t d = 0; d < n; ++d) g.node_weights->push_back(rng.uniform());
        corpus.push_back(std::move(g));
    }
    bool ok = true;
    for (const WeightedGraph& g : corpus) {
        for (auto mode : {GraphFiltrationMode::edge, GraphFiltrationMode::node}) {
            const auto& w = mode == GraphFiltrationMode::edge ? *g.edge_weights : *g.node_weights;
            const FiltrationSpec spec = default_thresholds(w, Direction::sublevel, 50);
            const auto naive = mode == GraphFiltrationMode::edge ? edge_filtration(g, spec) : node_filtration(g, spec);
            const auto inc = incremental_filtration_curve(g, spec, mode);
            ok = ok && naive.ec.chi.back() == graph_ec(g) && inc.ec.chi.back() == graph_ec(g) &&
                 naive.betti.beta0.back() == graph_betti0(g);
        }
    }
    report(4, ok, std::to_string(corpus.size()) + " graphs, edge and node modes");
}

// 5. Incremental sweeps equal recomputation.
void criterion5() {
    const auto t0 = Clock::now();
    Rng rng(1005);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> v(64 * 64);
        const bool ties = i % 2 == 0;
        for (double& x : v) x = ties ? static_cast<double>(rng.below(16)) : rng.normal();
        const GridField f({64, 64}, std::move(v));
        const auto dir = i % 4 < 2 ? Direction::superlevel : Direction::sublevel;
        const FiltrationSpec spec = default_thresholds(f.values(), dir, 100);
        ok = ok && ec_curve_incremental(f, spec) == ec_curve_field(f, spec);
    }
    for (int i = 0; i < 100; ++i) {
        const WeightedGraph g = oracle::random_graph(rng, 200, rng.uniform(0.0, 0.1));
        const auto spec = uniform_thresholds(0.0, 1.0, 100, Direction::sublevel);
        ok = ok && incremental_filtration_curve(g, spec, GraphFiltrationMode::edge) == edge_filtration(g, spec) &&
             incremental_filtration_curve(g, spec, GraphFiltrationMode::node) == node_filtration(g, spec);
    }
    const double t = seconds_since(t0);
    report(5, ok && t < kC5Seconds, "100 fields + 100 graphs, m=100, " + fmt("%.3f s", t));
}

// Fraction of points whose nearest class centroid is their own class.
double nearest_centroid_purity(const Matrix& scores, const std::vector<int>& label, int classes) {
    const std::size_t k = scores.cols();
    std::vector<std::vector<double>> centroid(classes, std::vector<double>(k, 0.0));
    std::vector<int> count(classes, 0);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        ++count[label[i]];
        for (std::size_t c = 0; c < k; ++c) centroid[label[i]][c] += scores(i, c);
    }
    for (int g = 0; g < classes; ++g)
        for (double& x : centroid[g]) x /= count[g];
    std::size_t hit = 0;
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        int best = 0;
        double best_d = INFINITY;
        for (int g = 0; g < classes; ++g) {
            double d = 0.0;
            for (std::size_t c = 0; c < k; ++c) d += (scores(i, c) - centroid[g][c]) * (scores(i, c) - centroid[g][c]);
            if (d < best_d) {
                best_d = d;
                best = g;
            }
        }
        hit += best == label[i] ? 1 : 0;
    }
    return static_cast<double>(hit) / static_cast<double>(scores.rows());
}

// 6. Reaction-diffusion parameter groups separate in the EC projection.
void criterion6() {
    const auto t0 = Clock::now();
    const std::pair<double, double> groups[] = {{3.0, 0.8}, {3.0, 0.4}, {6.0, 0.8}};
    std::vector<GridField> fields;
    std::vector<int> label;
    for (int g = 0; g < 3; ++g) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            RDParams p;
            p.diffusion = groups[g].first;
            p.reaction = groups[g].second;
            p.n = 32;
            p.snapshots = 50;
            p.seed = seed;
            fields.push_back(rd_simulate(p).u);
            label.push_back(g);
        }
    }
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& f : fields) {
        lo = std::min(lo, f.min());
        hi = std::max(hi, f.max());
    }
    const FiltrationSpec spec = uniform_thresholds(lo, hi, 100, Direction::superlevel);
    const auto curves = ec_curves_batch(fields, spec);
    const Projection proj = svd_project(ECFeatureMatrix(curves), 2);
    const double purity = nearest_centroid_purity(proj.scores, label, 3);
    const double t = seconds_since(t0);
    report(6, purity >= kC6MinPurity && t < kC6Seconds, fmt("purity %.3f, ", purity) + fmt("%.3f s", t));
}

// Seeded 80/20 split, standardised features, shared SVM options.
double split_accuracy(const Matrix& x, const std::vector<int>& y, const std::vector<std::size_t>& train,
                      const std::vector<std::size_t>& test) {
    auto take = [&](const std::vector<std::size_t>& idx) {
        Matrix m(idx.size(), x.cols());
        for (std::size_t i = 0; i < idx.size(); ++i) std::copy(x.row(idx[i]).begin(), x.row(idx[i]).end(), m.row(i).begin());
        return m;
    };
    auto labels = [&](const std::vector<std::size_t>& idx) {
        std::vector<int> out;
        for (auto i : idx) out.push_back(y[i]);
        return out;
    };
    const Matrix xtr = take(train), xte = take(test);
    const Standardizer z(xtr);
    SvmOptions opt;
    opt.seed = 7;
    const LinearModel model = svm_train(z.apply(xtr), labels(train), opt);
    return accuracy(svm_predict(model, z.apply(xte)), labels(test));
}

// 7. Smooth vs rough textures: EC features beat raw pixels.
void criterion7() {
    const auto t0 = Clock::now();
    const std::size_t side = 64, per_class = 100;
    const FiltrationSpec spec = uniform_thresholds(-3.0, 3.0, 100, Direction::superlevel);
    Matrix ec_x(2 * per_class, spec.size());
    Matrix px_x(2 * per_class, side * side);
    std::vector<int> y;
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const bool smooth = i < per_class;
        const GridField f = texture_field(smooth ? TextureKind::smooth : TextureKind::rough, side, 5000 + i);
        const ECCurve c = ec_curve_incremental(f, spec);
        for (std::size_t j = 0; j < spec.size(); ++j) ec_x(i, j) = static_cast<double>(c.chi[j]);
        std::copy(f.values().begin(), f.values().end(), px_x.row(i).begin());
        y.push_back(smooth ? 1 : -1);
    }
    std::vector<std::size_t> order(2 * per_class);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(1007);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const std::size_t n_train = order.size() * 4 / 5;
    const std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    const std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());

    const double ec_acc = split_accuracy(ec_x, y, train, test);
    const double px_acc = split_accuracy(px_x, y, train, test);
    const double t = seconds_since(t0);
    report(7, ec_acc >= kC7MinAccuracy && px_acc < ec_acc && t < kC7Seconds,
           fmt("EC accuracy %.3f, ", ec_acc) + fmt("pixel accuracy %.3f, ", px_acc) + fmt("%.3f s", t));
}

// 8. Checkerboard Moran's I.
void criterion8() {
    std::vector<double> v(16);
    for (std::size_t i = 0; i < 16; ++i) v[i] = ((i / 4 + i % 4) % 2 == 0) ? 1.0 : 0.0;
    const double mi = morans_i(GridField({4, 4}, v));
    report(8, std::abs(mi + 1.0) <= kC8Tol, fmt("I = %.17g", mi));
}

// 9. Separating two Gaussian clusters moves the KDE EC curve away from the start.
void criterion9() {
    const std::size_t n_points = 1000;
    const double separations[] = {0.0, 1.0, 2.0, 3.0, 4.0};
    const double h = 0.5;
    Rng rng(1009);
    std::vector<Point2> base(n_points);
    for (auto& p : base) p = {rng.normal(), rng.normal()};
    // One grid for every step, covering the widest configuration.
    std::vector<Point2> extreme;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double s = (i % 2 ? 0.5 : -0.5) * separations[4];
        extreme.push_back({base[i].x + s, base[i].y});
    }
    const KdeGrid grid = padded_kde_grid(PointCloud2D(extreme), h, 96, 64, 4.0);

    std::vector<GridField> densities;
    double peak = 0.0;
    for (double sep : separations) {
        std::vector<Point2> pts;
        for (std::size_t i = 0; i < n_points; ++i) pts.push_back({base[i].x + (i % 2 ? 0.5 : -0.5) * sep, base[i].y});
        densities.push_back(gaussian_kde_grid(PointCloud2D(pts), h, grid));
        peak = std::max(peak, densities.back().max());
    }
    const FiltrationSpec spec = uniform_thresholds(0.0, peak, 100, Direction::superlevel);
    std::vector<double> dist;
    const ECCurve first = ec_curve_incremental(densities[0], spec);
    for (const auto& d : densities) dist.push_back(ec_distance(first, ec_curve_incremental(d, spec)));
    bool ok = true;
    std::string detail = "distances";
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (i > 0 && dist[i] < dist[i - 1]) ok = false;
        detail += fmt(" %.3f", dist[i]);
    }
    report(9, ok, detail);
}

// 10. Numerical contracts.
void criterion10() {
    Rng rng(1010);
    double worst_residual = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + rng.below(40);
        Matrix a(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) a(r, c) = rng.normal();
        Matrix s = a * a.transposed();
        for (std::size_t d = 0; d < n; ++d) s(d, d) += 0.05 * static_cast<double>(n);
        const double ridge = default_ridge(s);
        const Matrix p = precision_matrix(s, ridge);
        for (std::size_t d = 0; d < n; ++d) s(d, d) += ridge;
        const Matrix prod = p * s;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                worst_residual = std::max(worst_residual, std::abs(prod(r, c) - (r == c ? 1.0 : 0.0)));
    }

    double worst_mass = 0.0;
    for (int i = 0; i < 10; ++i) {
        std::vector<Point2> pts(1 + rng.below(300));
        for (auto& q : pts) q = {rng.normal() * 2.0, rng.uniform(-3.0, 3.0)};
        const PointCloud2D pc(pts);
        const double h = rng.uniform(0.2, 1.0);
        const KdeGrid g = padded_kde_grid(pc, h, 128, 128);
        const GridField d = gaussian_kde_grid(pc, h, g);
        double mass = 0.0;
        for (double x : d.values()) mass += x;
        worst_mass = std::max(worst_mass, std::abs(mass * g.cell_area() - 1.0));
    }

    double worst_parseval = 0.0;
    for (int i = 0; i < 10; ++i) {
        const std::size_t r = 1 + rng.below(40), c = 1 + rng.below(40);
        std::vector<double> v(r * c);
        for (double& x : v) x = rng.normal();
        const GridField mag = dft_magnitude(GridField({r, c}, v));
        double et = 0.0, ef = 0.0;
        for (double x : v) et += x * x;
        for (double x : mag.values()) ef += x * x;
        worst_parseval = std::max(worst_parseval, std::abs(ef / static_cast<double>(r * c) - et) / et);
    }

    double worst_conservation = 0.0;
    for (double reaction : {0.0, 0.8}) {
        RDParams p;
        p.n = 32;
        p.reaction = reaction;
        p.snapshots = 200;
        p.steps = 200;  // one snapshot per step
        std::vector<double> u0(p.n * p.n), v0(p.n * p.n);
        for (double& x : u0) x = rng.uniform();
        for (double& x : v0) x = rng.uniform();
        const double cells = static_cast<double>(p.n * p.n);
        const double mu0 = std::accumulate(u0.begin(), u0.end(), 0.0) / cells;
        const double mv0 = std::accumulate(v0.begin(), v0.end(), 0.0) / cells;
        const RDResult res = rd_integrate(p, u0, v0);
        std::vector<double> mu(p.snapshots, 0.0), mv(p.snapshots, 0.0);
        for (std::size_t i = 0; i < res.u.size(); ++i) {
            mu[i % p.snapshots] += res.u[i] / cells;
            mv[i % p.snapshots] += res.v[i] / cells;
        }
        for (std::size_t t = 0; t < p.snapshots; ++t) {
            worst_conservation = std::max(worst_conservation, std::abs(mu[t] + mv[t] - mu0 - mv0));
            if (reaction == 0.0) worst_conservation = std::max(worst_conservation, std::abs(mu[t] - mu0));
        }
        const RDResult flat = rd_integrate(p, std::vector<double>(p.n * p.n, 0.7), std::vector<double>(p.n * p.n, 0.7));
        for (double x : flat.u.values()) worst_conservation = std::max(worst_conservation, std::abs(x - 0.7));
        for (double x : flat.v.values()) worst_conservation = std::max(worst_conservation, std::abs(x - 0.7));
    }

    const bool ok = worst_residual <= kC10ResidualTol && worst_mass <= kC10MassTol &&
                    worst_parseval <= kC10ParsevalTol && worst_conservation <= kC10ConservationTol;
    report(10, ok,
           fmt("residual %.2e, ", worst_residual) + fmt("mass %.2e, ", worst_mass) +
               fmt("parseval %.2e, ", worst_parseval) + fmt("conservation %.2e", worst_conservation));
}

}  // namespace

int main() {
    const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                              criterion6, criterion7, criterion8, criterion9, criterion10};
    for (int i = 0; i < 10; ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(i + 1, false, std::string("raised: ") + e.what());
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
