#include "ectop/graphtop.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace ectop {

UnionFind::UnionFind(std::size_t n) { reset(n); }

void UnionFind::reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    size_.assign(n, 1);
    components_ = n;
}

std::size_t UnionFind::find(std::size_t x) noexcept {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (size_[x] < size_[y]) std::swap(x, y);
    parent_[y] = x;
    size_[x] += size_[y];
    --components_;
    return true;
}

std::int64_t graph_ec(const WeightedGraph& g) {
    validate_graph(g);
    return static_cast<std::int64_t>(g.node_count) - static_cast<std::int64_t>(g.edges.size());
}

std::int64_t graph_betti0(const WeightedGraph& g) {
    validate_graph(g);
    UnionFind uf(g.node_count);
    for (const Edge& e : g.edges) uf.unite(e.u, e.v);
    return static_cast<std::int64_t>(uf.component_count());
}

std::int64_t graph_betti1(const WeightedGraph& g) {
    return static_cast<std::int64_t>(g.edges.size()) - static_cast<std::int64_t>(g.node_count) +
           graph_betti0(g);
}

namespace {

void require_sublevel(const FiltrationSpec& spec) {
    if (spec.direction() != Direction::sublevel) {
        throw Error(ErrorCode::UnsupportedDirection, "graph filtrations are sublevel (weight <= level)");
    }
}

FiltrationCurves make_curves(const FiltrationSpec& spec) {
    FiltrationCurves out;
    const auto t = spec.thresholds();
    out.ec.thresholds.assign(t.begin(), t.end());
    out.betti.thresholds = out.ec.thresholds;
    out.ec.chi.reserve(t.size());
    out.betti.beta0.reserve(t.size());
    out.betti.beta1.emplace();
    out.betti.beta1->reserve(t.size());
    return out;
}

void push_level(FiltrationCurves& out, std::int64_t vertices, std::int64_t edges, std::int64_t b0) {
    const std::int64_t chi = vertices - edges;
    out.ec.chi.push_back(chi);
    out.betti.beta0.push_back(b0);
    out.betti.beta1->push_back(b0 - chi);
}

}  // namespace

FiltrationCurves edge_filtration(const WeightedGraph& g, const FiltrationSpec& spec) {
    validate_graph(g);
    require_sublevel(spec);
    if (!g.edge_weights) throw Error(ErrorCode::MissingEdgeWeights, "edge filtration needs edge weights");
    const auto& w = *g.edge_weights;

    FiltrationCurves out = make_curves(spec);
    UnionFind uf;
    for (double level : spec.thresholds()) {
        uf.reset(g.node_count);
        std::int64_t kept = 0;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (w[i] <= level) {
                ++kept;
                uf.unite(g.edges[i].u, g.edges[i].v);
            }
        }
        push_level(out, static_cast<std::int64_t>(g.node_count), kept,
                   static_cast<std::int64_t>(uf.component_count()));
    }
    return out;
}

FiltrationCurves node_filtration(const WeightedGraph& g, const FiltrationSpec& spec) {
    validate_graph(g);
    require_sublevel(spec);
    if (!g.node_weights) throw Error(ErrorCode::MissingNodeWeights, "node filtration needs node weights");
    const auto& w = *g.node_weights;

    FiltrationCurves out = make_curves(spec);
    UnionFind uf;
    for (double level : spec.thresholds()) {
        uf.reset(g.node_count);
        std::int64_t vertices = 0;
        for (double wv : w) vertices += wv <= level ? 1 : 0;
        std::int64_t edges = 0;
        for (const Edge& e : g.edges) {
            if (w[e.u] <= level && w[e.v] <= level) {
                ++edges;
                uf.unite(e.u, e.v);
            }
        }
        // Inactive nodes are still singleton sets in uf; exclude them.
        const auto inactive = static_cast<std::int64_t>(g.node_count) - vertices;
        push_level(out, vertices, edges, static_cast<std::int64_t>(uf.component_count()) - inactive);
    }
    return out;
}

FiltrationCurves incremental_filtration_curve(const WeightedGraph& g, const FiltrationSpec& spec,
                                              GraphFiltrationMode mode) {
    validate_graph(g);
    require_sublevel(spec);

    // Activation key per node and per edge. In edge mode every node is
    // present from the start.
    std::vector<double> node_key;
    std::vector<double> edge_key(g.edges.size());
    if (mode == GraphFiltrationMode::edge) {
        if (!g.edge_weights) throw Error(ErrorCode::MissingEdgeWeights, "edge filtration needs edge weights");
        edge_key = *g.edge_weights;
    } else {
        if (!g.node_weights) throw Error(ErrorCode::MissingNodeWeights, "node filtration needs node weights");
        node_key = *g.node_weights;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            edge_key[i] = std::max(node_key[g.edges[i].u], node_key[g.edges[i].v]);
        }
    }

    auto sorted_order = [](const std::vector<double>& key) {
        std::vector<std::size_t> order(key.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
        return order;
    };
    const auto node_order = sorted_order(node_key);
    const auto edge_order = sorted_order(edge_key);

    FiltrationCurves out = make_curves(spec);
    UnionFind uf(g.node_count);
    std::int64_t vertices = mode == GraphFiltrationMode::edge ? static_cast<std::int64_t>(g.node_count) : 0;
    std::int64_t edges = 0;
    std::int64_t components = vertices;
    std::size_t next_node = 0;
    std::size_t next_edge = 0;
    for (double level : spec.thresholds()) {
        // Nodes first: an edge's key is never below its endpoints' keys.
        for (; next_node < node_order.size() && node_key[node_order[next_node]] <= level; ++next_node) {
            ++vertices;
            ++components;
        }
        for (; next_edge < edge_order.size() && edge_key[edge_order[next_edge]] <= level; ++next_edge) {
            const Edge& e = g.edges[edge_order[next_edge]];
            ++edges;
            if (uf.unite(e.u, e.v)) --components;
        }
        push_level(out, vertices, edges, components);
    }
    return out;
}

}  // namespace ectop
