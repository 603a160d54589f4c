#pragma once

// Euler characteristic and Betti numbers of graphs, and their curves along
// edge- and node-weight sublevel filtrations.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ectop/core.hpp"

namespace ectop {

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0);

    void reset(std::size_t n);
    std::size_t find(std::size_t x) noexcept;
    /// Returns true when x and y were in different sets.
    bool unite(std::size_t x, std::size_t y) noexcept;
    std::size_t size() const noexcept { return parent_.size(); }
    std::size_t component_count() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_ = 0;
};

/// |V| - |E|.
std::int64_t graph_ec(const WeightedGraph& g);
std::int64_t graph_betti0(const WeightedGraph& g);
/// |E| - |V| + b0, the cycle rank.
std::int64_t graph_betti1(const WeightedGraph& g);

struct FiltrationCurves {
    ECCurve ec;
    BettiCurve betti;  // beta1 always present, equal to beta0 - chi

    friend bool operator==(const FiltrationCurves&, const FiltrationCurves&) = default;
};

enum class GraphFiltrationMode { edge, node };

/// Keeps every node and the edges with weight <= level, recomputed from
/// scratch at every threshold.
FiltrationCurves edge_filtration(const WeightedGraph& g, const FiltrationSpec& spec);

/// Keeps nodes with weight <= level and the edges between kept nodes,
/// recomputed from scratch at every threshold.
FiltrationCurves node_filtration(const WeightedGraph& g, const FiltrationSpec& spec);

/// Same output as edge_filtration / node_filtration from a single sorted
/// sweep with one union-find.
FiltrationCurves incremental_filtration_curve(const WeightedGraph& g, const FiltrationSpec& spec,
                                              GraphFiltrationMode mode);

}  // namespace ectop
