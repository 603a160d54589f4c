#include "ectop/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace ectop {

void validate_graph(const WeightedGraph& g) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const Edge& e = g.edges[i];
        if (e.u == e.v) {
            throw Error(ErrorCode::SelfLoop, "edge " + std::to_string(i) + " joins node " +
                                                 std::to_string(e.u) + " to itself");
        }
        if (e.u >= g.node_count || e.v >= g.node_count) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "edge " + std::to_string(i) + " has an endpoint >= node_count " +
                            std::to_string(g.node_count));
        }
        const std::uint64_t lo = std::min(e.u, e.v);
        const std::uint64_t hi = std::max(e.u, e.v);
        if (!seen.insert((lo << 32) | hi).second) {
            throw Error(ErrorCode::DuplicateEdge, "edge {" + std::to_string(lo) + "," +
                                                      std::to_string(hi) + "} appears twice");
        }
    }
    if (g.edge_weights) {
        if (g.edge_weights->size() != g.edges.size()) {
            throw Error(ErrorCode::WeightLengthMismatch, "edge_weights length differs from edges");
        }
        if (!std::all_of(g.edge_weights->begin(), g.edge_weights->end(),
                         [](double w) { return std::isfinite(w); })) {
            throw Error(ErrorCode::NonFiniteWeight, "non-finite edge weight");
        }
    }
    if (g.node_weights) {
        if (g.node_weights->size() != g.node_count) {
            throw Error(ErrorCode::WeightLengthMismatch, "node_weights length differs from node_count");
        }
        if (!std::all_of(g.node_weights->begin(), g.node_weights->end(),
                         [](double w) { return std::isfinite(w); })) {
            throw Error(ErrorCode::NonFiniteWeight, "non-finite node weight");
        }
    }
}

GridField::GridField(std::vector<std::size_t> dims, std::vector<double> values)
    : dims_(std::move(dims)), values_(std::move(values)) {
    if (dims_.empty() || dims_.size() > 3) {
        throw Error(ErrorCode::InvalidDimensions, "field must have 1, 2 or 3 axes");
    }
    std::size_t total = 1;
    for (std::size_t d : dims_) {
        if (d == 0) throw Error(ErrorCode::InvalidDimensions, "zero-length axis");
        total *= d;
    }
    if (total != values_.size()) {
        throw Error(ErrorCode::InvalidDimensions, "expected " + std::to_string(total) +
                                                      " values, got " +
                                                      std::to_string(values_.size()));
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorCode::NonFiniteValue, "field contains a non-finite value");
    }
}

double GridField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double GridField::max() const { return *std::max_element(values_.begin(), values_.end()); }

FiltrationSpec::FiltrationSpec(Direction direction, std::vector<double> thresholds)
    : direction_(direction), thresholds_(std::move(thresholds)) {
    if (thresholds_.empty()) throw Error(ErrorCode::EmptyThresholds, "no thresholds");
    for (double t : thresholds_) {
        if (!std::isfinite(t)) throw Error(ErrorCode::NonFiniteValue, "non-finite threshold");
    }
    for (std::size_t k = 1; k < thresholds_.size(); ++k) {
        const bool ok = direction_ == Direction::sublevel ? thresholds_[k - 1] < thresholds_[k]
                                                          : thresholds_[k - 1] > thresholds_[k];
        if (!ok) {
            throw Error(ErrorCode::NonMonotoneThresholds,
                        "thresholds not strictly monotone at index " + std::to_string(k));
        }
    }
}

PointCloud2D::PointCloud2D(std::vector<Point2> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::EmptyCloud, "point cloud is empty");
    for (const Point2& p : points_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::NonFiniteValue, "non-finite point coordinate");
        }
    }
}

TimeSeriesMatrix::TimeSeriesMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ < 2) throw Error(ErrorCode::InvalidDimensions, "need at least 2 observations");
    if (cols_ < 1) throw Error(ErrorCode::InvalidDimensions, "need at least 1 variable");
    if (values_.size() != rows_ * cols_) {
        throw Error(ErrorCode::InvalidDimensions, "value count does not match rows*cols");
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorCode::NonFiniteValue, "time series contains a non-finite value");
    }
}

FiltrationSpec uniform_thresholds(double lo, double hi, std::size_t m, Direction direction) {
    if (!(lo < hi)) throw Error(ErrorCode::DegenerateRange, "lo must be < hi");
    if (m < 2) throw Error(ErrorCode::InvalidParameter, "need at least 2 thresholds");
    std::vector<double> t(m);
    const double span = hi - lo;
    for (std::size_t k = 0; k < m; ++k) {
        t[k] = lo + span * (static_cast<double>(k) / static_cast<double>(m - 1));
    }
    t.back() = hi;
    if (direction == Direction::superlevel) std::reverse(t.begin(), t.end());
    return FiltrationSpec(direction, std::move(t));
}

FiltrationSpec default_thresholds(std::span<const double> values, Direction direction,
                                  std::size_t m) {
    if (values.empty()) return FiltrationSpec(direction, {0.0});
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) return FiltrationSpec(direction, {*lo});
    return uniform_thresholds(*lo, *hi, m, direction);
}

std::int64_t euler_poincare(std::span<const std::int64_t> betti) {
    std::int64_t chi = 0;
    for (std::size_t i = 0; i < betti.size(); ++i) chi += (i % 2 == 0) ? betti[i] : -betti[i];
    return chi;
}

}  // namespace ectop
