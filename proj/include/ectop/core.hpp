#pragma once

// Domain types shared by the graph, grid and statistics layers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ectop/error.hpp"

namespace ectop {

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on dense node indices [0, node_count).
/// Not self-validating: call validate_graph() before trusting it.
struct WeightedGraph {
    std::size_t node_count = 0;
    std::vector<Edge> edges;
    std::optional<std::vector<double>> edge_weights;
    std::optional<std::vector<double>> node_weights;

    friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

/// Throws Error{SelfLoop, IndexOutOfRange, DuplicateEdge,
/// WeightLengthMismatch, NonFiniteWeight} on the first violated invariant.
void validate_graph(const WeightedGraph& g);

/// Row-major scalar field on a 1D, 2D or 3D regular grid. The last axis is
/// contiguous in memory.
class GridField {
public:
    GridField() = default;
    GridField(std::vector<std::size_t> dims, std::vector<double> values);

    std::span<const std::size_t> dims() const noexcept { return dims_; }
    std::size_t ndim() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double min() const;
    double max() const;

    friend bool operator==(const GridField&, const GridField&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<double> values_;
};

enum class Direction { sublevel, superlevel };

/// Thresholds strictly increasing (sublevel) or strictly decreasing
/// (superlevel), all finite, at least one.
class FiltrationSpec {
public:
    FiltrationSpec(Direction direction, std::vector<double> thresholds);

    Direction direction() const noexcept { return direction_; }
    std::span<const double> thresholds() const noexcept { return thresholds_; }
    std::size_t size() const noexcept { return thresholds_.size(); }

    /// True when `value` is retained at threshold `level`: value <= level for
    /// sublevel, value >= level for superlevel. Both are inclusive.
    bool admits(double value, double level) const noexcept {
        return direction_ == Direction::sublevel ? value <= level : value >= level;
    }

    friend bool operator==(const FiltrationSpec&, const FiltrationSpec&) = default;

private:
    Direction direction_;
    std::vector<double> thresholds_;
};

struct ECCurve {
    std::vector<double> thresholds;
    std::vector<std::int64_t> chi;

    friend bool operator==(const ECCurve&, const ECCurve&) = default;
};

struct BettiCurve {
    std::vector<double> thresholds;
    std::vector<std::int64_t> beta0;
    std::optional<std::vector<std::int64_t>> beta1;

    friend bool operator==(const BettiCurve&, const BettiCurve&) = default;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

class PointCloud2D {
public:
    explicit PointCloud2D(std::vector<Point2> points);

    std::span<const Point2> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<Point2> points_;
};

/// m observations (rows) of n variables (columns), row-major.
class TimeSeriesMatrix {
public:
    TimeSeriesMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t t, std::size_t j) const noexcept { return values_[t * cols_ + j]; }
    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const TimeSeriesMatrix&, const TimeSeriesMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

/// m evenly spaced values spanning [lo, hi] inclusive, ordered increasing for
/// sublevel and decreasing for superlevel.
FiltrationSpec uniform_thresholds(double lo, double hi, std::size_t m, Direction direction);

inline constexpr std::size_t kDefaultThresholdCount = 100;

/// Thresholds over [min, max] of `values`. Collapses to the single threshold
/// {min} when all values are equal, and to {0} when `values` is empty.
FiltrationSpec default_thresholds(std::span<const double> values, Direction direction,
                                  std::size_t m = kDefaultThresholdCount);

/// Alternating sum b0 - b1 + b2 - ...
std::int64_t euler_poincare(std::span<const std::int64_t> betti);

}  // namespace ectop
