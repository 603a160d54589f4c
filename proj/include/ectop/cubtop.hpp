#pragma once

// Level-set filtrations of 1D/2D/3D grid fields. A mask of active vertices
// spans the cubical complex whose k-cells are the axis-aligned unit cubes
// with all 2^k corners active (the V-construction); vertices are adjacent
// along grid axes only.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ectop/core.hpp"

namespace ectop {

struct VertexMask {
    VertexMask() = default;
    VertexMask(std::vector<std::size_t> dims, std::vector<std::uint8_t> active);

    std::vector<std::size_t> dims;
    std::vector<std::uint8_t> active;  // row-major, 0 or 1

    std::size_t ndim() const noexcept { return dims.size(); }
    std::size_t size() const noexcept { return active.size(); }

    friend bool operator==(const VertexMask&, const VertexMask&) = default;
};

/// value >= level, inclusive.
VertexMask superlevel_vertices(const GridField& field, double level);
/// value <= level, inclusive.
VertexMask sublevel_vertices(const GridField& field, double level);
VertexMask level_set_vertices(const GridField& field, double level, Direction direction);

struct CellCounts {
    std::vector<std::int64_t> counts;  // counts[k] = number of k-cells, k = 0..ndim

    std::int64_t euler() const noexcept;

    friend bool operator==(const CellCounts&, const CellCounts&) = default;
};

CellCounts cell_counts(const VertexMask& mask);

/// Connected components of the active vertices under 2n-neighbour adjacency.
std::int64_t mask_betti0(const VertexMask& mask);

/// Per-threshold recomputation: mask, cell counts, alternating sum.
ECCurve ec_curve_field(const GridField& field, const FiltrationSpec& spec);

/// beta0 per threshold; beta1 = beta0 - chi for 2D fields only.
BettiCurve betti_curve_field(const GridField& field, const FiltrationSpec& spec);

/// Equal to ec_curve_field. Each cell gets an activation value (min of its
/// corner values for superlevel, max for sublevel), cells are bucketed by the
/// first threshold that admits them, and a prefix sum yields the curve.
ECCurve ec_curve_incremental(const GridField& field, const FiltrationSpec& spec);

/// ec_curve_incremental over many fields on up to `threads` workers
/// (0 = hardware concurrency). Results follow input order.
std::vector<ECCurve> ec_curves_batch(std::span<const GridField> fields, const FiltrationSpec& spec,
                                     unsigned threads = 0);

}  // namespace ectop
