#pragma once

#include <vector>

#include "ectop/core.hpp"
#include "ectop/rng.hpp"

namespace fixtures {

/// 12 x 16 raster with value 1 on two blobs and 0 elsewhere: a 5 x 9 block
/// pierced twice and a 4 x 4 block pierced once. Two components, three holes.
inline ectop::GridField two_blobs_three_holes() {
    const std::size_t rows = 12, cols = 16;
    std::vector<double> v(rows * cols, 0.0);
    auto set = [&](std::size_t r, std::size_t c, double x) { v[r * cols + c] = x; };
    for (std::size_t r = 1; r <= 5; ++r)
        for (std::size_t c = 1; c <= 9; ++c) set(r, c, 1.0);
    set(3, 3, 0.0);
    set(3, 7, 0.0);
    for (std::size_t r = 7; r <= 10; ++r)
        for (std::size_t c = 11; c <= 14; ++c) set(r, c, 1.0);
    set(8, 12, 0.0);
    return ectop::GridField({rows, cols}, std::move(v));
}

/// 3 x 3 ones with a zero centre.
inline ectop::GridField ring3() { return ectop::GridField({3, 3}, {1, 1, 1, 1, 0, 1, 1, 1, 1}); }

/// Values drawn from {0, ..., levels-1} so that thresholds hit ties.
inline ectop::GridField random_int_field(ectop::Rng& rng, std::vector<std::size_t> dims, std::uint64_t levels) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng.below(levels));
    return ectop::GridField(std::move(dims), std::move(v));
}

inline std::vector<std::size_t> random_dims(ectop::Rng& rng, std::size_t max_side) {
    std::vector<std::size_t> dims(1 + rng.below(3));
    for (auto& d : dims) d = 1 + rng.below(max_side);
    return dims;
}

}  // namespace fixtures
