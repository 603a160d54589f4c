#pragma once

// Seeded generators: the two-species reaction-diffusion system, Gaussian
// time series with a prescribed precision matrix, and smooth/rough random
// textures. All draw from ectop::Rng and are bit-reproducible per seed.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ectop/core.hpp"
#include "ectop/featstats.hpp"

namespace ectop {

/// du/dt = D lap(u) + R (v - u), dv/dt = D lap(v) + R (u - v) on an n x n
/// periodic grid, explicit Euler with the 5-point Laplacian.
struct RDParams {
    double diffusion = 3.0;     // D > 0
    double reaction = 0.8;      // R >= 0
    std::size_t n = 32;         // grid side, >= 4
    std::size_t snapshots = 50; // T >= 2
    std::size_t steps = 200;    // integration steps, >= T
    double dt = 0.04;           // <= dx^2 / (4 D)
    double dx = 1.0;
    std::uint64_t seed = 0;
};

struct RDResult {
    GridField u;  // dims {n, n, T}: snapshot index is the fastest axis
    GridField v;
};

/// Initial u, v are i.i.d. uniform [0, 1]. Snapshot j (0-based) is the state
/// after (j + 1) * (steps / T) steps. Throws UnstableStep if dt exceeds the
/// explicit-Euler bound.
RDResult rd_simulate(const RDParams& p);

/// The same integration from a given row-major n x n initial state; `seed`
/// is ignored.
RDResult rd_integrate(const RDParams& p, std::vector<double> u0, std::vector<double> v0);

/// m draws of N(0, prec^{-1}), one per row. Throws NotSPD.
TimeSeriesMatrix sample_gaussian_timeseries(const SquareMatrix& prec, std::size_t m, std::uint64_t seed);

enum class TextureKind { smooth, rough };

/// Gaussian white noise blurred (periodically) by a Gaussian of width 4 cells
/// (smooth) or 1 cell (rough), then normalised to mean 0 and variance 1.
GridField texture_field(TextureKind kind, std::size_t n, std::uint64_t seed);

}  // namespace ectop
