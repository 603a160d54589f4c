#include "ectop/homoracle.hpp"

#include <bit>
#include <cassert>
#include <string>
#include <unordered_map>

namespace ectop {
namespace {

// Coordinates are offset so that anchors in [-2^19, 2^19) pack into 20 bits.
std::uint64_t cube_key(const Cube& c) {
    std::uint64_t key = c.axes;
    for (std::int32_t x : c.anchor) key = (key << 20) | (static_cast<std::uint64_t>(x + (1 << 19)) & 0xFFFFF);
    return key;
}

using CellIndex = std::unordered_map<std::uint64_t, std::size_t>;

CellIndex index_cells(const std::vector<Cube>& cells) {
    CellIndex index;
    index.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) index.emplace(cube_key(cells[i]), i);
    return index;
}

// The 2k codimension-one faces of a k-cube.
std::vector<Cube> faces(const Cube& c) {
    std::vector<Cube> out;
    for (unsigned a = 0; a < 3; ++a) {
        if (!((c.axes >> a) & 1U)) continue;
        Cube lower{c.anchor, c.axes & ~(1U << a)};
        Cube upper = lower;
        upper.anchor[a] += 1;
        out.push_back(lower);
        out.push_back(upper);
    }
    return out;
}

}  // namespace

int Cube::dimension() const noexcept { return std::popcount(axes); }

CubicalComplex::CubicalComplex(std::size_t ambient_dim, std::vector<Cube> cells)
    : ambient_dim_(ambient_dim), by_dim_(ambient_dim + 1) {
    if (ambient_dim == 0 || ambient_dim > 3) {
        throw Error(ErrorCode::InvalidDimensions, "ambient dimension must be 1, 2 or 3");
    }
    CellIndex all;
    for (const Cube& c : cells) {
        if (c.axes >> ambient_dim) throw Error(ErrorCode::InvalidDimensions, "cell spans a missing axis");
        for (std::size_t a = ambient_dim; a < 3; ++a) {
            if (c.anchor[a] != 0) throw Error(ErrorCode::InvalidDimensions, "anchor off the ambient grid");
        }
        if (!all.emplace(cube_key(c), 0).second) throw Error(ErrorCode::DuplicateCell, "duplicate cell");
    }
    for (const Cube& c : cells) {
        for (const Cube& f : faces(c)) {
            if (!all.contains(cube_key(f))) throw Error(ErrorCode::NotClosed, "a face of a cell is missing");
        }
        by_dim_[static_cast<std::size_t>(c.dimension())].push_back(c);
    }
}

CubicalComplex build_complex(const VertexMask& mask) {
    if (mask.size() > kOracleMaxVertices) {
        throw Error(ErrorCode::TooLarge, std::to_string(mask.size()) + " vertices exceeds the oracle cap");
    }
    const std::size_t n = mask.ndim();
    // Per-axis extent and stride of the mask in its own coordinates.
    std::array<std::int32_t, 3> extent{1, 1, 1};
    for (std::size_t a = 0; a < n; ++a) extent[a] = static_cast<std::int32_t>(mask.dims[a]);
    auto offset = [&](const std::array<std::int32_t, 3>& p) {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < n; ++a) idx = idx * mask.dims[a] + static_cast<std::size_t>(p[a]);
        return idx;
    };
    auto corner_active = [&](const std::array<std::int32_t, 3>& anchor, unsigned axes) {
        for (unsigned corner = 0; corner < 8; ++corner) {
            if ((corner & ~axes) != 0) continue;
            auto p = anchor;
            for (unsigned a = 0; a < 3; ++a) {
                if ((corner >> a) & 1U) ++p[a];
            }
            for (std::size_t a = 0; a < n; ++a) {
                if (p[a] >= extent[a]) return false;
            }
            if (!mask.active[offset(p)]) return false;
        }
        return true;
    };

    std::vector<Cube> cells;
    const unsigned subsets = 1U << n;
    for (std::int32_t i = 0; i < extent[0]; ++i) {
        for (std::int32_t j = 0; j < extent[1]; ++j) {
            for (std::int32_t k = 0; k < extent[2]; ++k) {
                const std::array<std::int32_t, 3> anchor{i, j, k};
                if (!mask.active[offset(anchor)]) continue;
                for (unsigned axes = 0; axes < subsets; ++axes) {
                    if (corner_active(anchor, axes)) cells.push_back({anchor, axes});
                }
            }
        }
    }
    return CubicalComplex(n, std::move(cells));
}

std::size_t boundary_rank(const CubicalComplex& complex, std::size_t k) {
    if (k == 0 || k > complex.ambient_dim()) return 0;
    const auto& cols = complex.cells(k);
    const auto& rows = complex.cells(k - 1);
    if (cols.empty() || rows.empty()) return 0;
    const CellIndex row_index = index_cells(rows);
    const std::size_t words = (rows.size() + 63) / 64;

    // Column reduction: each column is cleared against earlier pivots keyed by
    // their highest set row.
    std::vector<std::vector<std::uint64_t>> pivot_col(rows.size());
    std::size_t rank = 0;
    std::vector<std::uint64_t> col(words);
    for (const Cube& c : cols) {
        std::fill(col.begin(), col.end(), 0);
        for (const Cube& f : faces(c)) {
            const std::size_t r = row_index.at(cube_key(f));
            col[r / 64] ^= std::uint64_t{1} << (r % 64);
        }
        for (;;) {
            std::size_t w = words;
            while (w > 0 && col[w - 1] == 0) --w;
            if (w == 0) break;
            const std::size_t low = (w - 1) * 64 + static_cast<std::size_t>(std::bit_width(col[w - 1]) - 1);
            if (pivot_col[low].empty()) {
                pivot_col[low] = col;
                ++rank;
                break;
            }
            for (std::size_t i = 0; i < w; ++i) col[i] ^= pivot_col[low][i];
        }
    }
    return rank;
}

std::vector<std::int64_t> betti_numbers(const CubicalComplex& complex) {
    if (complex.cell_count(0) > kOracleMaxVertices) {
        throw Error(ErrorCode::TooLarge, "complex exceeds the oracle cap");
    }
    const std::size_t n = complex.ambient_dim();
    std::vector<std::int64_t> rank(n + 2, 0);
    for (std::size_t k = 1; k <= n; ++k) rank[k] = static_cast<std::int64_t>(boundary_rank(complex, k));
    std::vector<std::int64_t> betti(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        betti[k] = static_cast<std::int64_t>(complex.cell_count(k)) - rank[k] - rank[k + 1];
    }
    assert(betti[n] == 0);
    betti.pop_back();
    return betti;
}

}  // namespace ectop
