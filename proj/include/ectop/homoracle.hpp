#pragma once

// Exact Betti numbers of small cubical complexes by Z/2 boundary-matrix rank.
// Slow and dense on purpose: this is the reference the fast grid code is
// checked against.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ectop/cubtop.hpp"

namespace ectop {

/// Unit cube anchored at integer coordinates, spanning the axes whose bits
/// are set in `axes`. Its dimension is popcount(axes).
struct Cube {
    std::array<std::int32_t, 3> anchor{};
    unsigned axes = 0;

    int dimension() const noexcept;

    friend bool operator==(const Cube&, const Cube&) = default;
};

inline constexpr std::size_t kOracleMaxVertices = 10'000;

class CubicalComplex {
public:
    /// Cells may be given in any order. Throws DuplicateCell, or NotClosed
    /// when a face of some cell is missing.
    CubicalComplex(std::size_t ambient_dim, std::vector<Cube> cells);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    const std::vector<Cube>& cells(std::size_t k) const { return by_dim_.at(k); }
    std::size_t cell_count(std::size_t k) const { return k < by_dim_.size() ? by_dim_[k].size() : 0; }

private:
    std::size_t ambient_dim_;
    std::vector<std::vector<Cube>> by_dim_;  // index k = 0..ambient_dim
};

/// V-construction complex of the active vertices. Throws TooLarge above
/// kOracleMaxVertices grid vertices.
CubicalComplex build_complex(const VertexMask& mask);

/// Rank over Z/2 of the boundary map from k-cells to (k-1)-cells.
std::size_t boundary_rank(const CubicalComplex& complex, std::size_t k);

/// [b0, ..., b_{n-1}] for an n-dimensional ambient grid. The top Betti
/// number of a complex embedded in R^n is always zero and is not returned.
std::vector<std::int64_t> betti_numbers(const CubicalComplex& complex);

}  // namespace ectop
