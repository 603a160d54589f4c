#include "ectop/cubtop.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "ectop/graphtop.hpp"
#include "ectop/kernels.hpp"

namespace ectop {
namespace {

// Dimensions left-padded with 1 to three axes; row-major strides.
struct Shape3 {
    std::array<std::size_t, 3> dim{1, 1, 1};
    std::array<std::size_t, 3> stride{0, 0, 1};

    explicit Shape3(std::span<const std::size_t> dims) {
        const std::size_t pad = 3 - dims.size();
        for (std::size_t a = 0; a < dims.size(); ++a) dim[pad + a] = dims[a];
        stride[2] = 1;
        stride[1] = dim[2];
        stride[0] = dim[1] * dim[2];
    }

    std::size_t total() const noexcept { return dim[0] * dim[1] * dim[2]; }
};

void check_mask(const VertexMask& mask) {
    if (mask.dims.empty() || mask.dims.size() > 3) {
        throw Error(ErrorCode::InvalidDimensions, "mask must have 1, 2 or 3 axes");
    }
    std::size_t total = 1;
    for (std::size_t d : mask.dims) {
        if (d == 0) throw Error(ErrorCode::InvalidDimensions, "zero-length axis");
        total *= d;
    }
    if (total != mask.active.size()) throw Error(ErrorCode::InvalidDimensions, "mask size mismatch");
}

}  // namespace

VertexMask::VertexMask(std::vector<std::size_t> d, std::vector<std::uint8_t> a)
    : dims(std::move(d)), active(std::move(a)) {
    check_mask(*this);
}

VertexMask level_set_vertices(const GridField& field, double level, Direction direction) {
    VertexMask mask;
    mask.dims.assign(field.dims().begin(), field.dims().end());
    mask.active.resize(field.size());
    kernels::threshold_mask(field.values(), level, direction == Direction::superlevel, mask.active);
    return mask;
}

VertexMask superlevel_vertices(const GridField& field, double level) {
    return level_set_vertices(field, level, Direction::superlevel);
}

VertexMask sublevel_vertices(const GridField& field, double level) {
    return level_set_vertices(field, level, Direction::sublevel);
}

std::int64_t CellCounts::euler() const noexcept {
    std::int64_t chi = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) chi += (k % 2 == 0) ? counts[k] : -counts[k];
    return chi;
}

CellCounts cell_counts(const VertexMask& mask) {
    check_mask(mask);
    const Shape3 s(mask.dims);
    const auto& on = mask.active;
    CellCounts out;
    out.counts.assign(mask.ndim() + 1, 0);

    // Axis subsets as 3-bit masks; bit a set means the cell spans axis a.
    for (unsigned axes = 0; axes < 8; ++axes) {
        std::array<std::size_t, 3> extent{};
        bool possible = true;
        for (int a = 0; a < 3; ++a) {
            const bool spans = (axes >> a) & 1U;
            if (spans && s.dim[a] < 2) possible = false;
            extent[a] = spans ? s.dim[a] - 1 : s.dim[a];
        }
        if (!possible) continue;

        // Offsets of the 2^k corners relative to the anchor.
        std::vector<std::size_t> corners{0};
        for (int a = 0; a < 3; ++a) {
            if (!((axes >> a) & 1U)) continue;
            const std::size_t n = corners.size();
            for (std::size_t c = 0; c < n; ++c) corners.push_back(corners[c] + s.stride[a]);
        }

        std::int64_t count = 0;
        for (std::size_t i = 0; i < extent[0]; ++i) {
            for (std::size_t j = 0; j < extent[1]; ++j) {
                for (std::size_t k = 0; k < extent[2]; ++k) {
                    const std::size_t anchor = i * s.stride[0] + j * s.stride[1] + k;
                    bool all = true;
                    for (std::size_t off : corners) {
                        if (!on[anchor + off]) {
                            all = false;
                            break;
                        }
                    }
                    count += all ? 1 : 0;
                }
            }
        }
        out.counts[static_cast<std::size_t>(std::popcount(axes))] += count;
    }
    return out;
}

std::int64_t mask_betti0(const VertexMask& mask) {
    check_mask(mask);
    const Shape3 s(mask.dims);
    const auto& on = mask.active;
    UnionFind uf(on.size());
    std::int64_t inactive = 0;
    for (std::size_t i = 0; i < s.dim[0]; ++i) {
        for (std::size_t j = 0; j < s.dim[1]; ++j) {
            for (std::size_t k = 0; k < s.dim[2]; ++k) {
                const std::size_t v = i * s.stride[0] + j * s.stride[1] + k;
                if (!on[v]) {
                    ++inactive;
                    continue;
                }
                if (i + 1 < s.dim[0] && on[v + s.stride[0]]) uf.unite(v, v + s.stride[0]);
                if (j + 1 < s.dim[1] && on[v + s.stride[1]]) uf.unite(v, v + s.stride[1]);
                if (k + 1 < s.dim[2] && on[v + 1]) uf.unite(v, v + 1);
            }
        }
    }
    return static_cast<std::int64_t>(uf.component_count()) - inactive;
}

ECCurve ec_curve_field(const GridField& field, const FiltrationSpec& spec) {
    ECCurve out;
    out.thresholds.assign(spec.thresholds().begin(), spec.thresholds().end());
    out.chi.reserve(spec.size());
    for (double level : spec.thresholds()) {
        out.chi.push_back(cell_counts(level_set_vertices(field, level, spec.direction())).euler());
    }
    return out;
}

BettiCurve betti_curve_field(const GridField& field, const FiltrationSpec& spec) {
    BettiCurve out;
    out.thresholds.assign(spec.thresholds().begin(), spec.thresholds().end());
    const bool planar = field.ndim() == 2;
    if (planar) out.beta1.emplace();
    for (double level : spec.thresholds()) {
        const VertexMask mask = level_set_vertices(field, level, spec.direction());
        const std::int64_t b0 = mask_betti0(mask);
        out.beta0.push_back(b0);
        if (planar) out.beta1->push_back(b0 - cell_counts(mask).euler());
    }
    return out;
}

ECCurve ec_curve_incremental(const GridField& field, const FiltrationSpec& spec) {
    const Shape3 s(field.dims());
    const std::size_t n = s.total();
    const bool super = spec.direction() == Direction::superlevel;
    const double sentinel = super ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
    const auto combine = super ? kernels::active().pairwise_min : kernels::active().pairwise_max;

    // act[axes] holds the activation value of the cell anchored at each
    // vertex spanning `axes`; anchors without such a cell hold the sentinel,
    // which is never admitted and absorbs under min/max.
    std::array<std::vector<double>, 8> act;
    act[0].assign(field.values().begin(), field.values().end());
    for (unsigned axes = 1; axes < 8; ++axes) {
        const int a = std::bit_width(axes) - 1;  // highest spanned axis
        if (s.dim[a] < 2) continue;
        const auto& prev = act[axes & ~(1U << a)];
        if (prev.empty()) continue;
        auto& cur = act[axes];
        cur.assign(n, sentinel);
        const std::size_t step = s.stride[a];
        const std::size_t block = (s.dim[a] - 1) * step;
        const std::size_t outer = n / (s.dim[a] * step);
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t base = o * s.dim[a] * step;
            combine(prev.data() + base, prev.data() + base + step, cur.data() + base, block);
        }
    }

    const auto t = spec.thresholds();
    std::vector<std::int64_t> delta(t.size() + 1, 0);
    for (unsigned axes = 0; axes < 8; ++axes) {
        if (act[axes].empty()) continue;
        const std::int64_t sign = std::popcount(axes) % 2 == 0 ? 1 : -1;
        for (double v : act[axes]) {
            if (std::isinf(v)) continue;
            // Admission is monotone along the threshold sequence, so the cell
            // is present from the first admitting index onward.
            const auto first = std::partition_point(t.begin(), t.end(), [&](double level) {
                return super ? level > v : level < v;
            });
            delta[static_cast<std::size_t>(first - t.begin())] += sign;
        }
    }

    ECCurve out;
    out.thresholds.assign(t.begin(), t.end());
    out.chi.resize(t.size());
    std::int64_t running = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        running += delta[k];
        out.chi[k] = running;
    }
    return out;
}

std::vector<ECCurve> ec_curves_batch(std::span<const GridField> fields, const FiltrationSpec& spec,
                                     unsigned threads) {
    std::vector<ECCurve> out(fields.size());
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(fields.size(), 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < fields.size(); i = next++) {
            out[i] = ec_curve_incremental(fields[i], spec);
        }
    };
    if (threads <= 1) {
        work();
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
    }
    return out;
}

}  // namespace ectop
