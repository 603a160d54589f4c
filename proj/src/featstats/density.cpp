#include <algorithm>
#include <cmath>
#include <numbers>

#include "ectop/featstats.hpp"
#include "ectop/kernels.hpp"

namespace ectop {

double KdeGrid::cell_area() const noexcept {
    return (xmax - xmin) / static_cast<double>(nx) * (ymax - ymin) / static_cast<double>(ny);
}

namespace {

struct Box {
    double xmin, xmax, ymin, ymax;
};

Box bounding_box(const PointCloud2D& pc) {
    Box b{pc.points()[0].x, pc.points()[0].x, pc.points()[0].y, pc.points()[0].y};
    for (const Point2& p : pc.points()) {
        b.xmin = std::min(b.xmin, p.x);
        b.xmax = std::max(b.xmax, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.ymax = std::max(b.ymax, p.y);
    }
    return b;
}

void check_bandwidth(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidParameter, "bandwidth must be > 0");
}

}  // namespace

KdeGrid padded_kde_grid(const PointCloud2D& pc, double bandwidth, std::size_t nx, std::size_t ny,
                        double padding) {
    check_bandwidth(bandwidth);
    const Box b = bounding_box(pc);
    const double pad = padding * bandwidth;
    return KdeGrid{nx, ny, b.xmin - pad, b.xmax + pad, b.ymin - pad, b.ymax + pad};
}

GridField gaussian_kde_grid(const PointCloud2D& pc, double bandwidth, const KdeGrid& grid) {
    check_bandwidth(bandwidth);
    if (grid.nx == 0 || grid.ny == 0) throw Error(ErrorCode::InvalidParameter, "grid needs at least one cell");
    if (!(grid.xmin < grid.xmax) || !(grid.ymin < grid.ymax)) {
        throw Error(ErrorCode::InvalidParameter, "grid box is empty");
    }
    const Box b = bounding_box(pc);
    const double pad = 3.0 * bandwidth;
    // Slack of one part in 1e9 so a grid built by padded_kde_grid passes.
    const double slack = 1e-9 * std::max({1.0, std::abs(b.xmin) + pad, std::abs(b.xmax) + pad,
                                          std::abs(b.ymin) + pad, std::abs(b.ymax) + pad});
    if (grid.xmin > b.xmin - pad + slack || grid.xmax < b.xmax + pad - slack ||
        grid.ymin > b.ymin - pad + slack || grid.ymax < b.ymax + pad - slack) {
        throw Error(ErrorCode::GridTooSmall, "grid must cover the point bounding box plus 3 bandwidths");
    }

    const double cw = (grid.xmax - grid.xmin) / static_cast<double>(grid.nx);
    const double ch = (grid.ymax - grid.ymin) / static_cast<double>(grid.ny);
    const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);

    std::vector<double> values(grid.nx * grid.ny, 0.0);
    std::vector<double> gx(grid.nx);
    std::vector<double> gy(grid.ny);
    // exp(-(dx^2 + dy^2) / 2h^2) = gx * gy, so each point is a rank-one update.
    for (const Point2& p : pc.points()) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double d = grid.xmin + (static_cast<double>(i) + 0.5) * cw - p.x;
            gx[i] = std::exp(-d * d * inv2h2);
        }
        for (std::size_t j = 0; j < grid.ny; ++j) {
            const double d = grid.ymin + (static_cast<double>(j) + 0.5) * ch - p.y;
            gy[j] = std::exp(-d * d * inv2h2);
        }
        for (std::size_t j = 0; j < grid.ny; ++j) {
            if (gy[j] == 0.0) continue;
            kernels::axpy(gy[j], gx, std::span<double>(values.data() + j * grid.nx, grid.nx));
        }
    }
    const double norm = 1.0 / (static_cast<double>(pc.size()) * 2.0 * std::numbers::pi * bandwidth * bandwidth);
    for (double& v : values) v *= norm;
    return GridField({grid.ny, grid.nx}, std::move(values));
}

}  // namespace ectop
