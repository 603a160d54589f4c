#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ectop/featstats.hpp"

namespace ectop {

double ec_distance(const ECCurve& a, const ECCurve& b) {
    if (a.thresholds != b.thresholds || a.chi.size() != b.chi.size() || a.chi.size() != a.thresholds.size()) {
        throw Error(ErrorCode::ThresholdMismatch, "curves use different thresholds");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < a.chi.size(); ++k) {
        const double d = static_cast<double>(a.chi[k] - b.chi[k]);
        s += d * d;
    }
    return std::sqrt(s);
}

double morans_i(const GridField& field) {
    if (field.ndim() != 2) throw Error(ErrorCode::InvalidDimensions, "Moran's I needs a 2D field");
    const auto v = field.values();
    if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; })) {
        throw Error(ErrorCode::ConstantField, "field has zero variance");
    }
    const std::size_t rows = field.dims()[0];
    const std::size_t cols = field.dims()[1];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());

    double sum_sq = 0.0;
    for (double x : v) sum_sq += (x - mean) * (x - mean);

    // Each unordered rook pair contributes w_ij = w_ji = 1.
    double cross = 0.0;
    double weight = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double zi = v[r * cols + c] - mean;
            if (c + 1 < cols) {
                cross += 2.0 * zi * (v[r * cols + c + 1] - mean);
                weight += 2.0;
            }
            if (r + 1 < rows) {
                cross += 2.0 * zi * (v[(r + 1) * cols + c] - mean);
                weight += 2.0;
            }
        }
    }
    if (weight == 0.0) throw Error(ErrorCode::InvalidDimensions, "field has no neighbour pairs");
    return static_cast<double>(v.size()) / weight * cross / sum_sq;
}

namespace {

inline constexpr std::size_t kMaxDftSize = std::size_t{1} << 18;

// In-place naive DFT of `count` lines of length n spaced by `stride`,
// consecutive lines `pitch` apart.
void dft_lines(std::vector<std::complex<double>>& data, std::size_t n, std::size_t stride,
               std::size_t count, std::size_t pitch) {
    std::vector<std::complex<double>> twiddle(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<std::complex<double>> line(n);
    for (std::size_t l = 0; l < count; ++l) {
        const std::size_t base = l * pitch;
        for (std::size_t f = 0; f < n; ++f) {
            std::complex<double> acc = 0.0;
            for (std::size_t t = 0; t < n; ++t) acc += data[base + t * stride] * twiddle[(f * t) % n];
            line[f] = acc;
        }
        for (std::size_t f = 0; f < n; ++f) data[base + f * stride] = line[f];
    }
}

}  // namespace

GridField dft_magnitude(const GridField& field) {
    if (field.ndim() > 2) throw Error(ErrorCode::InvalidDimensions, "DFT supports 1D and 2D fields");
    if (field.size() > kMaxDftSize) throw Error(ErrorCode::TooLarge, "DFT input exceeds 2^18 values");
    std::vector<std::complex<double>> data(field.values().begin(), field.values().end());
    if (field.ndim() == 1) {
        dft_lines(data, field.size(), 1, 1, 0);
    } else {
        const std::size_t rows = field.dims()[0];
        const std::size_t cols = field.dims()[1];
        dft_lines(data, cols, 1, rows, cols);
        dft_lines(data, rows, cols, cols, 1);
    }
    std::vector<double> mag(data.size());
    std::transform(data.begin(), data.end(), mag.begin(), [](const std::complex<double>& z) { return std::abs(z); });
    return GridField(std::vector<std::size_t>(field.dims().begin(), field.dims().end()), std::move(mag));
}

}  // namespace ectop
