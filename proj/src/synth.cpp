#include "ectop/synth.hpp"

#include <cmath>
#include <string>

#include "ectop/rng.hpp"

namespace ectop {

RDResult rd_integrate(const RDParams& p, std::vector<double> u, std::vector<double> v) {
    if (!(p.diffusion > 0.0) || !(p.reaction >= 0.0) || !(p.dx > 0.0) || !(p.dt > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "need D > 0, R >= 0, dt > 0, dx > 0");
    }
    if (p.n < 4 || p.snapshots < 2 || p.steps < p.snapshots) {
        throw Error(ErrorCode::InvalidParameter, "need n >= 4, T >= 2 and steps >= T");
    }
    const double bound = p.dx * p.dx / (4.0 * p.diffusion);
    if (p.dt > bound) {
        throw Error(ErrorCode::UnstableStep, "dt " + std::to_string(p.dt) + " exceeds dx^2/(4D) = " +
                                                 std::to_string(bound));
    }

    const std::size_t n = p.n;
    const std::size_t cells = n * n;
    const std::size_t T = p.snapshots;
    const std::size_t stride = p.steps / T;
    if (u.size() != cells || v.size() != cells) {
        throw Error(ErrorCode::InvalidDimensions, "initial state must hold n * n values per species");
    }

    std::vector<double> out_u(cells * T);
    std::vector<double> out_v(cells * T);
    std::vector<double> nu(cells);
    std::vector<double> nv(cells);
    const double k = p.diffusion * p.dt / (p.dx * p.dx);
    const double r = p.reaction * p.dt;

    for (std::size_t step = 1; step <= stride * T; ++step) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t up = ((i + n - 1) % n) * n;
            const std::size_t down = ((i + 1) % n) * n;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t c = i * n + j;
                const std::size_t left = i * n + (j + n - 1) % n;
                const std::size_t right = i * n + (j + 1) % n;
                const double lap_u = u[up + j] + u[down + j] + u[left] + u[right] - 4.0 * u[c];
                const double lap_v = v[up + j] + v[down + j] + v[left] + v[right] - 4.0 * v[c];
                const double exchange = r * (v[c] - u[c]);
                nu[c] = u[c] + k * lap_u + exchange;
                nv[c] = v[c] + k * lap_v - exchange;
            }
        }
        u.swap(nu);
        v.swap(nv);
        if (step % stride == 0) {
            const std::size_t snap = step / stride - 1;
            for (std::size_t c = 0; c < cells; ++c) {
                out_u[c * T + snap] = u[c];
                out_v[c * T + snap] = v[c];
            }
        }
    }
    return RDResult{GridField({n, n, T}, std::move(out_u)), GridField({n, n, T}, std::move(out_v))};
}

RDResult rd_simulate(const RDParams& p) {
    Rng rng(p.seed);
    std::vector<double> u(p.n * p.n);
    std::vector<double> v(p.n * p.n);
    for (double& x : u) x = rng.uniform();
    for (double& x : v) x = rng.uniform();
    return rd_integrate(p, std::move(u), std::move(v));
}

TimeSeriesMatrix sample_gaussian_timeseries(const SquareMatrix& prec, std::size_t m, std::uint64_t seed) {
    Matrix l;
    try {
        l = cholesky(prec);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::NotSPD, "precision is not SPD");
        throw;
    }
    const std::size_t n = prec.rows();
    Rng rng(seed);
    std::vector<double> values(m * n);
    std::vector<double> z(n);
    // prec = L L^T; x = L^{-T} z has covariance (L L^T)^{-1}.
    for (std::size_t t = 0; t < m; ++t) {
        for (double& zi : z) zi = rng.normal();
        double* x = values.data() + t * n;
        for (std::size_t i = n; i-- > 0;) {
            double s = z[i];
            for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
            x[i] = s / l(i, i);
        }
    }
    return TimeSeriesMatrix(m, n, std::move(values));
}

GridField texture_field(TextureKind kind, std::size_t n, std::uint64_t seed) {
    if (n < 16) throw Error(ErrorCode::InvalidParameter, "texture side must be >= 16");
    const double sigma = kind == TextureKind::smooth ? 4.0 : 1.0;
    Rng rng(seed);
    std::vector<double> noise(n * n);
    for (double& x : noise) x = rng.normal();

    // Truncated at 4 sigma, normalised to unit sum.
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(4.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double tap_sum = 0.0;
    for (std::ptrdiff_t d = -radius; d <= radius; ++d) {
        const double w = std::exp(-0.5 * static_cast<double>(d * d) / (sigma * sigma));
        taps[static_cast<std::size_t>(d + radius)] = w;
        tap_sum += w;
    }
    for (double& w : taps) w /= tap_sum;

    const auto sn = static_cast<std::ptrdiff_t>(n);
    auto wrap = [sn](std::ptrdiff_t i) { return static_cast<std::size_t>(((i % sn) + sn) % sn); };
    std::vector<double> tmp(n * n, 0.0);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::ptrdiff_t d = -radius; d <= radius; ++d)
                s += taps[static_cast<std::size_t>(d + radius)] * noise[r * n + wrap(static_cast<std::ptrdiff_t>(c) + d)];
            tmp[r * n + c] = s;
        }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::ptrdiff_t d = -radius; d <= radius; ++d)
                s += taps[static_cast<std::size_t>(d + radius)] * tmp[wrap(static_cast<std::ptrdiff_t>(r) + d) * n + c];
            out[r * n + c] = s;
        }

    double mean = 0.0;
    for (double x : out) mean += x;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (double& x : out) {
        x -= mean;
        var += x * x;
    }
    const double sd = std::sqrt(var / static_cast<double>(out.size()));
    for (double& x : out) x /= sd;
    return GridField({n, n}, std::move(out));
}

}  // namespace ectop
