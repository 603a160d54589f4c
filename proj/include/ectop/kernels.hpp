#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// optional SIMD variants. The variant is picked once at startup from cpuid;
// set ECTOP_KERNELS=scalar to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ectop::kernels {

struct KernelTable {
    std::string_view name;
    /// out[i] = min(a[i], b[i]). out may alias a.
    void (*pairwise_min)(const double* a, const double* b, double* out, std::size_t n);
    /// out[i] = max(a[i], b[i]). out may alias a.
    void (*pairwise_max)(const double* a, const double* b, double* out, std::size_t n);
    /// out[i] = (v[i] >= level) for superlevel, (v[i] <= level) otherwise.
    void (*threshold_mask)(const double* v, std::size_t n, double level, bool superlevel,
                           std::uint8_t* out);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the binary was built without AVX2 support or the CPU lacks
/// AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// The table used by all library code.
const KernelTable& active() noexcept;

inline void pairwise_min(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    active().pairwise_min(a.data(), b.data(), out.data(), out.size());
}

inline void pairwise_max(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    active().pairwise_max(a.data(), b.data(), out.data(), out.size());
}

inline void threshold_mask(std::span<const double> v, double level, bool superlevel,
                           std::span<std::uint8_t> out) {
    active().threshold_mask(v.data(), v.size(), level, superlevel, out.data());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), y.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

}  // namespace ectop::kernels
