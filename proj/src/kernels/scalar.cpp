#include "ectop/kernels.hpp"

namespace ectop::kernels {
namespace {

void min_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = b[i] < a[i] ? b[i] : a[i];
}

void max_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = b[i] > a[i] ? b[i] : a[i];
}

void mask_scalar(const double* v, std::size_t n, double level, bool superlevel, std::uint8_t* out) {
    if (superlevel) {
        for (std::size_t i = 0; i < n; ++i) out[i] = v[i] >= level ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = v[i] <= level ? 1 : 0;
    }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

constexpr KernelTable kScalar{"scalar", min_scalar, max_scalar, mask_scalar, axpy_scalar, dot_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace ectop::kernels
