#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ectop/kernels.hpp"
#include "ectop/rng.hpp"

using namespace ectop;
using kernels::KernelTable;

namespace {

std::vector<const KernelTable*> variants() {
    std::vector<const KernelTable*> v{&kernels::scalar_table()};
    if (const auto* t = kernels::avx2_table()) v.push_back(t);
    return v;
}

std::vector<double> random_values(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) {
        // Quantised, with repeats and signed zeros, plus the infinities the
        // cubical sweep uses as sentinels.
        const auto r = rng.below(24);
        if (r == 0) x = std::numeric_limits<double>::infinity();
        else if (r == 1) x = -std::numeric_limits<double>::infinity();
        else if (r == 2) x = -0.0;
        else x = static_cast<double>(rng.below(9)) - 4.0 + (r % 3 == 0 ? rng.uniform() : 0.0);
    }
    return v;
}

}  // namespace

TEST_CASE("active kernel table is one of the known variants") {
    const auto& a = kernels::active();
    CHECK((a.name == "scalar" || a.name == "avx2"));
    MESSAGE("active kernels: " << a.name);
}

TEST_CASE("SIMD kernels match the scalar reference") {
    const KernelTable& ref = kernels::scalar_table();
    Rng rng(42);
    for (const KernelTable* t : variants()) {
        CAPTURE(t->name);
        // Lengths straddle every remainder of the 4- and 8-wide loops.
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 100u, 1001u}) {
            CAPTURE(n);
            const auto a = random_values(rng, n);
            const auto b = random_values(rng, n);

            std::vector<double> r1(n), r2(n);
            ref.pairwise_min(a.data(), b.data(), r1.data(), n);
            t->pairwise_min(a.data(), b.data(), r2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::signbit(r1[i]) == std::signbit(r2[i]));
            CHECK(r1 == r2);

            ref.pairwise_max(a.data(), b.data(), r1.data(), n);
            t->pairwise_max(a.data(), b.data(), r2.data(), n);
            CHECK(r1 == r2);

            for (bool super : {true, false}) {
                std::vector<std::uint8_t> m1(n), m2(n);
                ref.threshold_mask(a.data(), n, 0.0, super, m1.data());
                t->threshold_mask(a.data(), n, 0.0, super, m2.data());
                CHECK(m1 == m2);
            }

            // Finite data only for the arithmetic kernels; results agree to
            // rounding (FMA and reassociated sums).
            std::vector<double> fa(n), fb(n);
            for (auto& x : fa) x = rng.normal();
            for (auto& x : fb) x = rng.normal();
            std::vector<double> y1 = fb, y2 = fb;
            ref.axpy(0.37, fa.data(), y1.data(), n);
            t->axpy(0.37, fa.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

            double mag = 0.0;
            for (std::size_t i = 0; i < n; ++i) mag += std::abs(fa[i] * fb[i]);
            CHECK(std::abs(ref.dot(fa.data(), fb.data(), n) - t->dot(fa.data(), fb.data(), n)) <= 1e-14 * (mag + 1.0));
        }
    }
}

TEST_CASE("pairwise kernels allow out to alias the first input") {
    for (const KernelTable* t : variants()) {
        std::vector<double> a{5, 1, 4, 2, 3, 9, 0};
        const std::vector<double> b{1, 5, 2, 4, 3, -1, 0};
        t->pairwise_min(a.data(), b.data(), a.data(), a.size());
        CHECK(a == std::vector<double>{1, 1, 2, 2, 3, -1, 0});
    }
}
