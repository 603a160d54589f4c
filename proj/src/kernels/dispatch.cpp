#include <cstdlib>
#include <string_view>

#include "ectop/kernels.hpp"

namespace ectop::kernels {

#if defined(ECTOP_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

const KernelTable* avx2_table() noexcept {
#if defined(ECTOP_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    return supported ? &kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& table = []() -> const KernelTable& {
        const char* env = std::getenv("ECTOP_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
        if (const KernelTable* t = avx2_table()) return *t;
        return scalar_table();
    }();
    return table;
}

}  // namespace ectop::kernels
