#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace bdh::kernels {

bool supported(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(BDH_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
    }
    return false;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
    }
    return "unknown";
}

const KernelTable& table_for(Isa isa) {
    if (!supported(isa)) {
        throw std::runtime_error("kernel ISA not available: " + std::string(isa_name(isa)));
    }
#if defined(BDH_HAVE_AVX2)
    if (isa == Isa::avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

const KernelTable& active() {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* force = std::getenv("BDH_KERNELS");
        if (force != nullptr && std::strcmp(force, "scalar") == 0) return detail::scalar_table;
        return supported(Isa::avx2) ? table_for(Isa::avx2) : detail::scalar_table;
    }();
    return chosen;
}

}  // namespace bdh::kernels
