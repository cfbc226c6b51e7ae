#pragma once

#include "bdh/kernels.hpp"

namespace bdh::kernels::detail {

extern const KernelTable scalar_table;
#if defined(BDH_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif

}  // namespace bdh::kernels::detail
