#pragma once

#include "neocalc/kernels.hpp"

namespace neocalc::kernels::detail {

#ifdef NEOCALC_HAVE_AVX2
// Defined in kernels_avx2.cpp, which is the only unit built with -mavx2.
const KernelTable& avx2_table();
#endif

}  // namespace neocalc::kernels::detail
