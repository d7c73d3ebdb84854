#pragma once

#include "tangenttri/kernels.hpp"

namespace tangenttri::kernels::detail {

#if defined(TANGENTTRI_HAVE_AVX2)
// Defined in the translation unit compiled with -mavx2; only call after a
// successful CPU check.
const KernelTable& avx2_table_unchecked();
#endif

}  // namespace tangenttri::kernels::detail
