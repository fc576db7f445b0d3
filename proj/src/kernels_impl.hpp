#pragma once

#include "fslsense/kernels.hpp"

namespace fslsense::kernels::detail {

#if defined(FSLSENSE_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is compiled with -mavx2 -mfma. Callers
// must check CPU support before using the table.
const KernelTable& avx2_table();
#endif

}  // namespace fslsense::kernels::detail
