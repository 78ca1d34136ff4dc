#include "propm/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace propm::kernels::detail {

void relax_take_neon(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight)
{
    std::size_t head = std::min(weight, length);
    std::copy(src, src + head, dst);

    const int32x4_t one = vdupq_n_s32(1);
    std::size_t s = head;
    for (; s + 4 <= length; s += 4) {
        int32x4_t keep = vld1q_s32(src + s);
        int32x4_t take = vaddq_s32(vld1q_s32(src + s - weight), one);
        vst1q_s32(dst + s, vmaxq_s32(keep, take));
    }
    for (; s < length; ++s) dst[s] = std::max(src[s], src[s - weight] + 1);
}

}  // namespace propm::kernels::detail
