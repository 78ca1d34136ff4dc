#include "propm/kernels.hpp"

#include <algorithm>

namespace propm::kernels::detail {

void relax_take_scalar(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight)
{
    std::size_t head = std::min(weight, length);
    std::copy(src, src + head, dst);
    for (std::size_t s = head; s < length; ++s) dst[s] = std::max(src[s], src[s - weight] + 1);
}

}  // namespace propm::kernels::detail
