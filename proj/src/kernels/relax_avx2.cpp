#include "propm/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace propm::kernels::detail {

void relax_take_avx2(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight)
{
    std::size_t head = std::min(weight, length);
    std::copy(src, src + head, dst);

    const __m256i one = _mm256_set1_epi32(1);
    std::size_t s = head;
    for (; s + 8 <= length; s += 8) {
        __m256i keep = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + s));
        __m256i take = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + s - weight));
        take = _mm256_add_epi32(take, one);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + s), _mm256_max_epi32(keep, take));
    }
    for (; s < length; ++s) dst[s] = std::max(src[s], src[s - weight] + 1);
}

}  // namespace propm::kernels::detail
