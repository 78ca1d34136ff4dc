#pragma once

// Data-parallel inner loop of the subset-sum DP behind close-to-proportional
// bundles. Each variant computes the same function; the dispatcher picks the
// widest one the CPU supports (override with PROPM_KERNEL=scalar|avx2|neon).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace propm::kernels {

/// Marks an unreachable sum. Far enough from INT32_MIN that +1 per row never wraps.
inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::min() / 2;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Variants compiled into this build and supported by the running CPU; Scalar first.
std::vector<Isa> available_isas();

/// Selected once per process.
Isa active_isa();

/// Cardinality relaxation for one item of the given weight:
///   dst[s] = src[s]                          for s <  weight
///   dst[s] = max(src[s], src[s - weight] + 1) for s >= weight
/// src and dst must have equal length and must not overlap.
void relax_take(std::span<const std::int32_t> src, std::span<std::int32_t> dst, std::size_t weight);
void relax_take(Isa isa, std::span<const std::int32_t> src, std::span<std::int32_t> dst, std::size_t weight);

namespace detail {
void relax_take_scalar(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight);
#if defined(PROPM_BUILD_AVX2)
void relax_take_avx2(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight);
#endif
#if defined(PROPM_BUILD_NEON)
void relax_take_neon(const std::int32_t* src, std::int32_t* dst, std::size_t length, std::size_t weight);
#endif
}  // namespace detail

}  // namespace propm::kernels
