#include "propm/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace propm::kernels {

namespace {

bool cpu_has(Isa isa)
{
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
#if defined(PROPM_BUILD_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::Neon:
#if defined(PROPM_BUILD_NEON)
        return true;  // mandatory on AArch64
#else
        return false;
#endif
    }
    return false;
}

Isa select_isa()
{
    auto isas = available_isas();
    if (const char* forced = std::getenv("PROPM_KERNEL")) {
        std::string want(forced);
        for (Isa isa : isas)
            if (isa_name(isa) == want) return isa;
        // Unknown or unsupported request: fall back to the reference kernel.
        return Isa::Scalar;
    }
    return isas.back();
}

}  // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out{Isa::Scalar};
    for (Isa isa : {Isa::Avx2, Isa::Neon})
        if (cpu_has(isa)) out.push_back(isa);
    return out;
}

Isa active_isa()
{
    static const Isa selected = select_isa();
    return selected;
}

void relax_take(Isa isa, std::span<const std::int32_t> src, std::span<std::int32_t> dst, std::size_t weight)
{
    if (src.size() != dst.size()) throw std::invalid_argument("relax_take: length mismatch");
    switch (isa) {
    case Isa::Scalar:
        detail::relax_take_scalar(src.data(), dst.data(), src.size(), weight);
        return;
    case Isa::Avx2:
#if defined(PROPM_BUILD_AVX2)
        if (cpu_has(Isa::Avx2)) {
            detail::relax_take_avx2(src.data(), dst.data(), src.size(), weight);
            return;
        }
#endif
        break;
    case Isa::Neon:
#if defined(PROPM_BUILD_NEON)
        detail::relax_take_neon(src.data(), dst.data(), src.size(), weight);
        return;
#endif
        break;
    }
    throw std::invalid_argument("relax_take: kernel variant '" + std::string(isa_name(isa)) + "' not available");
}

void relax_take(std::span<const std::int32_t> src, std::span<std::int32_t> dst, std::size_t weight)
{
    relax_take(active_isa(), src, dst, weight);
}

}  // namespace propm::kernels
