#include "cocycle_lab/numkernel/kernels.hpp"

#include <atomic>

namespace cocycle_lab::numkernel::kernels {

#if !defined(COCYCLE_LAB_HAVE_AVX2)
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(COCYCLE_LAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
                   __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

Isa detect_best() noexcept { return cpu_supports(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

namespace {

const KernelTable* table_for(Isa isa) noexcept {
    return isa == Isa::Avx2 ? avx2_table() : &scalar_table();
}

std::atomic<const KernelTable*>& selected() noexcept {
    static std::atomic<const KernelTable*> table{table_for(detect_best())};
    return table;
}

}  // namespace

const KernelTable& active() noexcept { return *selected().load(std::memory_order_acquire); }

bool set_isa(Isa isa) noexcept {
    if (!cpu_supports(isa)) return false;
    selected().store(table_for(isa), std::memory_order_release);
    return true;
}

}  // namespace cocycle_lab::numkernel::kernels
