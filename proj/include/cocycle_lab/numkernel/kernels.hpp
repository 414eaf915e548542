#pragma once

// Complex double inner-loop kernels. Every kernel has a scalar reference
// implementation; wider variants are selected once at startup from the CPU
// feature set and must agree with the reference to rounding.

#include <complex>
#include <cstddef>
#include <string_view>

namespace cocycle_lab::numkernel::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    /// c[m x n] += a[m x k] * b[k x n], all row-major and contiguous.
    void (*gemm_acc)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                     cplx* c);
    /// sum_i conj(x_i) * y_i
    cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
    /// y += alpha * x
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /// sum_i |x_i|^2
    double (*norm_sq)(std::size_t n, const cplx* x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;

/// Best variant that is both compiled in and supported by the running CPU.
Isa detect_best() noexcept;

const KernelTable& active() noexcept;

/// Overrides the runtime selection (tests use this to pin the reference path).
/// Returns false and leaves the selection unchanged if `isa` is unavailable.
bool set_isa(Isa isa) noexcept;

}  // namespace cocycle_lab::numkernel::kernels
