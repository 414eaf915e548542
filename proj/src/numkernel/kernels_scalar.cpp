#include "cocycle_lab/numkernel/kernels.hpp"

namespace cocycle_lab::numkernel::kernels {
namespace {

// Plain real/imaginary arithmetic; std::complex operator* carries Annex G
// inf/nan recovery that we neither need nor want in the reference path.

void gemm_acc_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                     cplx* c) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            const cplx* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double br = brow[j].real();
                const double bi = brow[j].imag();
                crow[j] = cplx(crow[j].real() + (ar * br - ai * bi),
                               crow[j].imag() + (ar * bi + ai * br));
            }
        }
    }
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real();
    const double ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real();
        const double xi = x[i].imag();
        y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

double norm_sq_scalar(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

constexpr KernelTable kScalar{Isa::Scalar, gemm_acc_scalar, dotc_scalar, axpy_scalar,
                              norm_sq_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace cocycle_lab::numkernel::kernels
