// Compiled with -mavx2 -mfma on x86-64 only; never called unless the CPU
// reports both features (see dispatch.cpp).

#include "cocycle_lab/numkernel/kernels.hpp"

#include <immintrin.h>

namespace cocycle_lab::numkernel::kernels {
namespace {

// (ar + i ai) * (br + i bi) for the two complex numbers packed in b.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d b) {
    const __m256d swapped = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, swapped));
}

void axpy_row(std::size_t n, double ar_s, double ai_s, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(ar_s);
    const __m256d ai = _mm256_set1_pd(ai_s);
    const double* xs = reinterpret_cast<const double*>(x);
    double* ys = reinterpret_cast<double*>(y);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d y0 = _mm256_loadu_pd(ys + 2 * j);
        __m256d y1 = _mm256_loadu_pd(ys + 2 * j + 4);
        y0 = _mm256_add_pd(y0, cmul_broadcast(ar, ai, _mm256_loadu_pd(xs + 2 * j)));
        y1 = _mm256_add_pd(y1, cmul_broadcast(ar, ai, _mm256_loadu_pd(xs + 2 * j + 4)));
        _mm256_storeu_pd(ys + 2 * j, y0);
        _mm256_storeu_pd(ys + 2 * j + 4, y1);
    }
    for (; j + 2 <= n; j += 2) {
        __m256d y0 = _mm256_loadu_pd(ys + 2 * j);
        y0 = _mm256_add_pd(y0, cmul_broadcast(ar, ai, _mm256_loadu_pd(xs + 2 * j)));
        _mm256_storeu_pd(ys + 2 * j, y0);
    }
    for (; j < n; ++j) {
        const double xr = x[j].real();
        const double xi = x[j].imag();
        y[j] = cplx(y[j].real() + (ar_s * xr - ai_s * xi), y[j].imag() + (ar_s * xi + ai_s * xr));
    }
}

void gemm_acc_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                   cplx* c) {
    for (std::size_t i = 0; i < m; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double ar = a[i * k + p].real();
            const double ai = a[i * k + p].imag();
            if (ar == 0.0 && ai == 0.0) continue;
            axpy_row(n, ar, ai, b + p * n, crow);
        }
    }
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    axpy_row(n, alpha.real(), alpha.imag(), x, y);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xs = reinterpret_cast<const double*>(x);
    const double* ys = reinterpret_cast<const double*>(y);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
        const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
        re = _mm256_fmadd_pd(xv, yv, re);
        im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), im);
    }
    // im lanes hold (xr*yi, xi*yr, ...); the imaginary part is even minus odd.
    alignas(32) double iml[4];
    _mm256_store_pd(iml, im);
    double r = hsum(re);
    double i = (iml[0] - iml[1]) + (iml[2] - iml[3]);
    for (; j < n; ++j) {
        r += x[j].real() * y[j].real() + x[j].imag() * y[j].imag();
        i += x[j].real() * y[j].imag() - x[j].imag() * y[j].real();
    }
    return {r, i};
}

double norm_sq_avx2(std::size_t n, const cplx* x) {
    const double* xs = reinterpret_cast<const double*>(x);
    const std::size_t len = 2 * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 8 <= len; j += 8) {
        const __m256d v0 = _mm256_loadu_pd(xs + j);
        const __m256d v1 = _mm256_loadu_pd(xs + j + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; j + 4 <= len; j += 4) {
        const __m256d v0 = _mm256_loadu_pd(xs + j);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; j < len; ++j) s += xs[j] * xs[j];
    return s;
}

constexpr KernelTable kAvx2{Isa::Avx2, gemm_acc_avx2, dotc_avx2, axpy_avx2, norm_sq_avx2};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace cocycle_lab::numkernel::kernels
