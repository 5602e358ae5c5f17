// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma;
// callers must check availability through the dispatcher.

#include "cvtele/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace cvtele::kern::avx2 {

namespace {

// Accumulates the four partial sums sum(ar*br), sum(ar*bi), sum(ai*bi),
// sum(ai*br) over two complexes per 256-bit lane; the caller combines them
// according to the conjugation convention.
struct DotSums {
    double arbr, arbi, aibi, aibr;
};

inline DotSums dot_sums(const cxd* a, const cxd* b, std::size_t n, std::size_t& done) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    __m256d acc1 = _mm256_setzero_pd();  // even: ar*br, odd: ar*bi
    __m256d acc2 = _mm256_setzero_pd();  // even: ai*bi, odd: ai*br
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d ar = _mm256_movedup_pd(va);
        __m256d ai = _mm256_unpackhi_pd(va, va);
        __m256d bs = _mm256_shuffle_pd(vb, vb, 0x5);
        acc1 = _mm256_fmadd_pd(ar, vb, acc1);
        acc2 = _mm256_fmadd_pd(ai, bs, acc2);
    }
    alignas(32) double s1[4], s2[4];
    _mm256_store_pd(s1, acc1);
    _mm256_store_pd(s2, acc2);
    done = i;
    return {s1[0] + s1[2], s1[1] + s1[3], s2[0] + s2[2], s2[1] + s2[3]};
}

}  // namespace

cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
    std::size_t i = 0;
    DotSums s = dot_sums(a, b, n, i);
    double re = s.arbr + s.aibi;
    double im = s.arbi - s.aibr;
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

cxd cdotu(const cxd* a, const cxd* b, std::size_t n) {
    std::size_t i = 0;
    DotSums s = dot_sums(a, b, n, i);
    double re = s.arbr - s.aibi;
    double im = s.arbi + s.aibr;
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        __m256d xs = _mm256_shuffle_pd(vx, vx, 0x5);
        // even: ar*xr - ai*xi, odd: ar*xi + ai*xr
        __m256d prod = _mm256_fmaddsub_pd(ar, vx, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d ar = _mm256_movedup_pd(va);
        __m256d ai = _mm256_unpackhi_pd(va, va);
        __m256d bs = _mm256_shuffle_pd(vb, vb, 0x5);
        _mm256_storeu_pd(po + 2 * i, _mm256_fmaddsub_pd(ar, vb, _mm256_mul_pd(ai, bs)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace cvtele::kern::avx2

#endif  // x86-64
