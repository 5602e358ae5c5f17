// NEON variants (aarch64, one complex<double> per 128-bit vector).

#include "cvtele/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace cvtele::kern::neon {

namespace {

struct DotSums {
    double arbr, arbi, aibi, aibr;
};

inline DotSums dot_sums(const cxd* a, const cxd* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    float64x2_t acc1 = vdupq_n_f64(0.0);  // [ar*br, ar*bi]
    float64x2_t acc2 = vdupq_n_f64(0.0);  // [ai*bi, ai*br]
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(pa + 2 * i);
        float64x2_t vb = vld1q_f64(pb + 2 * i);
        float64x2_t bs = vextq_f64(vb, vb, 1);  // [bi, br]
        acc1 = vfmaq_laneq_f64(acc1, vb, va, 0);
        acc2 = vfmaq_laneq_f64(acc2, bs, va, 1);
    }
    return {vgetq_lane_f64(acc1, 0), vgetq_lane_f64(acc1, 1),
            vgetq_lane_f64(acc2, 0), vgetq_lane_f64(acc2, 1)};
}

}  // namespace

cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
    DotSums s = dot_sums(a, b, n);
    return {s.arbr + s.aibi, s.arbi - s.aibr};
}

cxd cdotu(const cxd* a, const cxd* b, std::size_t n) {
    DotSums s = dot_sums(a, b, n);
    return {s.arbr - s.aibi, s.arbi + s.aibr};
}

void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) {
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    const float64x2_t ar = vdupq_n_f64(alpha.real());
    const float64x2_t ai = vdupq_n_f64(alpha.imag());
    const float64x2_t sign = {-1.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t vx = vld1q_f64(px + 2 * i);
        float64x2_t vy = vld1q_f64(py + 2 * i);
        // [-xi, xr]
        float64x2_t xs = vmulq_f64(sign, vextq_f64(vx, vx, 1));
        float64x2_t prod = vfmaq_f64(vmulq_f64(ai, xs), ar, vx);
        vst1q_f64(py + 2 * i, vaddq_f64(vy, prod));
    }
}

void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    const float64x2_t sign = {-1.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t va = vld1q_f64(pa + 2 * i);
        float64x2_t vb = vld1q_f64(pb + 2 * i);
        float64x2_t bs = vmulq_f64(sign, vextq_f64(vb, vb, 1));  // [-bi, br]
        float64x2_t re = vmulq_laneq_f64(vb, va, 0);             // [ar*br, ar*bi]
        vst1q_f64(po + 2 * i, vfmaq_laneq_f64(re, bs, va, 1));   // + [ -ai*bi, ai*br]
    }
}

}  // namespace cvtele::kern::neon

#endif  // aarch64
