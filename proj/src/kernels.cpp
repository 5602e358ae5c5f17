#include "cvtele/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace cvtele::kern {

namespace scalar {

cxd cdotc(const cxd* a, const cxd* b, std::size_t n) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

cxd cdotu(const cxd* a, const cxd* b, std::size_t n) {
    cxd acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect_backend() {
    if (const char* env = std::getenv("CVTELE_SIMD")) {
        std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && backend_available(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && backend_available(Backend::neon)) return Backend::neon;
        // "auto" or an unavailable request falls through to detection
    }
#if defined(__aarch64__)
    return Backend::neon;
#else
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
#endif
}

std::atomic<Backend> g_backend{detect_backend()};

}  // namespace

bool backend_available(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2: return cpu_has_avx2();
        case Backend::neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (!backend_available(b)) throw std::runtime_error("kernel backend not available on this host");
    g_backend.store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

cxd cdotc(std::span<const cxd> a, std::span<const cxd> b) {
    const std::size_t n = a.size();
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::cdotc(a.data(), b.data(), n);
#endif
#if defined(__aarch64__)
    if (active_backend() == Backend::neon) return neon::cdotc(a.data(), b.data(), n);
#endif
    return scalar::cdotc(a.data(), b.data(), n);
}

cxd cdotu(std::span<const cxd> a, std::span<const cxd> b) {
    const std::size_t n = a.size();
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::cdotu(a.data(), b.data(), n);
#endif
#if defined(__aarch64__)
    if (active_backend() == Backend::neon) return neon::cdotu(a.data(), b.data(), n);
#endif
    return scalar::cdotu(a.data(), b.data(), n);
}

void caxpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y) {
    const std::size_t n = x.size();
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::caxpy(alpha, x.data(), y.data(), n);
#endif
#if defined(__aarch64__)
    if (active_backend() == Backend::neon) return neon::caxpy(alpha, x.data(), y.data(), n);
#endif
    scalar::caxpy(alpha, x.data(), y.data(), n);
}

void cmul(std::span<const cxd> a, std::span<const cxd> b, std::span<cxd> out) {
    const std::size_t n = a.size();
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::cmul(a.data(), b.data(), out.data(), n);
#endif
#if defined(__aarch64__)
    if (active_backend() == Backend::neon) return neon::cmul(a.data(), b.data(), out.data(), n);
#endif
    scalar::cmul(a.data(), b.data(), out.data(), n);
}

}  // namespace cvtele::kern
