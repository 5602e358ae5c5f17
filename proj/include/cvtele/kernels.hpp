#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>

// Inner-loop arithmetic kernels on interleaved complex<double> arrays.
// A scalar reference implementation is always available; AVX2 (x86-64,
// runtime-detected) and NEON (aarch64) variants are selected at startup
// and can be overridden with the CVTELE_SIMD env var ("scalar", "avx2",
// "neon", "auto") or force_backend(). All variants are equivalence-tested
// against the scalar path.

namespace cvtele::kern {

using cxd = std::complex<double>;

enum class Backend { scalar, avx2, neon };

Backend active_backend();
void force_backend(Backend b);
bool backend_available(Backend b);
std::string backend_name(Backend b);

// sum_i conj(a_i) * b_i
cxd cdotc(std::span<const cxd> a, std::span<const cxd> b);
// sum_i a_i * b_i
cxd cdotu(std::span<const cxd> a, std::span<const cxd> b);
// y_i += alpha * x_i
void caxpy(cxd alpha, std::span<const cxd> x, std::span<cxd> y);
// out_i = a_i * b_i
void cmul(std::span<const cxd> a, std::span<const cxd> b, std::span<cxd> out);

namespace scalar {
cxd cdotc(const cxd* a, const cxd* b, std::size_t n);
cxd cdotu(const cxd* a, const cxd* b, std::size_t n);
void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n);
void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
cxd cdotc(const cxd* a, const cxd* b, std::size_t n);
cxd cdotu(const cxd* a, const cxd* b, std::size_t n);
void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n);
void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
cxd cdotc(const cxd* a, const cxd* b, std::size_t n);
cxd cdotu(const cxd* a, const cxd* b, std::size_t n);
void caxpy(cxd alpha, const cxd* x, cxd* y, std::size_t n);
void cmul(const cxd* a, const cxd* b, cxd* out, std::size_t n);
}  // namespace neon
#endif

}  // namespace cvtele::kern
