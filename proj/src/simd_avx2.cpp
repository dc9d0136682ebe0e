// AVX2 variant of the reduction kernels. Compiled with -mavx2 on x86-64
// only; selected at runtime after a cpuid probe. Register lane j plays the
// role of virtual lane j, tails fall back to per-lane scalar adds, and no
// FMA is issued, keeping results bit-equal to the scalar reference.

#include "enskog/simd.hpp"

#include <immintrin.h>

namespace enskog::simd {
namespace {

double sum_impl(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                     _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, prod);
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += x[i] * y[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_sq_impl(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < n; ++i) lane[i & 3] += x[i] * x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void combine3_impl(const double* x, const double* y, const double* z,
                   double cx, double cy, double cz, double* out,
                   std::size_t n) {
    __m256d vcx = _mm256_set1_pd(cx);
    __m256d vcy = _mm256_set1_pd(cy);
    __m256d vcz = _mm256_set1_pd(cz);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(x + i), vcx),
                                  _mm256_mul_pd(_mm256_loadu_pd(y + i), vcy));
        __m256d r = _mm256_add_pd(a, _mm256_mul_pd(_mm256_loadu_pd(z + i), vcz));
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = (x[i] * cx + y[i] * cy) + z[i] * cz;
}

}  // namespace

const Backend* avx2_backend() {
    static const Backend b{"avx2", sum_impl, dot_impl, sum_sq_impl,
                           combine3_impl};
    return &b;
}

}  // namespace enskog::simd
