// NEON variant of the reduction kernels for aarch64. Two 2-wide registers
// stand in for the four virtual lanes; vfma is never emitted, so results
// stay bit-equal to the scalar reference.

#include "enskog/simd.hpp"

#include <arm_neon.h>

namespace enskog::simd {
namespace {

void spill(float64x2_t a01, float64x2_t a23, double lane[4]) {
    lane[0] = vgetq_lane_f64(a01, 0);
    lane[1] = vgetq_lane_f64(a01, 1);
    lane[2] = vgetq_lane_f64(a23, 0);
    lane[3] = vgetq_lane_f64(a23, 1);
}

double sum_impl(const double* x, std::size_t n) {
    float64x2_t a01 = vdupq_n_f64(0.0);
    float64x2_t a23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a01 = vaddq_f64(a01, vld1q_f64(x + i));
        a23 = vaddq_f64(a23, vld1q_f64(x + i + 2));
    }
    double lane[4];
    spill(a01, a23, lane);
    for (; i < n; ++i) lane[i & 3] += x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
    float64x2_t a01 = vdupq_n_f64(0.0);
    float64x2_t a23 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        a23 = vaddq_f64(a23,
                        vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double lane[4];
    spill(a01, a23, lane);
    for (; i < n; ++i) lane[i & 3] += x[i] * y[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_sq_impl(const double* x, std::size_t n) {
    return dot_impl(x, x, n);
}

void combine3_impl(const double* x, const double* y, const double* z,
                   double cx, double cy, double cz, double* out,
                   std::size_t n) {
    float64x2_t vcx = vdupq_n_f64(cx);
    float64x2_t vcy = vdupq_n_f64(cy);
    float64x2_t vcz = vdupq_n_f64(cz);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t a = vaddq_f64(vmulq_f64(vld1q_f64(x + i), vcx),
                                  vmulq_f64(vld1q_f64(y + i), vcy));
        vst1q_f64(out + i, vaddq_f64(a, vmulq_f64(vld1q_f64(z + i), vcz)));
    }
    for (; i < n; ++i) out[i] = (x[i] * cx + y[i] * cy) + z[i] * cz;
}

}  // namespace

const Backend* neon_backend() {
    static const Backend b{"neon", sum_impl, dot_impl, sum_sq_impl,
                           combine3_impl};
    return &b;
}

}  // namespace enskog::simd
