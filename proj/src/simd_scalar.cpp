#include "enskog/simd.hpp"

namespace enskog::simd {
namespace {

double sum_impl(const double* x, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += x[i] * y[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_sq_impl(const double* x, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) lane[i & 3] += x[i] * x[i];
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void combine3_impl(const double* x, const double* y, const double* z,
                   double cx, double cy, double cz, double* out,
                   std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (x[i] * cx + y[i] * cy) + z[i] * cz;
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", sum_impl, dot_impl, sum_sq_impl,
                           combine3_impl};
    return b;
}

}  // namespace enskog::simd
