#pragma once
// Runtime-dispatched reduction kernels. Every variant shares one accumulation
// shape: four virtual lanes filled round-robin by element index, reduced as
// (l0 + l1) + (l2 + l3), multiplies never fused into adds. A 4-wide AVX2
// register or a pair of 2-wide NEON registers performs the same lane-wise
// IEEE operations in the same order as the scalar reference, so all backends
// produce bitwise-identical results; the test suite asserts exact equality.

#include <cstddef>

namespace enskog::simd {

struct Backend {
    const char* name;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*sum_sq)(const double* x, std::size_t n);
    // out[i] = (x[i] * cx + y[i] * cy) + z[i] * cz
    void (*combine3)(const double* x, const double* y, const double* z,
                     double cx, double cy, double cz, double* out,
                     std::size_t n);
};

// Backend chosen once per process: ENSKOG_SIMD=scalar|avx2|neon overrides
// the CPU probe; an unavailable request falls back to scalar.
const Backend& backend();

// Always-available reference implementation.
const Backend& scalar_backend();

// Vector variant the current CPU supports, or null.
const Backend* vector_backend();

}  // namespace enskog::simd
