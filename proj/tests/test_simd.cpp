#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "enskog/rng.hpp"
#include "enskog/simd.hpp"

using namespace enskog;

namespace {

std::vector<double> noisy(std::size_t n, uint64_t stream) {
    // Mixed magnitudes and signs so reassociated sums would differ.
    Rng rng(77, stream);
    std::vector<double> x(n);
    for (auto& v : x) {
        v = rng.normal() * std::pow(10.0, 6.0 * rng.uniform() - 3.0);
    }
    return x;
}

}  // namespace

TEST_CASE("scalar reduction kernel basics") {
    const simd::Backend& s = simd::scalar_backend();
    CHECK(std::strcmp(s.name, "scalar") == 0);
    double x[] = {1.0, 2.0, 3.0, 4.0, 5.0};
    double y[] = {1.0, 1.0, 2.0, 2.0, 0.5};
    CHECK(s.sum(x, 5) == 15.0);
    CHECK(s.sum(x, 0) == 0.0);
    CHECK(s.dot(x, y, 5) == 1.0 + 2.0 + 6.0 + 8.0 + 2.5);
    CHECK(s.sum_sq(x, 5) == 1.0 + 4.0 + 9.0 + 16.0 + 25.0);
    double z[] = {10.0, 20.0, 30.0, 40.0, 50.0};
    double out[5];
    s.combine3(x, y, z, 2.0, -1.0, 0.5, out, 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(out[i] == (x[i] * 2.0 + y[i] * -1.0) + z[i] * 0.5);
    }
}

TEST_CASE("vector backend agrees with scalar bitwise") {
    const simd::Backend* v = simd::vector_backend();
    if (v == nullptr) {
        MESSAGE("no vector backend on this host; scalar only");
        return;
    }
    const simd::Backend& s = simd::scalar_backend();
    for (std::size_t n :
         {0ul, 1ul, 2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 15ul, 16ul, 33ul, 1000ul,
          1001ul, 1002ul, 1003ul}) {
        auto x = noisy(n, 2 * n + 1);
        auto y = noisy(n, 2 * n + 2);
        auto z = noisy(n, 2 * n + 3);
        CHECK(v->sum(x.data(), n) == s.sum(x.data(), n));
        CHECK(v->dot(x.data(), y.data(), n) == s.dot(x.data(), y.data(), n));
        CHECK(v->sum_sq(x.data(), n) == s.sum_sq(x.data(), n));
        std::vector<double> outs(n), outv(n);
        s.combine3(x.data(), y.data(), z.data(), 0.3, -1.7, 2.9, outs.data(),
                   n);
        v->combine3(x.data(), y.data(), z.data(), 0.3, -1.7, 2.9, outv.data(),
                    n);
        for (std::size_t i = 0; i < n; ++i) CHECK(outv[i] == outs[i]);
    }
}

TEST_CASE("active backend is one of the known kernels") {
    const simd::Backend& b = simd::backend();
    bool known = std::strcmp(b.name, "scalar") == 0 ||
                 std::strcmp(b.name, "avx2") == 0 ||
                 std::strcmp(b.name, "neon") == 0;
    CHECK(known);
    // Whatever was selected must agree with scalar on a spot check.
    auto x = noisy(257, 99);
    CHECK(b.sum(x.data(), x.size()) ==
          simd::scalar_backend().sum(x.data(), x.size()));
}
