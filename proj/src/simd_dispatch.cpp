#include "enskog/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace enskog::simd {

#ifdef ENSKOG_HAVE_AVX2
const Backend* avx2_backend();
#endif
#ifdef ENSKOG_HAVE_NEON
const Backend* neon_backend();
#endif

const Backend* vector_backend() {
#ifdef ENSKOG_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return avx2_backend();
#endif
#ifdef ENSKOG_HAVE_NEON
    return neon_backend();
#endif
    return nullptr;
}

const Backend& backend() {
    static const Backend* chosen = [] {
        const Backend* vec = vector_backend();
        if (const char* env = std::getenv("ENSKOG_SIMD")) {
            if (std::strcmp(env, "scalar") == 0) return &scalar_backend();
            if (vec != nullptr && std::strcmp(env, vec->name) == 0) return vec;
            return &scalar_backend();
        }
        return vec != nullptr ? vec : &scalar_backend();
    }();
    return *chosen;
}

}  // namespace enskog::simd
