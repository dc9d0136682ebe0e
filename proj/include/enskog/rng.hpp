#pragma once
// Counter-based random number generation (Philox4x32-10).
//
// Every logical stream is identified by (seed, stream id) and produces a
// fixed sequence regardless of what any other stream does. That gives:
//   * per-particle substreams whose draws do not depend on event interleaving
//     or worker count, so simulation output is bit-reproducible;
//   * shared-seed coupling between runs that differ only in a parameter
//     (truncation level), where matched draws are required.
//
// Layout: key = 64-bit seed, counter words = [block_lo, block_hi,
// stream_lo, stream_hi]. Each block yields four 32-bit words.

#include <array>
#include <cstdint>
#include <cmath>

#include "enskog/vec3.hpp"

namespace enskog {

namespace detail {

// One 10-round Philox4x32 block. Verified against the published
// known-answer vectors in test_rng.cpp.
inline std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr,
                                             std::array<uint32_t, 2> key) {
    constexpr uint32_t kMul0 = 0xD2511F53u;
    constexpr uint32_t kMul1 = 0xCD9E8D57u;
    constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        const uint64_t p0 = uint64_t(kMul0) * ctr[0];
        const uint64_t p1 = uint64_t(kMul1) * ctr[2];
        const std::array<uint32_t, 4> next = {
            uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
            uint32_t(p1),
            uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
            uint32_t(p0),
        };
        ctr = next;
    }
    return ctr;
}

}  // namespace detail

// Stream-id domains. The high byte of the stream id keeps draw purposes in
// disjoint id spaces so adding a consumer never shifts another one's draws.
enum class StreamDomain : uint64_t {
    particle = 1,   // per-particle event draws
    init = 2,       // per-particle initial conditions
    bootstrap = 3,  // bootstrap resampling in law_distance
    pairs = 4,      // pair/xi sampling in diagnostics
    sampler = 5,    // standalone kernel sampling (tests, tanaka)
    resample = 6,   // ensemble resampling
};

inline uint64_t stream_id(StreamDomain domain, uint64_t index) {
    return (uint64_t(domain) << 56) | (index & 0x00FFFFFFFFFFFFFFull);
}

// Derives a child seed, e.g. one seed per replicate from a root seed.
// tag keeps unrelated derivations apart.
inline uint64_t derive_seed(uint64_t seed, uint32_t tag, uint64_t index) {
    const std::array<uint32_t, 4> out = detail::philox4x32_10(
        {tag, 0x5EEDC0DEu, uint32_t(index), uint32_t(index >> 32)},
        {uint32_t(seed), uint32_t(seed >> 32)});
    return uint64_t(out[0]) | (uint64_t(out[1]) << 32);
}

class Rng {
public:
    Rng(uint64_t seed, uint64_t stream)
        : key_{uint32_t(seed), uint32_t(seed >> 32)},
          stream_lo_(uint32_t(stream)),
          stream_hi_(uint32_t(stream >> 32)) {}

    Rng(uint64_t seed, StreamDomain domain, uint64_t index)
        : Rng(seed, stream_id(domain, index)) {}

    uint32_t next_u32() {
        if (avail_ == 0) refill();
        return buf_[4 - avail_--];
    }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        const uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return 1.0 - uniform(); }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Box-Muller; the second value of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double a = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec3 normal3() {
        const double a = normal();
        const double b = normal();
        const double c = normal();
        return {a, b, c};
    }

    // Uniform integer in [0, n).
    uint64_t uniform_index(uint64_t n) {
        return uint64_t(uniform() * double(n)) % n;
    }

    uint64_t seed() const {
        return uint64_t(key_[0]) | (uint64_t(key_[1]) << 32);
    }

    uint64_t stream() const {
        return uint64_t(stream_lo_) | (uint64_t(stream_hi_) << 32);
    }

private:
    void refill() {
        buf_ = detail::philox4x32_10(
            {uint32_t(block_), uint32_t(block_ >> 32), stream_lo_, stream_hi_}, key_);
        ++block_;
        avail_ = 4;
    }

    std::array<uint32_t, 2> key_;
    uint32_t stream_lo_;
    uint32_t stream_hi_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int avail_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace enskog
