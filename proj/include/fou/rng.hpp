#pragma once

#include <array>
#include <cstdint>

#include "fou/normal.hpp"

namespace fou {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline void mulhilo64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

} // namespace detail

/// Philox4x64-10 counter-based generator. Output is a pure function of
/// (key, counter), so independent streams are just distinct keys and
/// parallel replications can share nothing. Matches the reference
/// constants of Salmon et al.; block-compatible with numpy's Philox.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed)
        : key0_(detail::splitmix64(seed)),
          key1_(detail::splitmix64(seed ^ 0x1D8E4E27C47D124Full)) {}

    /// Child stream for a sub-task (cell, replication, ...). Children of
    /// distinct indices, and of distinct parents, never share blocks.
    RandomStream child(std::uint64_t index) const {
        RandomStream s(*this);
        s.key0_ = detail::splitmix64(key0_ ^ (0x9E3779B97F4A7C15ull * (index + 1)));
        s.key1_ = detail::splitmix64(key1_ + index);
        s.block_ = 0;
        s.pos_ = 4;
        return s;
    }

    RandomStream child(std::uint64_t a, std::uint64_t b) const { return child(a).child(b); }

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            refill();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform on (0,1), strictly excluding both endpoints.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw by inverse-cdf; one uniform consumed per draw.
    double gauss() { return normal_quantile(uniform01()); }

    /// Raw Philox block for the given counter, exposed for known-answer tests.
    static std::array<std::uint64_t, 4> block(std::uint64_t key0, std::uint64_t key1,
                                              std::uint64_t c0, std::uint64_t c1 = 0,
                                              std::uint64_t c2 = 0, std::uint64_t c3 = 0) {
        std::array<std::uint64_t, 4> ctr{c0, c1, c2, c3};
        std::uint64_t k0 = key0, k1 = key1;
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B97F4A7C15ull;
                k1 += 0xBB67AE8584CAA73Bull;
            }
            std::uint64_t hi0, lo0, hi1, lo1;
            detail::mulhilo64(0xD2E7470EE14C6C93ull, ctr[0], hi0, lo0);
            detail::mulhilo64(0xCA5A826395121157ull, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        }
        return ctr;
    }

private:
    void refill() {
        buf_ = block(key0_, key1_, block_);
        ++block_;
    }

    std::uint64_t key0_, key1_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace fou
