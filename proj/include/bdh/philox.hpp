#pragma once

// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
// Output is a pure function of (key, counter); there is no hidden state.

#include <array>
#include <cstdint>

namespace bdh {

using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

inline PhiloxCounter philox4x64_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    constexpr std::uint64_t m0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t m1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t w0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t w1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 p0 = static_cast<unsigned __int128>(ctr[0]) * m0;
        const unsigned __int128 p1 = static_cast<unsigned __int128>(ctr[2]) * m1;
        const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
        const auto lo0 = static_cast<std::uint64_t>(p0);
        const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
        const auto lo1 = static_cast<std::uint64_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

/// Draw sequence for one sample: counter = (sample, block, stream, 0),
/// key = (seed, tag). Consecutive blocks yield four 64-bit words each.
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t stream, std::uint64_t sample) noexcept
        : key_{seed, tag}, stream_(stream), sample_(sample) {}

    std::uint64_t next_u64() noexcept {
        if (pos_ == 4) {
            buf_ = philox4x64_10({sample_, block_++, stream_, 0}, key_);
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t sample_;
    std::uint64_t block_ = 0;
    PhiloxCounter buf_{};
    int pos_ = 4;
};

}  // namespace bdh
