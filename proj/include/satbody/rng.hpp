#pragma once

#include <cmath>
#include <cstdint>

namespace satbody {

/// Counter-based splittable random stream (Philox2x64-10).
///
/// A stream is fully determined by (seed, stream_id): reconstructing a
/// stream with the same pair replays the identical sequence of draws.
/// Distinct stream_ids give statistically independent streams, which is
/// how trials of a Monte Carlo experiment are parallelized without any
/// shared state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Derive a child stream; deterministic in (this stream, index).
    RngStream substream(std::uint64_t index) const {
        return RngStream(seed_, mix64(stream_id_, index));
    }

    std::uint64_t next_u64() {
        if (buf_pos_ > 1) {
            philox_block();
            buf_pos_ = 0;
        }
        return buf_[buf_pos_++];
    }

    /// Uniform draw in (0, 1]; never returns 0 so log() stays finite.
    double next_uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    static std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    void philox_block() {
        std::uint64_t x0 = counter_++;
        std::uint64_t x1 = stream_id_;
        std::uint64_t key = seed_;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(x0) * 0xD2B74407B1CE6E93ULL;
            const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            const std::uint64_t lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ key ^ x1;
            x1 = lo;
            key += 0x9E3779B97F4A7C15ULL;
        }
        buf_[0] = x0;
        buf_[1] = x1;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int buf_pos_ = 2;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace satbody
