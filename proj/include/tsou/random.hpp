#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace tsou {

//! Seeded stream of random bits. Satisfies UniformRandomBitGenerator, so it can
//! drive the standard distributions directly.
//!
//! Streams derived from the same seed with different ids are statistically
//! independent; the mapping (seed, stream) -> sequence is fixed across builds.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

    //! Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    //! A fresh independent stream keyed by (seed, stream id).
    RandomSource derive(std::uint64_t stream) const { return RandomSource(seed_, stream); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

//! splitmix64 finalizer; used to decorrelate seeds.
std::uint64_t mix_seed(std::uint64_t x);

} // namespace tsou
