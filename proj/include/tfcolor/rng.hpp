#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace tfcolor {

/// Stafford's variant-13 finaliser (the SplitMix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 stream; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

/// Seed of the independent stream for replica `index` of a run seeded with
/// `master`. Serial and parallel schedules see the same streams.
constexpr std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
template <class Engine>
class UniformSource {
public:
    explicit UniformSource(Engine engine) : engine_(std::move(engine)) {}

    double operator()()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    Engine& engine() noexcept { return engine_; }

private:
    Engine engine_;
};

inline UniformSource<SplitMix64> uniform_stream(std::uint64_t seed)
{
    return UniformSource<SplitMix64>(SplitMix64(seed));
}

} // namespace tfcolor
