#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace tnet {

/// SplitMix64 finalizer. Bijective 64-bit mix used for seed derivation and
/// counter-based draws.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent child seed from a parent seed and a stream index.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept
{
    return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) noexcept
{
    return derive_seed(derive_seed(parent, a), b);
}

/// Map 64 random bits to a double in [0, 1) with 53 bits of precision.
constexpr double to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Splittable counter-based stream (SplitMix64). Satisfies
/// UniformRandomBitGenerator; the output sequence depends only on the seed, so
/// streams derived per pair or per iteration are independent of scheduling.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    constexpr double uniform() noexcept { return to_unit((*this)()); }

    /// Uniform double in (0, 1].
    constexpr double uniform_open_low() noexcept { return 1.0 - uniform(); }

    /// Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
    constexpr std::uint64_t below(std::uint64_t bound) noexcept
    {
        if (bound <= 1) return 0;
        for (;;) {
            const std::uint64_t x = (*this)();
            const uint128 m = static_cast<uint128>(x) * bound;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= bound || low >= (-bound) % bound) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    __extension__ using uint128 = unsigned __int128;

    std::uint64_t state_;
};

/// Fisher-Yates shuffle with a portable index draw. std::shuffle's sequence is
/// library-specific, which would break cross-platform reproducibility.
template <class T>
void shuffle(std::span<T> values, SplitMix64& rng) noexcept
{
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace tnet
