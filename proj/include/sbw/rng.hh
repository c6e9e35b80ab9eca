#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sbw
{
    using Rng = std::mt19937_64;

    inline auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    inline auto fnv1a(std::string_view s) -> std::uint64_t
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Seed for one module call: never share a generator between calls.
    inline auto derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index = 0) -> std::uint64_t
    {
        return splitmix64(splitmix64(base ^ fnv1a(tag)) + splitmix64(index + 0x51ed27ULL));
    }

    inline auto uniform_int(Rng & rng, long lo, long hi) -> long
    {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    }

    inline auto uniform_real(Rng & rng) -> double
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }

    // Fisher-Yates with our own index draws, so results do not depend on std::shuffle internals.
    template <typename T>
    void shuffle_in_place(std::vector<T> & v, Rng & rng)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct items of v, uniformly (partial shuffle of a copy)
    template <typename T>
    auto sample_k(const std::vector<T> & v, std::size_t k, Rng & rng) -> std::vector<T>
    {
        std::vector<T> c = v;
        k = std::min(k, c.size());
        for (std::size_t i = 0; i < k; ++i) {
            auto j = static_cast<std::size_t>(uniform_int(rng, static_cast<long>(i), static_cast<long>(c.size()) - 1));
            std::swap(c[i], c[j]);
        }
        c.resize(k);
        return c;
    }
}
