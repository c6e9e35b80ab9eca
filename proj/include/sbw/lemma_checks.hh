#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sbw
{
    // one deterministic statement checked on generated instances
    struct LemmaCheck
    {
        std::string name;
        long cases = 0;
        long failures = 0;
        std::string first_failure;
        std::string note;

        auto passed() const -> bool { return cases > 0 && failures == 0; }
    };

    struct LemmaSuiteOptions
    {
        long switching_cases = 500;
        long corruption_cases = 200;
        long hall_cases = 300;
        long dense_cases = 200;
        long crosscut_cases = 200;
    };

    // ndist(B_f, B_f') <= 2 s Δ after s switchings
    auto check_switching_distance(long cases, std::uint64_t seed) -> LemmaCheck;
    // corrupted vertices <= (Δ!/η^{Δ-1}) μ n
    auto check_corruption_bound(long cases, std::uint64_t seed) -> LemmaCheck;
    // (i)-(iv) verified exhaustively imply a matching covering Ũ
    auto check_hall_conditions(long cases, std::uint64_t seed) -> LemmaCheck;
    // sub-pairs of exactly certified dense pairs are (eps/mu)-dense
    auto check_dense_subpairs(long cases, std::uint64_t seed) -> LemmaCheck;
    // fewer than eps|X| vertices of a dense pair have small degree
    auto check_typical_vertices(long cases, std::uint64_t seed) -> LemmaCheck;
    // crosscut_partition meets m ell / 2^{ell+2}
    auto check_crosscut(long cases, std::uint64_t seed) -> LemmaCheck;

    auto run_lemma_checks(const LemmaSuiteOptions & opts, std::uint64_t seed) -> std::vector<LemmaCheck>;
}
