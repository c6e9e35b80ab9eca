#pragma once

#include <sbw/graph.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sbw
{
    struct DensityParams
    {
        double p = 1.0;
        double eps = 0.1;
        double d = 0.5;
    };

    void validate(const DensityParams & params);

    enum class Verdict
    {
        dense,
        not_dense,
        probably_dense
    };

    auto to_string(Verdict v) -> std::string;

    struct DenseVerdict
    {
        Verdict verdict = Verdict::dense;
        std::optional<std::pair<VertexSet, VertexSet>> witness;
        long samples_used = 0;
        double confidence = 1.0;
        std::string mode;         // "exact" or "mc"
        int size_u = 0, size_w = 0;  // subset sizes examined (the ceil(eps|.|) thresholds)
        std::string note;

        auto ok() const -> bool { return verdict != Verdict::not_dense; }
    };

    struct SetFamily
    {
        int ell = 0;
        std::vector<std::vector<int>> sets;  // each sorted
        bool disjoint_claimed = false;

        auto size() const -> std::size_t { return sets.size(); }
    };

    // checks uniformity, distinct members inside ground, and disjointness when claimed
    auto family_is_valid(const SetFamily & fam, const VertexSet & ground) -> bool;
    auto family_is_disjoint(const SetFamily & fam) -> bool;

    auto threshold_size(double eps, std::size_t n) -> int;

    auto edges_between(const Graph & g, const VertexSet & u, const VertexSet & w) -> long;
    auto edges_inside(const Graph & g, const VertexSet & x) -> long;
    auto p_density(const Graph & g, const VertexSet & u, const VertexSet & w, double p) -> double;

    // |N(B) ∩ within| for the joint neighbourhood of B
    auto joint_neighbourhood(const Graph & g, const std::vector<int> & b, const VertexSet & within) -> VertexSet;

    struct ExactOptions
    {
        bool allow_large = false;
    };

    auto check_dense_exact(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, ExactOptions opts = {}) -> DenseVerdict;

    auto check_dense_mc(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, long trials, std::uint64_t seed) -> DenseVerdict;

    // exact when |u|+|w| is within the guard, MC otherwise
    auto check_dense_auto(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, long mc_trials, std::uint64_t seed) -> DenseVerdict;

    // vertices x of X with |N_Y(x)| < (d - eps) p |Y|
    auto atypical_vertices(const Graph & g, const VertexSet & x, const VertexSet & y, const DensityParams & params) -> VertexSet;

    auto count_stars(const Graph & g, const VertexSet & x, const SetFamily & fam) -> long;

    auto bad_threshold(const DensityParams & params, int ell, std::size_t z_size) -> double;

    auto bad_lsets(const Graph & g, const VertexSet & y, const VertexSet & z, int ell, const DensityParams & params) -> SetFamily;

    enum class BadReason
    {
        small_neighbourhood,
        not_dense
    };

    auto to_string(BadReason r) -> std::string;

    struct BadRecord
    {
        std::vector<int> subset;  // the B' that triggered inclusion
        BadReason reason = BadReason::small_neighbourhood;
        std::string density_mode; // empty for small_neighbourhood
    };

    struct BadFamily
    {
        SetFamily family;
        std::vector<BadRecord> records;  // parallel to family.sets
    };

    struct BadOptions
    {
        long mc_trials = 64;
        std::uint64_t seed = 0;
    };

    auto Bad_lsets(const Graph & g, const VertexSet & x, const VertexSet & y, const VertexSet & z, int ell,
        const DensityParams & params, BadOptions opts = {}) -> BadFamily;

    auto corrupted_vertices(const VertexSet & ground, const SetFamily & fam, double x) -> VertexSet;

    // the deterministic bound (Δ!/η^{Δ-1}) μ n on ηn-corrupted vertices
    auto corruption_bound(int delta, double eta, double mu, int n) -> double;

    struct ExpansionReport
    {
        bool vacuous = false;
        double min_ratio = 0.0;
        long families_tested = 0;
        long good_sets_found = 0;
        double factor = 0.0;
        bool passes = false;
        std::vector<std::vector<int>> worst_family;
    };

    auto check_expansion(const Graph & g, const VertexSet & x, const VertexSet & y, const DensityParams & params,
        long cap, double factor, long trials, std::uint64_t seed, int ell = 2) -> ExpansionReport;

    struct BoundednessReport
    {
        double max_ratio = 0.0;
        bool bounded = true;
        long trials = 0;
        int worst_x = 0, worst_y = 0;
    };

    auto check_boundedness(const Graph & g, double eta, double k_factor, double p, long trials, std::uint64_t seed) -> BoundednessReport;

    struct GnpStats
    {
        bool out_of_regime = false;
        std::string regime_note;
        long e_x = 0, e_xy = 0, deg_sum_z = 0;
        double ratio_x = 0.0, ratio_xy = 0.0, ratio_z = 0.0;
        double tolerance = 0.0;  // 1/ln n
        bool within = false;
    };

    auto gnp_stats(const Graph & g, const VertexSet & x, const VertexSet & y, const VertexSet & z, double p) -> GnpStats;

    auto crosscut_bound(std::size_t m, int ell) -> double;
    auto count_one_crossing(const SetFamily & fam, const VertexSet & v2) -> long;
    auto crosscut_partition(const SetFamily & fam, const VertexSet & ground, std::uint64_t seed = 0) -> std::pair<VertexSet, VertexSet>;

    // visit every k-subset of items in lexicographic order; f returns false to stop
    template <typename F>
    void for_each_combination(const std::vector<int> & items, int k, F && f)
    {
        int n = static_cast<int>(items.size());
        if (k < 0 || k > n)
            return;
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            idx[i] = i;
        std::vector<int> cur(static_cast<std::size_t>(k));
        while (true) {
            for (int i = 0; i < k; ++i)
                cur[i] = items[idx[i]];
            if (! f(cur))
                return;
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i)
                --i;
            if (i < 0)
                return;
            ++idx[i];
            for (int j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
}
