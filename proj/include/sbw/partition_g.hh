#pragma once

#include <sbw/density.hh>
#include <sbw/graph.hh>
#include <sbw/spin.hh>

#include <cstdint>
#include <string>
#include <vector>

namespace sbw
{
    enum class PartitionStrategy
    {
        exact_tiny,
        refine_heuristic
    };

    auto parse_partition_strategy(const std::string & s) -> PartitionStrategy;
    auto to_string(PartitionStrategy s) -> std::string;

    struct PairCertificate
    {
        int a = -1, b = -1;
        double density = 0.0;
        DenseVerdict verdict;
    };

    struct ReducedGraph
    {
        DensityParams params;
        std::vector<VertexSet> clusters;
        VertexSet exceptional;
        Graph graph;                              // on cluster indices
        std::vector<PairCertificate> certificates;  // one per reduced edge
        long irregular = 0;                       // pairs of density >= d refuted as dense
        long allowance = 0;                       // floor(eps * C(r,2))
        bool stalled = false;
        long swaps = 0;
        std::string note;

        auto size() const -> int { return static_cast<int>(clusters.size()); }
    };

    struct RegularityOptions
    {
        double d = 0.5;
        long mc_trials = 64;
        int r1 = 0;              // largest cluster count tried (0: 4*r0)
        int refine_rounds = 400;
        std::uint64_t seed = 0;
    };

    auto regularity_partition(const Graph & g, double p, double eps, int r0, PartitionStrategy strategy,
        RegularityOptions opts = {}) -> ReducedGraph;

    // moves the cluster of least reduced degree into the exceptional set
    void drop_to_even(ReducedGraph & rg);

    struct MinDegreeReport
    {
        int min_degree = 0;
        double ratio = 0.0;
        double threshold = 0.0;
        bool passes = false;
    };

    auto reduced_min_degree(const ReducedGraph & rg, double alpha, double d, double eps) -> MinDegreeReport;

    struct LadderResult
    {
        bool found = false;
        bool budget_exhausted = false;  // false with found == false means the search space was emptied
        long nodes = 0;
        std::vector<int> u, v;          // rung i is u[i] v[i]
    };

    auto find_spanning_ladder(const Graph & r, long budget = 200000, std::uint64_t seed = 0) -> LadderResult;
    auto is_spanning_ladder(const Graph & r, const std::vector<int> & u, const std::vector<int> & v) -> bool;

    struct EdgeCertificate
    {
        int x = -1, y = -1;           // spin vertices
        double density = 0.0;
        DenseVerdict verdict;
        int parent_a = -1, parent_b = -1;  // reduced-graph pair the clusters were carved from
        double inherited_eps = 0.0;   // eps / mu when the parent pair was certified exactly
    };

    struct GPartition
    {
        int r = 0, t = 0;
        double eta = 0.0, eta_prime = 0.0, gamma = 0.0;
        DensityParams params;
        double unit = 0.0;            // n/(2r), the reference cluster size of (G1)/(G2)
        std::vector<int> g;           // host vertex -> spin vertex, -1 on V0
        std::vector<std::vector<int>> clusters;  // preimage of every spin vertex
        std::vector<int> apex;        // w_i in the reduced graph (empty for planted partitions)
        std::vector<int> apex_uses;
        bool gamma_r_triangles = true;  // every rung lies in more than gamma*r triangles
        std::vector<EdgeCertificate> certificates;

        auto spin() const -> SpinGraph { return SpinGraph(r, t, true); }
        auto cls(SpinRole role, int i, int j = -1) const -> const std::vector<int> &;
    };

    struct CarveOptions
    {
        double gamma = 0.1;
        double eta = 0.1;
        long mc_trials = 64;
        std::uint64_t seed = 0;
    };

    auto carve_clusters(const Graph & host, const ReducedGraph & rg, const LadderResult & ladder, int t,
        double eta_prime, const DensityParams & params, CarveOptions opts = {}) -> GPartition;

    // fresh certificate for every spin edge; mc trials per pair
    void certify_spin_pairs(const Graph & host, GPartition & part, long mc_trials, std::uint64_t seed);

    struct GReport
    {
        bool g1 = true, g2 = true, g3 = true;
        std::vector<std::string> failures;

        auto ok() const -> bool { return g1 && g2 && g3; }
    };

    auto verify_G_partition(const Graph & host, const GPartition & part, long mc_trials = 64, std::uint64_t seed = 0) -> GReport;
}
