#pragma once

#include <sbw/density.hh>
#include <sbw/graph.hh>
#include <sbw/partition_g.hh>
#include <sbw/partition_h.hh>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace sbw
{
    // guest vertex -> host vertex, -1 where undefined
    struct Embedding
    {
        std::vector<int> map;

        Embedding() = default;
        explicit Embedding(int guest_n) : map(static_cast<std::size_t>(guest_n), -1) {}

        auto complete() const -> bool;
        auto injective() const -> bool;
    };

    auto verify_embedding(const Graph & guest, const Graph & host, const Embedding & e) -> bool;

    // ---- candidate graphs

    struct CandidateGraph
    {
        std::vector<int> left;    // guest vertices
        std::vector<int> right;   // host vertices
        std::vector<Bitset> adj;  // per left index, over right indices

        auto degree(int i) const -> int { return static_cast<int>(adj[i].count()); }
    };

    // u is a candidate for ũ iff f(N_H(ũ)) ⊆ N_G(u)
    auto candidate_graph(const Graph & h, const std::vector<int> & u_tilde, const Graph & g, const std::vector<int> & u,
        const Embedding & f) -> CandidateGraph;

    auto neighborhood_distance(const CandidateGraph & b1, const CandidateGraph & b2) -> int;

    // ---- matchings

    // maximum matching; match[l] = right index or -1
    auto hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>> & adj) -> std::vector<int>;

    struct MatchingResult
    {
        bool covers = false;
        int size = 0;
        std::vector<int> match;       // per left index
        std::vector<int> deficient;   // left indices with |N(S)| < |S| when not covering
    };

    auto hall_matching(const CandidateGraph & b) -> MatchingResult;

    struct MatchingConditions
    {
        bool ndist_ok = false;
        bool i = false, ii = false, iii = false, iv = false;
        std::string mode_ii, mode_iii, mode_iv;  // "exhaustive" or "sampled"
        std::vector<std::string> failures;

        auto all() const -> bool { return ndist_ok && i && ii && iii && iv; }
        auto exhaustive() const -> bool { return mode_ii == "exhaustive" && mode_iii == "exhaustive" && mode_iv == "exhaustive"; }
    };

    auto check_matching_conditions(const CandidateGraph & b, const CandidateGraph & b_prime, int s, int x, int n1, int n2,
        int n3, long samples = 2000, std::uint64_t seed = 0) -> MatchingConditions;

    // ---- constraints

    // Δ-sets of host vertices; a Δ-set is forbidden if it is listed or contains a core
    struct ForbiddenFamily
    {
        int delta = 0;
        std::set<std::vector<int>> sets;
        std::set<std::vector<int>> cores;

        auto forbids(std::vector<int> image) const -> bool;
        auto explicit_family() const -> SetFamily;
    };

    struct SpecialSet
    {
        std::vector<int> members;   // guest vertices, sorted, size Δ
        int family = 0;             // which forbidden family applies
        int owner = -1;             // guest vertex the set was built for
    };

    struct ConstraintSets
    {
        std::vector<SpecialSet> specials;
        std::vector<ForbiddenFamily> forbidden;
    };

    // no special set mapped onto a forbidden set
    auto specials_avoid_forbidden(const ConstraintSets & cs, const Embedding & f) -> bool;
    auto special_multiplicity(const ConstraintSets & cs) -> int;

    // ---- switchings

    struct SwitchingProblem
    {
        const Graph * guest = nullptr;
        const Graph * host = nullptr;
        std::vector<int> domain;                // the injected side
        const ConstraintSets * constraints = nullptr;
        std::vector<int> floor_vertices;        // guest vertices with a candidate-degree floor
        std::vector<VertexSet> floor_pool;      // host pool each of them is matched into
        std::vector<double> floor;              // required candidate count
    };

    struct RepairResult
    {
        bool success = false;
        Embedding f;
        int switchings = 0;
        long offenses_before = 0, offenses_after = 0;
        std::vector<std::string> residual;
    };

    auto count_offenses(const SwitchingProblem & prob, const Embedding & f) -> long;
    auto switching_repair(const SwitchingProblem & prob, const Embedding & f, int budget, std::uint64_t seed) -> RepairResult;

    // ---- constrained blow-up

    enum class BadMode
    {
        neighbourhood,  // small joint neighbourhood only
        full            // also refute by density of the neighbourhood pair
    };

    struct BlowupParams
    {
        DensityParams dens{0.3, 0.1, 0.5};
        int delta = 2;
        double eta = 0.1;        // required slack |Ṽ| <= (1-eta)|V|
        double sigma = 0.05;     // switching budget per |Ṽ|
        int retries = 20;
        int parts = 0;           // 0: Δ^2+1
        double corrupt_eta = 0.1;
        double floor_factor = 1.0;
    };

    struct BlowupResult
    {
        bool success = false;
        Embedding f;
        int attempts = 0;
        int switchings = 0;
        int ndist = 0;
        int corrupted = 0;
        long bad_sets = 0;
        std::string failed_stage;
        std::vector<std::string> diagnostics;
    };

    auto blowup_embed(const Graph & host, const std::vector<int> & u, const std::vector<int> & v, const Graph & guest,
        const std::vector<int> & u_tilde, const std::vector<int> & v_tilde, const ConstraintSets & constraints,
        const BlowupParams & params, std::uint64_t seed) -> BlowupResult;

    // ---- connection

    struct CandidateSystem
    {
        std::vector<std::vector<int>> classes;   // guest classes in embedding order
        std::vector<std::vector<int>> clusters;  // host cluster of each class
        std::vector<std::vector<int>> external;  // per guest vertex: X_w̃ (host vertices), indexed by guest id
    };

    struct ConnectionParams
    {
        DensityParams dens{0.3, 0.1, 0.5};
        int delta = 2;
        int t = 2;               // for the per-round slack eps_t = d/(12 Δ t)
        long mc_trials = 64;
        bool strict = false;     // fail on any (A)-(E) violation
        bool density_filter = true;
    };

    struct ConnectionResult
    {
        bool success = false;
        Embedding phi;
        bool preconditions_ok = true;
        std::vector<std::string> precondition_failures;
        int failed_round = -1;
        std::vector<int> deficient;  // guest vertices of a Hall violator
        long density_rejections = 0;
        int density_relaxed_rounds = 0;
        std::vector<std::string> notes;
    };

    auto candidate_set(const Graph & host, const std::vector<int> & cluster, const std::vector<int> & external) -> VertexSet;

    auto connection_embed(const Graph & host, const Graph & guest, const CandidateSystem & sys, const ConnectionParams & params,
        std::uint64_t seed) -> ConnectionResult;

    // ---- full pipeline

    struct EmbedParams
    {
        DensityParams dens{0.3, 0.1, 0.5};
        int delta = 2;
        double eta = 0.1;
        double eta_prime = 0.02;
        double gamma = 0.1;
        int t_override = 0;        // 0: compress the guest's spin classes
        int r0 = 8;
        PartitionStrategy strategy = PartitionStrategy::refine_heuristic;
        long ladder_budget = 200000;
        long mc_trials = 64;
        double sigma = 0.05;
        int retries = 20;
        int parts = 0;
        double corrupt_eta = 0.1;
        BadMode bad_mode = BadMode::neighbourhood;
        bool density_filter = true;
        bool strict = false;
    };

    struct EmbedResult
    {
        bool success = false;
        std::string stage;       // last stage reached, or the failing stage
        std::string message;
        Embedding f;
        bool verified = false;
        bool specials_ok = false;
        int r = 0, t = 0;
        int switchings = 0;
        int density_relaxed_rounds = 0;
        long precondition_failures = 0;
        ConstraintSets constraints;
    };

    auto full_embed_partitioned(const Graph & host, const GPartition & gpart, const Graph & guest, const HPartition & hpart,
        const EmbedParams & params, std::uint64_t seed) -> EmbedResult;

    auto full_embed(const Graph & host, const Graph & guest, const std::vector<int> & order, const EmbedParams & params,
        std::uint64_t seed) -> EmbedResult;

    // relabel the used j of every (role, i) half monotonically into 0..t'-1; t' even
    auto compress_spin(const Graph & guest, const HPartition & part) -> HPartition;

    // ---- planted fixtures

    struct PlantedSizes
    {
        int big = 300;
        int connecting = 100;
        int balancing = 100;
    };

    struct PlantedHost
    {
        Graph graph;
        GPartition part;
    };

    auto gen_planted_spin_host(int r, int t, PlantedSizes sizes, double d, double p, std::uint64_t seed) -> PlantedHost;

    struct PlantedGuestSpec
    {
        double big_fill = 0.85;
        double small_fill = 0.1;
    };

    struct PlantedGuest
    {
        Graph graph;
        std::vector<int> order;
        HPartition part;
    };

    // path union (Δ = 2) made of u/v segments joined by connecting and balancing gadgets
    auto gen_planted_spin_guest(const GPartition & host_part, PlantedGuestSpec spec, std::uint64_t seed) -> PlantedGuest;
}
