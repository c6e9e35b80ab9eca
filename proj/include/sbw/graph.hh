#pragma once

#include <sbw/bitset.hh>
#include <sbw/rng.hh>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sbw
{
    class GraphError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class Graph
    {
    public:
        Graph() = default;
        explicit Graph(int n);

        auto n() const -> int { return n_; }
        auto m() const -> long { return m_; }

        auto has_edge(int u, int v) const -> bool { return adj_[u].test(static_cast<std::size_t>(v)); }
        auto add_edge(int u, int v) -> bool;
        auto remove_edge(int u, int v) -> bool;

        auto neighbours(int v) const -> const Bitset & { return adj_[v]; }
        auto degree(int v) const -> int { return static_cast<int>(adj_[v].count()); }
        auto degree_into(int v, const VertexSet & s) const -> int { return static_cast<int>(adj_[v].intersect_count(s)); }
        auto max_degree() const -> int;

        // edges as (u,v) with u < v, lexicographic
        auto edges() const -> std::vector<std::pair<int, int>>;
        auto empty_set() const -> VertexSet { return VertexSet(static_cast<std::size_t>(n_)); }
        auto full_set() const -> VertexSet;

        // subgraph induced on the listed vertices, relabelled 0..k-1 in list order
        auto induced(const std::vector<int> & vs) const -> Graph;

        // true iff every edge of *this is an edge of other (same n)
        auto is_subgraph_of(const Graph & other) const -> bool;

        friend auto operator==(const Graph & a, const Graph & b) -> bool { return a.n_ == b.n_ && a.adj_ == b.adj_; }

    private:
        int n_ = 0;
        long m_ = 0;
        std::vector<Bitset> adj_;
    };

    auto gen_gnp(int n, double p, std::uint64_t seed) -> Graph;

    enum class AdversaryStrategy
    {
        random_half_minus_gamma,
        greedy_cut,
        bipartite_targeting
    };

    struct AdversarySpec
    {
        double gamma = 0.1;
        AdversaryStrategy strategy = AdversaryStrategy::random_half_minus_gamma;
        std::uint64_t seed = 0;
    };

    auto parse_adversary_strategy(const std::string & s) -> AdversaryStrategy;
    auto to_string(AdversaryStrategy s) -> std::string;

    // minimum number of edges vertex of degree deg must keep
    auto keep_requirement(int deg, double gamma) -> int;

    auto adversary_delete(const Graph & gamma_graph, const AdversarySpec & spec) -> Graph;
    auto verify_min_degree_ratio(const Graph & host, const Graph & sub, double gamma) -> bool;

    enum class GuestKind
    {
        path_union,
        cycle_union,
        random_bandwidth_bipartite,
        grid_strip
    };

    auto parse_guest_kind(const std::string & s) -> GuestKind;
    auto to_string(GuestKind k) -> std::string;

    struct GuestSpec
    {
        int m = 100;
        int delta = 2;
        double beta = 0.1;
        GuestKind kind = GuestKind::path_union;
        std::uint64_t seed = 0;
        int parts = 1;      // path-union: number of paths
        int cycle_len = 4;  // cycle-union: cycle length (even)
    };

    struct GuestInstance
    {
        Graph graph;
        std::vector<int> order;  // order[pos] = vertex
    };

    auto gen_guest(const GuestSpec & spec) -> GuestInstance;
    auto bandwidth_of_labeling(const Graph & h, const std::vector<int> & order) -> int;

    // proper 2-colouring by BFS (colour 0 for the smallest vertex of each component), or empty if not bipartite
    auto two_colouring(const Graph & g) -> std::vector<int>;

    // all vertices at distance 1..k, as a new graph (G^k without loops)
    auto graph_power(const Graph & g, int k) -> Graph;

    // graph distance, capped: returns cap+1 if farther than cap
    auto bounded_distance(const Graph & g, int u, int v, int cap) -> int;

    void write_edge_list(std::ostream & out, const Graph & g);
    auto read_edge_list(std::istream & in) -> Graph;
    void write_labeling(std::ostream & out, const std::vector<int> & order);
    auto read_labeling(std::istream & in) -> std::vector<int>;
}
