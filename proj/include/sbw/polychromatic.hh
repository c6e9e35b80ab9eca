#pragma once

#include <sbw/embed.hh>
#include <sbw/graph.hh>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sbw
{
    // colouring of the edges of K_n; colour of {u,v} at edge_index(u,v)
    struct EdgeColoring
    {
        int n = 0;
        int k = 1;
        std::vector<int> color;

        auto edge_index(int u, int v) const -> std::size_t;
        auto of(int u, int v) const -> int { return color[edge_index(u, v)]; }
        auto max_class_size() const -> int;
        auto is_k_bounded() const -> bool { return max_class_size() <= k; }
    };

    enum class ColoringPattern
    {
        random_balanced,
        adversarial_local_clumps
    };

    auto parse_coloring_pattern(const std::string & s) -> ColoringPattern;
    auto to_string(ColoringPattern p) -> std::string;

    auto gen_k_bounded(int n, int k, ColoringPattern pattern, std::uint64_t seed) -> EdgeColoring;

    // Γ(φ): the edges of gamma whose colour is used once in gamma
    auto gamma_phi(const Graph & gamma, const EdgeColoring & phi) -> Graph;

    struct VertexBunt
    {
        int degree = 0;        // in Γ
        int kept = 0;          // in Γ(φ)
        int n1 = 0;            // colour unique at v, repeated elsewhere in Γ
        int n2 = 0;            // colour repeated inside the star of v
        double ratio = 1.0;    // kept / degree, 1 for isolated vertices
    };

    struct BuntStats
    {
        std::vector<VertexBunt> per_vertex;
        double min_ratio = 1.0;
        double mean_ratio = 1.0;
        std::vector<int> below_two_thirds;
    };

    auto bunt_stats(const Graph & gamma, const EdgeColoring & phi) -> BuntStats;

    struct RainbowEdge
    {
        int a, b;       // guest edge
        int x, y;       // host edge
        int color;
    };

    struct RainbowResult
    {
        bool success = false;
        std::string stage;
        std::string message;
        long gamma_edges = 0, kept_edges = 0;
        double min_ratio = 0.0;
        bool rainbow = false;
        std::vector<RainbowEdge> certificate;
        EmbedResult embed;
    };

    struct RainbowOptions
    {
        ColoringPattern pattern = ColoringPattern::random_balanced;
        EmbedParams embed;
    };

    auto rainbow_experiment(int n, int k, double p, const GuestSpec & guest, const RainbowOptions & opts, std::uint64_t seed)
        -> RainbowResult;

    // every certificate edge is a host edge carrying the stated colour, and the colours are distinct
    auto check_rainbow_certificate(const Graph & host, const EdgeColoring & phi, const std::vector<RainbowEdge> & cert) -> bool;

    void write_coloring(std::ostream & out, const EdgeColoring & phi);
    auto read_coloring(std::istream & in, int k) -> EdgeColoring;
}
