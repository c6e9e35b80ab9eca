#pragma once

#include <sbw/graph.hh>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sbw
{
    using Homomorphism = std::vector<int>;

    auto ladder(int r) -> Graph;

    enum class SpinRole
    {
        u,
        v,
        c,
        c_prime,
        b,
        b_prime
    };

    auto to_string(SpinRole r) -> std::string;

    struct SpinVertex
    {
        SpinRole role;
        int i;
        int j;  // -1 for u and v
    };

    // Indices are 0-based: i in [0,r), j in [0,2t); j < t is the low half.
    // Vertex ids: all u, all v, all c, all c', all b, all b', each in (i,j) order.
    // Adjacency is answered from the edge rules; t can reach the thousands, so
    // the graph is only materialised on request.
    class SpinGraph
    {
    public:
        // odd t only on request: (Δ+1)^3(Δ^3+1) is odd for even Δ
        SpinGraph(int r, int t, bool allow_odd_t = false);

        auto r() const -> int { return r_; }
        auto t() const -> int { return t_; }
        auto size() const -> int { return 2 * r_ + 8 * r_ * t_; }

        auto u(int i) const -> int { return i; }
        auto v(int i) const -> int { return r_ + i; }
        auto c(int i, int j) const -> int { return 2 * r_ + i * 2 * t_ + j; }
        auto cp(int i, int j) const -> int { return 2 * r_ + 2 * r_ * t_ + i * 2 * t_ + j; }
        auto b(int i, int j) const -> int { return 2 * r_ + 4 * r_ * t_ + i * 2 * t_ + j; }
        auto bp(int i, int j) const -> int { return 2 * r_ + 6 * r_ * t_ + i * 2 * t_ + j; }
        auto at(SpinRole role, int i, int j) const -> int;

        auto role(int x) const -> SpinVertex;
        auto is_low(int j) const -> bool { return j < t_; }

        auto has_edge(int x, int y) const -> bool;
        auto edges() const -> std::vector<std::pair<int, int>>;
        auto edge_count() const -> long;
        auto materialise() const -> Graph;

    private:
        auto directed_rule(const SpinVertex & a, const SpinVertex & b) const -> bool;

        int r_, t_;
    };

    auto spin_graph(int r, int t) -> SpinGraph;

    void write_spin_graph(std::ostream & out, const SpinGraph & s);

    auto is_homomorphism(const Graph & guest, const Graph & target, const Homomorphism & h) -> bool;
    auto is_homomorphism(const Graph & guest, const SpinGraph & target, const Homomorphism & h) -> bool;

    // first guest edge whose image is not a target edge, or (-1,-1)
    auto homomorphism_violation(const Graph & guest, const Graph & target, const Homomorphism & h) -> std::pair<int, int>;
    auto homomorphism_violation(const Graph & guest, const SpinGraph & target, const Homomorphism & h) -> std::pair<int, int>;
}
