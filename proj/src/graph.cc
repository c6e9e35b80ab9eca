#include <sbw/graph.hh>

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

namespace sbw
{
    Graph::Graph(int n) : n_(n), m_(0), adj_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)))
    {
        if (n < 0)
            throw GraphError("negative vertex count");
    }

    auto Graph::add_edge(int u, int v) -> bool
    {
        if (u == v)
            throw GraphError("self-loop " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw GraphError("vertex out of range");
        if (has_edge(u, v))
            return false;
        adj_[u].set(static_cast<std::size_t>(v));
        adj_[v].set(static_cast<std::size_t>(u));
        ++m_;
        return true;
    }

    auto Graph::remove_edge(int u, int v) -> bool
    {
        if (u == v || ! has_edge(u, v))
            return false;
        adj_[u].reset(static_cast<std::size_t>(v));
        adj_[v].reset(static_cast<std::size_t>(u));
        --m_;
        return true;
    }

    auto Graph::max_degree() const -> int
    {
        int best = 0;
        for (int v = 0; v < n_; ++v)
            best = std::max(best, degree(v));
        return best;
    }

    auto Graph::edges() const -> std::vector<std::pair<int, int>>
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (auto v = adj_[u].next_from(static_cast<std::size_t>(u) + 1); v != Bitset::npos; v = adj_[u].next_from(v + 1))
                out.emplace_back(u, static_cast<int>(v));
        return out;
    }

    auto Graph::full_set() const -> VertexSet
    {
        VertexSet s(static_cast<std::size_t>(n_));
        s.set_all();
        return s;
    }

    auto Graph::induced(const std::vector<int> & vs) const -> Graph
    {
        Graph h(static_cast<int>(vs.size()));
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                if (has_edge(vs[a], vs[b]))
                    h.add_edge(static_cast<int>(a), static_cast<int>(b));
        return h;
    }

    auto Graph::is_subgraph_of(const Graph & other) const -> bool
    {
        if (other.n_ != n_)
            return false;
        for (int v = 0; v < n_; ++v)
            if (! adj_[v].is_subset_of(other.adj_[v]))
                return false;
        return true;
    }

    auto gen_gnp(int n, double p, std::uint64_t seed) -> Graph
    {
        if (p < 0.0 || p > 1.0)
            throw GraphError("edge probability outside [0,1]");
        Graph g(n);
        Rng rng(seed);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (uniform_real(rng) < p)
                    g.add_edge(u, v);
        return g;
    }

    auto parse_adversary_strategy(const std::string & s) -> AdversaryStrategy
    {
        if (s == "random" || s == "random-half-minus-gamma")
            return AdversaryStrategy::random_half_minus_gamma;
        if (s == "greedy-cut" || s == "greedy-cut-maximizing")
            return AdversaryStrategy::greedy_cut;
        if (s == "bipartite-targeting" || s == "bipartite")
            return AdversaryStrategy::bipartite_targeting;
        throw GraphError("unknown adversary strategy '" + s + "'");
    }

    auto to_string(AdversaryStrategy s) -> std::string
    {
        switch (s) {
            case AdversaryStrategy::random_half_minus_gamma: return "random-half-minus-gamma";
            case AdversaryStrategy::greedy_cut: return "greedy-cut-maximizing";
            case AdversaryStrategy::bipartite_targeting: return "bipartite-targeting";
        }
        return "?";
    }

    auto keep_requirement(int deg, double gamma) -> int
    {
        // the 1e-9 keeps exact products such as 1.0*3 from rounding up
        return static_cast<int>(std::ceil((0.5 + gamma) * deg - 1e-9));
    }

    namespace
    {
        struct Budgets
        {
            std::vector<int> left;

            Budgets(const Graph & g, double gamma) : left(static_cast<std::size_t>(g.n()))
            {
                for (int v = 0; v < g.n(); ++v)
                    left[v] = std::max(0, g.degree(v) - keep_requirement(g.degree(v), gamma));
            }

            auto try_delete(Graph & g, int u, int v) -> bool
            {
                if (left[u] <= 0 || left[v] <= 0 || ! g.has_edge(u, v))
                    return false;
                g.remove_edge(u, v);
                --left[u];
                --left[v];
                return true;
            }
        };

        void random_phase(Graph & g, Budgets & b, Rng & rng)
        {
            std::vector<int> vs(static_cast<std::size_t>(g.n()));
            std::iota(vs.begin(), vs.end(), 0);
            shuffle_in_place(vs, rng);
            for (int v : vs) {
                if (b.left[v] <= 0)
                    continue;
                auto nbrs = g.neighbours(v).to_vector();
                shuffle_in_place(nbrs, rng);
                for (int w : nbrs) {
                    if (b.left[v] <= 0)
                        break;
                    b.try_delete(g, v, w);
                }
            }
        }

        auto random_bisection(int n, Rng & rng) -> std::vector<int>
        {
            std::vector<int> vs(static_cast<std::size_t>(n));
            std::iota(vs.begin(), vs.end(), 0);
            shuffle_in_place(vs, rng);
            std::vector<int> side(static_cast<std::size_t>(n), 0);
            for (int k = 0; k < n / 2; ++k)
                side[vs[k]] = 1;
            return side;
        }
    }

    auto adversary_delete(const Graph & gamma_graph, const AdversarySpec & spec) -> Graph
    {
        if (! (spec.gamma > 0.0 && spec.gamma <= 0.5))
            throw GraphError("adversary gamma must lie in (0, 1/2]");

        Graph g = gamma_graph;
        Budgets budget(gamma_graph, spec.gamma);
        Rng rng(spec.seed);

        switch (spec.strategy) {
            case AdversaryStrategy::random_half_minus_gamma:
                random_phase(g, budget, rng);
                break;

            case AdversaryStrategy::greedy_cut: {
                // cut every crossing edge we can, high-degree edges first: leaves two near-disjoint halves
                auto side = random_bisection(g.n(), rng);
                std::vector<std::pair<int, int>> crossing;
                for (auto [u, v] : g.edges())
                    if (side[u] != side[v])
                        crossing.emplace_back(u, v);
                std::stable_sort(crossing.begin(), crossing.end(), [&](auto a, auto b) {
                    return gamma_graph.degree(a.first) + gamma_graph.degree(a.second)
                        > gamma_graph.degree(b.first) + gamma_graph.degree(b.second);
                });
                for (auto [u, v] : crossing)
                    budget.try_delete(g, u, v);
                break;
            }

            case AdversaryStrategy::bipartite_targeting: {
                // push towards a bipartite graph: delete inside both sides first
                auto side = random_bisection(g.n(), rng);
                std::vector<std::pair<int, int>> inside;
                for (auto [u, v] : g.edges())
                    if (side[u] == side[v])
                        inside.emplace_back(u, v);
                shuffle_in_place(inside, rng);
                for (auto [u, v] : inside)
                    budget.try_delete(g, u, v);
                random_phase(g, budget, rng);
                break;
            }
        }
        return g;
    }

    auto verify_min_degree_ratio(const Graph & host, const Graph & sub, double gamma) -> bool
    {
        if (host.n() != sub.n())
            throw GraphError("host and subgraph differ in vertex count");
        if (! sub.is_subgraph_of(host))
            throw GraphError("subgraph has an edge absent from host");
        for (int v = 0; v < host.n(); ++v)
            if (sub.degree(v) + 1e-9 < (0.5 + gamma) * host.degree(v))
                return false;
        return true;
    }

    auto parse_guest_kind(const std::string & s) -> GuestKind
    {
        if (s == "path-union" || s == "path")
            return GuestKind::path_union;
        if (s == "cycle-union" || s == "cycle")
            return GuestKind::cycle_union;
        if (s == "random-bandwidth-bipartite" || s == "random")
            return GuestKind::random_bandwidth_bipartite;
        if (s == "grid-strip" || s == "grid")
            return GuestKind::grid_strip;
        throw GraphError("unknown guest kind '" + s + "'");
    }

    auto to_string(GuestKind k) -> std::string
    {
        switch (k) {
            case GuestKind::path_union: return "path-union";
            case GuestKind::cycle_union: return "cycle-union";
            case GuestKind::random_bandwidth_bipartite: return "random-bandwidth-bipartite";
            case GuestKind::grid_strip: return "grid-strip";
        }
        return "?";
    }

    namespace
    {
        auto gen_path_union(const GuestSpec & s) -> GuestInstance
        {
            if (s.parts < 1 || s.parts > s.m)
                throw GraphError("path-union needs 1 <= parts <= m");
            GuestInstance out{Graph(s.m), {}};
            int start = 0;
            for (int k = 0; k < s.parts; ++k) {
                int len = s.m / s.parts + (k < s.m % s.parts ? 1 : 0);
                for (int v = start; v + 1 < start + len; ++v)
                    out.graph.add_edge(v, v + 1);
                start += len;
            }
            out.order.resize(static_cast<std::size_t>(s.m));
            std::iota(out.order.begin(), out.order.end(), 0);
            return out;
        }

        auto gen_cycle_union(const GuestSpec & s) -> GuestInstance
        {
            int len = s.cycle_len;
            if (len < 4 || len % 2 != 0)
                throw GraphError("cycle-union needs an even cycle length >= 4");
            GuestInstance out{Graph(s.m), {}};
            int cycles = s.m / len;
            // zigzag labelling 0, 1, L-1, 2, L-2, ... keeps every cycle edge within distance 2
            for (int c = 0; c < cycles; ++c) {
                int base = c * len;
                for (int k = 0; k < len; ++k)
                    out.graph.add_edge(base + k, base + (k + 1) % len);
                out.order.push_back(base);
                for (int lo = 1, hi = len - 1; lo <= hi; ++lo, --hi) {
                    out.order.push_back(base + lo);
                    if (lo != hi)
                        out.order.push_back(base + hi);
                }
            }
            // leftover vertices form a path
            for (int v = cycles * len; v < s.m; ++v) {
                if (v > cycles * len)
                    out.graph.add_edge(v - 1, v);
                out.order.push_back(v);
            }
            return out;
        }

        auto gen_random_bandwidth(const GuestSpec & s) -> GuestInstance
        {
            int b = static_cast<int>(std::floor(s.beta * s.m + 1e-9));
            if (b < 1)
                throw GraphError("bandwidth budget floor(beta*m) is zero");
            Rng rng(s.seed);
            // positions carry the structure; vertex ids are a random relabelling
            std::vector<std::pair<int, int>> cand;
            for (int i = 0; i < s.m; ++i)
                for (int j = i + 1; j <= std::min(s.m - 1, i + b); j += 2)
                    cand.emplace_back(i, j);
            shuffle_in_place(cand, rng);
            std::vector<int> id(static_cast<std::size_t>(s.m));
            std::iota(id.begin(), id.end(), 0);
            shuffle_in_place(id, rng);

            GuestInstance out{Graph(s.m), id};
            std::vector<int> deg(static_cast<std::size_t>(s.m), 0);
            for (auto [i, j] : cand)
                if (deg[i] < s.delta && deg[j] < s.delta) {
                    out.graph.add_edge(id[i], id[j]);
                    ++deg[i];
                    ++deg[j];
                }
            return out;
        }

        auto gen_grid_strip(const GuestSpec & s) -> GuestInstance
        {
            int w = static_cast<int>(std::floor(s.beta * s.m + 1e-9));
            if (s.delta < 4)
                w = std::min(w, s.delta - 1);
            if (w < 1)
                throw GraphError("grid-strip width is zero for this beta/delta");
            GuestInstance out{Graph(s.m), {}};
            // column-major: vertex v sits at column v / w, row v % w
            for (int v = 0; v < s.m; ++v) {
                if (v % w != 0)
                    out.graph.add_edge(v - 1, v);
                if (v >= w)
                    out.graph.add_edge(v - w, v);
            }
            out.order.resize(static_cast<std::size_t>(s.m));
            std::iota(out.order.begin(), out.order.end(), 0);
            return out;
        }
    }

    auto gen_guest(const GuestSpec & spec) -> GuestInstance
    {
        if (spec.m < 1)
            throw GraphError("guest needs m >= 1");
        if (spec.delta < 2)
            throw GraphError("guest needs delta >= 2");
        if (! (spec.beta > 0.0 && spec.beta <= 1.0))
            throw GraphError("guest needs beta in (0,1]");

        GuestInstance out;
        switch (spec.kind) {
            case GuestKind::path_union: out = gen_path_union(spec); break;
            case GuestKind::cycle_union: out = gen_cycle_union(spec); break;
            case GuestKind::random_bandwidth_bipartite: out = gen_random_bandwidth(spec); break;
            case GuestKind::grid_strip: out = gen_grid_strip(spec); break;
        }

        if (bandwidth_of_labeling(out.graph, out.order) > spec.beta * spec.m + 1e-9)
            throw GraphError("guest kind cannot meet bandwidth beta*m = " + std::to_string(spec.beta * spec.m));
        if (out.graph.max_degree() > spec.delta)
            throw GraphError("guest kind exceeds the degree bound");
        return out;
    }

    auto bandwidth_of_labeling(const Graph & h, const std::vector<int> & order) -> int
    {
        if (static_cast<int>(order.size()) != h.n())
            throw GraphError("labeling is not a permutation");
        std::vector<int> pos(order.size(), -1);
        for (std::size_t k = 0; k < order.size(); ++k) {
            int v = order[k];
            if (v < 0 || v >= h.n() || pos[v] != -1)
                throw GraphError("labeling is not a permutation");
            pos[v] = static_cast<int>(k);
        }
        int bw = 0;
        for (auto [u, v] : h.edges())
            bw = std::max(bw, std::abs(pos[u] - pos[v]));
        return bw;
    }

    auto two_colouring(const Graph & g) -> std::vector<int>
    {
        std::vector<int> col(static_cast<std::size_t>(g.n()), -1);
        std::deque<int> q;
        for (int s = 0; s < g.n(); ++s) {
            if (col[s] != -1)
                continue;
            col[s] = 0;
            q.push_back(s);
            while (! q.empty()) {
                int v = q.front();
                q.pop_front();
                bool ok = true;
                g.neighbours(v).for_each([&](int w) {
                    if (col[w] == -1) {
                        col[w] = 1 - col[v];
                        q.push_back(w);
                    }
                    else if (col[w] == col[v])
                        ok = false;
                });
                if (! ok)
                    return {};
            }
        }
        return col;
    }

    auto graph_power(const Graph & g, int k) -> Graph
    {
        Graph out(g.n());
        for (int v = 0; v < g.n(); ++v) {
            Bitset reach = g.empty_set();
            reach.set(static_cast<std::size_t>(v));
            for (int step = 0; step < k; ++step) {
                Bitset next = reach;
                reach.for_each([&](int w) { next |= g.neighbours(w); });
                if (next == reach)
                    break;
                reach = std::move(next);
            }
            reach.for_each([&](int w) {
                if (w > v)
                    out.add_edge(v, w);
            });
        }
        return out;
    }

    auto bounded_distance(const Graph & g, int u, int v, int cap) -> int
    {
        if (u == v)
            return 0;
        Bitset seen = g.empty_set(), frontier = g.empty_set();
        seen.set(static_cast<std::size_t>(u));
        frontier.set(static_cast<std::size_t>(u));
        for (int d = 1; d <= cap; ++d) {
            Bitset next = g.empty_set();
            frontier.for_each([&](int w) { next |= g.neighbours(w); });
            next -= seen;
            if (next.test(static_cast<std::size_t>(v)))
                return d;
            if (next.none())
                break;
            seen |= next;
            frontier = std::move(next);
        }
        return cap + 1;
    }

    void write_edge_list(std::ostream & out, const Graph & g)
    {
        out << g.n() << ' ' << g.m() << '\n';
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << '\n';
    }

    auto read_edge_list(std::istream & in) -> Graph
    {
        long n, m;
        if (! (in >> n >> m) || n < 0 || m < 0)
            throw GraphError("bad edge-list header");
        Graph g(static_cast<int>(n));
        for (long k = 0; k < m; ++k) {
            long u, v;
            if (! (in >> u >> v))
                throw GraphError("edge list truncated at edge " + std::to_string(k));
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw GraphError("bad edge " + std::to_string(u) + " " + std::to_string(v));
            g.add_edge(static_cast<int>(u), static_cast<int>(v));
        }
        return g;
    }

    void write_labeling(std::ostream & out, const std::vector<int> & order)
    {
        for (std::size_t k = 0; k < order.size(); ++k)
            out << (k ? " " : "") << order[k];
        out << '\n';
    }

    auto read_labeling(std::istream & in) -> std::vector<int>
    {
        std::vector<int> out;
        int v;
        while (in >> v)
            out.push_back(v);
        return out;
    }
}
