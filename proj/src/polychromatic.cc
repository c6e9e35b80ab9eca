#include <sbw/polychromatic.hh>

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace sbw
{
    auto EdgeColoring::edge_index(int u, int v) const -> std::size_t
    {
        if (u == v || u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge_index: not an edge of K_n");
        if (u > v)
            std::swap(u, v);
        // row-major over u < v
        auto uu = static_cast<std::size_t>(u), nn = static_cast<std::size_t>(n);
        return uu * (2 * nn - uu - 1) / 2 + static_cast<std::size_t>(v - u - 1);
    }

    auto EdgeColoring::max_class_size() const -> int
    {
        std::unordered_map<int, int> cnt;
        int best = 0;
        for (int c : color)
            best = std::max(best, ++cnt[c]);
        return best;
    }

    auto parse_coloring_pattern(const std::string & s) -> ColoringPattern
    {
        if (s == "random-balanced")
            return ColoringPattern::random_balanced;
        if (s == "adversarial-local-clumps")
            return ColoringPattern::adversarial_local_clumps;
        throw GraphError("unknown colouring pattern: " + s);
    }

    auto to_string(ColoringPattern p) -> std::string
    {
        return p == ColoringPattern::random_balanced ? "random-balanced" : "adversarial-local-clumps";
    }

    auto gen_k_bounded(int n, int k, ColoringPattern pattern, std::uint64_t seed) -> EdgeColoring
    {
        if (k < 1)
            throw GraphError("gen_k_bounded needs k >= 1");
        if (n < 0)
            throw GraphError("gen_k_bounded needs n >= 0");
        EdgeColoring phi;
        phi.n = n;
        phi.k = k;
        std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2;
        phi.color.assign(m, -1);
        Rng rng(derive_seed(seed, "coloring"));
        if (pattern == ColoringPattern::random_balanced) {
            std::vector<int> slots(m);
            for (std::size_t e = 0; e < m; ++e)
                slots[e] = static_cast<int>(e / static_cast<std::size_t>(k));
            shuffle_in_place(slots, rng);
            phi.color = std::move(slots);
            return phi;
        }
        // clumps: each colour class is a star, k edges at one centre where possible
        std::vector<int> centres(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            centres[v] = v;
        shuffle_in_place(centres, rng);
        int next = 0;
        for (int v : centres) {
            std::vector<int> open;
            for (int w = 0; w < n; ++w)
                if (w != v && phi.color[phi.edge_index(v, w)] < 0)
                    open.push_back(w);
            shuffle_in_place(open, rng);
            for (std::size_t q = 0; q < open.size(); ++q) {
                if (q % static_cast<std::size_t>(k) == 0)
                    ++next;
                phi.color[phi.edge_index(v, open[q])] = next - 1;
            }
        }
        return phi;
    }

    namespace
    {
        auto colour_counts(const Graph & gamma, const EdgeColoring & phi) -> std::unordered_map<int, int>
        {
            if (gamma.n() != phi.n)
                throw GraphError("colouring does not cover the graph's vertex set");
            std::unordered_map<int, int> cnt;
            for (auto [a, b] : gamma.edges()) {
                int c = phi.of(a, b);
                if (c < 0)
                    throw GraphError("uncoloured edge " + std::to_string(a) + "-" + std::to_string(b));
                ++cnt[c];
            }
            return cnt;
        }
    }

    auto gamma_phi(const Graph & gamma, const EdgeColoring & phi) -> Graph
    {
        auto cnt = colour_counts(gamma, phi);
        Graph out(gamma.n());
        for (auto [a, b] : gamma.edges())
            if (cnt[phi.of(a, b)] == 1)
                out.add_edge(a, b);
        return out;
    }

    auto bunt_stats(const Graph & gamma, const EdgeColoring & phi) -> BuntStats
    {
        auto cnt = colour_counts(gamma, phi);
        BuntStats st;
        st.per_vertex.resize(static_cast<std::size_t>(gamma.n()));
        double sum = 0.0;
        for (int v = 0; v < gamma.n(); ++v) {
            auto & vb = st.per_vertex[v];
            std::unordered_map<int, int> star;
            gamma.neighbours(v).for_each([&](int w) { ++star[phi.of(v, w)]; });
            gamma.neighbours(v).for_each([&](int w) {
                int c = phi.of(v, w);
                ++vb.degree;
                if (star[c] > 1)
                    ++vb.n2;
                else if (cnt[c] > 1)
                    ++vb.n1;
                else
                    ++vb.kept;
            });
            vb.ratio = vb.degree ? static_cast<double>(vb.kept) / vb.degree : 1.0;
            st.min_ratio = std::min(st.min_ratio, vb.ratio);
            sum += vb.ratio;
            if (vb.ratio < 2.0 / 3.0)
                st.below_two_thirds.push_back(v);
        }
        st.mean_ratio = gamma.n() ? sum / gamma.n() : 1.0;
        return st;
    }

    auto check_rainbow_certificate(const Graph & host, const EdgeColoring & phi, const std::vector<RainbowEdge> & cert) -> bool
    {
        std::vector<int> colours;
        for (auto & e : cert) {
            if (! host.has_edge(e.x, e.y) || phi.of(e.x, e.y) != e.color)
                return false;
            colours.push_back(e.color);
        }
        std::sort(colours.begin(), colours.end());
        return std::adjacent_find(colours.begin(), colours.end()) == colours.end();
    }

    auto rainbow_experiment(int n, int k, double p, const GuestSpec & guest, const RainbowOptions & opts, std::uint64_t seed)
        -> RainbowResult
    {
        RainbowResult res;
        auto phi = gen_k_bounded(n, k, opts.pattern, derive_seed(seed, "rainbow/coloring"));
        auto gamma = gen_gnp(n, p, derive_seed(seed, "rainbow/gamma"));
        auto kept = gamma_phi(gamma, phi);
        res.gamma_edges = gamma.m();
        res.kept_edges = kept.m();
        res.min_ratio = bunt_stats(gamma, phi).min_ratio;

        GuestSpec gs = guest;
        gs.seed = derive_seed(seed, "rainbow/guest");
        auto h = gen_guest(gs);
        if (h.graph.n() > kept.n()) {
            res.stage = "precondition";
            res.message = "guest has more vertices than the host";
            return res;
        }
        EmbedParams ep = opts.embed;
        ep.dens.p = p;
        try {
            res.embed = full_embed(kept, h.graph, h.order, ep, derive_seed(seed, "rainbow/embed"));
        }
        catch (const GraphError & e) {
            res.stage = "embed";
            res.message = e.what();
            return res;
        }
        res.stage = res.embed.stage;
        res.message = res.embed.message;
        if (! res.embed.success)
            return res;
        for (auto [a, b] : h.graph.edges()) {
            int x = res.embed.f.map[a], y = res.embed.f.map[b];
            res.certificate.push_back({a, b, x, y, phi.of(x, y)});
        }
        res.rainbow = check_rainbow_certificate(kept, phi, res.certificate);
        // every copy inside Γ(φ) is rainbow, so a failure here is a bug
        if (! res.rainbow)
            throw std::logic_error("rainbow_experiment: embedded copy inside gamma_phi is not rainbow");
        res.success = true;
        return res;
    }

    void write_coloring(std::ostream & out, const EdgeColoring & phi)
    {
        out << phi.n << ' ' << phi.k << '\n';
        for (int u = 0; u < phi.n; ++u)
            for (int v = u + 1; v < phi.n; ++v)
                out << u << ' ' << v << ' ' << phi.of(u, v) << '\n';
    }

    auto read_coloring(std::istream & in, int k) -> EdgeColoring
    {
        EdgeColoring phi;
        int header_k = 0;
        if (! (in >> phi.n >> header_k) || phi.n < 0)
            throw GraphError("colouring: bad header");
        phi.k = k > 0 ? k : header_k;
        phi.color.assign(static_cast<std::size_t>(phi.n) * static_cast<std::size_t>(std::max(phi.n - 1, 0)) / 2, -1);
        int u, v, c;
        while (in >> u >> v >> c)
            phi.color[phi.edge_index(u, v)] = c;
        if (std::find(phi.color.begin(), phi.color.end(), -1) != phi.color.end())
            throw GraphError("colouring: some edge has no colour");
        return phi;
    }
}
