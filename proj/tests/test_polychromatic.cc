#include <doctest.h>

#include <sbw/polychromatic.hh>

#include <map>
#include <set>
#include <sstream>

using namespace sbw;

namespace
{
    auto colour_counts(const Graph & g, const EdgeColoring & phi) -> std::map<int, int>
    {
        std::map<int, int> c;
        for (auto [a, b] : g.edges())
            ++c[phi.of(a, b)];
        return c;
    }

    auto complete(int n) -> Graph
    {
        Graph g(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                g.add_edge(a, b);
        return g;
    }
}

TEST_CASE("edge indices enumerate the pairs of K_n")
{
    EdgeColoring phi;
    phi.n = 7;
    std::set<std::size_t> seen;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b) {
            CHECK(phi.edge_index(a, b) == phi.edge_index(b, a));
            CHECK(phi.edge_index(a, b) < 21);
            seen.insert(phi.edge_index(a, b));
        }
    CHECK(seen.size() == 21);
}

TEST_CASE("k-bounded colourings")
{
    for (auto pat : {ColoringPattern::random_balanced, ColoringPattern::adversarial_local_clumps}) {
        auto one = gen_k_bounded(30, 1, pat, 2);
        CHECK(one.color.size() == 435);
        CHECK(std::set<int>(one.color.begin(), one.color.end()).size() == 435);
        CHECK(one.max_class_size() == 1);

        auto all = gen_k_bounded(12, 66, pat, 2);
        if (pat == ColoringPattern::random_balanced)
            CHECK(std::set<int>(all.color.begin(), all.color.end()).size() == 1);
        CHECK(all.is_k_bounded());

        for (int k : {2, 3, 7, 40}) {
            auto phi = gen_k_bounded(40, k, pat, static_cast<std::uint64_t>(k));
            std::map<int, int> hist;
            for (int c : phi.color)
                ++hist[c];
            int worst = 0;
            for (auto [c, m] : hist)
                worst = std::max(worst, m);
            CAPTURE(k);
            CHECK(worst <= k);
            CHECK(phi.max_class_size() == worst);
            CHECK(phi.is_k_bounded());
        }
    }
    CHECK(parse_coloring_pattern(to_string(ColoringPattern::adversarial_local_clumps)) == ColoringPattern::adversarial_local_clumps);
}

TEST_CASE("gamma of phi keeps exactly the uniquely coloured edges")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(s);
        int n = 25;
        Graph gamma(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (uniform_real(rng) < 0.3)
                    gamma.add_edge(a, b);
        auto phi = gen_k_bounded(n, 1 + static_cast<int>(s % 5), ColoringPattern::adversarial_local_clumps, s);
        auto kept = gamma_phi(gamma, phi);
        auto counts = colour_counts(gamma, phi);
        CHECK(kept.is_subgraph_of(gamma));
        for (auto [a, b] : gamma.edges())
            CHECK(kept.has_edge(a, b) == (counts[phi.of(a, b)] == 1));
        auto kc = colour_counts(kept, phi);
        for (auto [c, m] : kc)
            CHECK(m == 1);
    }

    auto k6 = complete(6);
    EdgeColoring mono{6, 15, std::vector<int>(15, 0)};
    CHECK(gamma_phi(k6, mono).m() == 0);
}

TEST_CASE("bunt statistics")
{
    auto g = complete(20);
    auto one = gen_k_bounded(20, 1, ColoringPattern::random_balanced, 1);
    auto st = bunt_stats(g, one);
    CHECK(st.min_ratio == doctest::Approx(1.0));
    CHECK(st.mean_ratio == doctest::Approx(1.0));
    CHECK(st.below_two_thirds.empty());

    for (std::uint64_t s = 0; s < 10; ++s) {
        auto phi = gen_k_bounded(20, 3, ColoringPattern::adversarial_local_clumps, s);
        auto kept = gamma_phi(g, phi);
        auto b = bunt_stats(g, phi);
        REQUIRE(b.per_vertex.size() == 20);
        double mn = 1.0;
        for (int v = 0; v < 20; ++v) {
            auto & pv = b.per_vertex[v];
            CHECK(pv.degree == 19);
            CHECK(pv.kept == kept.degree(v));
            CHECK(pv.kept + pv.n1 + pv.n2 == pv.degree);
            CHECK(pv.ratio == doctest::Approx(static_cast<double>(pv.kept) / 19));
            mn = std::min(mn, pv.ratio);
            bool low = std::find(b.below_two_thirds.begin(), b.below_two_thirds.end(), v) != b.below_two_thirds.end();
            CHECK(low == (pv.ratio < 2.0 / 3));
        }
        CHECK(b.min_ratio == doctest::Approx(mn));
    }

    Graph lone(3);
    lone.add_edge(0, 1);
    auto iso = bunt_stats(lone, gen_k_bounded(3, 1, ColoringPattern::random_balanced, 0));
    CHECK(iso.per_vertex[2].ratio == doctest::Approx(1.0));
}

TEST_CASE("rainbow certificates")
{
    auto g = complete(6);
    auto phi = gen_k_bounded(6, 1, ColoringPattern::random_balanced, 3);
    std::vector<RainbowEdge> cert{{0, 1, 0, 1, phi.of(0, 1)}, {1, 2, 1, 2, phi.of(1, 2)}};
    CHECK(check_rainbow_certificate(g, phi, cert));
    cert[1].color = phi.of(0, 1);
    CHECK_FALSE(check_rainbow_certificate(g, phi, cert));

    Graph sparse(6);
    sparse.add_edge(0, 1);
    std::vector<RainbowEdge> miss{{0, 1, 2, 3, phi.of(2, 3)}};
    CHECK_FALSE(check_rainbow_certificate(sparse, phi, miss));
}

TEST_CASE("colourings round-trip through text")
{
    auto phi = gen_k_bounded(15, 4, ColoringPattern::adversarial_local_clumps, 9);
    std::stringstream ss;
    write_coloring(ss, phi);
    auto back = read_coloring(ss, 4);
    CHECK(back.n == phi.n);
    CHECK(back.color == phi.color);
    CHECK(back.is_k_bounded());
}

TEST_CASE("rainbow experiment outcome is consistent")
{
    RainbowOptions opts;
    opts.embed.dens = DensityParams{0.5, 0.2, 0.5};
    opts.embed.r0 = 4;
    GuestSpec gs{40, 2, 0.05, GuestKind::path_union, 1, 2, 4};
    for (std::uint64_t s = 0; s < 3; ++s) {
        auto res = rainbow_experiment(150, 2, 0.6, gs, opts, s);
        CHECK(res.kept_edges <= res.gamma_edges);
        CHECK(res.min_ratio >= 0.0);
        CHECK(res.min_ratio <= 1.0);
        CHECK_FALSE(res.stage.empty());
        if (res.success) {
            CHECK(res.rainbow);
            CHECK(res.embed.verified);
            CHECK(static_cast<int>(res.certificate.size()) > 0);
            std::set<int> colours;
            for (auto & e : res.certificate)
                colours.insert(e.color);
            CHECK(colours.size() == res.certificate.size());
        }
    }
}
