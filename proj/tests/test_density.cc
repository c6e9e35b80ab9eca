#include <doctest.h>

#include "oracles.hh"

#include <sbw/density.hh>

#include <numeric>

using namespace sbw;

namespace
{
    auto vs(int n, std::vector<int> m) -> VertexSet { return VertexSet::from(static_cast<std::size_t>(n), m); }

    auto range(int lo, int hi) -> std::vector<int>
    {
        std::vector<int> v(static_cast<std::size_t>(hi - lo));
        std::iota(v.begin(), v.end(), lo);
        return v;
    }

    auto complete_bipartite(int a, int b) -> Graph
    {
        Graph g(a + b);
        for (int x = 0; x < a; ++x)
            for (int y = a; y < a + b; ++y)
                g.add_edge(x, y);
        return g;
    }

    // x ~ y iff x <= y - a (a "half graph" between [0,a) and [a,2a))
    auto half_graph(int a) -> Graph
    {
        Graph g(2 * a);
        for (int x = 0; x < a; ++x)
            for (int y = 0; y < a; ++y)
                if (x <= y)
                    g.add_edge(x, a + y);
        return g;
    }
}

TEST_CASE("p-density examples and naive agreement")
{
    auto k33 = complete_bipartite(3, 3);
    CHECK(p_density(k33, vs(6, {0, 1, 2}), vs(6, {3, 4, 5}), 1.0) == doctest::Approx(1.0));
    CHECK(p_density(Graph(6), vs(6, {0, 1, 2}), vs(6, {3, 4, 5}), 0.5) == 0.0);

    auto g = gen_gnp(100, 0.2, 5);
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto perm = range(0, 100);
        shuffle_in_place(perm, rng);
        std::vector<int> a(perm.begin(), perm.begin() + 30), b(perm.begin() + 30, perm.begin() + 60);
        CHECK(p_density(g, vs(100, a), vs(100, b), 0.2) == doctest::Approx(oracle::p_density(g, a, b, 0.2)).epsilon(1e-12));
        CHECK(edges_between(g, vs(100, a), vs(100, b)) == oracle::edges_between(g, a, b));
    }
    CHECK_THROWS_AS(p_density(g, vs(100, {}), vs(100, {1}), 0.2), GraphError);
    CHECK_THROWS_AS(p_density(g, vs(100, {1, 2}), vs(100, {2, 3}), 0.2), GraphError);
}

TEST_CASE("density parameters are validated")
{
    CHECK_NOTHROW(validate(DensityParams{0.5, 0.1, 0.5}));
    CHECK_THROWS(validate(DensityParams{0.0, 0.1, 0.5}));
    CHECK_THROWS(validate(DensityParams{0.5, 0.0, 0.5}));
    CHECK_THROWS(validate(DensityParams{0.5, 0.1, 1.5}));
}

TEST_CASE("threshold sizes round up")
{
    CHECK(threshold_size(0.25, 8) == 2);
    CHECK(threshold_size(0.2, 8) == 2);
    CHECK(threshold_size(0.1, 10) == 1);
    CHECK(threshold_size(0.1, 11) == 2);
    for (int n = 1; n < 50; ++n)
        for (double e : {0.05, 0.1, 0.15, 1.0 / 3})
            CHECK(threshold_size(e, static_cast<std::size_t>(n)) == oracle::threshold(e, static_cast<std::size_t>(n)));
}

TEST_CASE("exact dense check on complete, empty and half graphs")
{
    auto kb = complete_bipartite(5, 6);
    auto u = vs(11, range(0, 5)), w = vs(11, range(5, 11));
    CHECK(check_dense_exact(kb, u, w, DensityParams{1.0, 0.1, 1.0}).verdict == Verdict::dense);

    auto v = check_dense_exact(Graph(11), u, w, DensityParams{1.0, 0.1, 0.5});
    REQUIRE(v.verdict == Verdict::not_dense);
    REQUIRE(v.witness);

    auto hg = half_graph(8);
    auto hu = vs(16, range(0, 8)), hw = vs(16, range(8, 16));
    DensityParams prm{1.0, 0.25, 0.5};
    auto hv = check_dense_exact(hg, hu, hw, prm);
    CHECK((hv.verdict == Verdict::dense) == oracle::dense(hg, range(0, 8), range(8, 16), prm));
}

TEST_CASE("not-dense witnesses violate the inequality")
{
    for (std::uint64_t s = 0; s < 60; ++s) {
        Rng rng(s);
        int a = static_cast<int>(uniform_int(rng, 2, 7)), b = static_cast<int>(uniform_int(rng, 2, 7));
        Graph g(a + b);
        double q = uniform_real(rng);
        for (int x = 0; x < a; ++x)
            for (int y = a; y < a + b; ++y)
                if (uniform_real(rng) < q)
                    g.add_edge(x, y);
        DensityParams prm{0.8, 0.2 + 0.2 * uniform_real(rng), 0.7};
        auto u = vs(a + b, range(0, a)), w = vs(a + b, range(a, a + b));
        auto v = check_dense_exact(g, u, w, prm);
        CAPTURE(s);
        CHECK((v.verdict == Verdict::dense) == oracle::dense(g, range(0, a), range(a, a + b), prm));
        if (v.verdict == Verdict::not_dense) {
            REQUIRE(v.witness);
            auto & [wu, ww] = *v.witness;
            CHECK(wu.is_subset_of(u));
            CHECK(ww.is_subset_of(w));
            CHECK(static_cast<int>(wu.count()) >= threshold_size(prm.eps, u.count()));
            CHECK(static_cast<int>(ww.count()) >= threshold_size(prm.eps, w.count()));
            CHECK(p_density(g, wu, ww, prm.p) < prm.d - prm.eps);
        }
    }
}

TEST_CASE("exact dense check guards its size")
{
    auto g = gen_gnp(40, 0.5, 1);
    CHECK_THROWS_AS(check_dense_exact(g, vs(40, range(0, 20)), vs(40, range(20, 40)), DensityParams{0.5, 0.1, 0.5}), GraphError);
}

TEST_CASE("monte carlo dense check")
{
    auto kb = complete_bipartite(30, 30);
    auto u = vs(60, range(0, 30)), w = vs(60, range(30, 60));
    auto v = check_dense_mc(kb, u, w, DensityParams{1.0, 0.1, 0.9}, 200, 3);
    CHECK(v.verdict == Verdict::probably_dense);
    CHECK(v.samples_used == 200);
    CHECK_THROWS(check_dense_mc(kb, u, w, DensityParams{1.0, 0.1, 0.9}, 0, 3));

    // planted sparse spot at exactly the threshold sizes: 3 of 10 vertices on each side see nothing of each other
    Graph g(20);
    for (int x = 0; x < 10; ++x)
        for (int y = 10; y < 20; ++y)
            if (! (x < 3 && y < 13))
                g.add_edge(x, y);
    auto su = vs(20, range(0, 10)), sw = vs(20, range(10, 20));
    DensityParams prm{1.0, 0.3, 0.9};
    REQUIRE(check_dense_exact(g, su, sw, prm).verdict == Verdict::not_dense);
    int found = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto mc = check_dense_mc(g, su, sw, prm, 2000, s);
        if (mc.verdict == Verdict::not_dense) {
            ++found;
            auto & [wu, ww] = *mc.witness;
            CHECK(p_density(g, wu, ww, 1.0) < prm.d - prm.eps);
        }
    }
    CHECK(found >= 50);
}

TEST_CASE("star counts")
{
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    SetFamily fam{2, {{1, 2}}, true};
    CHECK(count_stars(g, vs(3, {0}), fam) == 1);
    g.remove_edge(0, 2);
    CHECK(count_stars(g, vs(3, {0}), fam) == 0);

    auto big = gen_gnp(60, 0.5, 2);
    SetFamily f5{2, {{10, 11}, {12, 13}, {14, 15}, {16, 17}, {18, 19}}, true};
    CHECK(count_stars(big, vs(60, range(0, 10)), f5) == oracle::count_stars(big, range(0, 10), f5.sets));

    SetFamily overlap{2, {{10, 11}, {11, 12}}, true};
    CHECK_THROWS_AS(count_stars(big, vs(60, range(0, 10)), overlap), GraphError);
    SetFamily hits_x{2, {{1, 11}}, true};
    CHECK_THROWS_AS(count_stars(big, vs(60, range(0, 10)), hits_x), GraphError);
}

TEST_CASE("star counts are monotone under subgraphs")
{
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto gam = gen_gnp(50, 0.6, s);
        auto g = gam;
        Rng rng(s + 100);
        for (auto [a, b] : gam.edges())
            if (uniform_real(rng) < 0.3)
                g.remove_edge(a, b);
        SetFamily fam{3, {{20, 21, 22}, {23, 24, 25}, {30, 31, 32}, {40, 41, 42}}, true};
        CHECK(count_stars(g, vs(50, range(0, 20)), fam) <= count_stars(gam, vs(50, range(0, 20)), fam));
    }
}

TEST_CASE("bad l-sets examples and oracle")
{
    auto kb = complete_bipartite(5, 6);
    auto y = vs(11, range(0, 5)), z = vs(11, range(5, 11));
    CHECK(bad_lsets(kb, y, z, 2, DensityParams{1.0, 0.5, 1.0}).sets.empty());
    CHECK(bad_lsets(Graph(11), y, z, 2, DensityParams{1.0, 0.1, 0.5}).size() == 10);
    CHECK_THROWS_AS(bad_lsets(kb, y, z, 6, DensityParams{1.0, 0.1, 0.5}), GraphError);

    auto g = gen_gnp(40, 0.4, 9);
    DensityParams prm{0.4, 0.1, 0.4};
    auto fam = bad_lsets(g, vs(40, range(0, 12)), vs(40, range(12, 27)), 2, prm);
    std::set<std::vector<int>> got(fam.sets.begin(), fam.sets.end());
    CHECK(got == oracle::bad_lsets(g, range(0, 12), range(12, 27), 2, prm));
}

TEST_CASE("Bad l-sets examples and brute force")
{
    // Y complete to X and Z: nothing is bad
    Graph g(12);
    for (int y = 4; y < 8; ++y) {
        for (int x = 0; x < 4; ++x)
            g.add_edge(x, y);
        for (int z = 8; z < 12; ++z)
            g.add_edge(y, z);
    }
    auto x = vs(12, range(0, 4)), y = vs(12, range(4, 8)), z = vs(12, range(8, 12));
    DensityParams prm{1.0, 0.1, 0.8};
    CHECK(Bad_lsets(g, x, y, z, 2, prm).family.sets.empty());

    // x = 0 loses its Y-neighbours: every pair through it is bad, via its 1-subset
    for (int yy = 4; yy < 8; ++yy)
        g.remove_edge(0, yy);
    auto bf = Bad_lsets(g, x, y, z, 2, prm);
    CHECK(bf.family.size() == 3);
    for (std::size_t q = 0; q < bf.family.size(); ++q) {
        CHECK(bf.family.sets[q][0] == 0);
        CHECK(bf.records[q].subset == std::vector<int>{0});
        CHECK(bf.records[q].reason == BadReason::small_neighbourhood);
    }

    for (std::uint64_t s = 0; s < 30; ++s) {
        Rng rng(s);
        auto h = gen_gnp(18, 0.3 + 0.5 * uniform_real(rng), s);
        DensityParams p2{0.6, 0.2, 0.6};
        auto got = Bad_lsets(h, vs(18, range(0, 6)), vs(18, range(6, 13)), vs(18, range(13, 18)), 2, p2);
        std::set<std::vector<int>> gs(got.family.sets.begin(), got.family.sets.end());
        CAPTURE(s);
        CHECK(gs == oracle::Bad_lsets(h, range(0, 6), range(6, 13), range(13, 18), 2, p2));
        for (auto & r : got.records)
            if (r.reason == BadReason::not_dense)
                CHECK((r.density_mode == "exact" || r.density_mode == "empty"));
    }
}

TEST_CASE("corrupted vertices")
{
    auto ground = vs(10, range(0, 10));
    CHECK(corrupted_vertices(ground, SetFamily{2, {}, false}, 0.0).none());
    auto c = corrupted_vertices(ground, SetFamily{2, {{3, 7}}, false}, 0.0);
    CHECK(c.to_vector() == std::vector<int>{3, 7});

    for (std::uint64_t s = 0; s < 40; ++s) {
        Rng rng(s);
        std::set<std::vector<int>> sets;
        while (sets.size() < 30) {
            auto b = sample_k(range(0, 10), 3, rng);
            std::sort(b.begin(), b.end());
            sets.insert(b);
        }
        SetFamily fam{3, {sets.begin(), sets.end()}, false};
        for (double x : {0.0, 1.0, 2.0, 3.5}) {
            auto got = corrupted_vertices(ground, fam, x).to_vector();
            auto want = oracle::corrupted(range(0, 10), fam.sets, 3, x);
            CHECK(std::set<int>(got.begin(), got.end()) == want);
        }
        double eta = 0.2, mu = 30.0 / 1000.0;
        CHECK(corrupted_vertices(ground, fam, eta * 10).count() <= corruption_bound(3, eta, mu, 10) + 1e-9);
    }
}

TEST_CASE("expansion report")
{
    auto kb = complete_bipartite(6, 8);
    auto rep = check_expansion(kb, vs(14, range(0, 6)), vs(14, range(6, 14)), DensityParams{1.0, 0.1, 0.5}, 1, 1.0, 50, 3);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.min_ratio == doctest::Approx(8.0));

    auto g = gen_gnp(300, 0.3, 4);
    auto x = vs(300, range(0, 100)), y = vs(300, range(100, 300));
    auto r1 = check_expansion(g, x, y, DensityParams{0.3, 0.1, 0.5}, 5, 1.0, 40, 17);
    auto r2 = check_expansion(g, x, y, DensityParams{0.3, 0.1, 0.5}, 5, 1.0, 40, 17);
    CHECK(r1.min_ratio == r2.min_ratio);
    CHECK(r1.worst_family == r2.worst_family);

    CHECK(check_expansion(Graph(14), vs(14, range(0, 6)), vs(14, range(6, 14)), DensityParams{1.0, 0.1, 0.5}, 3, 1.0, 10, 1).vacuous);
}

TEST_CASE("boundedness report")
{
    auto e = check_boundedness(Graph(50), 0.1, 1.1, 0.5, 20, 1);
    CHECK(e.max_ratio == 0.0);
    CHECK(e.bounded);
    Graph k(30);
    for (int a = 0; a < 30; ++a)
        for (int b = a + 1; b < 30; ++b)
            k.add_edge(a, b);
    auto kr = check_boundedness(k, 0.1, 1.01, 1.0, 20, 1);
    CHECK(kr.max_ratio <= 1.0 + 1e-12);
    CHECK(kr.bounded);
    CHECK_THROWS(check_boundedness(Graph(5), 0.1, 1.1, 0.5, 5, 1));

    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s)
        ok += check_boundedness(gen_gnp(500, 0.1, s), 0.1, 1.2, 0.1, 200, s).bounded ? 1 : 0;
    CHECK(ok >= 19);
}

TEST_CASE("gnp statistics on trivial inputs")
{
    Graph k(60);
    for (int a = 0; a < 60; ++a)
        for (int b = a + 1; b < 60; ++b)
            k.add_edge(a, b);
    auto st = gnp_stats(k, vs(60, range(0, 15)), vs(60, range(15, 30)), vs(60, range(30, 50)), 1.0);
    CHECK_FALSE(st.out_of_regime);
    CHECK(st.ratio_x == doctest::Approx(1.0));
    CHECK(st.ratio_xy == doctest::Approx(1.0));
    CHECK(st.ratio_z == doctest::Approx(1.0));
    CHECK(st.within);
    // sets below n/ln n are outside the regime
    CHECK(gnp_stats(k, vs(60, range(0, 10)), vs(60, range(15, 30)), vs(60, range(30, 50)), 1.0).out_of_regime);
    CHECK(gnp_stats(k, vs(60, {}), vs(60, range(15, 30)), vs(60, range(30, 50)), 1.0).out_of_regime);
}

TEST_CASE("crosscut partitions")
{
    auto g6 = vs(6, range(0, 6));
    SetFamily one{2, {{1, 4}}, false};
    auto [a1, b1] = crosscut_partition(one, g6, 1);
    CHECK(a1.count() == 4);
    CHECK(b1.count() == 2);
    CHECK(count_one_crossing(one, b1) == 1);

    auto [a2, b2] = crosscut_partition(SetFamily{2, {}, false}, vs(7, range(0, 7)), 1);
    CHECK(a2.count() == 4);
    CHECK(b2.count() == 3);

    Rng rng(5);
    std::set<std::vector<int>> sets;
    while (sets.size() < 40) {
        auto b = sample_k(range(0, 30), 3, rng);
        std::sort(b.begin(), b.end());
        sets.insert(b);
    }
    SetFamily f3{3, {sets.begin(), sets.end()}, false};
    CHECK(crosscut_bound(40, 3) == doctest::Approx(3.75));
    auto [a3, b3] = crosscut_partition(f3, vs(30, range(0, 30)), 2);
    CHECK(a3.count() == 20);
    CHECK(b3.count() == 10);
    CHECK(count_one_crossing(f3, b3) >= 4);

    CHECK_THROWS_AS(crosscut_partition(f3, vs(30, range(0, 8)), 1), GraphError);
}

TEST_CASE("family validity")
{
    auto ground = vs(10, range(0, 6));
    CHECK(family_is_valid(SetFamily{2, {{0, 1}, {2, 3}}, true}, ground));
    CHECK_FALSE(family_is_valid(SetFamily{2, {{0, 1}, {1, 3}}, true}, ground));
    CHECK(family_is_valid(SetFamily{2, {{0, 1}, {1, 3}}, false}, ground));
    CHECK_FALSE(family_is_valid(SetFamily{2, {{0, 7}}, false}, ground));
    CHECK_FALSE(family_is_valid(SetFamily{2, {{0, 0}}, false}, ground));
    CHECK_FALSE(family_is_valid(SetFamily{3, {{0, 1}}, false}, ground));
}
