#include <sbw/lemma_checks.hh>

#include <sbw/density.hh>
#include <sbw/embed.hh>

#include <algorithm>
#include <cmath>
#include <set>

namespace sbw
{
    namespace
    {
        void record(LemmaCheck & c, bool ok, const std::string & what)
        {
            ++c.cases;
            if (! ok) {
                if (c.failures == 0)
                    c.first_failure = what;
                ++c.failures;
            }
        }

        auto iota(int lo, int hi) -> std::vector<int>
        {
            std::vector<int> v;
            for (int x = lo; x < hi; ++x)
                v.push_back(x);
            return v;
        }

        // random bipartite graph between [0,a) and [a,a+b) with edge probability q
        auto random_bipartite(int a, int b, double q, Rng & rng) -> Graph
        {
            Graph g(a + b);
            for (int x = 0; x < a; ++x)
                for (int y = a; y < a + b; ++y)
                    if (uniform_real(rng) < q)
                        g.add_edge(x, y);
            return g;
        }
    }

    auto check_switching_distance(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"switching-distance", 0, 0, {}, {}};
        for (long k = 0; k < cases; ++k) {
            Rng rng(derive_seed(seed, "lemma/switching", static_cast<std::uint64_t>(k)));
            int delta = static_cast<int>(uniform_int(rng, 1, 3));
            int a = static_cast<int>(uniform_int(rng, 3, 20)), b = static_cast<int>(uniform_int(rng, 3, 20));
            int nu = a + static_cast<int>(uniform_int(rng, 0, 10)), nv = b + static_cast<int>(uniform_int(rng, 0, 10));
            // guest: Ũ = [0,a), Ṽ = [a,a+b), each ṽ with at most Δ neighbours in Ũ
            Graph h(a + b);
            auto ut = iota(0, a);
            for (int v = a; v < a + b; ++v) {
                int deg = static_cast<int>(uniform_int(rng, 0, delta));
                for (int x : sample_k(ut, static_cast<std::size_t>(deg), rng))
                    h.add_edge(v, x);
            }
            auto g = random_bipartite(nu, nv, 0.3 + 0.6 * uniform_real(rng), rng);
            Embedding f(a + b);
            auto img = sample_k(iota(nu, nu + nv), static_cast<std::size_t>(b), rng);
            for (int v = 0; v < b; ++v)
                f.map[a + v] = img[v];
            Embedding f2 = f;
            int s = static_cast<int>(uniform_int(rng, 0, 20));
            for (int q = 0; q < s; ++q) {
                int x = a + static_cast<int>(uniform_int(rng, 0, b - 1));
                int y = a + static_cast<int>(uniform_int(rng, 0, b - 2));
                if (y >= x)
                    ++y;
                std::swap(f2.map[x], f2.map[y]);
            }
            auto u = iota(0, nu);
            int nd = neighborhood_distance(candidate_graph(h, ut, g, u, f), candidate_graph(h, ut, g, u, f2));
            record(c, nd <= 2 * s * delta,
                "case " + std::to_string(k) + ": ndist " + std::to_string(nd) + " after " + std::to_string(s) + " switchings, delta "
                    + std::to_string(delta));
        }
        return c;
    }

    auto check_corruption_bound(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"corruption-bound", 0, 0, {}, {}};
        const double etas[] = {0.05, 0.1, 0.2, 0.3};
        for (long k = 0; k < cases; ++k) {
            Rng rng(derive_seed(seed, "lemma/corruption", static_cast<std::uint64_t>(k)));
            int delta = static_cast<int>(uniform_int(rng, 1, 3));
            int n = static_cast<int>(uniform_int(rng, 3 * delta + 3, 60));
            double eta = etas[uniform_int(rng, 0, 3)];
            auto ground_v = iota(0, n);
            // half of the families crowd around a few hubs so that corruption actually happens
            bool hubs = uniform_int(rng, 0, 1) == 1;
            auto hub = sample_k(ground_v, static_cast<std::size_t>(uniform_int(rng, 1, 3)), rng);
            long want = uniform_int(rng, 1, std::min<long>(400, static_cast<long>(std::pow(n, delta)) / 4 + 1));
            std::set<std::vector<int>> sets;
            for (long q = 0; q < 20 * want && static_cast<long>(sets.size()) < want; ++q) {
                std::vector<int> s;
                if (hubs) {
                    s.push_back(hub[uniform_int(rng, 0, static_cast<long>(hub.size()) - 1)]);
                    for (int x : sample_k(ground_v, static_cast<std::size_t>(delta), rng))
                        if (static_cast<int>(s.size()) < delta && std::find(s.begin(), s.end(), x) == s.end())
                            s.push_back(x);
                    if (static_cast<int>(s.size()) < delta)
                        continue;
                }
                else
                    s = sample_k(ground_v, static_cast<std::size_t>(delta), rng);
                std::sort(s.begin(), s.end());
                sets.insert(s);
            }
            SetFamily fam;
            fam.ell = delta;
            fam.sets.assign(sets.begin(), sets.end());
            double mu = static_cast<double>(fam.size()) / std::pow(n, delta);
            auto ground = VertexSet::from(static_cast<std::size_t>(n), ground_v);
            long bad = static_cast<long>(corrupted_vertices(ground, fam, eta * n).count());
            double bound = corruption_bound(delta, eta, mu, n);
            record(c, bad <= bound + 1e-9,
                "case " + std::to_string(k) + ": " + std::to_string(bad) + " corrupted > bound " + std::to_string(bound));
        }
        return c;
    }

    auto check_hall_conditions(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"hall-conditions", 0, 0, {}, {}};
        long attempts = 0, skipped = 0;
        for (std::uint64_t k = 0; c.cases < cases && attempts < 100 * cases; ++k, ++attempts) {
            Rng rng(derive_seed(seed, "lemma/hall", k));
            int nl = static_cast<int>(uniform_int(rng, 2, 14));
            int nr = static_cast<int>(uniform_int(rng, nl, std::min(40 - nl, nl + 10)));
            double q = 0.1 + 0.5 * uniform_real(rng);
            CandidateGraph b;
            b.left = iota(0, nl);
            b.right = iota(0, nr);
            for (int l = 0; l < nl; ++l) {
                Bitset row(static_cast<std::size_t>(nr));
                for (int r = 0; r < nr; ++r)
                    if (uniform_real(rng) < q)
                        row.set(static_cast<std::size_t>(r));
                b.adj.push_back(row);
            }
            CandidateGraph bp = b;
            int changed = static_cast<int>(uniform_int(rng, 0, 2));
            for (int l : sample_k(b.left, static_cast<std::size_t>(changed), rng)) {
                Bitset row(static_cast<std::size_t>(nr));
                for (int r = 0; r < nr; ++r)
                    if (uniform_real(rng) < q)
                        row.set(static_cast<std::size_t>(r));
                bp.adj[l] = row;
            }
            int s = neighborhood_distance(b, bp) + static_cast<int>(uniform_int(rng, 0, 1));
            int n1 = nr;
            for (int l = 0; l < nl; ++l)
                n1 = std::min(n1, bp.degree(l));
            if (n1 < 1) {
                ++skipped;
                continue;
            }
            int x = static_cast<int>(uniform_int(rng, 1, 2));
            int n2 = static_cast<int>(uniform_int(rng, 1, 3));
            int n3 = static_cast<int>(uniform_int(rng, x * n2 + 1, std::max(x * n2 + 1, nl + 1)));
            auto rep = check_matching_conditions(b, bp, s, x, n1, n2, n3, 0, derive_seed(seed, "lemma/hall/check", k));
            if (! rep.all() || ! rep.exhaustive()) {
                ++skipped;
                continue;
            }
            auto m = hall_matching(bp);
            record(c, m.covers, "instance " + std::to_string(k) + ": conditions hold but the matching has size "
                + std::to_string(m.size) + "/" + std::to_string(nl));
        }
        c.note = std::to_string(skipped) + " generated instances did not verify (i)-(iv) exhaustively";
        return c;
    }

    namespace
    {
        struct DensePair
        {
            Graph g;
            VertexSet x, y;
            DensityParams params;
        };

        // a random bipartite pair certified dense by the exact checker, or nothing after a few tries
        auto certified_pair(Rng & rng) -> std::optional<DensePair>
        {
            const double ps[] = {1.0, 0.8, 0.5};
            for (int attempt = 0; attempt < 40; ++attempt) {
                int a = static_cast<int>(uniform_int(rng, 4, 16)), b = static_cast<int>(uniform_int(rng, 4, 16));
                double p = ps[uniform_int(rng, 0, 2)];
                double q = p * (0.4 + 0.6 * uniform_real(rng));
                DensePair dp;
                dp.g = random_bipartite(a, b, q, rng);
                dp.x = VertexSet::from(static_cast<std::size_t>(a + b), iota(0, a));
                dp.y = VertexSet::from(static_cast<std::size_t>(a + b), iota(a, a + b));
                double eps = 0.15 + 0.25 * uniform_real(rng);
                double d = std::min(1.0, q / p) * (0.5 + 0.4 * uniform_real(rng));
                if (d <= eps)
                    continue;
                dp.params = DensityParams{p, eps, d};
                if (check_dense_exact(dp.g, dp.x, dp.y, dp.params).verdict == Verdict::dense)
                    return dp;
            }
            return std::nullopt;
        }

        auto random_subset(const VertexSet & s, int size, Rng & rng) -> VertexSet
        {
            return VertexSet::from(s.size(), sample_k(s.to_vector(), static_cast<std::size_t>(size), rng));
        }
    }

    auto check_dense_subpairs(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"dense-subpairs", 0, 0, {}, {}};
        for (std::uint64_t k = 0; c.cases < cases && k < static_cast<std::uint64_t>(20 * cases); ++k) {
            Rng rng(derive_seed(seed, "lemma/subpairs", k));
            auto dp = certified_pair(rng);
            if (! dp)
                continue;
            int a = static_cast<int>(dp->x.count()), b = static_cast<int>(dp->y.count());
            double eps = dp->params.eps;
            // carve X, and on odd cases Y as well, keeping at least an eps fraction
            int a2 = static_cast<int>(uniform_int(rng, threshold_size(eps, a), a));
            double mu = static_cast<double>(a2) / a;
            auto x2 = random_subset(dp->x, a2, rng);
            auto y2 = dp->y;
            if (k % 2) {
                int b2 = static_cast<int>(uniform_int(rng, threshold_size(eps, b), b));
                y2 = random_subset(dp->y, b2, rng);
                mu = std::min(mu, static_cast<double>(b2) / b);
            }
            DensityParams sub{dp->params.p, eps / mu, dp->params.d};
            auto v = check_dense_exact(dp->g, x2, y2, sub);
            record(c, v.verdict == Verdict::dense,
                "pair " + std::to_string(k) + ": sub-pair with mu " + std::to_string(mu) + " is not (eps/mu)-dense");
        }
        return c;
    }

    auto check_typical_vertices(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"typical-vertices", 0, 0, {}, {}};
        for (std::uint64_t k = 0; c.cases < cases && k < static_cast<std::uint64_t>(20 * cases); ++k) {
            Rng rng(derive_seed(seed, "lemma/typical", k));
            auto dp = certified_pair(rng);
            if (! dp)
                continue;
            auto bad = atypical_vertices(dp->g, dp->x, dp->y, dp->params);
            double limit = dp->params.eps * static_cast<double>(dp->x.count());
            record(c, static_cast<double>(bad.count()) < limit,
                "pair " + std::to_string(k) + ": " + std::to_string(bad.count()) + " atypical vertices, limit " + std::to_string(limit));
        }
        return c;
    }

    auto check_crosscut(long cases, std::uint64_t seed) -> LemmaCheck
    {
        LemmaCheck c{"crosscut", 0, 0, {}, {}};
        for (long k = 0; k < cases; ++k) {
            Rng rng(derive_seed(seed, "lemma/crosscut", static_cast<std::uint64_t>(k)));
            int ell = static_cast<int>(uniform_int(rng, 1, 4));
            int n = static_cast<int>(uniform_int(rng, 3 * ell, 40));
            auto gv = iota(0, n);
            long want = uniform_int(rng, 1, 200);
            std::set<std::vector<int>> sets;
            for (long q = 0; q < 20 * want && static_cast<long>(sets.size()) < want; ++q) {
                auto s = sample_k(gv, static_cast<std::size_t>(ell), rng);
                std::sort(s.begin(), s.end());
                sets.insert(s);
            }
            SetFamily fam;
            fam.ell = ell;
            fam.sets.assign(sets.begin(), sets.end());
            auto ground = VertexSet::from(static_cast<std::size_t>(n), gv);
            bool ok = false;
            std::string what;
            try {
                auto [v1, v2] = crosscut_partition(fam, ground, derive_seed(seed, "lemma/crosscut/cut", static_cast<std::uint64_t>(k)));
                long one = count_one_crossing(fam, v2);
                ok = static_cast<int>(v1.count()) == 2 * n / 3 && static_cast<int>(v2.count()) == (n + 2) / 3
                    && ! v1.intersects(v2) && static_cast<double>(one) >= crosscut_bound(fam.size(), ell);
                what = std::to_string(one) + " one-crossing edges of " + std::to_string(fam.size());
            }
            catch (const GraphError & e) {
                what = e.what();
            }
            record(c, ok, "hypergraph " + std::to_string(k) + ": " + what);
        }
        return c;
    }

    auto run_lemma_checks(const LemmaSuiteOptions & opts, std::uint64_t seed) -> std::vector<LemmaCheck>
    {
        return {
            check_switching_distance(opts.switching_cases, derive_seed(seed, "suite/switching")),
            check_corruption_bound(opts.corruption_cases, derive_seed(seed, "suite/corruption")),
            check_hall_conditions(opts.hall_cases, derive_seed(seed, "suite/hall")),
            check_dense_subpairs(opts.dense_cases, derive_seed(seed, "suite/subpairs")),
            check_typical_vertices(opts.dense_cases, derive_seed(seed, "suite/typical")),
            check_crosscut(opts.crosscut_cases, derive_seed(seed, "suite/crosscut")),
        };
    }
}
