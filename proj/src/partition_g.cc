#include <sbw/partition_g.hh>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace sbw
{
    auto parse_partition_strategy(const std::string & s) -> PartitionStrategy
    {
        if (s == "exact-tiny")
            return PartitionStrategy::exact_tiny;
        if (s == "refine-heuristic")
            return PartitionStrategy::refine_heuristic;
        throw GraphError("unknown partition strategy '" + s + "'");
    }

    auto to_string(PartitionStrategy s) -> std::string
    {
        return s == PartitionStrategy::exact_tiny ? "exact-tiny" : "refine-heuristic";
    }

    namespace
    {
        struct PairState
        {
            double density = 0.0;
            bool candidate = false;   // density >= d
            DenseVerdict verdict;
        };

        auto pair_index(int a, int b, int r) -> std::size_t
        {
            if (a > b)
                std::swap(a, b);
            return static_cast<std::size_t>(a) * r + b;
        }
    }

    auto regularity_partition(const Graph & g, double p, double eps, int r0, PartitionStrategy strategy,
        RegularityOptions opts) -> ReducedGraph
    {
        DensityParams params{p, eps, opts.d};
        validate(params);
        if (r0 < 1)
            throw GraphError("regularity_partition needs r0 >= 1");
        int n = g.n();
        int r1 = opts.r1 > 0 ? opts.r1 : 4 * r0;
        int r = -1;
        for (int k = r0; k <= std::min(r1, n); ++k)
            if (n % k <= eps * n) {
                r = k;
                break;
            }
        if (r < 0)
            throw GraphError("regularity_partition: no cluster count in [r0, r1] leaves at most eps*n exceptional vertices");
        int s = n / r;
        if (strategy == PartitionStrategy::exact_tiny && s > 17)
            throw GraphError("exact-tiny needs clusters of at most 17 vertices, got " + std::to_string(s));

        Rng rng(derive_seed(opts.seed, "regularity"));
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        shuffle_in_place(perm, rng);
        std::vector<std::vector<int>> members(static_cast<std::size_t>(r));
        std::vector<int> where(static_cast<std::size_t>(n), -1);
        for (int k = 0; k < r; ++k)
            for (int q = 0; q < s; ++q) {
                int v = perm[static_cast<std::size_t>(k * s + q)];
                members[k].push_back(v);
                where[v] = k;
            }
        ReducedGraph out;
        out.params = params;
        out.exceptional = g.empty_set();
        for (int q = r * s; q < n; ++q)
            out.exceptional.set(static_cast<std::size_t>(perm[q]));

        auto as_set = [&](int k) { return VertexSet::from(static_cast<std::size_t>(n), members[k]); };
        auto evaluate = [&](int a, int b) {
            PairState st;
            auto A = as_set(a), B = as_set(b);
            st.density = p_density(g, A, B, p);
            st.candidate = st.density >= params.d;
            if (st.candidate) {
                if (strategy == PartitionStrategy::exact_tiny)
                    st.verdict = check_dense_exact(g, A, B, params);
                else
                    st.verdict = check_dense_mc(g, A, B, params, opts.mc_trials,
                        derive_seed(opts.seed, "pair", pair_index(a, b, r)));
            }
            return st;
        };
        auto irregular = [](const PairState & st) { return st.candidate && st.verdict.verdict == Verdict::not_dense; };

        std::vector<PairState> state(static_cast<std::size_t>(r) * r);
        long bad = 0;
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) {
                state[pair_index(a, b, r)] = evaluate(a, b);
                bad += irregular(state[pair_index(a, b, r)]) ? 1 : 0;
            }
        out.allowance = static_cast<long>(std::floor(eps * r * (r - 1) / 2.0 + 1e-9));

        // greedy swaps that strictly lower the number of refuted pairs
        for (int round = 0; round < opts.refine_rounds && bad > 0 && r > 1; ++round) {
            std::vector<std::size_t> refuted;
            for (int a = 0; a < r; ++a)
                for (int b = a + 1; b < r; ++b)
                    if (irregular(state[pair_index(a, b, r)]))
                        refuted.push_back(pair_index(a, b, r));
            auto & st = state[refuted[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(refuted.size()) - 1))]];
            std::vector<int> pool;
            if (st.verdict.witness) {
                auto w = st.verdict.witness->first | st.verdict.witness->second;
                pool = w.to_vector();
            }
            if (pool.empty())
                continue;
            int x = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(pool.size()) - 1))];
            int cx = where[x];
            int cy = static_cast<int>(uniform_int(rng, 0, r - 2));
            if (cy >= cx)
                ++cy;
            int iy = static_cast<int>(uniform_int(rng, 0, s - 1));
            int ix = static_cast<int>(std::find(members[cx].begin(), members[cx].end(), x) - members[cx].begin());

            auto swap_xy = [&]() {
                std::swap(members[cx][ix], members[cy][iy]);
                std::swap(where[members[cx][ix]], where[members[cy][iy]]);
            };
            swap_xy();
            std::vector<std::pair<std::size_t, PairState>> fresh;
            long delta = 0;
            for (int c : {cx, cy})
                for (int o = 0; o < r; ++o) {
                    if (o == c || (c == cy && o == cx))
                        continue;
                    auto idx = pair_index(c, o, r);
                    auto ns = evaluate(c, o);
                    delta += (irregular(ns) ? 1 : 0) - (irregular(state[idx]) ? 1 : 0);
                    fresh.emplace_back(idx, std::move(ns));
                }
            if (delta < 0) {
                for (auto & [idx, ns] : fresh)
                    state[idx] = std::move(ns);
                bad += delta;
                ++out.swaps;
            }
            else
                swap_xy();
        }

        out.irregular = bad;
        out.stalled = bad > out.allowance;
        if (out.stalled)
            out.note = "refinement stalled with " + std::to_string(bad) + " refuted pairs (allowance "
                + std::to_string(out.allowance) + "); best partition returned";
        for (int k = 0; k < r; ++k)
            out.clusters.push_back(as_set(k));
        out.graph = Graph(r);
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) {
                auto & st = state[pair_index(a, b, r)];
                if (st.candidate && st.verdict.ok()) {
                    out.graph.add_edge(a, b);
                    out.certificates.push_back({a, b, st.density, st.verdict});
                }
            }
        return out;
    }

    void drop_to_even(ReducedGraph & rg)
    {
        int r = rg.size();
        if (r % 2 == 0)
            return;
        int drop = 0;
        for (int k = 1; k < r; ++k)
            if (rg.graph.degree(k) < rg.graph.degree(drop))
                drop = k;
        rg.exceptional |= rg.clusters[drop];
        rg.clusters.erase(rg.clusters.begin() + drop);
        auto fix = [&](int k) { return k > drop ? k - 1 : k; };
        Graph ng(r - 1);
        std::vector<PairCertificate> certs;
        for (auto & c : rg.certificates) {
            if (c.a == drop || c.b == drop)
                continue;
            c.a = fix(c.a);
            c.b = fix(c.b);
            ng.add_edge(c.a, c.b);
            certs.push_back(c);
        }
        rg.graph = std::move(ng);
        rg.certificates = std::move(certs);
    }

    auto reduced_min_degree(const ReducedGraph & rg, double alpha, double d, double eps) -> MinDegreeReport
    {
        MinDegreeReport rep;
        int r = rg.size();
        rep.threshold = alpha - d - eps;
        if (r == 0)
            return rep;
        rep.min_degree = rg.graph.n() > 0 ? rg.graph.degree(0) : 0;
        for (int k = 1; k < r; ++k)
            rep.min_degree = std::min(rep.min_degree, rg.graph.degree(k));
        rep.ratio = static_cast<double>(rep.min_degree) / r;
        rep.passes = rep.ratio >= rep.threshold;
        return rep;
    }

    auto is_spanning_ladder(const Graph & r, const std::vector<int> & u, const std::vector<int> & v) -> bool
    {
        int k = static_cast<int>(u.size());
        if (static_cast<int>(v.size()) != k || 2 * k != r.n())
            return false;
        std::vector<int> seen(static_cast<std::size_t>(r.n()), 0);
        for (int i = 0; i < k; ++i) {
            for (int x : {u[i], v[i]}) {
                if (x < 0 || x >= r.n() || seen[x]++)
                    return false;
            }
        }
        for (int i = 0; i < k; ++i)
            for (int j = std::max(0, i - 1); j <= std::min(k - 1, i + 1); ++j)
                if (! r.has_edge(u[i], v[j]))
                    return false;
        return true;
    }

    auto find_spanning_ladder(const Graph & r, long budget, std::uint64_t seed) -> LadderResult
    {
        LadderResult res;
        int n = r.n();
        if (n % 2 != 0)
            throw GraphError("find_spanning_ladder needs an even number of clusters");
        if (n == 0) {
            res.found = true;
            return res;
        }
        int k = n / 2;
        long chunk = std::max<long>(2000, budget / 8);

        for (int restart = 0; res.nodes < budget; ++restart) {
            Rng rng(derive_seed(seed, "ladder", static_cast<std::uint64_t>(restart)));
            std::vector<int> key(static_cast<std::size_t>(n));
            for (auto & x : key)
                x = static_cast<int>(uniform_int(rng, 0, 1 << 20));
            // low degree first, random tie-break
            auto ranked = [&](std::vector<int> c) {
                std::sort(c.begin(), c.end(), [&](int a, int b) {
                    return std::pair(r.degree(a), key[a]) < std::pair(r.degree(b), key[b]);
                });
                return c;
            };
            std::vector<int> u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
            std::vector<char> used(static_cast<std::size_t>(n), 0);
            long local = 0;
            bool cut = false;

            std::function<bool(int)> step = [&](int i) -> bool {
                if (i == k)
                    return true;
                if (++local > chunk || res.nodes + local > budget) {
                    cut = true;
                    return false;
                }
                std::vector<int> cu;
                for (int x = 0; x < n; ++x)
                    if (! used[x] && (i == 0 || r.has_edge(x, v[i - 1])))
                        cu.push_back(x);
                for (int x : ranked(cu)) {
                    used[x] = 1;
                    u[i] = x;
                    std::vector<int> cv;
                    for (int y = 0; y < n; ++y)
                        if (! used[y] && r.has_edge(x, y) && (i == 0 || r.has_edge(y, u[i - 1])))
                            cv.push_back(y);
                    for (int y : ranked(cv)) {
                        used[y] = 1;
                        v[i] = y;
                        if (step(i + 1))
                            return true;
                        used[y] = 0;
                        if (cut)
                            break;
                    }
                    used[x] = 0;
                    if (cut)
                        break;
                }
                return false;
            };
            bool ok = step(0);
            res.nodes += local;
            if (ok) {
                res.found = true;
                res.u = u;
                res.v = v;
                return res;
            }
            if (! cut)
                return res;  // exhaustive: no ladder
        }
        res.budget_exhausted = true;
        return res;
    }

    auto GPartition::cls(SpinRole role, int i, int j) const -> const std::vector<int> &
    {
        return clusters.at(static_cast<std::size_t>(spin().at(role, i, j)));
    }

    void certify_spin_pairs(const Graph & host, GPartition & part, long mc_trials, std::uint64_t seed)
    {
        auto s = part.spin();
        std::map<std::pair<int, int>, EdgeCertificate> old;
        for (auto & c : part.certificates)
            old[{c.x, c.y}] = c;
        part.certificates.clear();
        std::uint64_t k = 0;
        for (auto [x, y] : s.edges()) {
            EdgeCertificate c;
            auto it = old.find({x, y});
            if (it != old.end())
                c = it->second;
            c.x = x;
            c.y = y;
            auto X = VertexSet::from(static_cast<std::size_t>(host.n()), part.clusters[x]);
            auto Y = VertexSet::from(static_cast<std::size_t>(host.n()), part.clusters[y]);
            if (X.none() || Y.none()) {
                c.verdict = DenseVerdict{};
                c.verdict.verdict = Verdict::not_dense;
                c.verdict.note = "empty cluster";
            }
            else {
                c.density = p_density(host, X, Y, part.params.p);
                c.verdict = check_dense_auto(host, X, Y, part.params, mc_trials, derive_seed(seed, "spin-pair", k));
            }
            ++k;
            part.certificates.push_back(std::move(c));
        }
    }

    auto carve_clusters(const Graph & host, const ReducedGraph & rg, const LadderResult & ladder, int t,
        double eta_prime, const DensityParams & params, CarveOptions opts) -> GPartition
    {
        validate(params);
        if (! ladder.found || ! is_spanning_ladder(rg.graph, ladder.u, ladder.v))
            throw GraphError("carve_clusters needs a spanning ladder of the reduced graph");
        if (! (eta_prime > 0.0) || ! (opts.gamma > 0.0))
            throw GraphError("carve_clusters needs eta' > 0 and gamma > 0");
        int r = static_cast<int>(ladder.u.size());
        int n = host.n();
        GPartition part;
        part.r = r;
        part.t = t;
        part.eta = opts.eta;
        part.eta_prime = eta_prime;
        part.gamma = opts.gamma;
        part.params = params;
        part.unit = n / (2.0 * r);
        auto s = part.spin();
        int size = static_cast<int>(std::ceil(eta_prime * part.unit - 1e-9));
        int cap = static_cast<int>(std::floor(2.0 / opts.gamma + 1e-9));

        // apex choice: fewest uses first, under the cap
        part.apex_uses.assign(static_cast<std::size_t>(rg.size()), 0);
        for (int i = 0; i < r; ++i) {
            int a = ladder.u[i], b = ladder.v[i];
            std::vector<int> common;
            for (int w = 0; w < rg.size(); ++w)
                if (w != a && w != b && rg.graph.has_edge(a, w) && rg.graph.has_edge(b, w))
                    common.push_back(w);
            if (common.empty())
                throw GraphError("carve_clusters: rung " + std::to_string(i) + " (clusters " + std::to_string(a) + ", "
                    + std::to_string(b) + ") lies in no triangle of the reduced graph");
            if (static_cast<double>(common.size()) <= opts.gamma * r)
                part.gamma_r_triangles = false;
            int best = -1;
            for (int w : common)
                if (part.apex_uses[w] < cap && (best < 0 || part.apex_uses[w] < part.apex_uses[best]))
                    best = w;
            if (best < 0)
                throw GraphError("carve_clusters: every triangle apex of rung " + std::to_string(i) + " is used floor(2/gamma) times");
            ++part.apex_uses[best];
            part.apex.push_back(best);
        }

        Rng rng(derive_seed(opts.seed, "carve"));
        std::vector<std::vector<int>> rest(static_cast<std::size_t>(rg.size()));
        for (int c = 0; c < rg.size(); ++c) {
            rest[c] = rg.clusters[c].to_vector();
            shuffle_in_place(rest[c], rng);
        }
        part.clusters.assign(static_cast<std::size_t>(s.size()), {});
        std::vector<int> source(static_cast<std::size_t>(s.size()), -1);
        auto take = [&](int from, int spin_vertex, const std::string & what) {
            if (static_cast<int>(rest[from].size()) < size)
                throw GraphError("carve_clusters: cluster " + std::to_string(from) + " has " + std::to_string(rest[from].size())
                    + " vertices left but " + what + " needs " + std::to_string(size)
                    + "; need (4t + 2t*apex_uses) * ceil(eta' n/(2r)) below the cluster size");
            auto & src = rest[from];
            part.clusters[spin_vertex].assign(src.end() - size, src.end());
            src.resize(src.size() - static_cast<std::size_t>(size));
            source[spin_vertex] = from;
        };

        for (int i = 0; i < r; ++i) {
            int ui = ladder.u[i], wi = part.apex[i];
            for (int j = 0; j < t; ++j) {
                take(ui, s.b(i, j), "B");
                take(ui, s.bp(i, t + j), "B'");
                take(wi, s.b(i, t + j), "B");
                take(wi, s.bp(i, j), "B'");
            }
        }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < 2 * t; ++j) {
                take(ladder.u[i], s.c(i, j), "C");
                take(ladder.v[i], s.cp(i, j), "C'");
            }
        for (int i = 0; i < r; ++i) {
            part.clusters[s.u(i)] = rest[ladder.u[i]];
            part.clusters[s.v(i)] = rest[ladder.v[i]];
            source[s.u(i)] = ladder.u[i];
            source[s.v(i)] = ladder.v[i];
        }
        for (auto & c : part.clusters)
            std::sort(c.begin(), c.end());
        part.g.assign(static_cast<std::size_t>(n), -1);
        for (int x = 0; x < s.size(); ++x)
            for (int y : part.clusters[x])
                part.g[y] = x;

        // inheritance from exactly certified parents, then a fresh check of every pair
        std::map<std::pair<int, int>, const PairCertificate *> parent;
        for (auto & c : rg.certificates)
            parent[{std::min(c.a, c.b), std::max(c.a, c.b)}] = &c;
        for (auto [x, y] : s.edges()) {
            EdgeCertificate c;
            c.x = x;
            c.y = y;
            int a = source[x], b = source[y];
            c.parent_a = a;
            c.parent_b = b;
            auto it = parent.find({std::min(a, b), std::max(a, b)});
            if (it != parent.end() && it->second->verdict.mode == "exact" && it->second->verdict.verdict == Verdict::dense) {
                double mu = std::min(static_cast<double>(part.clusters[x].size()) / rg.clusters[a].count(),
                    static_cast<double>(part.clusters[y].size()) / rg.clusters[b].count());
                c.inherited_eps = mu > 0 ? rg.params.eps / mu : 0.0;
            }
            part.certificates.push_back(c);
        }
        certify_spin_pairs(host, part, opts.mc_trials, derive_seed(opts.seed, "carve-certify"));
        return part;
    }

    auto verify_G_partition(const Graph & host, const GPartition & part, long mc_trials, std::uint64_t seed) -> GReport
    {
        GReport rep;
        auto s = part.spin();
        auto fail = [&](bool & flag, const std::string & msg) {
            flag = false;
            if (rep.failures.size() < 50)
                rep.failures.push_back(msg);
        };
        if (static_cast<int>(part.clusters.size()) != s.size()) {
            fail(rep.g1, "cluster table has wrong size");
            return rep;
        }
        double big = (1 - part.eta) * part.unit - 1e-9, small = part.eta_prime * part.unit - 1e-9;
        for (int i = 0; i < part.r; ++i) {
            if (part.clusters[s.u(i)].size() < big)
                fail(rep.g1, "G1: |U_" + std::to_string(i) + "| = " + std::to_string(part.clusters[s.u(i)].size()));
            if (part.clusters[s.v(i)].size() < big)
                fail(rep.g1, "G1: |V_" + std::to_string(i) + "| = " + std::to_string(part.clusters[s.v(i)].size()));
        }
        for (int x = 2 * part.r; x < s.size(); ++x)
            if (part.clusters[x].size() < small) {
                auto rv = s.role(x);
                fail(rep.g2, "G2: " + to_string(rv.role) + "_{" + std::to_string(rv.i) + "," + std::to_string(rv.j)
                    + "} has " + std::to_string(part.clusters[x].size()));
            }

        std::map<std::pair<int, int>, const EdgeCertificate *> cert;
        for (auto & c : part.certificates)
            cert[{std::min(c.x, c.y), std::max(c.x, c.y)}] = &c;
        std::uint64_t k = 0;
        for (auto [x, y] : s.edges()) {
            auto tag = to_string(s.role(x).role) + std::to_string(x) + "-" + to_string(s.role(y).role) + std::to_string(y);
            auto it = cert.find({x, y});
            if (it == cert.end()) {
                fail(rep.g3, "G3: no certificate for spin edge " + tag);
                continue;
            }
            if (! it->second->verdict.ok()) {
                fail(rep.g3, "G3: stored certificate refutes " + tag);
                continue;
            }
            auto X = VertexSet::from(static_cast<std::size_t>(host.n()), part.clusters[x]);
            auto Y = VertexSet::from(static_cast<std::size_t>(host.n()), part.clusters[y]);
            if (X.none() || Y.none()) {
                fail(rep.g3, "G3: empty cluster on " + tag);
                continue;
            }
            auto v = check_dense_auto(host, X, Y, part.params, mc_trials, derive_seed(seed, "G3", k++));
            if (! v.ok())
                fail(rep.g3, "G3: re-check refutes " + tag);
        }
        return rep;
    }
}
