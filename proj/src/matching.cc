#include <sbw/embed.hh>

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

namespace sbw
{
    auto hopcroft_karp(int n_left, int n_right, const std::vector<std::vector<int>> & adj) -> std::vector<int>
    {
        const int inf = std::numeric_limits<int>::max();
        std::vector<int> match_l(static_cast<std::size_t>(n_left), -1), match_r(static_cast<std::size_t>(n_right), -1);
        std::vector<int> dist(static_cast<std::size_t>(n_left));
        auto bfs = [&]() {
            std::deque<int> q;
            bool found = false;
            for (int l = 0; l < n_left; ++l) {
                dist[l] = match_l[l] < 0 ? 0 : inf;
                if (match_l[l] < 0)
                    q.push_back(l);
            }
            while (! q.empty()) {
                int l = q.front();
                q.pop_front();
                for (int r : adj[l]) {
                    int l2 = match_r[r];
                    if (l2 < 0)
                        found = true;
                    else if (dist[l2] == inf) {
                        dist[l2] = dist[l] + 1;
                        q.push_back(l2);
                    }
                }
            }
            return found;
        };
        std::vector<std::size_t> it(static_cast<std::size_t>(n_left));
        auto dfs = [&](auto & self, int l) -> bool {
            for (; it[l] < adj[l].size(); ++it[l]) {
                int r = adj[l][it[l]];
                int l2 = match_r[r];
                if (l2 < 0 || (dist[l2] == dist[l] + 1 && self(self, l2))) {
                    match_l[l] = r;
                    match_r[r] = l;
                    ++it[l];
                    return true;
                }
            }
            dist[l] = inf;
            return false;
        };
        while (bfs()) {
            std::fill(it.begin(), it.end(), 0);
            for (int l = 0; l < n_left; ++l)
                if (match_l[l] < 0)
                    dfs(dfs, l);
        }
        return match_l;
    }

    auto hall_matching(const CandidateGraph & b) -> MatchingResult
    {
        int nl = static_cast<int>(b.left.size()), nr = static_cast<int>(b.right.size());
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(nl));
        for (int l = 0; l < nl; ++l)
            adj[l] = b.adj[l].to_vector();
        MatchingResult res;
        res.match = hopcroft_karp(nl, nr, adj);
        res.size = static_cast<int>(std::count_if(res.match.begin(), res.match.end(), [](int r) { return r >= 0; }));
        res.covers = res.size == nl;
        if (res.covers)
            return res;

        // alternating reachability from one exposed left vertex: N(S) is all matched into S
        std::vector<int> match_r(static_cast<std::size_t>(nr), -1);
        for (int l = 0; l < nl; ++l)
            if (res.match[l] >= 0)
                match_r[res.match[l]] = l;
        int root = static_cast<int>(std::find(res.match.begin(), res.match.end(), -1) - res.match.begin());
        std::vector<char> seen_l(static_cast<std::size_t>(nl), 0), seen_r(static_cast<std::size_t>(nr), 0);
        std::deque<int> q{root};
        seen_l[root] = 1;
        while (! q.empty()) {
            int l = q.front();
            q.pop_front();
            for (int r : adj[l]) {
                if (seen_r[r])
                    continue;
                seen_r[r] = 1;
                int l2 = match_r[r];
                if (l2 >= 0 && ! seen_l[l2]) {
                    seen_l[l2] = 1;
                    q.push_back(l2);
                }
            }
        }
        for (int l = 0; l < nl; ++l)
            if (seen_l[l])
                res.deficient.push_back(l);
        return res;
    }

    namespace
    {
        auto binom_capped(int n, int k, double cap) -> double
        {
            if (k < 0 || k > n)
                return 0.0;
            double c = 1.0;
            for (int q = 1; q <= k; ++q) {
                c = c * (n - k + q) / q;
                if (c > cap)
                    return cap + 1;
            }
            return c;
        }

        auto subsets_count(int n, int lo, int hi, double cap) -> double
        {
            double total = 0.0;
            for (int k = std::max(lo, 0); k <= std::min(hi, n); ++k) {
                total += binom_capped(n, k, cap);
                if (total > cap)
                    return cap + 1;
            }
            return total;
        }

        // visit every subset of {0..n-1} with size in [lo,hi], or `samples` random ones
        template <typename F>
        auto visit_subsets(int n, int lo, int hi, double cap, long samples, Rng & rng, F && f) -> std::string
        {
            lo = std::max(lo, 1);
            hi = std::min(hi, n);
            if (lo > hi)
                return "exhaustive";
            std::vector<int> all(static_cast<std::size_t>(n));
            std::iota(all.begin(), all.end(), 0);
            if (subsets_count(n, lo, hi, cap) <= cap) {
                bool go = true;
                for (int k = lo; k <= hi && go; ++k)
                    for_each_combination(all, k, [&](const std::vector<int> & s) {
                        go = f(s);
                        return go;
                    });
                return "exhaustive";
            }
            for (long q = 0; q < samples; ++q) {
                int k = static_cast<int>(uniform_int(rng, lo, hi));
                auto s = sample_k(all, static_cast<std::size_t>(k), rng);
                std::sort(s.begin(), s.end());
                if (! f(s))
                    break;
            }
            return "sampled";
        }

        // per right vertex, its neighbours among the left indices
        auto transpose(const CandidateGraph & b) -> std::vector<Bitset>
        {
            std::vector<Bitset> t(b.right.size(), Bitset(b.left.size()));
            for (std::size_t l = 0; l < b.left.size(); ++l)
                b.adj[l].for_each([&](int r) { t[r].set(l); });
            return t;
        }

        auto describe(const std::vector<int> & s, const std::vector<int> & labels) -> std::string
        {
            std::string out = "{";
            for (std::size_t k = 0; k < s.size(); ++k)
                out += (k ? "," : "") + std::to_string(labels[s[k]]);
            return out + "}";
        }
    }

    auto check_matching_conditions(const CandidateGraph & b, const CandidateGraph & b_prime, int s, int x, int n1, int n2,
        int n3, long samples, std::uint64_t seed) -> MatchingConditions
    {
        MatchingConditions rep;
        const double cap = 1 << 16;
        int nl = static_cast<int>(b_prime.left.size()), nr = static_cast<int>(b_prime.right.size());
        Rng rng(derive_seed(seed, "matching-conditions"));

        rep.ndist_ok = neighborhood_distance(b, b_prime) <= s && nr >= nl;
        if (! rep.ndist_ok)
            rep.failures.push_back("precondition: ndist(B,B') > s or |U| < |U~|");

        rep.i = true;
        for (int l = 0; l < nl; ++l)
            if (b_prime.degree(l) < n1) {
                rep.i = false;
                rep.failures.push_back("(i): deg of " + std::to_string(b_prime.left[l]) + " is " + std::to_string(b_prime.degree(l)));
                break;
            }

        rep.ii = true;
        rep.mode_ii = visit_subsets(nl, 1, n2, cap, samples, rng, [&](const std::vector<int> & st) {
            Bitset nb(static_cast<std::size_t>(nr));
            for (int l : st)
                nb |= b_prime.adj[l];
            if (static_cast<long>(nb.count()) < static_cast<long>(x) * static_cast<long>(st.size())) {
                rep.ii = false;
                rep.failures.push_back("(ii): |N(S)| < x|S| for S = " + describe(st, b_prime.left));
                return false;
            }
            return true;
        });

        // (iii) for fixed S~ the largest e(S~,S) over |S| = k is the top-k degree prefix
        auto tp = transpose(b_prime);
        rep.iii = true;
        long lo_s = static_cast<long>(x) * n2;
        rep.mode_iii = visit_subsets(nl, static_cast<int>(std::min<long>(lo_s + 1, nl + 1)), n3 - 1, cap, samples, rng,
            [&](const std::vector<int> & st) {
                auto sm = Bitset::from(static_cast<std::size_t>(nl), st);
                std::vector<long> deg;
                for (auto & row : tp)
                    deg.push_back(static_cast<long>(row.intersect_count(sm)));
                std::sort(deg.rbegin(), deg.rend());
                long e = 0;
                long size_t_ = static_cast<long>(st.size());
                for (long k = 1; k < size_t_ && k <= nr; ++k) {
                    e += deg[static_cast<std::size_t>(k - 1)];
                    if (k < lo_s)
                        continue;
                    if (static_cast<double>(e) * n3 > static_cast<double>(n1) * size_t_ * k) {
                        rep.iii = false;
                        rep.failures.push_back("(iii): e(S~,S) too large for S~ = " + describe(st, b_prime.left) + ", |S| = " + std::to_string(k));
                        return false;
                    }
                }
                return true;
            });

        // (iv) the smallest admissible S minimises |N_B(S) ∩ S~|; search it by DFS over unions
        auto tb = transpose(b);
        rep.iv = true;
        bool truncated = false;
        rep.mode_iv = visit_subsets(nl, n3, nl, cap, samples, rng, [&](const std::vector<int> & st) {
            auto sm = Bitset::from(static_cast<std::size_t>(nl), st);
            int need = nr - static_cast<int>(st.size()) + 1;
            if (need <= 0)
                need = 0;
            std::vector<int> pool;
            for (int r = 0; r < nr; ++r)
                if (static_cast<int>(tb[r].intersect_count(sm)) <= s)
                    pool.push_back(r);
            std::sort(pool.begin(), pool.end(), [&](int a, int c) { return tb[a].intersect_count(sm) < tb[c].intersect_count(sm); });
            if (static_cast<int>(pool.size()) < need)
                return true;
            bool violated = false;
            long nodes = 0;
            auto dfs = [&](auto & self, std::size_t start, int picked, const Bitset & uni) -> void {
                if (violated || ++nodes > 2000000)
                    return;
                if (picked == need) {
                    violated = true;
                    return;
                }
                for (std::size_t k = start; k + static_cast<std::size_t>(need - picked) <= pool.size() && ! violated; ++k) {
                    Bitset next = uni | (tb[pool[k]] & sm);
                    if (static_cast<int>(next.count()) <= s)
                        self(self, k + 1, picked + 1, next);
                }
            };
            dfs(dfs, 0, 0, Bitset(static_cast<std::size_t>(nl)));
            if (nodes > 2000000)
                truncated = true;
            if (violated) {
                rep.iv = false;
                rep.failures.push_back("(iv): some S with |S| > |U|-|S~| has |N_B(S) ∩ S~| <= s, S~ = " + describe(st, b.left));
                return false;
            }
            return true;
        });
        if (truncated)
            rep.mode_iv = "sampled";
        return rep;
    }
}
