#include <sbw/embed.hh>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sbw
{
    auto candidate_set(const Graph & host, const std::vector<int> & cluster, const std::vector<int> & external) -> VertexSet
    {
        auto c = VertexSet::from(static_cast<std::size_t>(host.n()), cluster);
        for (int x : external)
            c &= host.neighbours(x);
        return c;
    }

    auto connection_embed(const Graph & host, const Graph & guest, const CandidateSystem & sys, const ConnectionParams & params,
        std::uint64_t seed) -> ConnectionResult
    {
        validate(params.dens);
        ConnectionResult res;
        int gn = guest.n(), hn = host.n();
        int k_classes = static_cast<int>(sys.classes.size());
        if (static_cast<int>(sys.clusters.size()) != k_classes)
            throw GraphError("connection_embed: classes and clusters differ in number");
        res.phi = Embedding(gn);
        // a dense pair stays dense for any smaller d, so the lemma may assume d <= 1/4
        DensityParams dens = params.dens;
        dens.d = std::min(dens.d, 0.25);
        if (dens.eps >= dens.d)
            dens.eps = dens.d / 2;
        double d = dens.d, p = dens.p, eps = dens.eps;
        double eps_t = d / (12.0 * params.delta * std::max(1, params.t));

        std::vector<int> cls(static_cast<std::size_t>(gn), -1);
        for (int k = 0; k < k_classes; ++k)
            for (int w : sys.classes[k]) {
                if (cls[w] >= 0)
                    throw GraphError("connection_embed: guest vertex in two classes");
                cls[w] = k;
            }
        auto ext = [&](int w) -> const std::vector<int> & {
            static const std::vector<int> none;
            return static_cast<std::size_t>(w) < sys.external.size() ? sys.external[w] : none;
        };
        auto fail_pre = [&](const std::string & msg) {
            res.preconditions_ok = false;
            if (res.precondition_failures.size() < 100)
                res.precondition_failures.push_back(msg);
        };

        // window neighbours split by class order
        std::vector<std::vector<int>> earlier(static_cast<std::size_t>(gn)), later(static_cast<std::size_t>(gn));
        std::vector<VertexSet> cand(static_cast<std::size_t>(gn));
        std::vector<char> independent(static_cast<std::size_t>(k_classes), 1);
        for (int k = 0; k < k_classes; ++k) {
            // (A) sizes
            if (sys.classes[k].size() > sys.clusters[k].size())
                fail_pre("(A) class " + std::to_string(k) + " has more guest than host vertices");
            auto cl = VertexSet::from(static_cast<std::size_t>(hn), sys.clusters[k]);
            std::map<int, int> ext_owner;
            long ref = -1;
            for (int w : sys.classes[k]) {
                guest.neighbours(w).for_each([&](int z) {
                    if (cls[z] < 0)
                        return;
                    if (cls[z] == k)
                        fail_pre("(B) edge inside class " + std::to_string(k));
                    (cls[z] < k ? earlier : later)[w].push_back(z);
                });
                // (C) degrees and disjoint external sets
                long edeg = static_cast<long>(ext(w).size());
                long ldeg = static_cast<long>(earlier[w].size());
                if (static_cast<long>(earlier[w].size() + later[w].size()) + edeg > params.delta)
                    fail_pre("(C) guest vertex " + std::to_string(w) + " exceeds delta with its external set");
                if (ref >= 0 && edeg + ldeg != ref)
                    fail_pre("(C) edeg + ldeg not constant in class " + std::to_string(k));
                ref = edeg + ldeg;
                for (int x : ext(w)) {
                    auto [it, fresh] = ext_owner.emplace(x, w);
                    if (! fresh && it->second != w)
                        fail_pre("(C) external sets overlap in class " + std::to_string(k));
                }
                cand[w] = cl;
                for (int x : ext(w))
                    cand[w] &= host.neighbours(x);
                // (D) candidate set size
                double need = std::pow((d - eps) * p, static_cast<double>(edeg)) * sys.clusters[k].size();
                if (static_cast<double>(cand[w].count()) < need)
                    fail_pre("(D) |C(" + std::to_string(w) + ")| = " + std::to_string(cand[w].count()) + " below "
                        + std::to_string(need));
            }
            // (B) 3-independence
            auto & members = sys.classes[k];
            for (std::size_t a = 0; a < members.size(); ++a) {
                Bitset ball = guest.neighbours(members[a]);
                for (int step = 1; step < 3; ++step) {
                    Bitset next = ball;
                    ball.for_each([&](int z) { next |= guest.neighbours(z); });
                    ball = std::move(next);
                }
                for (std::size_t b = a + 1; b < members.size(); ++b)
                    if (ball.test(static_cast<std::size_t>(members[b]))) {
                        if (independent[k])
                            fail_pre("(B) class " + std::to_string(k) + " is not 3-independent");
                        independent[k] = 0;
                    }
            }
        }
        for (int w = 0; w < gn; ++w) {
            if (cls[w] < 0)
                continue;
            for (int x : ext(w))
                if (x < 0 || x >= hn)
                    throw GraphError("connection_embed: external image out of range");
            long outside = guest.degree(w) - static_cast<long>(earlier[w].size() + later[w].size());
            if (static_cast<long>(ext(w).size()) != outside)
                fail_pre("(C) guest vertex " + std::to_string(w) + " has outside neighbours without external images");
        }
        // (E) density of candidate pairs along window edges
        std::uint64_t counter = 0;
        for (int w = 0; w < gn; ++w)
            for (int z : later[w]) {
                if (cand[w].none() || cand[z].none() || cand[w].intersects(cand[z]))
                    continue;
                auto v = check_dense_auto(host, cand[w], cand[z], dens, params.mc_trials, derive_seed(seed, "connection/E", counter++));
                if (! v.ok())
                    fail_pre("(E) candidate pair of " + std::to_string(w) + "-" + std::to_string(z) + " is not dense");
            }
        if (params.strict && ! res.preconditions_ok)
            return res;

        std::vector<VertexSet> cur = cand;
        Bitset used(static_cast<std::size_t>(hn));
        for (int k = 0; k < k_classes; ++k) {
            auto & members = sys.classes[k];
            if (members.empty())
                continue;
            int nl = static_cast<int>(members.size());
            auto filtered = [&](bool with_density, std::vector<std::vector<int>> & lists, std::vector<std::vector<int>> & reject) {
                lists.assign(static_cast<std::size_t>(nl), {});
                for (int a = 0; a < nl; ++a) {
                    int y = members[a];
                    (cur[y] - used).for_each([&](int hv) {
                        for (int z : later[y])
                            if (static_cast<double>(cur[z].intersect_count(host.neighbours(hv))) < (d - eps_t) * p * cur[z].count())
                                return;
                        if (with_density && std::find(reject[a].begin(), reject[a].end(), hv) != reject[a].end())
                            return;
                        lists[a].push_back(hv);
                    });
                    // the matching scans lists in order: prefer images that leave later neighbours more room
                    std::vector<std::pair<long, int>> keyed;
                    for (int hv : lists[a]) {
                        long room = 0;
                        for (int z : later[y])
                            room += static_cast<long>(cur[z].intersect_count(host.neighbours(hv)));
                        keyed.emplace_back(-room, hv);
                    }
                    std::sort(keyed.begin(), keyed.end());
                    for (std::size_t q = 0; q < keyed.size(); ++q)
                        lists[a][q] = keyed[q].second;
                }
            };
            auto solve = [&](const std::vector<std::vector<int>> & lists, std::vector<int> & pick) {
                std::vector<int> right;
                for (auto & l : lists)
                    right.insert(right.end(), l.begin(), l.end());
                std::sort(right.begin(), right.end());
                right.erase(std::unique(right.begin(), right.end()), right.end());
                std::vector<std::vector<int>> adj(static_cast<std::size_t>(nl));
                for (int a = 0; a < nl; ++a)
                    for (int hv : lists[a])
                        adj[a].push_back(static_cast<int>(std::lower_bound(right.begin(), right.end(), hv) - right.begin()));
                auto m = hopcroft_karp(nl, static_cast<int>(right.size()), adj);
                pick.assign(static_cast<std::size_t>(nl), -1);
                bool all = true;
                for (int a = 0; a < nl; ++a) {
                    if (m[a] < 0)
                        all = false;
                    else
                        pick[a] = right[m[a]];
                }
                if (! all) {
                    CandidateGraph cg;
                    cg.left = members;
                    cg.right = right;
                    for (int a = 0; a < nl; ++a)
                        cg.adj.push_back(Bitset::from(right.size(), adj[a]));
                    auto hm = hall_matching(cg);
                    res.deficient.clear();
                    for (int l : hm.deficient)
                        res.deficient.push_back(members[l]);
                }
                return all;
            };

            std::vector<std::vector<int>> lists, reject(static_cast<std::size_t>(nl));
            std::vector<int> pick;
            filtered(false, lists, reject);
            if (! solve(lists, pick)) {
                res.failed_round = k;
                res.notes.push_back("round " + std::to_string(k) + ": no system of distinct representatives");
                return res;
            }
            // lazy density filter: re-solve without representatives whose neighbourhood pairs are refuted
            if (params.density_filter) {
                bool relaxed = false;
                for (int iter = 0; iter < 8; ++iter) {
                    bool any = false;
                    for (int a = 0; a < nl; ++a) {
                        int y = members[a], hv = pick[a];
                        for (int z : later[y]) {
                            auto nz = cur[z] & host.neighbours(hv);
                            for (int z2 : later[z]) {
                                if (nz.none() || cur[z2].none() || nz.intersects(cur[z2]))
                                    continue;
                                auto v = check_dense_auto(host, nz, cur[z2], dens, params.mc_trials,
                                    derive_seed(seed, "connection/filter", counter++));
                                if (! v.ok()) {
                                    reject[a].push_back(hv);
                                    any = true;
                                    ++res.density_rejections;
                                    break;
                                }
                            }
                            if (! reject[a].empty() && reject[a].back() == hv)
                                break;
                        }
                    }
                    if (! any)
                        break;
                    std::vector<int> pick2;
                    filtered(true, lists, reject);
                    if (! solve(lists, pick2)) {
                        relaxed = true;
                        break;
                    }
                    pick = pick2;
                }
                if (relaxed) {
                    ++res.density_relaxed_rounds;
                    res.deficient.clear();
                    res.notes.push_back("round " + std::to_string(k) + ": density filter relaxed to keep an SDR");
                }
            }

            for (int a = 0; a < nl; ++a) {
                int y = members[a], hv = pick[a];
                if (! cur[y].test(static_cast<std::size_t>(hv)))
                    throw std::logic_error("connection_embed: representative outside its candidate set");
                res.phi.map[y] = hv;
                used.set(static_cast<std::size_t>(hv));
                for (int z : later[y]) {
                    auto before = cur[z].count();
                    cur[z] &= host.neighbours(hv);
                    // ST(b): each embedded neighbour keeps at least a dp/2 fraction
                    if (static_cast<double>(cur[z].count()) < d * p / 2 * before) {
                        if (independent[k])
                            throw std::logic_error("connection_embed: candidate set shrank below dp/2");
                        res.notes.push_back("round " + std::to_string(k) + ": shared neighbour shrank below dp/2");
                    }
                }
            }
            // ST(a): the maintained sets equal the intersection formula
            for (int k2 = k + 1; k2 < k_classes; ++k2)
                for (int z : sys.classes[k2]) {
                    VertexSet fresh = cand[z];
                    for (int y : earlier[z])
                        if (res.phi.map[y] >= 0)
                            fresh &= host.neighbours(res.phi.map[y]);
                    if (! (fresh == cur[z]))
                        throw std::logic_error("connection_embed: candidate sets drifted from their definition");
                }
        }
        for (int k = 0; k < k_classes; ++k)
            for (int w : sys.classes[k])
                if (! cand[w].test(static_cast<std::size_t>(res.phi.map[w])))
                    throw std::logic_error("connection_embed: vertex placed outside C(w)");
        res.success = true;
        return res;
    }
}
