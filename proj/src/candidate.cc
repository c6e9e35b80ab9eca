#include <sbw/embed.hh>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace sbw
{
    auto Embedding::complete() const -> bool
    {
        return std::all_of(map.begin(), map.end(), [](int x) { return x >= 0; });
    }

    auto Embedding::injective() const -> bool
    {
        std::vector<int> img;
        for (int x : map)
            if (x >= 0)
                img.push_back(x);
        std::sort(img.begin(), img.end());
        return std::adjacent_find(img.begin(), img.end()) == img.end();
    }

    auto verify_embedding(const Graph & guest, const Graph & host, const Embedding & e) -> bool
    {
        if (static_cast<int>(e.map.size()) != guest.n() || ! e.complete())
            throw GraphError("verify_embedding needs a complete embedding");
        for (int x : e.map)
            if (x >= host.n())
                return false;
        if (! e.injective())
            return false;
        for (auto [a, b] : guest.edges())
            if (! host.has_edge(e.map[a], e.map[b]))
                return false;
        return true;
    }

    auto candidate_graph(const Graph & h, const std::vector<int> & u_tilde, const Graph & g, const std::vector<int> & u,
        const Embedding & f) -> CandidateGraph
    {
        if (! f.injective())
            throw GraphError("candidate_graph needs an injective f");
        CandidateGraph b;
        b.left = u_tilde;
        b.right = u;
        auto pool = VertexSet::from(static_cast<std::size_t>(g.n()), u);
        std::vector<int> right_index(static_cast<std::size_t>(g.n()), -1);
        for (std::size_t k = 0; k < u.size(); ++k)
            right_index[u[k]] = static_cast<int>(k);
        for (int ut : u_tilde) {
            VertexSet joint = pool;
            h.neighbours(ut).for_each([&](int w) {
                int img = f.map.at(static_cast<std::size_t>(w));
                if (img < 0)
                    throw GraphError("candidate_graph: f is undefined on a neighbour of " + std::to_string(ut));
                joint &= g.neighbours(img);
            });
            Bitset row(u.size());
            joint.for_each([&](int x) { row.set(static_cast<std::size_t>(right_index[x])); });
            b.adj.push_back(std::move(row));
        }
        return b;
    }

    auto neighborhood_distance(const CandidateGraph & b1, const CandidateGraph & b2) -> int
    {
        if (b1.left != b2.left || b1.right != b2.right)
            throw GraphError("neighborhood_distance needs identical vertex sets");
        int d = 0;
        for (std::size_t k = 0; k < b1.adj.size(); ++k)
            d += b1.adj[k] == b2.adj[k] ? 0 : 1;
        return d;
    }

    auto ForbiddenFamily::forbids(std::vector<int> image) const -> bool
    {
        std::sort(image.begin(), image.end());
        if (sets.count(image))
            return true;
        if (cores.empty())
            return false;
        int k = static_cast<int>(image.size());
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<int> sub;
            for (int q = 0; q < k; ++q)
                if (mask >> q & 1)
                    sub.push_back(image[q]);
            if (cores.count(sub))
                return true;
        }
        return false;
    }

    auto ForbiddenFamily::explicit_family() const -> SetFamily
    {
        SetFamily fam;
        fam.ell = delta;
        fam.sets.assign(sets.begin(), sets.end());
        return fam;
    }

    namespace
    {
        auto image_of(const std::vector<int> & members, const Embedding & f) -> std::vector<int>
        {
            std::vector<int> img;
            for (int m : members)
                img.push_back(f.map.at(static_cast<std::size_t>(m)));
            return img;
        }
    }

    auto specials_avoid_forbidden(const ConstraintSets & cs, const Embedding & f) -> bool
    {
        for (auto & sp : cs.specials) {
            auto img = image_of(sp.members, f);
            if (std::any_of(img.begin(), img.end(), [](int x) { return x < 0; }))
                return false;
            if (cs.forbidden.at(static_cast<std::size_t>(sp.family)).forbids(img))
                return false;
        }
        return true;
    }

    auto special_multiplicity(const ConstraintSets & cs) -> int
    {
        std::map<int, int> count;
        int best = 0;
        for (auto & sp : cs.specials)
            for (int m : sp.members)
                best = std::max(best, ++count[m]);
        return best;
    }

    namespace
    {
        class OffenseTracker
        {
        public:
            OffenseTracker(const SwitchingProblem & prob) : prob_(prob)
            {
                int gn = prob.guest->n();
                specials_of_.resize(static_cast<std::size_t>(gn));
                floor_of_.assign(static_cast<std::size_t>(gn), -1);
                if (prob.constraints)
                    for (std::size_t k = 0; k < prob.constraints->specials.size(); ++k)
                        for (int m : prob.constraints->specials[k].members)
                            specials_of_[m].push_back(static_cast<int>(k));
                for (std::size_t k = 0; k < prob.floor_vertices.size(); ++k)
                    floor_of_[prob.floor_vertices[k]] = static_cast<int>(k);
            }

            auto special_bad(int k, const Embedding & f) const -> bool
            {
                auto & sp = prob_.constraints->specials[k];
                return prob_.constraints->forbidden.at(static_cast<std::size_t>(sp.family)).forbids(image_of(sp.members, f));
            }

            auto floor_bad(int k, const Embedding & f) const -> bool
            {
                int w = prob_.floor_vertices[k];
                VertexSet joint = prob_.floor_pool[k];
                prob_.guest->neighbours(w).for_each([&](int x) {
                    int img = f.map[x];
                    if (img >= 0)
                        joint &= prob_.host->neighbours(img);
                });
                return static_cast<double>(joint.count()) < prob_.floor[k];
            }

            auto total(const Embedding & f) const -> long
            {
                long c = 0;
                if (prob_.constraints)
                    for (std::size_t k = 0; k < prob_.constraints->specials.size(); ++k)
                        c += special_bad(static_cast<int>(k), f) ? 1 : 0;
                for (std::size_t k = 0; k < prob_.floor_vertices.size(); ++k)
                    c += floor_bad(static_cast<int>(k), f) ? 1 : 0;
                return c;
            }

            // offense count restricted to the constraints touching a or b
            auto local(int a, int b, const Embedding & f) const -> long
            {
                long c = 0;
                std::vector<int> sp = specials_of_[a];
                sp.insert(sp.end(), specials_of_[b].begin(), specials_of_[b].end());
                std::sort(sp.begin(), sp.end());
                sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
                for (int k : sp)
                    c += special_bad(k, f) ? 1 : 0;
                std::vector<int> fl;
                for (int x : {a, b})
                    prob_.guest->neighbours(x).for_each([&](int w) {
                        if (floor_of_[w] >= 0)
                            fl.push_back(floor_of_[w]);
                    });
                std::sort(fl.begin(), fl.end());
                fl.erase(std::unique(fl.begin(), fl.end()), fl.end());
                for (int k : fl)
                    c += floor_bad(k, f) ? 1 : 0;
                return c;
            }

            // domain vertices involved in a current offense
            auto offenders(const Embedding & f, std::vector<std::string> * why) const -> std::vector<int>
            {
                std::vector<int> out;
                if (prob_.constraints)
                    for (std::size_t k = 0; k < prob_.constraints->specials.size(); ++k)
                        if (special_bad(static_cast<int>(k), f)) {
                            auto & m = prob_.constraints->specials[k].members;
                            out.insert(out.end(), m.begin(), m.end());
                            if (why)
                                why->push_back("special set of guest vertex " + std::to_string(prob_.constraints->specials[k].owner)
                                    + " mapped onto a forbidden set");
                        }
                for (std::size_t k = 0; k < prob_.floor_vertices.size(); ++k)
                    if (floor_bad(static_cast<int>(k), f)) {
                        prob_.guest->neighbours(prob_.floor_vertices[k]).for_each([&](int w) {
                            if (f.map[w] >= 0)
                                out.push_back(w);
                        });
                        if (why)
                            why->push_back("guest vertex " + std::to_string(prob_.floor_vertices[k]) + " below its candidate floor");
                    }
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                return out;
            }

        private:
            const SwitchingProblem & prob_;
            std::vector<std::vector<int>> specials_of_;
            std::vector<int> floor_of_;
        };
    }

    auto count_offenses(const SwitchingProblem & prob, const Embedding & f) -> long
    {
        return OffenseTracker(prob).total(f);
    }

    auto switching_repair(const SwitchingProblem & prob, const Embedding & f, int budget, std::uint64_t seed) -> RepairResult
    {
        if (! f.injective())
            throw GraphError("switching_repair needs an injective f");
        OffenseTracker tr(prob);
        RepairResult res;
        res.f = f;
        long cur = tr.total(res.f);
        res.offenses_before = cur;
        Rng rng(derive_seed(seed, "switching"));
        long tries = 0, max_tries = 50L * std::max(1, budget) + 200;
        while (cur > 0 && res.switchings < budget && tries < max_tries) {
            auto bad = tr.offenders(res.f, nullptr);
            if (bad.empty())
                break;
            std::vector<char> is_bad(static_cast<std::size_t>(prob.guest->n()), 0);
            for (int x : bad)
                is_bad[x] = 1;
            std::vector<int> good;
            for (int x : prob.domain)
                if (! is_bad[x])
                    good.push_back(x);
            if (good.empty())
                break;
            bool improved = false;
            // a few proposals per offender set before recomputing it
            for (int k = 0; k < 64 && ! improved && tries < max_tries; ++k, ++tries) {
                int a = bad[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(bad.size()) - 1))];
                int b = good[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(good.size()) - 1))];
                long before = tr.local(a, b, res.f);
                std::swap(res.f.map[a], res.f.map[b]);
                long after = tr.local(a, b, res.f);
                if (after < before) {
                    cur += after - before;
                    ++res.switchings;
                    improved = true;
                }
                else
                    std::swap(res.f.map[a], res.f.map[b]);
            }
        }
        res.offenses_after = cur;
        res.success = cur == 0;
        if (! res.success)
            tr.offenders(res.f, &res.residual);
        return res;
    }
}
