#include <sbw/embed.hh>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace sbw
{
    auto compress_spin(const Graph & guest, const HPartition & part) -> HPartition
    {
        auto s = part.spin();
        // used j per (role, i, half)
        std::map<std::tuple<int, int, int>, std::vector<int>> used;
        for (int y = 0; y < guest.n(); ++y) {
            auto sv = s.role(part.h[y]);
            if (sv.j >= 0)
                used[{static_cast<int>(sv.role), sv.i, s.is_low(sv.j) ? 0 : 1}].push_back(sv.j);
        }
        int tp = 2;
        for (auto & [key, js] : used) {
            std::sort(js.begin(), js.end());
            js.erase(std::unique(js.begin(), js.end()), js.end());
            tp = std::max(tp, static_cast<int>(js.size()));
        }
        tp += tp % 2;
        HPartition out = part;
        out.t = tp;
        SpinGraph s2(part.r, tp);
        for (int y = 0; y < guest.n(); ++y) {
            auto sv = s.role(part.h[y]);
            if (sv.j < 0) {
                out.h[y] = s2.at(sv.role, sv.i, -1);
                continue;
            }
            int half = s.is_low(sv.j) ? 0 : 1;
            auto & js = used[{static_cast<int>(sv.role), sv.i, half}];
            int rank = static_cast<int>(std::lower_bound(js.begin(), js.end(), sv.j) - js.begin());
            out.h[y] = s2.at(sv.role, sv.i, half * tp + rank);
        }
        rebuild_classes(guest, out);
        if (! is_homomorphism(guest, s2, out.h))
            throw std::logic_error("compress_spin broke the homomorphism");
        return out;
    }

    namespace
    {
        // move the high half up so that the spin graph has t2 >= t
        auto widen_spin(const Graph & guest, const HPartition & part, int t2) -> HPartition
        {
            auto s = part.spin();
            HPartition out = part;
            out.t = t2;
            SpinGraph s2(part.r, t2, true);
            for (int y = 0; y < guest.n(); ++y) {
                auto sv = s.role(part.h[y]);
                int j = sv.j < 0 ? -1 : s.is_low(sv.j) ? sv.j : sv.j - part.t + t2;
                out.h[y] = s2.at(sv.role, sv.i, j);
            }
            rebuild_classes(guest, out);
            return out;
        }

        auto fail(EmbedResult & res, const std::string & stage, const std::string & msg) -> EmbedResult
        {
            res.success = false;
            res.stage = stage;
            res.message = msg;
            return res;
        }

        auto is_uv(SpinRole role) -> bool { return role == SpinRole::u || role == SpinRole::v; }
    }

    auto full_embed_partitioned(const Graph & host, const GPartition & gpart, const Graph & guest, const HPartition & hpart,
        const EmbedParams & params, std::uint64_t seed) -> EmbedResult
    {
        validate(params.dens);
        if (guest.n() > host.n())
            throw GraphError("full_embed: guest has more vertices than the host");
        if (guest.max_degree() > params.delta)
            throw GraphError("full_embed: guest exceeds the degree bound");
        if (gpart.r != hpart.r || gpart.t != hpart.t)
            throw GraphError("full_embed: host and guest partitions disagree on r or t");
        EmbedResult res;
        res.r = gpart.r;
        res.t = gpart.t;
        res.f = Embedding(guest.n());
        auto s = gpart.spin();
        int r = gpart.r, t = gpart.t, delta = params.delta, hn = host.n();

        for (int x = 0; x < s.size(); ++x)
            if (hpart.classes[x].size() > gpart.clusters[x].size())
                return fail(res, "sizes", "guest class " + to_string(s.role(x).role) + " " + std::to_string(s.role(x).i) + ","
                    + std::to_string(s.role(x).j) + " is larger than its host cluster");

        // blow-ups, one per index
        for (int i = 0; i < r; ++i) {
            auto & ut = hpart.cls(SpinRole::u, i);
            auto & vt = hpart.cls(SpinRole::v, i);
            auto & uh = gpart.cls(SpinRole::u, i);
            auto & vh = gpart.cls(SpinRole::v, i);
            auto vset = VertexSet::from(static_cast<std::size_t>(hn), vh);

            // special sets: Ṽ_i-neighbourhoods of connecting/balancing vertices, padded from Ṽ_i \ X̃_i
            std::vector<char> in_x(static_cast<std::size_t>(guest.n()), 0);
            for (int x : hpart.x_tilde[i])
                in_x[x] = 1;
            std::vector<int> pads;
            for (int x : vt)
                if (! in_x[x])
                    pads.push_back(x);
            std::sort(pads.begin(), pads.end());
            std::size_t next_pad = 0;
            ConstraintSets cs;
            std::map<int, int> family_of;  // target spin vertex -> family index
            std::uint64_t counter = 0;
            auto family_for = [&](int target) {
                auto it = family_of.find(target);
                if (it != family_of.end())
                    return it->second;
                ForbiddenFamily fam;
                fam.delta = delta;
                auto yset = VertexSet::from(static_cast<std::size_t>(hn), gpart.clusters[target]);
                for (int ell = 1; ell < delta && ell <= static_cast<int>(vh.size()); ++ell) {
                    if (params.bad_mode == BadMode::neighbourhood) {
                        for (auto & b : bad_lsets(host, vset, yset, ell, params.dens).sets)
                            fam.cores.insert(b);
                        continue;
                    }
                    for (int z = 0; z < s.size(); ++z) {
                        if (is_uv(s.role(z).role) || ! s.has_edge(target, z))
                            continue;
                        auto zset = VertexSet::from(static_cast<std::size_t>(hn), gpart.clusters[z]);
                        BadOptions bo{params.mc_trials, derive_seed(seed, "full/bad", counter++)};
                        for (auto & b : Bad_lsets(host, vset, yset, zset, ell, params.dens, bo).family.sets)
                            fam.cores.insert(b);
                    }
                }
                int idx = static_cast<int>(cs.forbidden.size());
                cs.forbidden.push_back(std::move(fam));
                family_of[target] = idx;
                return idx;
            };
            std::vector<char> in_v(static_cast<std::size_t>(guest.n()), 0);
            for (int x : vt)
                in_v[x] = 1;
            for (int y = 0; y < guest.n(); ++y) {
                if (is_uv(s.role(hpart.h[y]).role))
                    continue;
                std::vector<int> members;
                guest.neighbours(y).for_each([&](int x) {
                    if (in_v[x])
                        members.push_back(x);
                });
                if (members.empty())
                    continue;
                while (static_cast<int>(members.size()) < delta) {
                    if (next_pad == pads.size())
                        return fail(res, "specials", "index " + std::to_string(i) + ": not enough padding vertices in V~ \\ X~");
                    members.push_back(pads[next_pad++]);
                }
                std::sort(members.begin(), members.end());
                cs.specials.push_back({members, family_for(hpart.h[y]), y});
            }

            BlowupParams bp;
            bp.dens = params.dens;
            bp.delta = delta;
            bp.eta = params.eta;
            bp.sigma = params.sigma;
            bp.retries = params.retries;
            bp.parts = params.parts;
            bp.corrupt_eta = params.corrupt_eta;
            BlowupResult br;
            try {
                br = blowup_embed(host, uh, vh, guest, ut, vt, cs, bp, derive_seed(seed, "full/blowup", static_cast<std::uint64_t>(i)));
            }
            catch (const GraphError & e) {
                return fail(res, "blowup", "index " + std::to_string(i) + ": " + e.what());
            }
            res.switchings += br.switchings;
            if (! br.success)
                return fail(res, "blowup", "index " + std::to_string(i) + ": " + br.failed_stage
                    + (br.diagnostics.empty() ? "" : " (" + br.diagnostics.back() + ")"));
            for (int x : ut)
                res.f.map[x] = br.f.map[x];
            for (int x : vt)
                res.f.map[x] = br.f.map[x];
            // keep the constraints for the final contract check
            int offset = static_cast<int>(res.constraints.forbidden.size());
            for (auto & fam : cs.forbidden)
                res.constraints.forbidden.push_back(fam);
            for (auto sp : cs.specials) {
                sp.family += offset;
                res.constraints.specials.push_back(sp);
            }
        }

        // connection windows
        for (int i = 0; i < r; ++i) {
            std::vector<int> window;
            auto add_half = [&](SpinRole role, int ii, int lo) {
                for (int j = lo; j < lo + t; ++j)
                    window.push_back(s.at(role, ii, j));
            };
            for (SpinRole role : {SpinRole::c, SpinRole::c_prime}) {
                if (i == 0)
                    add_half(role, 0, 0);
                add_half(role, i, t);
                if (i + 1 < r)
                    add_half(role, i + 1, 0);
            }
            for (SpinRole role : {SpinRole::b, SpinRole::b_prime}) {
                add_half(role, i, 0);
                add_half(role, i, t);
            }
            CandidateSystem sys;
            sys.external.assign(static_cast<std::size_t>(guest.n()), {});
            for (int x : window) {
                if (hpart.classes[x].empty())
                    continue;
                sys.classes.push_back(hpart.classes[x]);
                sys.clusters.push_back(gpart.clusters[x]);
                for (int w : hpart.classes[x])
                    guest.neighbours(w).for_each([&](int z) {
                        if (is_uv(s.role(hpart.h[z]).role)) {
                            if (res.f.map[z] < 0)
                                throw std::logic_error("full_embed: blow-up left a neighbour of a window vertex unmapped");
                            sys.external[w].push_back(res.f.map[z]);
                        }
                    });
            }
            if (sys.classes.empty())
                continue;
            ConnectionParams cp;
            cp.dens = params.dens;
            cp.delta = delta;
            cp.t = t;
            cp.mc_trials = params.mc_trials;
            cp.strict = params.strict;
            cp.density_filter = params.density_filter;
            auto cr = connection_embed(host, guest, sys, cp, derive_seed(seed, "full/connection", static_cast<std::uint64_t>(i)));
            res.density_relaxed_rounds += cr.density_relaxed_rounds;
            res.precondition_failures += static_cast<long>(cr.precondition_failures.size());
            if (! cr.success) {
                std::string why = ! cr.preconditions_ok && params.strict ? cr.precondition_failures.front()
                    : cr.notes.empty() ? "no SDR" : cr.notes.back();
                return fail(res, "connection", "window " + std::to_string(i) + ": " + why);
            }
            for (auto & cls : sys.classes)
                for (int w : cls)
                    res.f.map[w] = cr.phi.map[w];
        }

        if (! res.f.complete())
            return fail(res, "merge", "some guest vertices lie in no class of the partition");
        res.verified = verify_embedding(guest, host, res.f);
        res.specials_ok = specials_avoid_forbidden(res.constraints, res.f);
        if (! res.verified)
            return fail(res, "verify", "merged map is not an embedding");
        if (! res.specials_ok)
            return fail(res, "verify", "a special set landed on a forbidden set");
        res.success = true;
        res.stage = "done";
        return res;
    }

    auto full_embed(const Graph & host, const Graph & guest, const std::vector<int> & order, const EmbedParams & params,
        std::uint64_t seed) -> EmbedResult
    {
        validate(params.dens);
        if (guest.n() > host.n())
            throw GraphError("full_embed: guest has more vertices than the host");
        if (guest.max_degree() > params.delta)
            throw GraphError("full_embed: guest exceeds the degree bound");
        if (guest.n() > 0 && two_colouring(guest).empty())
            throw GraphError("full_embed: guest is not bipartite");
        if (static_cast<int>(order.size()) != guest.n())
            throw GraphError("full_embed: order does not list every guest vertex");
        EmbedResult res;

        RegularityOptions ro;
        ro.d = params.dens.d;
        ro.mc_trials = params.mc_trials;
        ro.seed = derive_seed(seed, "full/regularity");
        ReducedGraph rg;
        try {
            rg = regularity_partition(host, params.dens.p, params.dens.eps, params.r0, params.strategy, ro);
        }
        catch (const GraphError & e) {
            return fail(res, "partition_g", e.what());
        }
        if (rg.size() % 2)
            drop_to_even(rg);
        if (rg.size() < 2)
            return fail(res, "partition_g", "reduced graph has fewer than two clusters");
        auto lad = find_spanning_ladder(rg.graph, params.ladder_budget, derive_seed(seed, "full/ladder"));
        if (! lad.found)
            return fail(res, "ladder", lad.budget_exhausted ? "search budget exhausted" : "reduced graph has no spanning ladder");
        int r = static_cast<int>(lad.u.size());
        res.r = r;

        HPartition hp;
        try {
            PartitionHOptions po;
            po.seed = derive_seed(seed, "full/partition_h");
            po.verify = false;
            hp = partition_H(guest, order, r, params.eta, params.delta, po);
        }
        catch (const GraphError & e) {
            return fail(res, "partition_h", e.what());
        }
        auto rep = verify_H_partition(guest, hp);
        if (! rep.homomorphism)
            return fail(res, "partition_h", "guest partition is not a homomorphism");
        hp = compress_spin(guest, hp);
        if (params.t_override > hp.t)
            hp = widen_spin(guest, hp, params.t_override + params.t_override % 2);
        res.t = hp.t;

        GPartition gp;
        try {
            CarveOptions co;
            co.gamma = params.gamma;
            co.eta = params.eta;
            co.mc_trials = params.mc_trials;
            co.seed = derive_seed(seed, "full/carve");
            gp = carve_clusters(host, rg, lad, hp.t, params.eta_prime, params.dens, co);
        }
        catch (const GraphError & e) {
            return fail(res, "carve", e.what());
        }
        auto out = full_embed_partitioned(host, gp, guest, hp, params, derive_seed(seed, "full/embed"));
        out.r = r;
        out.t = hp.t;
        return out;
    }
}
