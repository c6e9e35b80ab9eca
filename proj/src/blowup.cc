#include <sbw/embed.hh>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbw
{
    auto blowup_embed(const Graph & host, const std::vector<int> & u, const std::vector<int> & v, const Graph & guest,
        const std::vector<int> & u_tilde, const std::vector<int> & v_tilde, const ConstraintSets & constraints,
        const BlowupParams & params, std::uint64_t seed) -> BlowupResult
    {
        validate(params.dens);
        int delta = params.delta;
        if (! (params.eta > 0.0))
            throw GraphError("blowup_embed needs slack eta > 0");
        if (u_tilde.size() > (1 - params.eta) * u.size() + 1e-9 || v_tilde.size() > (1 - params.eta) * v.size() + 1e-9)
            throw GraphError("blowup_embed: guest classes exceed (1-eta) of the host clusters");
        if (special_multiplicity(constraints) > delta)
            throw GraphError("blowup_embed: a guest vertex lies in more than delta special sets");
        for (int x : u_tilde)
            if (guest.degree(x) > delta)
                throw GraphError("blowup_embed: guest degree exceeds delta");

        BlowupResult res;
        int gn = guest.n(), hn = host.n();
        int parts = params.parts > 0 ? params.parts : delta * delta + 1;
        parts = std::max(1, std::min(parts, static_cast<int>(std::max<std::size_t>(1, u_tilde.size()))));

        // Ũ parts are 2-independent: equitable colouring of H^2[Ũ]
        std::vector<std::vector<int>> ut_parts(static_cast<std::size_t>(parts));
        if (parts == 1)
            ut_parts[0] = u_tilde;
        else {
            auto sq = graph_power(guest, 2).induced(u_tilde);
            auto col = equitable_coloring(sq, parts, derive_seed(seed, "blowup/parts"));
            for (std::size_t k = 0; k < u_tilde.size(); ++k)
                ut_parts[col[k]].push_back(u_tilde[k]);
        }
        Rng prng(derive_seed(seed, "blowup/host-parts"));
        auto u_shuffled = u;
        shuffle_in_place(u_shuffled, prng);
        std::vector<std::vector<int>> u_parts(static_cast<std::size_t>(parts));
        for (std::size_t k = 0; k < u_shuffled.size(); ++k)
            u_parts[k % parts].push_back(u_shuffled[k]);
        for (auto & p : u_parts)
            std::sort(p.begin(), p.end());
        for (int j = 0; j < parts; ++j)
            if (ut_parts[j].size() > u_parts[j].size())
                throw GraphError("blowup_embed: a guest part is larger than its host part");

        // bad Δ-sets towards every host part, then corrupted vertices
        auto vset = VertexSet::from(static_cast<std::size_t>(hn), v);
        ForbiddenFamily bprime;
        bprime.delta = delta;
        if (delta <= static_cast<int>(v.size())) {
            DensityParams half{params.dens.p, params.dens.eps, params.dens.d / 2};
            if (half.d <= half.eps)
                half.eps = half.d / 2;
            for (int j = 0; j < parts; ++j) {
                auto z = VertexSet::from(static_cast<std::size_t>(hn), u_parts[j]);
                auto fam = bad_lsets(host, vset, z, delta, half);
                for (auto & s : fam.sets)
                    bprime.sets.insert(s);
            }
        }
        for (auto & fam : constraints.forbidden)
            for (auto & s : fam.sets)
                bprime.sets.insert(s);
        res.bad_sets = static_cast<long>(bprime.sets.size());
        auto corrupted = corrupted_vertices(vset, bprime.explicit_family(), params.corrupt_eta * v.size());
        res.corrupted = static_cast<int>(corrupted.count());
        std::vector<int> v_prime;
        for (int x : v)
            if (! corrupted.test(static_cast<std::size_t>(x)))
                v_prime.push_back(x);
        if (v_prime.size() < v_tilde.size()) {
            res.failed_stage = "corruption";
            res.diagnostics.push_back("only " + std::to_string(v_prime.size()) + " uncorrupted host vertices for "
                + std::to_string(v_tilde.size()) + " guest vertices");
            return res;
        }
        // the BAD towards host parts also counts as forbidden for neighbourhood sets
        ConstraintSets cs = constraints;
        int bad_family = static_cast<int>(cs.forbidden.size());
        cs.forbidden.push_back(bprime);
        std::vector<char> in_ut(static_cast<std::size_t>(gn), 0);
        for (int x : u_tilde)
            in_ut[x] = 1;
        for (int x : u_tilde) {
            std::vector<int> nb;
            guest.neighbours(x).for_each([&](int w) { nb.push_back(w); });
            if (static_cast<int>(nb.size()) == delta)
                cs.specials.push_back({nb, bad_family, x});
        }

        SwitchingProblem prob;
        prob.guest = &guest;
        prob.host = &host;
        prob.domain = v_tilde;
        prob.constraints = &cs;
        for (int j = 0; j < parts; ++j) {
            auto pool = VertexSet::from(static_cast<std::size_t>(hn), u_parts[j]);
            double fl = params.floor_factor * std::pow(params.dens.d / 2 * params.dens.p, delta) * u_parts[j].size();
            for (int x : ut_parts[j]) {
                prob.floor_vertices.push_back(x);
                prob.floor_pool.push_back(pool);
                prob.floor.push_back(fl);
            }
        }
        int budget = std::max(1, static_cast<int>(std::ceil(params.sigma * v_tilde.size())));

        for (int attempt = 0; attempt < params.retries; ++attempt) {
            res.attempts = attempt + 1;
            auto aseed = derive_seed(seed, "blowup/attempt", static_cast<std::uint64_t>(attempt));
            Rng rng(aseed);
            Embedding f(gn);
            auto img = sample_k(v_prime, v_tilde.size(), rng);
            for (std::size_t k = 0; k < v_tilde.size(); ++k)
                f.map[v_tilde[k]] = img[k];

            auto rep = switching_repair(prob, f, budget, aseed);
            res.switchings = rep.switchings;
            auto b0 = candidate_graph(guest, u_tilde, host, u, f);
            auto b1 = candidate_graph(guest, u_tilde, host, u, rep.f);
            res.ndist = neighborhood_distance(b0, b1);
            if (res.ndist > 2 * rep.switchings * delta)
                throw std::logic_error("switching bound violated: ndist " + std::to_string(res.ndist) + " > 2 s delta");
            if (! rep.success) {
                res.failed_stage = "switching";
                res.diagnostics.push_back("attempt " + std::to_string(attempt) + ": " + std::to_string(rep.offenses_after)
                    + " offenses left after " + std::to_string(rep.switchings) + " switchings"
                    + (rep.residual.empty() ? "" : " (" + rep.residual.front() + ")"));
                continue;
            }

            Embedding out = rep.f;
            bool matched = true;
            for (int j = 0; j < parts && matched; ++j) {
                if (ut_parts[j].empty())
                    continue;
                auto cg = candidate_graph(guest, ut_parts[j], host, u_parts[j], rep.f);
                auto m = hall_matching(cg);
                if (! m.covers) {
                    matched = false;
                    res.failed_stage = "matching";
                    res.diagnostics.push_back("attempt " + std::to_string(attempt) + ": part " + std::to_string(j)
                        + " matched " + std::to_string(m.size) + "/" + std::to_string(ut_parts[j].size())
                        + ", Hall violator of size " + std::to_string(m.deficient.size()));
                    break;
                }
                for (std::size_t k = 0; k < ut_parts[j].size(); ++k)
                    out.map[ut_parts[j][k]] = u_parts[j][m.match[k]];
            }
            if (! matched)
                continue;

            // contract: every edge of H[Ũ ∪ Ṽ] lands on a host edge, and no special set on a forbidden set
            for (int x : u_tilde)
                guest.neighbours(x).for_each([&](int w) {
                    if (! host.has_edge(out.map[x], out.map[w]))
                        throw std::logic_error("blowup_embed produced a non-edge");
                });
            if (! out.injective() || ! specials_avoid_forbidden(constraints, out))
                throw std::logic_error("blowup_embed broke its contract");
            res.success = true;
            res.failed_stage.clear();
            res.f = std::move(out);
            return res;
        }
        return res;
    }
}
