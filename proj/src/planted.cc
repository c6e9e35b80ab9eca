#include <sbw/embed.hh>

#include <algorithm>
#include <cmath>

namespace sbw
{
    auto gen_planted_spin_host(int r, int t, PlantedSizes sizes, double d, double p, std::uint64_t seed) -> PlantedHost
    {
        if (sizes.big < 1 || sizes.connecting < 1 || sizes.balancing < 1)
            throw GraphError("gen_planted_spin_host needs positive cluster sizes");
        if (! (d * p >= 0.0 && d * p <= 1.0))
            throw GraphError("gen_planted_spin_host needs d*p in [0,1]");
        SpinGraph s(r, t);
        PlantedHost out;
        auto & part = out.part;
        part.r = r;
        part.t = t;
        part.params = DensityParams{p, 0.1, d};
        part.unit = sizes.big;
        part.eta_prime = static_cast<double>(sizes.connecting) / sizes.big;
        part.clusters.assign(static_cast<std::size_t>(s.size()), {});
        int n = 0;
        for (int x = 0; x < s.size(); ++x) {
            auto role = s.role(x).role;
            int size = role == SpinRole::u || role == SpinRole::v ? sizes.big
                : role == SpinRole::c || role == SpinRole::c_prime ? sizes.connecting : sizes.balancing;
            for (int k = 0; k < size; ++k)
                part.clusters[x].push_back(n++);
        }
        part.g.assign(static_cast<std::size_t>(n), -1);
        for (int x = 0; x < s.size(); ++x)
            for (int v : part.clusters[x])
                part.g[v] = x;

        out.graph = Graph(n);
        std::uint64_t k = 0;
        for (auto [a, b] : s.edges()) {
            auto & ca = part.clusters[a];
            auto & cb = part.clusters[b];
            long total = static_cast<long>(ca.size()) * static_cast<long>(cb.size());
            long want = std::lround(d * p * static_cast<double>(total));
            Rng rng(derive_seed(seed, "planted/pair", k++));
            // Floyd's sampling of `want` distinct cells
            std::vector<char> taken(static_cast<std::size_t>(total), 0);
            for (long q = total - want; q < total; ++q) {
                long cell = uniform_int(rng, 0, q);
                if (taken[cell])
                    cell = q;
                taken[cell] = 1;
                out.graph.add_edge(ca[cell / cb.size()], cb[cell % cb.size()]);
            }
        }
        return out;
    }

    auto gen_planted_spin_guest(const GPartition & host_part, PlantedGuestSpec spec, std::uint64_t seed) -> PlantedGuest
    {
        int r = host_part.r, t = host_part.t;
        if (t < 2)
            throw GraphError("gen_planted_spin_guest needs t >= 2");
        SpinGraph s(r, t, true);
        int big = static_cast<int>(host_part.cls(SpinRole::u, 0).size());
        int conn = static_cast<int>(host_part.cls(SpinRole::c, 0, 0).size());
        int bal = static_cast<int>(host_part.cls(SpinRole::b, 0, 0).size());
        int kc = static_cast<int>(std::floor(spec.small_fill * conn));
        int kb = static_cast<int>(std::floor(spec.small_fill * bal));
        int target = static_cast<int>(std::floor(spec.big_fill * big));
        Rng rng(derive_seed(seed, "planted-guest"));

        std::vector<int> label;  // guest vertex -> spin vertex
        std::vector<std::pair<int, int>> edges;
        auto fresh = [&](int spin_vertex) {
            label.push_back(spin_vertex);
            return static_cast<int>(label.size()) - 1;
        };
        // a gadget is a path between two v-vertices; remember its ends per index
        struct Gadget
        {
            std::vector<int> path;
            int i_first, i_last;
        };
        std::vector<Gadget> gadgets;
        auto gadget = [&](int i0, int i1, std::vector<int> inner) {
            Gadget g{{}, i0, i1};
            g.path.push_back(fresh(s.v(i0)));
            for (int x : inner)
                g.path.push_back(fresh(x));
            g.path.push_back(fresh(s.v(i1)));
            gadgets.push_back(std::move(g));
        };
        for (int i = 0; i + 1 < r; ++i)
            for (int q = 0; q < kc; ++q) {
                gadget(i, i + 1, {s.c(i, t), s.cp(i, t), s.c(i + 1, 0)});
                gadget(i, i + 1, {s.c(i, t + 1), s.cp(i + 1, 1), s.c(i + 1, 1)});
            }
        for (int i = 0; i < r; ++i)
            for (int q = 0; q < kb; ++q) {
                gadget(i, i, {s.b(i, 0), s.bp(i, 0), s.bp(i, t), s.b(i, t)});
                gadget(i, i, {s.b(i, 1), s.bp(i, 1), s.bp(i, t + 1), s.b(i, t + 1)});
            }

        // each gadget end gets a tail v u v u ... u; tails at index i share the u/v budget
        std::vector<int> ends(static_cast<std::size_t>(r), 0);
        for (auto & g : gadgets) {
            ++ends[g.i_first];
            ++ends[g.i_last];
        }
        std::vector<std::vector<int>> tail_len(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            if (ends[i] > target)
                throw GraphError("gen_planted_spin_guest: more gadget ends than big-cluster budget at index " + std::to_string(i));
            // tail lengths in u-vertices: at least one each, the rest spread at random
            tail_len[i].assign(static_cast<std::size_t>(ends[i]), 1);
            for (int extra = target - ends[i]; extra > 0 && ends[i] > 0; --extra)
                ++tail_len[i][static_cast<std::size_t>(uniform_int(rng, 0, ends[i] - 1))];
        }
        std::vector<int> used(static_cast<std::size_t>(r), 0);
        std::vector<std::vector<int>> paths;
        auto tail = [&](int end, int i) {
            // returns the tail listed from its free end towards `end`
            int len = tail_len[i][used[i]++];
            std::vector<int> seq;
            for (int q = 0; q < len; ++q) {
                seq.push_back(fresh(s.u(i)));
                if (q + 1 < len)
                    seq.push_back(fresh(s.v(i)));
            }
            seq.push_back(end);
            return seq;
        };
        std::vector<int> gadget_order(gadgets.size());
        for (std::size_t q = 0; q < gadgets.size(); ++q)
            gadget_order[q] = static_cast<int>(q);
        shuffle_in_place(gadget_order, rng);
        for (int gi : gadget_order) {
            auto & g = gadgets[gi];
            auto path = tail(g.path.front(), g.i_first);
            path.insert(path.end(), g.path.begin() + 1, g.path.end() - 1);
            auto back = tail(g.path.back(), g.i_last);
            path.insert(path.end(), back.rbegin(), back.rend());
            paths.push_back(std::move(path));
        }
        // indices without gadgets (r = 1, no balancing) still get their vertices as one path
        for (int i = 0; i < r; ++i)
            if (ends[i] == 0) {
                std::vector<int> path;
                for (int q = 0; q < target; ++q) {
                    path.push_back(fresh(s.u(i)));
                    path.push_back(fresh(s.v(i)));
                }
                paths.push_back(std::move(path));
            }

        PlantedGuest out;
        out.graph = Graph(static_cast<int>(label.size()));
        for (auto & path : paths) {
            for (std::size_t q = 0; q + 1 < path.size(); ++q)
                out.graph.add_edge(path[q], path[q + 1]);
            out.order.insert(out.order.end(), path.begin(), path.end());
        }
        auto & part = out.part;
        part.r = r;
        part.t = t;
        part.delta = 2;
        part.m = out.graph.n();
        part.eta = 1.0 - spec.big_fill;
        part.zone = 1;
        part.h = label;
        rebuild_classes(out.graph, part);
        if (! is_homomorphism(out.graph, s, part.h))
            throw std::logic_error("gen_planted_spin_guest built a non-homomorphism");
        return out;
    }
}
