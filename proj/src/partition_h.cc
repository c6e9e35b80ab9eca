#include <sbw/partition_h.hh>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sbw
{
    auto lolly_target() -> Graph
    {
        Graph g(6);
        g.add_edge(0, 1);
        for (int k = 1; k <= 5; ++k)
            g.add_edge(k, k == 5 ? 1 : k + 1);
        return g;
    }

    auto lolly_ell(double eta_bar) -> int
    {
        if (! (eta_bar > 0.0))
            throw GraphError("lolly needs eta_bar > 0");
        int ell = 6;
        while (! (5.0 / ell < eta_bar))
            ++ell;
        return ell;
    }

    namespace
    {
        void require_colouring(const Graph & g, const std::vector<int> & colouring)
        {
            if (static_cast<int>(colouring.size()) != g.n())
                throw GraphError("colouring size mismatch");
            for (int c : colouring)
                if (c != 0 && c != 1)
                    throw GraphError("colouring must use classes 0 and 1");
            for (auto [u, v] : g.edges())
                if (colouring[u] == colouring[v])
                    throw GraphError("colouring is not proper: hbar must be bipartite");
        }

        // switch table when block i and i+1 disagree; cls_to_z1 is the class that W_i sends to z^1
        auto switched_target(int zone_k, bool in_class_to_z1) -> int
        {
            static const int to_z0_class[5] = {2, 2, 4, 4, 1};
            static const int to_z1_class[5] = {1, 3, 3, 5, 5};
            return in_class_to_z1 ? to_z1_class[zone_k] : to_z0_class[zone_k];
        }
    }

    auto lolly_with(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        int ell, int zone) -> LollyResult
    {
        require_colouring(hbar, colouring);
        int mbar = hbar.n();
        if (static_cast<int>(order.size()) != mbar)
            throw GraphError("order is not a permutation");
        if (ell < 1 || zone < 1)
            throw GraphError("lolly needs ell >= 1 and zone >= 1");
        int base = mbar / ell;
        if (base < 6 * zone)
            throw GraphError("lolly blocks too small: need m/ell >= 6*zone");

        LollyResult res;
        res.ell = ell;
        res.zone = zone;
        for (int k = 0; k < ell; ++k)
            res.block_start.push_back(k * base);
        auto block_end = [&](int k) { return k + 1 < ell ? (k + 1) * base : mbar; };
        auto core_end = [&](int k) { return block_end(k) - 5 * zone; };

        // per block: core class counts and zone class counts
        std::vector<std::array<long, 2>> core(static_cast<std::size_t>(ell), {0, 0});
        std::vector<std::array<std::array<long, 2>, 5>> zc(static_cast<std::size_t>(ell));
        for (auto & z : zc)
            for (auto & a : z)
                a = {0, 0};
        for (int k = 0; k < ell; ++k)
            for (int pos = res.block_start[k]; pos < block_end(k); ++pos) {
                int c = colouring[order[pos]];
                if (pos < core_end(k))
                    ++core[k][c];
                else
                    ++zc[k][(pos - core_end(k)) / zone][c];
            }

        auto imbalance = [&](const std::vector<int> & phi) {
            long n0 = 0, n1 = 0;
            for (int k = 0; k < ell; ++k) {
                int next = k + 1 < ell ? phi[k + 1] : phi[k];
                int c_to_z1 = phi[k] == 0 ? 1 : 0;
                n1 += core[k][c_to_z1];
                n0 += core[k][1 - c_to_z1];
                if (phi[k] == next) {
                    for (int z = 0; z < 5; ++z) {
                        n1 += zc[k][z][c_to_z1];
                        n0 += zc[k][z][1 - c_to_z1];
                    }
                }
                else
                    n1 += zc[k][4][1 - c_to_z1] + zc[k][0][c_to_z1];
            }
            return std::labs(n0 - n1);
        };

        // one contiguous inverted run strictly inside (first and last blocks stay normal),
        // so each index switches at most twice; ties go to shorter, then earlier runs
        std::vector<int> phi(static_cast<std::size_t>(ell), 0);
        long best = imbalance(phi);
        std::vector<int> best_phi = phi;
        for (int len = 1; len <= ell - 2; ++len)
            for (int a = 1; a + len <= ell - 1; ++a) {
                std::vector<int> cand(static_cast<std::size_t>(ell), 0);
                for (int k = a; k < a + len; ++k)
                    cand[k] = 1;
                long val = imbalance(cand);
                if (val < best) {
                    best = val;
                    best_phi = cand;
                }
            }
        res.phi = best_phi;

        res.h.assign(static_cast<std::size_t>(mbar), -1);
        for (int k = 0; k < ell; ++k) {
            int next = k + 1 < ell ? res.phi[k + 1] : res.phi[k];
            int c_to_z1 = res.phi[k] == 0 ? 1 : 0;
            for (int pos = res.block_start[k]; pos < block_end(k); ++pos) {
                int v = order[pos];
                bool z1_class = colouring[v] == c_to_z1;
                if (pos < core_end(k) || res.phi[k] == next)
                    res.h[v] = z1_class ? 1 : 0;
                else
                    res.h[v] = switched_target((pos - core_end(k)) / zone, z1_class);
            }
        }
        return res;
    }

    auto lolly_homomorphism(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        double eta_bar) -> Homomorphism
    {
        int ell = lolly_ell(eta_bar);
        int zone = hbar.n() / (ell * ell);
        if (zone < 1)
            throw GraphError("lolly: m is below ell^2, no zone size is available for this eta_bar");
        if (bandwidth_of_labeling(hbar, order) > zone)
            throw GraphError("lolly: bandwidth exceeds m/ell^2");
        return lolly_with(hbar, colouring, order, ell, zone).h;
    }

    auto verify_lolly(const Graph & hbar, const std::vector<int> & colouring, const std::vector<int> & order,
        const Homomorphism & h, double eta_bar, int zone, double slack) -> LollyReport
    {
        LollyReport rep;
        double mbar = hbar.n();
        rep.homomorphism = is_homomorphism(hbar, lolly_target(), h);
        if (! rep.homomorphism)
            rep.failures.push_back("not a homomorphism into the lolly");
        rep.preimage.assign(6, 0);
        for (int z : h)
            ++rep.preimage[z];
        rep.lolly1 = true;
        for (int j = 0; j < 2; ++j) {
            double lo = mbar / 2 - 5 * eta_bar * mbar - slack, hi = mbar / 2 + eta_bar * mbar + slack;
            if (rep.preimage[j] < lo || rep.preimage[j] > hi) {
                rep.lolly1 = false;
                rep.failures.push_back("lolly1: |h^-1(z" + std::to_string(j) + ")| = " + std::to_string(rep.preimage[j]));
            }
        }
        rep.lolly2 = true;
        for (int k = 2; k <= 5; ++k)
            if (rep.preimage[k] > eta_bar * mbar + slack) {
                rep.lolly2 = false;
                rep.failures.push_back("lolly2: |h^-1(z" + std::to_string(k) + ")| = " + std::to_string(rep.preimage[k]));
            }
        rep.lolly3 = true;
        int n = hbar.n();
        for (int pos = 0; pos < n; ++pos) {
            if (pos >= zone && pos < n - zone)
                continue;
            int v = order[pos];
            if (h[v] != colouring[v]) {
                rep.lolly3 = false;
                rep.failures.push_back("lolly3: boundary vertex " + std::to_string(v) + " not on its class vertex");
                break;
            }
        }
        return rep;
    }

    auto spin_t_for(int delta) -> int
    {
        int a = delta + 1, c = delta * delta * delta + 1;
        return a * a * a * c;
    }

    auto paper_beta_feasible(double beta, int r, double eta, int delta) -> bool
    {
        double eta_bar = eta / 20.0;
        int ell = lolly_ell(eta_bar);
        double beta_bar = 1.0 / (static_cast<double>(ell) * ell);
        return 1.0 / r - 4 * beta >= beta / beta_bar
            && 4 * beta * r <= eta / (20.0 * r)
            && 16 * delta * beta * r <= eta * (1.0 / r - 4 * beta) * (0.5 - 5 * eta_bar);
    }

    auto HPartition::cls(SpinRole role, int i, int j) const -> const std::vector<int> &
    {
        return classes.at(static_cast<std::size_t>(spin().at(role, i, j)));
    }

    void rebuild_classes(const Graph & hgraph, HPartition & part)
    {
        auto s = part.spin();
        part.classes.assign(static_cast<std::size_t>(s.size()), {});
        for (int y = 0; y < hgraph.n(); ++y)
            part.classes[part.h[y]].push_back(y);
        part.x_tilde.assign(static_cast<std::size_t>(part.r), {});
        for (int i = 0; i < part.r; ++i)
            for (int y : part.classes[s.v(i)]) {
                bool outside = false;
                hgraph.neighbours(y).for_each([&](int w) {
                    if (part.h[w] != s.u(i))
                        outside = true;
                });
                if (outside)
                    part.x_tilde[i].push_back(y);
            }
    }

    namespace
    {
        // round-one labels: kind 0..5 = z^0..z^5, 6..9 = q^2..q^5, on index i
        struct Label
        {
            int kind = -1;
            int i = -1;
        };

        constexpr int q2 = 6, q3 = 7, q4 = 8, q5 = 9;
    }

    auto partition_H(const Graph & hgraph, const std::vector<int> & order, int r, double eta, int delta,
        PartitionHOptions opts) -> HPartition
    {
        int m = hgraph.n();
        if (r < 1)
            throw GraphError("partition_H needs r >= 1");
        if (! (eta > 0.0 && eta < 1.0))
            throw GraphError("partition_H needs eta in (0,1)");
        if (delta < 1 || hgraph.max_degree() > delta)
            throw GraphError("partition_H: guest exceeds the degree bound");
        auto colouring = two_colouring(hgraph);
        if (m > 0 && colouring.empty())
            throw GraphError("partition_H: guest is not bipartite");
        int bw = bandwidth_of_labeling(hgraph, order);
        int b = std::max(1, bw);

        HPartition part;
        part.r = r;
        part.t = spin_t_for(delta);
        part.delta = delta;
        part.m = m;
        part.eta = eta;
        part.zone = b;
        part.paper_beta_feasible = paper_beta_feasible(static_cast<double>(bw) / std::max(1, m), r, eta, delta);
        int ell_paper = lolly_ell(eta / 20.0);

        std::vector<int> pos_start(static_cast<std::size_t>(r) + 1);
        for (int i = 0; i < r; ++i)
            pos_start[i] = i * (m / r);
        pos_start[r] = m;

        std::vector<Label> label(static_cast<std::size_t>(m));
        long max_block = 0;
        for (int i = 0; i < r; ++i) {
            int s_begin = pos_start[i];
            int s_end = i + 1 < r ? pos_start[i + 1] - 4 * b : pos_start[i + 1];
            int mbar = s_end - s_begin;
            int ell = std::min(ell_paper, mbar / (6 * b));
            if (ell < 1)
                throw GraphError("partition_H: beta infeasible, the index block of " + std::to_string(mbar)
                    + " vertices cannot hold 6 zones of size " + std::to_string(b));
            part.ells.push_back(ell);
            max_block = std::max<long>(max_block, mbar - (ell - 1) * (mbar / ell));

            std::vector<int> verts(order.begin() + s_begin, order.begin() + s_end);
            Graph sub = hgraph.induced(verts);
            std::vector<int> sub_col(verts.size()), sub_order(verts.size());
            for (std::size_t k = 0; k < verts.size(); ++k) {
                sub_col[k] = colouring[verts[k]];
                sub_order[k] = static_cast<int>(k);
            }
            auto lr = lolly_with(sub, sub_col, sub_order, ell, b);
            for (std::size_t k = 0; k < verts.size(); ++k)
                label[verts[k]] = {lr.h[k], i};

            if (i + 1 < r) {
                // boundary blocks T_{i,1..4}
                static const int row0[4] = {q4, q4, q2, q2};
                static const int row1[4] = {1, q5, q3, 1};
                static const int shift[4] = {0, 0, 1, 1};
                for (int k = 0; k < 4; ++k)
                    for (int pos = s_end + k * b; pos < s_end + (k + 1) * b; ++pos) {
                        int y = order[pos];
                        label[y] = colouring[y] == 0 ? Label{row0[k], i + shift[k]} : Label{row1[k], i + shift[k]};
                    }
            }
        }

        auto is_v = [&](int w, int i) { return label[w].kind == 1 && label[w].i == i; };
        auto deg_v = [&](int y, int i) {
            int d = 0;
            hgraph.neighbours(y).for_each([&](int w) { d += is_v(w, i) ? 1 : 0; });
            return d;
        };

        // degree repair: a connecting/balancing vertex with all delta neighbours on v_i moves to u_i
        for (int y = 0; y < m; ++y) {
            int k = label[y].kind;
            if ((k == 2 || k == 5 || k == q2 || k == q4) && deg_v(y, label[y].i) >= delta) {
                label[y].kind = 0;
                ++part.repaired;
            }
        }

        // fingerprints from an equitable colouring of H^3
        int ncol = delta * delta * delta + 1;
        auto cube = graph_power(hgraph, 3);
        auto c3 = equitable_coloring(cube, ncol, derive_seed(opts.seed, "partition_H/cube"));

        auto s = part.spin();
        part.h.assign(static_cast<std::size_t>(m), -1);
        for (int y = 0; y < m; ++y) {
            auto [k, i] = label[y];
            if (k == 0) {
                part.h[y] = s.u(i);
                continue;
            }
            if (k == 1) {
                part.h[y] = s.v(i);
                continue;
            }
            int a = deg_v(y, i), bq = 0, cz = 0;
            hgraph.neighbours(y).for_each([&](int w) {
                if (label[w].i != i)
                    return;
                int kw = label[w].kind;
                if (kw == q2 || kw == q4)
                    ++bq;
                if (k == 4 ? (kw == 3 || kw == 5) : kw == 2)
                    ++cz;
            });
            int f = ((a * (delta + 1) + bq) * (delta + 1) + cz) * ncol + c3[y];
            switch (k) {
                case 2: part.h[y] = s.b(i, f); break;
                case 5: part.h[y] = s.b(i, part.t + f); break;
                case 3: part.h[y] = s.bp(i, f); break;
                case 4: part.h[y] = s.bp(i, part.t + f); break;
                case q2: part.h[y] = s.c(i, f); break;
                case q4: part.h[y] = s.c(i, part.t + f); break;
                case q3: part.h[y] = s.cp(i, f); break;
                case q5: part.h[y] = s.cp(i, part.t + f); break;
                default: throw GraphError("partition_H: unlabelled vertex");
            }
        }
        rebuild_classes(hgraph, part);

        double mm = m, mbar_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < r; ++i) {
            int s_end = i + 1 < r ? pos_start[i + 1] - 4 * b : pos_start[i + 1];
            mbar_min = std::min(mbar_min, static_cast<double>(s_end - pos_start[i]));
        }
        double mbar_max = m - (r - 1) * (m / r);
        part.guaranteed = (mbar_max + 4.0 * max_block) / 2 + 14.0 * b <= (1 + eta) * mm / (2 * r) + delta
            && 4.0 * b <= eta * mm / (2 * r) + delta
            && 12.0 * delta * b <= eta * ((mbar_min - 4.0 * max_block) / 2 - 10.0 * b) + delta;

        if (opts.verify) {
            auto rep = verify_H_partition(hgraph, part);
            if (! rep.ok())
                throw GraphError("partition_H: result fails verification: " + (rep.failures.empty() ? std::string("?") : rep.failures.front()));
        }
        return part;
    }

    auto verify_H_partition(const Graph & hgraph, const HPartition & part) -> HReport
    {
        HReport rep;
        auto s = part.spin();
        int r = part.r, t = part.t, m = hgraph.n();
        double tol = part.delta;
        rep.tolerance = tol;
        auto fail = [&](bool & flag, const std::string & msg) {
            flag = false;
            if (rep.failures.size() < 50)
                rep.failures.push_back(msg);
        };

        if (static_cast<int>(part.h.size()) != m) {
            fail(rep.preimages, "h is not total");
            return rep;
        }
        for (int y = 0; y < m; ++y)
            if (part.h[y] < 0 || part.h[y] >= s.size()) {
                fail(rep.preimages, "h(" + std::to_string(y) + ") out of range");
                return rep;
            }
        if (static_cast<int>(part.classes.size()) != s.size())
            fail(rep.preimages, "class table has wrong size");
        else
            for (int x = 0; x < s.size(); ++x)
                for (int y : part.classes[x])
                    if (part.h[y] != x)
                        fail(rep.preimages, "class of spin vertex " + std::to_string(x) + " lists " + std::to_string(y));
        std::vector<int> cls_size(static_cast<std::size_t>(s.size()), 0);
        for (int y = 0; y < m; ++y)
            ++cls_size[part.h[y]];

        auto vio = homomorphism_violation(hgraph, s, part.h);
        if (vio.first >= 0)
            fail(rep.homomorphism, "edge " + std::to_string(vio.first) + "-" + std::to_string(vio.second) + " not mapped to a spin edge");

        double big = (1 + part.eta) * m / (2.0 * r) + tol, small = part.eta * m / (2.0 * r) + tol;
        for (int i = 0; i < r; ++i) {
            if (cls_size[s.u(i)] > big)
                fail(rep.h1, "H1: |U~_" + std::to_string(i) + "| = " + std::to_string(cls_size[s.u(i)]));
            if (cls_size[s.v(i)] > big)
                fail(rep.h1, "H1: |V~_" + std::to_string(i) + "| = " + std::to_string(cls_size[s.v(i)]));
        }
        for (int x = 2 * r; x < s.size(); ++x)
            if (cls_size[x] > small)
                fail(rep.h2, "H2: class of spin vertex " + std::to_string(x) + " has " + std::to_string(cls_size[x]));

        // H3: a radius-3 ball never meets the own class
        for (int y = 0; y < m; ++y) {
            if (part.h[y] < 2 * r)
                continue;
            Bitset reach = hgraph.empty_set();
            reach.set(static_cast<std::size_t>(y));
            for (int step = 0; step < 3; ++step) {
                Bitset next = reach;
                reach.for_each([&](int w) { next |= hgraph.neighbours(w); });
                reach = std::move(next);
            }
            bool clash = false;
            reach.for_each([&](int w) {
                if (w != y && part.h[w] == part.h[y] && ! clash) {
                    clash = true;
                    fail(rep.h3, "H3: " + std::to_string(y) + " and " + std::to_string(w) + " within distance 3 in one class");
                }
            });
        }

        // H4
        auto deg_where = [&](int y, auto && pred) {
            int d = 0;
            hgraph.neighbours(y).for_each([&](int w) { d += pred(part.h[w]) ? 1 : 0; });
            return d;
        };
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < 2 * t; ++j) {
                for (int x : {s.c(i, j), s.b(i, j)}) {
                    int ref = -1;
                    for (int y : part.classes[x]) {
                        int d = deg_where(y, [&](int z) { return z == s.v(i); });
                        if (d > part.delta - 1)
                            fail(rep.h4, "H4: " + std::to_string(y) + " has " + std::to_string(d) + " neighbours on V~_" + std::to_string(i));
                        if (ref >= 0 && d != ref)
                            fail(rep.h4, "H4: unequal V~ degrees in class of spin vertex " + std::to_string(x));
                        ref = d;
                    }
                }
                int ref = -1;
                for (int y : part.classes[s.cp(i, j)]) {
                    int d = deg_where(y, [&](int z) {
                        auto rv = s.role(z);
                        return rv.role == SpinRole::c && rv.i == i;
                    });
                    if (ref >= 0 && d != ref)
                        fail(rep.h4, "H4: unequal C~_" + std::to_string(i) + " degrees in C~'_{" + std::to_string(i) + "," + std::to_string(j) + "}");
                    ref = d;
                }
                ref = -1;
                for (int y : part.classes[s.bp(i, j)]) {
                    int d = deg_where(y, [&](int z) {
                        auto rv = s.role(z);
                        if (rv.i != i)
                            return false;
                        return rv.role == SpinRole::b || (rv.role == SpinRole::b_prime && rv.j < j);
                    });
                    if (ref >= 0 && d != ref)
                        fail(rep.h4, "H4: unequal L(i,j) degrees in B~'_{" + std::to_string(i) + "," + std::to_string(j) + "}");
                    ref = d;
                }
            }

        // H5
        for (int i = 0; i < r; ++i) {
            long x = 0;
            for (int y : part.classes[s.v(i)]) {
                bool outside = deg_where(y, [&](int z) { return z != s.u(i); }) > 0;
                x += outside ? 1 : 0;
            }
            if (x > part.eta * cls_size[s.v(i)] + tol)
                fail(rep.h5, "H5: |X~_" + std::to_string(i) + "| = " + std::to_string(x) + " vs |V~_i| = " + std::to_string(cls_size[s.v(i)]));
        }
        return rep;
    }
}
