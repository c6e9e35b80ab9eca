#include <sbw/density.hh>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sbw
{
    void validate(const DensityParams & params)
    {
        if (! (params.p > 0.0 && params.p <= 1.0))
            throw GraphError("density parameter p must lie in (0,1]");
        if (! (params.eps > 0.0))
            throw GraphError("density parameter eps must be positive");
        if (! (params.d > 0.0 && params.d <= 1.0))
            throw GraphError("density parameter d must lie in (0,1]");
    }

    auto to_string(Verdict v) -> std::string
    {
        switch (v) {
            case Verdict::dense: return "dense";
            case Verdict::not_dense: return "not-dense";
            case Verdict::probably_dense: return "probably-dense";
        }
        return "?";
    }

    auto to_string(BadReason r) -> std::string
    {
        return r == BadReason::small_neighbourhood ? "small-neighbourhood" : "not-dense";
    }

    auto family_is_disjoint(const SetFamily & fam) -> bool
    {
        std::vector<int> all;
        for (auto & s : fam.sets)
            all.insert(all.end(), s.begin(), s.end());
        std::sort(all.begin(), all.end());
        return std::adjacent_find(all.begin(), all.end()) == all.end();
    }

    auto family_is_valid(const SetFamily & fam, const VertexSet & ground) -> bool
    {
        for (auto & s : fam.sets) {
            if (static_cast<int>(s.size()) != fam.ell)
                return false;
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (s[k] < 0 || static_cast<std::size_t>(s[k]) >= ground.size() || ! ground.test(static_cast<std::size_t>(s[k])))
                    return false;
                if (k > 0 && s[k - 1] >= s[k])
                    return false;
            }
        }
        return ! fam.disjoint_claimed || family_is_disjoint(fam);
    }

    auto threshold_size(double eps, std::size_t n) -> int
    {
        return static_cast<int>(std::ceil(eps * static_cast<double>(n) - 1e-9));
    }

    auto edges_between(const Graph & g, const VertexSet & u, const VertexSet & w) -> long
    {
        long e = 0;
        u.for_each([&](int v) { e += g.degree_into(v, w); });
        return e;
    }

    auto edges_inside(const Graph & g, const VertexSet & x) -> long
    {
        return edges_between(g, x, x) / 2;
    }

    namespace
    {
        auto density_of(long e, double p, std::size_t a, std::size_t b) -> double
        {
            return static_cast<double>(e) / (p * static_cast<double>(a) * static_cast<double>(b));
        }

        void require_pair(const VertexSet & u, const VertexSet & w)
        {
            if (u.none() || w.none())
                throw GraphError("density needs nonempty sets");
            if (u.intersects(w))
                throw GraphError("density needs disjoint sets");
        }

        auto binom(int n, int k) -> double
        {
            if (k < 0 || k > n)
                return 0.0;
            double r = 1.0;
            for (int i = 1; i <= k; ++i)
                r = r * (n - k + i) / i;
            return r;
        }

        // the kw vertices of w with fewest neighbours in s, and the edge count they carry
        auto worst_response(const Graph & g, const VertexSet & s, const std::vector<int> & w, int kw) -> std::pair<long, std::vector<int>>
        {
            std::vector<std::pair<int, int>> deg;
            deg.reserve(w.size());
            for (int v : w)
                deg.emplace_back(g.degree_into(v, s), v);
            std::partial_sort(deg.begin(), deg.begin() + kw, deg.end());
            long e = 0;
            std::vector<int> chosen;
            for (int k = 0; k < kw; ++k) {
                e += deg[k].first;
                chosen.push_back(deg[k].second);
            }
            std::sort(chosen.begin(), chosen.end());
            return {e, chosen};
        }
    }

    auto p_density(const Graph & g, const VertexSet & u, const VertexSet & w, double p) -> double
    {
        require_pair(u, w);
        if (! (p > 0.0))
            throw GraphError("p must be positive");
        return density_of(edges_between(g, u, w), p, u.count(), w.count());
    }

    auto joint_neighbourhood(const Graph & g, const std::vector<int> & b, const VertexSet & within) -> VertexSet
    {
        VertexSet out = within;
        for (int v : b)
            out &= g.neighbours(v);
        return out;
    }

    // A violating sub-pair of any size can be shrunk to a violating pair at the
    // threshold sizes (removing the best-connected vertex never raises density),
    // and for a fixed U' the worst W' is the set of lowest-degree vertices.
    auto check_dense_exact(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, ExactOptions opts) -> DenseVerdict
    {
        validate(params);
        require_pair(u, w);
        if (u.count() + w.count() > 34 && ! opts.allow_large)
            throw GraphError("exact density check guard: |U|+|W| > 34 without override");

        auto uv = u.to_vector(), wv = w.to_vector();
        int ku = std::max(1, threshold_size(params.eps, uv.size()));
        int kw = std::max(1, threshold_size(params.eps, wv.size()));
        ku = std::min(ku, static_cast<int>(uv.size()));
        kw = std::min(kw, static_cast<int>(wv.size()));

        bool swap_sides = binom(static_cast<int>(wv.size()), kw) < binom(static_cast<int>(uv.size()), ku);
        auto & enum_side = swap_sides ? wv : uv;
        auto & other_side = swap_sides ? uv : wv;
        int k_enum = swap_sides ? kw : ku, k_other = swap_sides ? ku : kw;

        DenseVerdict out;
        out.mode = "exact";
        out.size_u = ku;
        out.size_w = kw;
        double floor_density = params.d - params.eps;
        long examined = 0;
        for_each_combination(enum_side, k_enum, [&](const std::vector<int> & s) {
            ++examined;
            auto sb = VertexSet::from(u.size(), s);
            auto [e, resp] = worst_response(g, sb, other_side, k_other);
            if (density_of(e, params.p, static_cast<std::size_t>(ku), static_cast<std::size_t>(kw)) < floor_density) {
                auto rb = VertexSet::from(u.size(), resp);
                out.verdict = Verdict::not_dense;
                out.witness = swap_sides ? std::make_pair(rb, sb) : std::make_pair(sb, rb);
                return false;
            }
            return true;
        });
        out.samples_used = examined;
        if (out.verdict != Verdict::not_dense)
            out.verdict = Verdict::dense;
        out.confidence = 1.0;
        return out;
    }

    auto check_dense_mc(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, long trials, std::uint64_t seed) -> DenseVerdict
    {
        if (trials < 1)
            throw GraphError("MC density check needs trials >= 1");
        validate(params);
        require_pair(u, w);

        auto uv = u.to_vector(), wv = w.to_vector();
        int ku = std::min(static_cast<int>(uv.size()), std::max(1, threshold_size(params.eps, uv.size())));
        int kw = std::min(static_cast<int>(wv.size()), std::max(1, threshold_size(params.eps, wv.size())));

        DenseVerdict out;
        out.mode = "mc";
        out.size_u = ku;
        out.size_w = kw;
        out.note = "sampled threshold sizes only; absence of a violation is evidence, not proof";
        Rng rng(seed);
        double floor_density = params.d - params.eps;
        // each trial draws U' and W' uniformly and tests each against the other side's worst response
        for (long t = 0; t < trials; ++t) {
            auto su = sample_k(uv, static_cast<std::size_t>(ku), rng);
            auto sw = sample_k(wv, static_cast<std::size_t>(kw), rng);
            auto sub = VertexSet::from(u.size(), su);
            auto [e1, r1] = worst_response(g, sub, wv, kw);
            if (density_of(e1, params.p, ku, kw) < floor_density) {
                out.verdict = Verdict::not_dense;
                out.witness = std::make_pair(sub, VertexSet::from(u.size(), r1));
                out.samples_used = t + 1;
                out.confidence = 1.0;
                return out;
            }
            auto swb = VertexSet::from(u.size(), sw);
            auto [e2, r2] = worst_response(g, swb, uv, ku);
            if (density_of(e2, params.p, ku, kw) < floor_density) {
                out.verdict = Verdict::not_dense;
                out.witness = std::make_pair(VertexSet::from(u.size(), r2), swb);
                out.samples_used = t + 1;
                out.confidence = 1.0;
                return out;
            }
        }
        out.verdict = Verdict::probably_dense;
        out.samples_used = trials;
        // rule of three: violating fraction below 3/trials at ~95%
        out.confidence = std::max(0.0, 1.0 - 3.0 / static_cast<double>(trials));
        return out;
    }

    auto check_dense_auto(const Graph & g, const VertexSet & u, const VertexSet & w,
        const DensityParams & params, long mc_trials, std::uint64_t seed) -> DenseVerdict
    {
        if (u.count() + w.count() <= 34)
            return check_dense_exact(g, u, w, params);
        return check_dense_mc(g, u, w, params, mc_trials, seed);
    }

    auto atypical_vertices(const Graph & g, const VertexSet & x, const VertexSet & y, const DensityParams & params) -> VertexSet
    {
        VertexSet out(x.size());
        double floor_deg = (params.d - params.eps) * params.p * static_cast<double>(y.count());
        x.for_each([&](int v) {
            if (g.degree_into(v, y) < floor_deg)
                out.set(static_cast<std::size_t>(v));
        });
        return out;
    }

    auto count_stars(const Graph & g, const VertexSet & x, const SetFamily & fam) -> long
    {
        if (! family_is_disjoint(fam))
            throw GraphError("star family is not pairwise disjoint");
        long total = 0;
        for (auto & f : fam.sets) {
            for (int v : f)
                if (x.test(static_cast<std::size_t>(v)))
                    throw GraphError("star family meets X");
            total += static_cast<long>(joint_neighbourhood(g, f, x).count());
        }
        return total;
    }

    auto bad_threshold(const DensityParams & params, int ell, std::size_t z_size) -> double
    {
        return std::pow(params.d - params.eps, ell) * std::pow(params.p, ell) * static_cast<double>(z_size);
    }

    namespace
    {
        // DFS over ell-subsets of items (lexicographic) carrying the running joint neighbourhood
        template <typename F>
        void for_each_lset_with_joint(const Graph & g, const std::vector<int> & items, int ell, const VertexSet & within, F && f)
        {
            std::vector<int> cur;
            std::vector<VertexSet> stack{within};
            auto rec = [&](auto & self, std::size_t start) -> void {
                if (static_cast<int>(cur.size()) == ell) {
                    f(cur, stack.back());
                    return;
                }
                int need = ell - static_cast<int>(cur.size());
                for (std::size_t k = start; k + need <= items.size(); ++k) {
                    cur.push_back(items[k]);
                    stack.push_back(stack.back() & g.neighbours(items[k]));
                    self(self, k + 1);
                    stack.pop_back();
                    cur.pop_back();
                }
            };
            rec(rec, 0);
        }
    }

    auto bad_lsets(const Graph & g, const VertexSet & y, const VertexSet & z, int ell, const DensityParams & params) -> SetFamily
    {
        if (y.intersects(z))
            throw GraphError("bad_lsets needs disjoint Y and Z");
        auto yv = y.to_vector();
        if (ell < 1 || ell > static_cast<int>(yv.size()))
            throw GraphError("bad_lsets needs 1 <= ell <= |Y|");
        double thr = bad_threshold(params, ell, z.count());
        SetFamily out;
        out.ell = ell;
        for_each_lset_with_joint(g, yv, ell, z, [&](const std::vector<int> & b, const VertexSet & joint) {
            if (static_cast<double>(joint.count()) < thr)
                out.sets.push_back(b);
        });
        return out;
    }

    auto Bad_lsets(const Graph & g, const VertexSet & x, const VertexSet & y, const VertexSet & z, int ell,
        const DensityParams & params, BadOptions opts) -> BadFamily
    {
        if (x.intersects(y) || x.intersects(z) || y.intersects(z))
            throw GraphError("Bad_lsets needs pairwise disjoint X, Y, Z");
        auto xv = x.to_vector();
        if (ell < 1 || ell > static_cast<int>(xv.size()))
            throw GraphError("Bad_lsets needs 1 <= ell <= |X|");

        // status of every subset of size 1..ell
        std::map<std::vector<int>, std::optional<BadRecord>> memo;
        std::uint64_t counter = 0;
        for (int l = 1; l <= ell; ++l) {
            double thr = bad_threshold(params, l, y.count());
            for_each_lset_with_joint(g, xv, l, y, [&](const std::vector<int> & b, const VertexSet & joint) {
                std::optional<BadRecord> rec;
                if (static_cast<double>(joint.count()) < thr)
                    rec = BadRecord{b, BadReason::small_neighbourhood, ""};
                else if (joint.none() || z.none())
                    rec = BadRecord{b, BadReason::not_dense, "empty"};
                else {
                    auto v = check_dense_auto(g, joint, z, params, opts.mc_trials, derive_seed(opts.seed, "Bad", counter));
                    if (v.verdict == Verdict::not_dense)
                        rec = BadRecord{b, BadReason::not_dense, v.mode};
                }
                ++counter;
                memo.emplace(b, rec);
            });
        }

        BadFamily out;
        out.family.ell = ell;
        for_each_combination(xv, ell, [&](const std::vector<int> & b) {
            std::optional<BadRecord> hit;
            for (int l = 1; l <= ell && ! hit; ++l)
                for_each_combination(b, l, [&](const std::vector<int> & sub) {
                    auto & st = memo.at(sub);
                    if (st) {
                        hit = st;
                        return false;
                    }
                    return true;
                });
            if (hit) {
                out.family.sets.push_back(b);
                out.records.push_back(*hit);
            }
            return true;
        });
        return out;
    }

    auto corrupted_vertices(const VertexSet & ground, const SetFamily & fam, double x) -> VertexSet
    {
        VertexSet out(ground.size());
        if (fam.sets.empty())
            return out;
        int delta = fam.ell;
        std::vector<std::vector<int>> level;
        for (auto s : fam.sets) {
            std::sort(s.begin(), s.end());
            level.push_back(s);
        }
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());

        for (int i = delta - 1; i >= 1 && ! level.empty(); --i) {
            std::map<std::vector<int>, long> containing;
            for (auto & s : level)
                for_each_combination(s, i, [&](const std::vector<int> & sub) {
                    ++containing[sub];
                    return true;
                });
            std::vector<std::vector<int>> next;
            for (auto & [sub, c] : containing)
                if (static_cast<double>(c) > x)
                    next.push_back(sub);
            level = std::move(next);
        }
        for (auto & s : level)
            for (int v : s)
                out.set(static_cast<std::size_t>(v));
        return out;
    }

    auto corruption_bound(int delta, double eta, double mu, int n) -> double
    {
        double fact = 1.0;
        for (int k = 2; k <= delta; ++k)
            fact *= k;
        return fact / std::pow(eta, delta - 1) * mu * n;
    }

    auto check_expansion(const Graph & g, const VertexSet & x, const VertexSet & y, const DensityParams & params,
        long cap, double factor, long trials, std::uint64_t seed, int ell) -> ExpansionReport
    {
        ExpansionReport rep;
        rep.factor = factor;
        auto xv = x.to_vector();
        double thr = bad_threshold(params, ell, y.count());
        if (cap < 1 || static_cast<int>(xv.size()) < ell) {
            rep.vacuous = true;
            return rep;
        }
        Rng rng(seed);
        rep.min_ratio = std::numeric_limits<double>::infinity();
        for (long t = 0; t < trials; ++t) {
            long target = uniform_int(rng, 1, cap);
            std::vector<int> pool = xv;
            shuffle_in_place(pool, rng);
            std::vector<std::vector<int>> fam;
            VertexSet uni(y.size());
            // walk the shuffled pool in ell-chunks, keeping p-good ones
            for (std::size_t k = 0; k + ell <= pool.size() && static_cast<long>(fam.size()) < target; k += ell) {
                std::vector<int> f(pool.begin() + static_cast<long>(k), pool.begin() + static_cast<long>(k) + ell);
                auto joint = joint_neighbourhood(g, f, y);
                if (static_cast<double>(joint.count()) < thr)
                    continue;
                std::sort(f.begin(), f.end());
                fam.push_back(f);
                uni |= joint;
                ++rep.good_sets_found;
            }
            if (fam.empty())
                continue;
            ++rep.families_tested;
            double ratio = static_cast<double>(uni.count()) / static_cast<double>(fam.size());
            if (ratio < rep.min_ratio) {
                rep.min_ratio = ratio;
                rep.worst_family = fam;
            }
        }
        if (rep.families_tested == 0) {
            rep.vacuous = true;
            rep.min_ratio = 0.0;
            return rep;
        }
        rep.passes = rep.min_ratio >= factor;
        return rep;
    }

    auto check_boundedness(const Graph & g, double eta, double k_factor, double p, long trials, std::uint64_t seed) -> BoundednessReport
    {
        int n = g.n();
        int lo = static_cast<int>(std::ceil(eta * n - 1e-9));
        if (eta * n < 1.0)
            throw GraphError("boundedness needs eta*n >= 1");
        if (2 * lo > n)
            throw GraphError("boundedness needs two disjoint sets of size eta*n");
        BoundednessReport rep;
        rep.trials = trials;
        Rng rng(seed);
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        for (long t = 0; t < trials; ++t) {
            int sx = static_cast<int>(uniform_int(rng, lo, n - lo));
            int sy = static_cast<int>(uniform_int(rng, lo, n - sx));
            auto pick = sample_k(all, static_cast<std::size_t>(sx + sy), rng);
            VertexSet xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
            for (int k = 0; k < sx; ++k)
                xs.set(static_cast<std::size_t>(pick[k]));
            for (int k = sx; k < sx + sy; ++k)
                ys.set(static_cast<std::size_t>(pick[k]));
            double r = density_of(edges_between(g, xs, ys), p, xs.count(), ys.count());
            if (r > rep.max_ratio) {
                rep.max_ratio = r;
                rep.worst_x = sx;
                rep.worst_y = sy;
            }
        }
        rep.bounded = rep.max_ratio <= k_factor;
        return rep;
    }

    auto gnp_stats(const Graph & g, const VertexSet & x, const VertexSet & y, const VertexSet & z, double p) -> GnpStats
    {
        GnpStats s;
        int n = g.n();
        if (n < 2) {
            s.out_of_regime = true;
            s.regime_note = "n < 2";
            return s;
        }
        double ln = std::log(static_cast<double>(n));
        double guard = n / ln;
        s.tolerance = 1.0 / ln;
        std::size_t cx = x.count(), cy = y.count(), cz = z.count();
        if (cx < guard || cy < guard || cz < guard) {
            s.out_of_regime = true;
            s.regime_note = "a set is smaller than n/ln n";
        }
        if (cz > n - guard) {
            s.out_of_regime = true;
            s.regime_note = "Z larger than n - n/ln n";
        }
        if (x.intersects(y)) {
            s.out_of_regime = true;
            s.regime_note = "X and Y overlap";
        }
        s.e_x = edges_inside(g, x);
        s.e_xy = edges_between(g, x, y);
        z.for_each([&](int v) { s.deg_sum_z += g.degree(v); });
        double pred_x = p * static_cast<double>(cx) * (static_cast<double>(cx) - 1.0) / 2.0;
        double pred_xy = p * static_cast<double>(cx) * static_cast<double>(cy);
        // each vertex has n-1 potential neighbours
        double pred_z = p * static_cast<double>(cz) * (n - 1.0);
        s.ratio_x = pred_x > 0 ? s.e_x / pred_x : 0.0;
        s.ratio_xy = pred_xy > 0 ? s.e_xy / pred_xy : 0.0;
        s.ratio_z = pred_z > 0 ? s.deg_sum_z / pred_z : 0.0;
        auto close = [&](double r) { return std::abs(r - 1.0) <= s.tolerance; };
        s.within = ! s.out_of_regime && close(s.ratio_x) && close(s.ratio_xy) && close(s.ratio_z);
        return s;
    }

    auto crosscut_bound(std::size_t m, int ell) -> double
    {
        return static_cast<double>(m) * ell / std::pow(2.0, ell + 2);
    }

    auto count_one_crossing(const SetFamily & fam, const VertexSet & v2) -> long
    {
        long c = 0;
        for (auto & s : fam.sets) {
            int in = 0;
            for (int v : s)
                in += v2.test(static_cast<std::size_t>(v)) ? 1 : 0;
            c += in == 1 ? 1 : 0;
        }
        return c;
    }

    auto crosscut_partition(const SetFamily & fam, const VertexSet & ground, std::uint64_t seed) -> std::pair<VertexSet, VertexSet>
    {
        auto gv = ground.to_vector();
        int n = static_cast<int>(gv.size());
        if (n < 3 * std::max(1, fam.ell))
            throw GraphError("crosscut needs |ground| >= 3*ell");
        if (! family_is_valid(fam, ground))
            throw GraphError("crosscut family is not an ell-uniform family over ground");
        int n2 = (n + 2) / 3;
        double bound = crosscut_bound(fam.size(), fam.ell);
        Rng rng(seed);
        for (int attempt = 0; attempt < 100000; ++attempt) {
            auto pick = sample_k(gv, static_cast<std::size_t>(n2), rng);
            VertexSet v2 = VertexSet::from(ground.size(), pick);
            if (static_cast<double>(count_one_crossing(fam, v2)) >= bound)
                return {ground - v2, v2};
        }
        throw GraphError("crosscut search exhausted its restarts");
    }
}
