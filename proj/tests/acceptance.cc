// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hh"

#include <sbw/density.hh>
#include <sbw/embed.hh>
#include <sbw/experiment.hh>
#include <sbw/lemma_checks.hh>
#include <sbw/partition_h.hh>
#include <sbw/polychromatic.hh>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

using namespace sbw;

namespace
{
    using Clock = std::chrono::steady_clock;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    auto range(int lo, int hi) -> std::vector<int>
    {
        std::vector<int> v(static_cast<std::size_t>(std::max(0, hi - lo)));
        std::iota(v.begin(), v.end(), lo);
        return v;
    }

    auto vs(int n, const std::vector<int> & m) -> VertexSet { return VertexSet::from(static_cast<std::size_t>(n), m); }

    auto seconds_since(Clock::time_point t0) -> double
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    auto fmt(const char * f, auto... args) -> std::string
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    // ---- 1

    auto lemma_suite() -> Outcome
    {
        auto t0 = Clock::now();
        auto checks = run_lemma_checks(LemmaSuiteOptions{}, 2024);
        double sec = seconds_since(t0);
        bool ok = sec < 60.0;
        std::string d;
        for (auto & c : checks) {
            ok = ok && c.passed();
            d += fmt("%s %ld/%ld; ", c.name.c_str(), c.cases - c.failures, c.cases);
            if (! c.passed() && ! c.first_failure.empty())
                d += "first failure: " + c.first_failure + "; ";
        }
        return {ok, d + fmt("%.1fs", sec)};
    }

    // ---- 2

    auto oracle_equivalence() -> Outcome
    {
        long mismatch[5] = {0, 0, 0, 0, 0};
        const int runs = 1000;
        for (int s = 0; s < runs; ++s) {
            Rng rng(derive_seed(31, "oracle", static_cast<std::uint64_t>(s)));
            int n = static_cast<int>(uniform_int(rng, 16, 50));
            auto g = gen_gnp(n, 0.1 + 0.8 * uniform_real(rng), derive_seed(31, "oracle/g", static_cast<std::uint64_t>(s)));
            auto perm = range(0, n);
            shuffle_in_place(perm, rng);

            // p_density on random disjoint parts
            {
                int a = static_cast<int>(uniform_int(rng, 1, n / 2)), b = static_cast<int>(uniform_int(rng, 1, n - a));
                std::vector<int> u(perm.begin(), perm.begin() + a), w(perm.begin() + a, perm.begin() + a + b);
                double p = 0.05 + 0.95 * uniform_real(rng);
                double got = p_density(g, vs(n, u), vs(n, w), p), want = oracle::p_density(g, u, w, p);
                mismatch[0] += std::abs(got - want) <= 1e-12 * std::max(1.0, want) ? 0 : 1;
            }
            // count_stars with disjoint Δ-sets outside X
            {
                int delta = static_cast<int>(uniform_int(rng, 1, 3));
                int xs = static_cast<int>(uniform_int(rng, 1, n / 3));
                int fs = static_cast<int>(uniform_int(rng, 1, (n - xs) / delta));
                std::vector<int> x(perm.begin(), perm.begin() + xs);
                SetFamily fam{delta, {}, true};
                for (int q = 0; q < fs; ++q) {
                    std::vector<int> f(perm.begin() + xs + q * delta, perm.begin() + xs + (q + 1) * delta);
                    std::sort(f.begin(), f.end());
                    fam.sets.push_back(f);
                }
                mismatch[1] += count_stars(g, vs(n, x), fam) == oracle::count_stars(g, x, fam.sets) ? 0 : 1;
            }
            // candidate graph for a bipartite H whose first side is embedded
            {
                int hn = static_cast<int>(uniform_int(rng, 2, std::min(14, n / 2)));
                int half = hn / 2;
                Graph h(hn);
                for (int a = 0; a < half; ++a)
                    for (int b = half; b < hn; ++b)
                        if (uniform_real(rng) < 0.4)
                            h.add_edge(a, b);
                Embedding f(hn);
                for (int a = 0; a < half; ++a)
                    f.map[a] = perm[a];
                auto ut = range(half, hn);
                std::vector<int> u(perm.begin() + half, perm.end());
                auto b = candidate_graph(h, ut, g, u, f);
                std::vector<std::vector<int>> rows;
                for (auto & row : b.adj)
                    rows.push_back(row.to_vector());
                mismatch[2] += rows == oracle::candidate_rows(h, ut, g, u, f) ? 0 : 1;
            }
            // bad ℓ-sets
            {
                int ys = static_cast<int>(uniform_int(rng, 3, std::min(12, n / 2)));
                int ell = static_cast<int>(uniform_int(rng, 1, std::min(3, ys)));
                std::vector<int> y(perm.begin(), perm.begin() + ys), z(perm.begin() + ys, perm.end());
                std::sort(y.begin(), y.end());
                DensityParams prm{0.2 + 0.7 * uniform_real(rng), 0.05 + 0.15 * uniform_real(rng), 0.5};
                auto fam = bad_lsets(g, vs(n, y), vs(n, z), ell, prm);
                std::set<std::vector<int>> got(fam.sets.begin(), fam.sets.end());
                mismatch[3] += got == oracle::bad_lsets(g, y, z, ell, prm) ? 0 : 1;
            }
            // BAD ℓ-sets on a small slice, so the naive recursion and brute-force density stay cheap
            {
                int xs = static_cast<int>(uniform_int(rng, 2, 6)), ys = static_cast<int>(uniform_int(rng, 2, 8));
                int zs = static_cast<int>(uniform_int(rng, 1, std::min(6, n - xs - ys)));
                int ell = static_cast<int>(uniform_int(rng, 1, 2));
                std::vector<int> x(perm.begin(), perm.begin() + xs), y(perm.begin() + xs, perm.begin() + xs + ys),
                    z(perm.begin() + xs + ys, perm.begin() + xs + ys + zs);
                std::sort(x.begin(), x.end());
                DensityParams prm{0.3 + 0.6 * uniform_real(rng), 0.1 + 0.15 * uniform_real(rng), 0.6};
                auto got = Bad_lsets(g, vs(n, x), vs(n, y), vs(n, z), ell, prm);
                std::set<std::vector<int>> gs(got.family.sets.begin(), got.family.sets.end());
                mismatch[4] += gs == oracle::Bad_lsets(g, x, y, z, ell, prm) ? 0 : 1;
            }
        }
        long total = mismatch[0] + mismatch[1] + mismatch[2] + mismatch[3] + mismatch[4];
        return {total == 0, fmt("%d instances; mismatches p_density=%ld count_stars=%ld candidate_graph=%ld bad_lsets=%ld Bad_lsets=%ld",
                                runs, mismatch[0], mismatch[1], mismatch[2], mismatch[3], mismatch[4])};
    }

    // ---- 3

    auto partition_h_contract() -> Outcome
    {
        int done = 0, ok = 0, skipped = 0;
        std::string first;
        for (std::uint64_t s = 0; done < 100; ++s) {
            Rng rng(derive_seed(77, "hcontract", s));
            int delta = static_cast<int>(uniform_int(rng, 2, 3));
            int m = static_cast<int>(uniform_int(rng, 300, 3000));
            int r = static_cast<int>(uniform_int(rng, 1, 3));
            double eta = 0.3 + 0.3 * uniform_real(rng);
            int bw = static_cast<int>(uniform_int(rng, 1, std::max(1, m / (60 * r))));
            auto kind = delta == 2 ? GuestKind::path_union
                                   : (uniform_real(rng) < 0.5 ? GuestKind::grid_strip : GuestKind::random_bandwidth_bipartite);
            GuestInstance h;
            try {
                h = gen_guest(GuestSpec{m, delta, static_cast<double>(bw) / m, kind, s, 2, 4});
            }
            catch (const GraphError &) {
                ++skipped;  // generator cannot meet this bandwidth; draw another guest
                continue;
            }
            ++done;
            try {
                auto part = partition_H(h.graph, h.order, r, eta, delta, {s, false});
                auto rep = verify_H_partition(h.graph, part);
                bool good = rep.ok() && is_homomorphism(h.graph, part.spin(), part.h);
                ok += good ? 1 : 0;
                if (! good && first.empty())
                    first = fmt("seed %llu: %s", static_cast<unsigned long long>(s), rep.failures.empty() ? "not a homomorphism" : rep.failures[0].c_str());
            }
            catch (const std::exception & e) {
                if (first.empty())
                    first = fmt("seed %llu threw: %s", static_cast<unsigned long long>(s), e.what());
            }
        }
        int t2 = spin_t_for(2);
        std::string d = fmt("%d/%d guests verified (%d infeasible draws regenerated); t for delta=2 is %d", ok, done, skipped, t2);
        if (! first.empty())
            d += "; " + first;
        return {ok == done && t2 == 243, d};
    }

    // ---- 4

    auto lolly_bounds() -> Outcome
    {
        int ok = 0, runs = 100;
        std::string first;
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(runs); ++s) {
            Rng rng(derive_seed(88, "lolly", s));
            int m = static_cast<int>(uniform_int(rng, 1500, 4000));
            int delta = static_cast<int>(uniform_int(rng, 2, 3));
            double eta_bar = 0.3 + 0.4 * uniform_real(rng);
            int ell = lolly_ell(eta_bar);
            int zone = std::max(1, m / (ell * ell));
            auto kind = delta == 2 ? GuestKind::path_union : GuestKind::random_bandwidth_bipartite;
            auto h = gen_guest(GuestSpec{m, delta, static_cast<double>(zone) / m, kind, s, 2, 4});
            auto col = two_colouring(h.graph);
            auto hom = lolly_homomorphism(h.graph, col, h.order, eta_bar);
            auto rep = verify_lolly(h.graph, col, h.order, hom, eta_bar, zone, delta);
            ok += rep.ok() ? 1 : 0;
            if (! rep.ok() && first.empty())
                first = fmt("seed %llu failed", static_cast<unsigned long long>(s));
        }
        return {ok == runs, fmt("%d/%d blocks within bounds (slack = delta)", ok, runs) + (first.empty() ? "" : "; " + first)};
    }

    // ---- 5

    auto planted_end_to_end() -> Outcome
    {
        int trials = 50, ok = 0, bad_success = 0;
        double worst = 0.0;
        for (int k = 0; k < trials; ++k) {
            auto t0 = Clock::now();
            int r = 2 + k % 2, t = (k / 2) % 2 ? 4 : 2, big = 200 + 100 * (k % 3);
            auto host = gen_planted_spin_host(r, t, PlantedSizes{big, 100, 100}, 0.5, 0.3, derive_seed(7, "h", static_cast<std::uint64_t>(k)));
            auto guest = gen_planted_spin_guest(host.part, PlantedGuestSpec{0.85, 0.1}, derive_seed(7, "g", static_cast<std::uint64_t>(k)));
            EmbedParams prm;
            prm.dens = DensityParams{0.3, 0.2, 0.5};
            prm.parts = 1;
            auto res = full_embed_partitioned(host.graph, host.part, guest.graph, guest.part, prm, derive_seed(7, "e", static_cast<std::uint64_t>(k)));
            worst = std::max(worst, seconds_since(t0));
            if (res.success) {
                ++ok;
                bool valid = verify_embedding(guest.graph, host.graph, res.f) && specials_avoid_forbidden(res.constraints, res.f);
                bad_success += valid ? 0 : 1;
            }
        }
        bool pass = ok >= 45 && bad_success == 0 && worst <= 300.0;
        return {pass, fmt("%d/%d succeeded, %d successes failed re-verification, slowest trial %.1fs", ok, trials, bad_success, worst)};
    }

    // ---- 6

    auto star_bound() -> Outcome
    {
        const int n = 2000, seeds = 50, per = 100, delta = 2;
        const double p = 0.1, nu = 0.05;
        long held = 0, total = 0;
        for (int s = 0; s < seeds; ++s) {
            auto g = gen_gnp(n, p, derive_seed(606, "stars/g", static_cast<std::uint64_t>(s)));
            Rng rng(derive_seed(606, "stars/sets", static_cast<std::uint64_t>(s)));
            for (int c = 0; c < per; ++c) {
                // nu n <= |X| <= |F|, F a family of disjoint Δ-sets outside X
                int xs = static_cast<int>(uniform_int(rng, static_cast<long>(nu * n), 600));
                int fs = static_cast<int>(uniform_int(rng, xs, (n - xs) / delta));
                auto perm = range(0, n);
                shuffle_in_place(perm, rng);
                std::vector<int> x(perm.begin(), perm.begin() + xs);
                SetFamily fam{delta, {}, true};
                for (int q = 0; q < fs; ++q) {
                    std::vector<int> f{perm[xs + 2 * q], perm[xs + 2 * q + 1]};
                    std::sort(f.begin(), f.end());
                    fam.sets.push_back(f);
                }
                long st = count_stars(g, vs(n, x), fam);
                held += static_cast<double>(st) <= 7.0 * std::pow(p, delta) * xs * fs ? 1 : 0;
                ++total;
            }
        }
        double rate = static_cast<double>(held) / static_cast<double>(total);
        return {rate >= 0.98, fmt("bound held in %ld/%ld checks (%.1f%%)", held, total, 100 * rate)};
    }

    // ---- 7

    auto gnp_statistics() -> Outcome
    {
        const int n = 2000, seeds = 50;
        const double p = 0.15;
        int within = 0, out = 0;
        double guard = n / std::log(static_cast<double>(n));
        int lo = static_cast<int>(std::ceil(guard));
        for (int s = 0; s < seeds; ++s) {
            auto g = gen_gnp(n, p, derive_seed(11, "gnp/g", static_cast<std::uint64_t>(s)));
            Rng rng(derive_seed(11, "gnp/sets", static_cast<std::uint64_t>(s)));
            auto perm = range(0, n);
            shuffle_in_place(perm, rng);
            int xs = static_cast<int>(uniform_int(rng, lo, n / 2 - 1));
            int ys = static_cast<int>(uniform_int(rng, lo, n - xs));
            int zs = static_cast<int>(uniform_int(rng, lo, n - lo));
            std::vector<int> x(perm.begin(), perm.begin() + xs), y(perm.begin() + xs, perm.begin() + xs + ys);
            shuffle_in_place(perm, rng);
            std::vector<int> z(perm.begin(), perm.begin() + zs);
            auto st = gnp_stats(g, vs(n, x), vs(n, y), vs(n, z), p);
            out += st.out_of_regime ? 1 : 0;
            within += st.within ? 1 : 0;
        }
        return {within >= 45, fmt("%d/%d seeds within 1 +- 1/ln n (%d drawn out of regime)", within, seeds, out)};
    }

    // ---- 8

    auto polychromatic_exactness() -> Outcome
    {
        const int runs = 200;
        int exact = 0, successes = 0, certified = 0;
        std::string first;
        for (int s = 0; s < runs; ++s) {
            Rng rng(derive_seed(808, "poly", static_cast<std::uint64_t>(s)));
            auto pattern = uniform_real(rng) < 0.5 ? ColoringPattern::random_balanced : ColoringPattern::adversarial_local_clumps;
            int k = static_cast<int>(uniform_int(rng, 1, 4));

            // Γ(φ) on a random graph: uniquely coloured edges are kept, nothing else
            int n = static_cast<int>(uniform_int(rng, 10, 80));
            auto gamma = gen_gnp(n, 0.1 + 0.8 * uniform_real(rng), derive_seed(808, "poly/gamma", static_cast<std::uint64_t>(s)));
            auto phi = gen_k_bounded(n, k, pattern, derive_seed(808, "poly/phi", static_cast<std::uint64_t>(s)));
            auto kept = gamma_phi(gamma, phi);
            std::map<int, int> all, in_kept;
            for (auto [a, b] : gamma.edges())
                ++all[phi.of(a, b)];
            bool ok = kept.is_subgraph_of(gamma);
            for (auto [a, b] : kept.edges())
                ok = ok && ++in_kept[phi.of(a, b)] == 1;
            for (auto [a, b] : gamma.edges())
                ok = ok && kept.has_edge(a, b) == (all[phi.of(a, b)] == 1);
            exact += ok ? 1 : 0;

            // the full experiment; successes must carry a certificate that checks against a rebuilt Γ(φ)
            int hn = 400;
            std::uint64_t seed = derive_seed(808, "poly/run", static_cast<std::uint64_t>(s));
            RainbowOptions opts;
            opts.pattern = pattern;
            opts.embed.dens = DensityParams{0.8, 0.2, 0.5};
            opts.embed.r0 = 4;
            GuestSpec gs{80, 2, 0.02, GuestKind::path_union, 0, 1, 4};
            auto res = rainbow_experiment(hn, k, 0.8, gs, opts, seed);
            if (! res.success)
                continue;
            ++successes;
            auto rphi = gen_k_bounded(hn, k, pattern, derive_seed(seed, "rainbow/coloring"));
            auto rgamma = gen_gnp(hn, 0.8, derive_seed(seed, "rainbow/gamma"));
            auto rkept = gamma_phi(rgamma, rphi);
            GuestSpec g2 = gs;
            g2.seed = derive_seed(seed, "rainbow/guest");
            auto h = gen_guest(g2);
            std::set<int> colours;
            bool cert = check_rainbow_certificate(rkept, rphi, res.certificate)
                && static_cast<long>(res.certificate.size()) == h.graph.m() && verify_embedding(h.graph, rkept, res.embed.f);
            for (auto & e : res.certificate)
                cert = cert && colours.insert(rphi.of(e.x, e.y)).second && res.embed.f.map[e.a] == e.x && res.embed.f.map[e.b] == e.y;
            certified += cert ? 1 : 0;
            if (! cert && first.empty())
                first = fmt("run %d: certificate does not verify", s);
        }
        bool pass = exact == runs && certified == successes;
        return {pass, fmt("gamma_phi exact %d/%d; rainbow successes %d, certificates verified %d", exact, runs, successes, certified)
                          + (first.empty() ? "" : "; " + first)};
    }

    // ---- 9

    auto determinism() -> Outcome
    {
        auto capture = [](ExperimentConfig cfg, int threads) {
            cfg.threads = threads;
            std::ostringstream j, c;
            run_experiment(cfg, j, &c);
            return j.str() + "\n--\n" + c.str();
        };
        std::vector<ExperimentConfig> cfgs;
        ExperimentConfig sweep;
        sweep.mode = Mode::resilience_sweep;
        sweep.n = 200;
        sweep.p = 0.6;
        sweep.r0 = 4;
        sweep.gammas = {0.0, 0.1};
        sweep.seeds = parse_seed_list("1..4");
        cfgs.push_back(sweep);
        ExperimentConfig poly;
        poly.mode = Mode::polychromatic;
        poly.n = 400;
        poly.p = 0.8;
        poly.r0 = 4;
        poly.fill = 0.2;
        poly.eps = 0.2;
        poly.ks = {1, 2};
        poly.seeds = parse_seed_list("1..4");
        cfgs.push_back(poly);
        ExperimentConfig checks;
        checks.mode = Mode::lemma_checks;
        checks.lemma_scale = 0.1;
        checks.seeds = {3, 4};
        cfgs.push_back(checks);

        int same = 0;
        for (auto & cfg : cfgs) {
            auto a = capture(cfg, 1), b = capture(cfg, 1), c = capture(cfg, 4);
            same += (a == b && a == c && a.size() > 6) ? 1 : 0;
        }
        int total = static_cast<int>(cfgs.size());
        return {same == total, fmt("%d/%d configs byte-identical across two serial runs and a 4-thread run", same, total)};
    }
}

int main()
{
    struct Criterion
    {
        const char * name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {"1 deterministic check suite", lemma_suite},
        {"2 oracle equivalence", oracle_equivalence},
        {"3 partition_H contract", partition_h_contract},
        {"4 lolly bounds", lolly_bounds},
        {"5 planted end-to-end", planted_end_to_end},
        {"6 star bound on G(2000,0.1)", star_bound},
        {"7 G(n,p) edge statistics", gnp_statistics},
        {"8 polychromatic exactness", polychromatic_exactness},
        {"9 determinism", determinism},
    };
    int failed = 0;
    for (auto & c : all) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception & e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s  %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
