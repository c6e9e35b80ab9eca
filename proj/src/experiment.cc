#include <sbw/experiment.hh>

#include <sbw/json_io.hh>
#include <sbw/lemma_checks.hh>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace sbw
{
    auto parse_mode(const std::string & s) -> Mode
    {
        if (s == "resilience-sweep" || s == "sweep")
            return Mode::resilience_sweep;
        if (s == "single-embed" || s == "embed")
            return Mode::single_embed;
        if (s == "polychromatic" || s == "rainbow")
            return Mode::polychromatic;
        if (s == "lemma-checks" || s == "check")
            return Mode::lemma_checks;
        throw ConfigError("unknown mode: " + s);
    }

    auto to_string(Mode m) -> std::string
    {
        switch (m) {
            case Mode::resilience_sweep: return "resilience-sweep";
            case Mode::single_embed: return "single-embed";
            case Mode::polychromatic: return "polychromatic";
            case Mode::lemma_checks: return "lemma-checks";
        }
        return "?";
    }

    auto ExperimentConfig::embed_params(double p_eff) const -> EmbedParams
    {
        EmbedParams ep;
        ep.dens = DensityParams{p_eff, eps, d};
        ep.delta = delta;
        ep.eta = eta;
        ep.eta_prime = eta_prime;
        ep.gamma = triangle_gamma;
        ep.t_override = t_override;
        ep.r0 = r0;
        ep.strategy = partition_strategy;
        ep.ladder_budget = ladder_budget;
        ep.mc_trials = mc_trials;
        ep.sigma = sigma;
        ep.retries = retries;
        ep.parts = blowup_parts;
        ep.corrupt_eta = corrupt_eta;
        ep.bad_mode = bad_mode;
        ep.density_filter = density_filter;
        ep.strict = strict;
        return ep;
    }

    namespace
    {
        auto trim(const std::string & s) -> std::string
        {
            auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return "";
            auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        }

        auto split(const std::string & s, char sep) -> std::vector<std::string>
        {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, sep))
                if (! trim(item).empty())
                    out.push_back(trim(item));
            return out;
        }

        auto to_double(const std::string & key, const std::string & v) -> double
        {
            try {
                std::size_t used = 0;
                double x = std::stod(v, &used);
                if (used == v.size())
                    return x;
            }
            catch (const std::exception &) {
            }
            throw ConfigError(key + ": not a number: " + v);
        }

        auto to_long(const std::string & key, const std::string & v) -> long
        {
            try {
                std::size_t used = 0;
                long x = std::stol(v, &used);
                if (used == v.size())
                    return x;
            }
            catch (const std::exception &) {
            }
            throw ConfigError(key + ": not an integer: " + v);
        }

        auto to_int(const std::string & key, const std::string & v) -> int
        {
            long x = to_long(key, v);
            if (x < INT32_MIN || x > INT32_MAX)
                throw ConfigError(key + ": out of range: " + v);
            return static_cast<int>(x);
        }

        auto to_bool(const std::string & key, const std::string & v) -> bool
        {
            if (v == "true" || v == "1" || v == "yes" || v == "on")
                return true;
            if (v == "false" || v == "0" || v == "no" || v == "off")
                return false;
            throw ConfigError(key + ": not a boolean: " + v);
        }

        // "0.05,0.1" or "0.05..0.45:0.05"
        auto parse_real_list(const std::string & key, const std::string & s) -> std::vector<double>
        {
            std::vector<double> out;
            for (auto & item : split(s, ',')) {
                auto dots = item.find("..");
                if (dots == std::string::npos) {
                    out.push_back(to_double(key, item));
                    continue;
                }
                auto colon = item.find(':', dots);
                if (colon == std::string::npos)
                    throw ConfigError(key + ": a real range needs a step, as in 0.05..0.45:0.05");
                double lo = to_double(key, item.substr(0, dots));
                double hi = to_double(key, item.substr(dots + 2, colon - dots - 2));
                double step = to_double(key, item.substr(colon + 1));
                if (step <= 0 || hi < lo)
                    throw ConfigError(key + ": bad range " + item);
                long steps = std::lround(std::floor((hi - lo) / step + 1e-9));
                for (long q = 0; q <= steps; ++q)
                    out.push_back(round6(lo + static_cast<double>(q) * step));
            }
            return out;
        }

        auto parse_int_list(const std::string & key, const std::string & s) -> std::vector<long>
        {
            std::vector<long> out;
            for (auto & item : split(s, ',')) {
                auto dots = item.find("..");
                if (dots == std::string::npos) {
                    out.push_back(to_long(key, item));
                    continue;
                }
                long lo = to_long(key, item.substr(0, dots)), hi = to_long(key, item.substr(dots + 2));
                if (hi < lo)
                    throw ConfigError(key + ": empty range " + item);
                for (long x = lo; x <= hi; ++x)
                    out.push_back(x);
            }
            return out;
        }

        template <typename F>
        auto wrap_parse(const std::string & key, F && f) -> decltype(f())
        {
            try {
                return f();
            }
            catch (const GraphError & e) {
                throw ConfigError(key + ": " + e.what());
            }
        }

        using Setter = std::function<void(ExperimentConfig &, const std::string &, const std::string &)>;

        auto setters() -> const std::map<std::string, Setter> &
        {
            static const std::map<std::string, Setter> table = {
                {"mode", [](auto & c, auto &, auto & v) { c.mode = parse_mode(v); }},
                {"n", [](auto & c, auto & k, auto & v) { c.n = to_int(k, v); }},
                {"p", [](auto & c, auto & k, auto & v) { c.p = to_double(k, v); }},
                {"c", [](auto & c, auto & k, auto & v) { c.c = to_double(k, v); }},
                {"delta", [](auto & c, auto & k, auto & v) { c.delta = to_int(k, v); }},
                {"gamma", [](auto & c, auto & k, auto & v) { c.gamma = to_double(k, v); }},
                {"adversary", [](auto & c, auto & k, auto & v) { c.adversary = wrap_parse(k, [&] { return parse_adversary_strategy(v); }); }},
                {"gammas", [](auto & c, auto & k, auto & v) { c.gammas = parse_real_list(k, v); }},
                {"guest", [](auto & c, auto & k, auto & v) { c.guest = wrap_parse(k, [&] { return parse_guest_kind(v); }); }},
                {"m", [](auto & c, auto & k, auto & v) { c.m = to_int(k, v); }},
                {"fill", [](auto & c, auto & k, auto & v) { c.fill = to_double(k, v); }},
                {"beta", [](auto & c, auto & k, auto & v) { c.beta = to_double(k, v); }},
                {"guest_parts", [](auto & c, auto & k, auto & v) { c.guest_parts = to_int(k, v); }},
                {"cycle_len", [](auto & c, auto & k, auto & v) { c.cycle_len = to_int(k, v); }},
                {"k", [](auto & c, auto & k, auto & v) { c.k = to_int(k, v); }},
                {"ks",
                    [](auto & c, auto & k, auto & v) {
                        c.ks.clear();
                        for (long x : parse_int_list(k, v))
                            c.ks.push_back(static_cast<int>(x));
                    }},
                {"pattern", [](auto & c, auto & k, auto & v) { c.pattern = wrap_parse(k, [&] { return parse_coloring_pattern(v); }); }},
                {"eps", [](auto & c, auto & k, auto & v) { c.eps = to_double(k, v); }},
                {"d", [](auto & c, auto & k, auto & v) { c.d = to_double(k, v); }},
                {"eta", [](auto & c, auto & k, auto & v) { c.eta = to_double(k, v); }},
                {"eta_prime", [](auto & c, auto & k, auto & v) { c.eta_prime = to_double(k, v); }},
                {"triangle_gamma", [](auto & c, auto & k, auto & v) { c.triangle_gamma = to_double(k, v); }},
                {"t_override", [](auto & c, auto & k, auto & v) { c.t_override = to_int(k, v); }},
                {"r0", [](auto & c, auto & k, auto & v) { c.r0 = to_int(k, v); }},
                {"partition_strategy",
                    [](auto & c, auto & k, auto & v) { c.partition_strategy = wrap_parse(k, [&] { return parse_partition_strategy(v); }); }},
                {"ladder_budget", [](auto & c, auto & k, auto & v) { c.ladder_budget = to_long(k, v); }},
                {"mc_trials", [](auto & c, auto & k, auto & v) { c.mc_trials = to_long(k, v); }},
                {"sigma", [](auto & c, auto & k, auto & v) { c.sigma = to_double(k, v); }},
                {"retries", [](auto & c, auto & k, auto & v) { c.retries = to_int(k, v); }},
                {"blowup_parts", [](auto & c, auto & k, auto & v) { c.blowup_parts = to_int(k, v); }},
                {"corrupt_eta", [](auto & c, auto & k, auto & v) { c.corrupt_eta = to_double(k, v); }},
                {"bad_mode",
                    [](auto & c, auto & k, auto & v) {
                        if (v == "neighbourhood" || v == "neighborhood")
                            c.bad_mode = BadMode::neighbourhood;
                        else if (v == "full")
                            c.bad_mode = BadMode::full;
                        else
                            throw ConfigError(k + ": expected neighbourhood or full, got " + v);
                    }},
                {"density_filter", [](auto & c, auto & k, auto & v) { c.density_filter = to_bool(k, v); }},
                {"strict", [](auto & c, auto & k, auto & v) { c.strict = to_bool(k, v); }},
                {"seeds", [](auto & c, auto &, auto & v) { c.seeds = parse_seed_list(v); }},
                {"output", [](auto & c, auto &, auto & v) { c.output = v; }},
                {"csv", [](auto & c, auto &, auto & v) { c.csv = v; }},
                {"threads", [](auto & c, auto & k, auto & v) { c.threads = to_int(k, v); }},
                {"lemma_scale", [](auto & c, auto & k, auto & v) { c.lemma_scale = to_double(k, v); }},
            };
            return table;
        }
    }

    auto parse_seed_list(const std::string & s) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> out;
        for (long x : parse_int_list("seeds", s)) {
            if (x < 0)
                throw ConfigError("seeds: negative seed " + std::to_string(x));
            out.push_back(static_cast<std::uint64_t>(x));
        }
        return out;
    }

    void set_config_value(ExperimentConfig & cfg, const std::string & key, const std::string & value)
    {
        auto & table = setters();
        auto it = table.find(key);
        if (it == table.end())
            throw ConfigError("unknown config key: " + key);
        it->second(cfg, key, trim(value));
    }

    auto config_keys() -> const std::vector<std::string> &
    {
        static const std::vector<std::string> keys = [] {
            std::vector<std::string> k;
            for (auto & [name, _] : setters())
                k.push_back(name);
            return k;
        }();
        return keys;
    }

    auto load_config(std::istream & in, ExperimentConfig cfg) -> ExperimentConfig
    {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.resize(hash);
            line = trim(line);
            if (line.empty())
                continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
            set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        }
        return cfg;
    }

    auto load_config_file(const std::string & path, ExperimentConfig cfg) -> ExperimentConfig
    {
        std::ifstream in(path);
        if (! in)
            throw ConfigError("cannot open config file " + path);
        return load_config(in, std::move(cfg));
    }

    auto compute_p(int n, double c, int delta) -> double
    {
        if (n < 2)
            throw ConfigError("compute_p needs n >= 2");
        if (c <= 0)
            throw ConfigError("compute_p needs c > 0");
        if (delta < 1)
            throw ConfigError("compute_p needs delta >= 1");
        return std::min(1.0, c * std::pow(std::log(static_cast<double>(n)) / n, 1.0 / delta));
    }

    auto effective_p(const ExperimentConfig & cfg) -> double
    {
        return cfg.p > 0 ? cfg.p : compute_p(cfg.n, cfg.c, cfg.delta);
    }

    namespace
    {
        void require(bool ok, const std::string & msg)
        {
            if (! ok)
                throw ConfigError(msg);
        }

        auto guest_size(const ExperimentConfig & cfg) -> int
        {
            return cfg.m > 0 ? cfg.m : static_cast<int>(std::floor(cfg.fill * cfg.n + 1e-9));
        }
    }

    void validate_config(const ExperimentConfig & cfg)
    {
        require(cfg.threads >= 0, "threads must be >= 0");
        if (cfg.mode == Mode::lemma_checks) {
            require(cfg.lemma_scale > 0, "lemma_scale must be positive");
            return;
        }
        require(cfg.n >= 2, "n must be >= 2");
        require(cfg.p >= 0 && cfg.p <= 1, "p must lie in [0, 1] (0 selects compute_p)");
        require(cfg.delta >= 1, "delta must be >= 1");
        require(cfg.p > 0 || cfg.c > 0, "c must be positive when p is not given");
        double p_eff = effective_p(cfg);
        require(cfg.gamma >= 0 && cfg.gamma < 0.5, "gamma must lie in [0, 0.5)");
        for (double g : cfg.gammas)
            require(g >= 0 && g < 0.5, "every sweep gamma must lie in [0, 0.5)");
        if (cfg.mode == Mode::resilience_sweep)
            require(! cfg.gammas.empty(), "resilience-sweep needs a non-empty gammas list");
        require(cfg.m >= 0, "m must be >= 0");
        require(cfg.fill > 0 && cfg.fill <= 1, "fill must lie in (0, 1]");
        int gm = guest_size(cfg);
        require(gm >= 1, "the guest would be empty");
        require(gm <= cfg.n, "the guest (" + std::to_string(gm) + " vertices) is larger than the host");
        require(cfg.beta > 0 && cfg.beta <= 1, "beta must lie in (0, 1]");
        require(cfg.guest_parts >= 1, "guest_parts must be >= 1");
        require(cfg.cycle_len >= 4 && cfg.cycle_len % 2 == 0, "cycle_len must be even and >= 4");
        require(cfg.k >= 1, "k must be >= 1");
        for (int k : cfg.ks)
            require(k >= 1, "every k must be >= 1");
        require(cfg.eta >= 0 && cfg.eta < 1, "eta must lie in [0, 1)");
        require(cfg.eta_prime > 0 && cfg.eta_prime < 1, "eta_prime must lie in (0, 1)");
        require(cfg.triangle_gamma >= 0, "triangle_gamma must be >= 0");
        require(cfg.t_override >= 0, "t_override must be >= 0");
        require(cfg.r0 >= 1, "r0 must be >= 1");
        require(cfg.ladder_budget >= 1 && cfg.mc_trials >= 1, "ladder_budget and mc_trials must be >= 1");
        require(cfg.sigma >= 0, "sigma must be >= 0");
        require(cfg.retries >= 1, "retries must be >= 1");
        require(cfg.blowup_parts >= 0, "blowup_parts must be >= 0");
        require(cfg.corrupt_eta > 0 && cfg.corrupt_eta <= 1, "corrupt_eta must lie in (0, 1]");
        try {
            validate(DensityParams{p_eff, cfg.eps, cfg.d});
        }
        catch (const std::exception & e) {
            throw ConfigError(std::string("density parameters: ") + e.what());
        }
    }

    namespace
    {
        struct TrialOutput
        {
            std::vector<Json> records;
            std::vector<std::pair<std::string, bool>> outcomes;  // (parameter point, success)
        };

        struct Trial
        {
            std::string point;
            std::uint64_t seed;
            std::function<TrialOutput()> run;
        };

        auto point_label(double x) -> std::string
        {
            std::ostringstream os;
            os << round6(x);
            return os.str();
        }

        auto embed_trial(const ExperimentConfig & cfg, double gamma, std::uint64_t seed) -> TrialOutput
        {
            double p = effective_p(cfg);
            Json rec;
            rec["mode"] = to_string(cfg.mode);
            rec["seed"] = seed;
            rec["n"] = cfg.n;
            rec["p"] = round6(p);
            rec["gamma"] = round6(gamma);

            auto gamma_graph = gen_gnp(cfg.n, p, derive_seed(seed, "trial/host"));
            Graph host = gamma_graph;
            rec["gamma_edges"] = gamma_graph.m();
            if (gamma > 0) {
                host = adversary_delete(gamma_graph, AdversarySpec{gamma, cfg.adversary, derive_seed(seed, "trial/adversary")});
                rec["adversary"] = to_string(cfg.adversary);
                rec["adversary_ok"] = verify_min_degree_ratio(gamma_graph, host, gamma);
            }
            rec["host_edges"] = host.m();

            GuestSpec gs{guest_size(cfg), cfg.delta, cfg.beta, cfg.guest, derive_seed(seed, "trial/guest"), cfg.guest_parts, cfg.cycle_len};
            rec["guest"] = to_string(cfg.guest);
            rec["guest_n"] = gs.m;
            EmbedResult res;
            try {
                auto h = gen_guest(gs);
                rec["guest_edges"] = h.graph.m();
                res = full_embed(host, h.graph, h.order, cfg.embed_params(p), derive_seed(seed, "trial/embed"));
            }
            catch (const GraphError & e) {
                res.stage = "precondition";
                res.message = e.what();
            }
            rec["result"] = to_json(res);
            return {{rec}, {{point_label(gamma), res.success}}};
        }

        auto rainbow_trial(const ExperimentConfig & cfg, int k, std::uint64_t seed) -> TrialOutput
        {
            double p = effective_p(cfg);
            Json rec;
            rec["mode"] = to_string(cfg.mode);
            rec["seed"] = seed;
            rec["n"] = cfg.n;
            rec["p"] = round6(p);
            rec["k"] = k;
            rec["pattern"] = to_string(cfg.pattern);
            GuestSpec gs{guest_size(cfg), cfg.delta, cfg.beta, cfg.guest, 0, cfg.guest_parts, cfg.cycle_len};
            rec["guest"] = to_string(cfg.guest);
            rec["guest_n"] = gs.m;
            RainbowResult res;
            try {
                res = rainbow_experiment(cfg.n, k, p, gs, RainbowOptions{cfg.pattern, cfg.embed_params(p)}, derive_seed(seed, "trial/rainbow"));
            }
            catch (const GraphError & e) {
                res.stage = "precondition";
                res.message = e.what();
            }
            rec["result"] = to_json(res);
            return {{rec}, {{std::to_string(k), res.success}}};
        }

        auto lemma_trial(const ExperimentConfig & cfg, std::uint64_t seed) -> TrialOutput
        {
            auto scaled = [&](long base) { return std::max(1L, std::lround(static_cast<double>(base) * cfg.lemma_scale)); };
            LemmaSuiteOptions opts;
            opts.switching_cases = scaled(opts.switching_cases);
            opts.corruption_cases = scaled(opts.corruption_cases);
            opts.hall_cases = scaled(opts.hall_cases);
            opts.dense_cases = scaled(opts.dense_cases);
            opts.crosscut_cases = scaled(opts.crosscut_cases);
            TrialOutput out;
            for (auto & c : run_lemma_checks(opts, derive_seed(seed, "trial/lemmas"))) {
                Json rec;
                rec["mode"] = to_string(cfg.mode);
                rec["seed"] = seed;
                rec["check"] = to_json(c);
                out.records.push_back(rec);
                out.outcomes.emplace_back(c.name, c.passed());
            }
            return out;
        }

        auto build_trials(const ExperimentConfig & cfg) -> std::vector<Trial>
        {
            std::vector<Trial> trials;
            switch (cfg.mode) {
                case Mode::single_embed:
                    for (auto s : cfg.seeds)
                        trials.push_back({point_label(cfg.gamma), s, [&cfg, s] { return embed_trial(cfg, cfg.gamma, s); }});
                    break;
                case Mode::resilience_sweep:
                    for (double g : cfg.gammas)
                        for (auto s : cfg.seeds)
                            trials.push_back({point_label(g), s, [&cfg, g, s] { return embed_trial(cfg, g, s); }});
                    break;
                case Mode::polychromatic: {
                    auto ks = cfg.ks.empty() ? std::vector<int>{cfg.k} : cfg.ks;
                    for (int k : ks)
                        for (auto s : cfg.seeds)
                            trials.push_back({std::to_string(k), s, [&cfg, k, s] { return rainbow_trial(cfg, k, s); }});
                    break;
                }
                case Mode::lemma_checks:
                    for (auto s : cfg.seeds)
                        trials.push_back({"suite", s, [&cfg, s] { return lemma_trial(cfg, s); }});
                    break;
            }
            return trials;
        }

        auto point_header(Mode m) -> std::string
        {
            switch (m) {
                case Mode::polychromatic: return "k";
                case Mode::lemma_checks: return "check";
                default: return "gamma";
            }
        }
    }

    auto run_experiment(const ExperimentConfig & cfg, std::ostream & jsonl, std::ostream * csv) -> int
    {
        validate_config(cfg);
        auto trials = build_trials(cfg);
        std::vector<TrialOutput> results(trials.size());
        std::vector<std::exception_ptr> errors(trials.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < trials.size(); i = next++) {
                try {
                    results[i] = trials[i].run();
                }
                catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(1, trials.size())));
        std::vector<std::thread> pool;
        for (int q = 1; q < threads; ++q)
            pool.emplace_back(worker);
        worker();
        for (auto & th : pool)
            th.join();
        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);

        // output in trial order, independent of scheduling
        std::vector<std::string> points;
        std::map<std::string, std::pair<long, long>> tally;
        bool all_ok = true;
        for (auto & r : results) {
            for (auto & rec : r.records)
                jsonl << rec.dump() << '\n';
            for (auto & [pt, ok] : r.outcomes) {
                if (! tally.count(pt))
                    points.push_back(pt);
                auto & [n, s] = tally[pt];
                ++n;
                s += ok ? 1 : 0;
                all_ok = all_ok && ok;
            }
        }
        jsonl.flush();
        // no trials: both outputs stay empty
        if (csv && ! points.empty()) {
            *csv << "mode," << point_header(cfg.mode) << ",trials,successes,success_rate\n";
            for (auto & pt : points) {
                auto [n, s] = tally[pt];
                *csv << to_string(cfg.mode) << ',' << pt << ',' << n << ',' << s << ',' << point_label(static_cast<double>(s) / n) << '\n';
            }
            csv->flush();
        }
        if (cfg.mode == Mode::lemma_checks)
            return all_ok ? 0 : 1;
        return 0;
    }

    auto run_experiment(const ExperimentConfig & cfg) -> int
    {
        validate_config(cfg);
        std::ofstream jfile, cfile;
        std::ostream * jsonl = &std::cout;
        if (! cfg.output.empty()) {
            jfile.open(cfg.output);
            if (! jfile)
                throw ConfigError("cannot write " + cfg.output);
            jsonl = &jfile;
        }
        std::ostream * csv = nullptr;
        if (! cfg.csv.empty()) {
            cfile.open(cfg.csv);
            if (! cfile)
                throw ConfigError("cannot write " + cfg.csv);
            csv = &cfile;
        }
        return run_experiment(cfg, *jsonl, csv);
    }
}
