#include <sbw/experiment.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>

namespace
{
    struct Sub
    {
        CLI::App * app = nullptr;
        sbw::Mode mode;
        std::string config;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option *> options;
    };

    auto dashed(std::string key) -> std::string
    {
        std::replace(key.begin(), key.end(), '_', '-');
        return key;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"sparse bandwidth embedding experiments"};
    app.require_subcommand(1);

    std::vector<Sub> subs(4);
    const std::pair<const char *, const char *> names[] = {
        {"embed", "single-embed trials: G(n,p), optional adversary, full pipeline"},
        {"sweep", "resilience sweep over the gammas list"},
        {"rainbow", "polychromatic embedding over k-bounded colourings"},
        {"check", "run the deterministic check suite"},
    };
    const sbw::Mode modes[] = {sbw::Mode::single_embed, sbw::Mode::resilience_sweep, sbw::Mode::polychromatic, sbw::Mode::lemma_checks};
    for (std::size_t q = 0; q < subs.size(); ++q) {
        auto & s = subs[q];
        s.mode = modes[q];
        s.app = app.add_subcommand(names[q].first, names[q].second);
        s.app->add_option("--config", s.config, "flat key=value file; flags given here override it");
        for (auto & key : sbw::config_keys()) {
            if (key == "mode")
                continue;
            s.options[key] = s.app->add_option("--" + dashed(key), s.values[key], "config key " + key);
        }
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        // help and version requests keep CLI11's exit status 0; usage errors share the config-error status
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        for (auto & s : subs) {
            if (! s.app->parsed())
                continue;
            sbw::ExperimentConfig cfg;
            if (! s.config.empty())
                cfg = sbw::load_config_file(s.config, cfg);
            cfg.mode = s.mode;
            for (auto & [key, opt] : s.options)
                if (opt->count() > 0)
                    sbw::set_config_value(cfg, key, s.values[key]);
            return sbw::run_experiment(cfg);
        }
    }
    catch (const sbw::ConfigError & e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
