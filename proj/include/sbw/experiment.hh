#pragma once

#include <sbw/embed.hh>
#include <sbw/graph.hh>
#include <sbw/polychromatic.hh>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbw
{
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Mode
    {
        resilience_sweep,
        single_embed,
        polychromatic,
        lemma_checks
    };

    auto parse_mode(const std::string & s) -> Mode;
    auto to_string(Mode m) -> std::string;

    struct ExperimentConfig
    {
        Mode mode = Mode::single_embed;

        // host Γ = G(n, p); p = 0 means p = compute_p(n, c, delta)
        int n = 400;
        double p = 0.0;
        double c = 1.0;
        int delta = 2;

        double gamma = 0.0;                 // adversary share for single-embed; 0 leaves Γ intact
        AdversaryStrategy adversary = AdversaryStrategy::random_half_minus_gamma;
        std::vector<double> gammas;         // resilience-sweep points

        GuestKind guest = GuestKind::path_union;
        int m = 0;                          // 0: floor(fill * n)
        double fill = 0.5;
        double beta = 0.02;
        int guest_parts = 1;
        int cycle_len = 4;

        int k = 1;
        std::vector<int> ks;                // polychromatic points; empty: {k}
        ColoringPattern pattern = ColoringPattern::random_balanced;

        // pipeline
        double eps = 0.1;
        double d = 0.5;
        double eta = 0.1;
        double eta_prime = 0.02;
        double triangle_gamma = 0.1;
        int t_override = 0;
        int r0 = 8;
        PartitionStrategy partition_strategy = PartitionStrategy::refine_heuristic;
        long ladder_budget = 200000;
        long mc_trials = 64;
        double sigma = 0.05;
        int retries = 20;
        int blowup_parts = 0;
        double corrupt_eta = 0.1;
        BadMode bad_mode = BadMode::neighbourhood;
        bool density_filter = true;
        bool strict = false;

        std::vector<std::uint64_t> seeds{1};
        std::string output;                 // JSON-lines path; empty: stdout
        std::string csv;                    // CSV path; empty: no summary file
        int threads = 1;
        double lemma_scale = 1.0;           // multiplies the lemma-suite case counts

        auto embed_params(double p_eff) const -> EmbedParams;
    };

    // key=value assignment with the flat key names used by config files
    void set_config_value(ExperimentConfig & cfg, const std::string & key, const std::string & value);
    auto config_keys() -> const std::vector<std::string> &;
    auto load_config(std::istream & in, ExperimentConfig cfg = {}) -> ExperimentConfig;
    auto load_config_file(const std::string & path, ExperimentConfig cfg = {}) -> ExperimentConfig;
    void validate_config(const ExperimentConfig & cfg);

    // "1,2,5" or "1..50" or a mix of both
    auto parse_seed_list(const std::string & s) -> std::vector<std::uint64_t>;

    auto compute_p(int n, double c, int delta) -> double;

    auto effective_p(const ExperimentConfig & cfg) -> double;

    // runs every trial and writes the records; returns the process exit status
    auto run_experiment(const ExperimentConfig & cfg, std::ostream & jsonl, std::ostream * csv) -> int;
    // opens cfg.output / cfg.csv itself
    auto run_experiment(const ExperimentConfig & cfg) -> int;
}
