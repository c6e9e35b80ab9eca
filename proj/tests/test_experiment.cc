#include <doctest.h>

#include <sbw/experiment.hh>
#include <sbw/json_io.hh>

#include <cmath>
#include <sstream>

using namespace sbw;

namespace
{
    auto run(const ExperimentConfig & cfg, std::string & jsonl, std::string & csv) -> int
    {
        std::ostringstream j, c;
        int rc = run_experiment(cfg, j, &c);
        jsonl = j.str();
        csv = c.str();
        return rc;
    }

    auto lines(const std::string & s) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        std::istringstream in(s);
        for (std::string l; std::getline(in, l);)
            out.push_back(l);
        return out;
    }
}

TEST_CASE("edge probability from the host parameters")
{
    CHECK(compute_p(7, 1.0, 1) == doctest::Approx(std::log(7.0) / 7));
    CHECK(compute_p(10000, 1.0, 2) == doctest::Approx(0.0303).epsilon(0.01));
    CHECK(compute_p(100, 1e9, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(compute_p(1, 1.0, 2), ConfigError);
    CHECK_THROWS_AS(compute_p(100, 0.0, 2), ConfigError);

    ExperimentConfig cfg;
    cfg.n = 500;
    cfg.p = 0.0;
    CHECK(effective_p(cfg) == doctest::Approx(compute_p(500, 1.0, 2)));
    cfg.p = 0.25;
    CHECK(effective_p(cfg) == doctest::Approx(0.25));
}

TEST_CASE("config files")
{
    std::istringstream in("# comment\nmode = sweep\nn=300\n\ngammas=0..0.2:0.1\nseeds=1..3,7\nguest=path-union\nk=2\n");
    auto cfg = load_config(in);
    CHECK(cfg.mode == Mode::resilience_sweep);
    CHECK(cfg.n == 300);
    REQUIRE(cfg.gammas.size() == 3);
    CHECK(cfg.gammas[1] == doctest::Approx(0.1));
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3, 7});
    CHECK(cfg.k == 2);

    std::istringstream unknown("bogus=1\n");
    CHECK_THROWS_AS(load_config(unknown), ConfigError);
    std::istringstream malformed("n 300\n");
    CHECK_THROWS_AS(load_config(malformed), ConfigError);
    ExperimentConfig c2;
    CHECK_THROWS_AS(set_config_value(c2, "n", "abc"), ConfigError);
    CHECK_THROWS_AS(set_config_value(c2, "mode", "nonsense"), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/sbw.cfg"), ConfigError);

    for (auto & k : config_keys())
        CHECK_FALSE(k.empty());

    ExperimentConfig bad;
    bad.n = 1;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = {};
    bad.eps = 0.0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    CHECK_NOTHROW(validate_config(ExperimentConfig{}));
}

TEST_CASE("seed lists")
{
    CHECK(parse_seed_list("1,2,5") == std::vector<std::uint64_t>{1, 2, 5});
    CHECK(parse_seed_list("3..6") == std::vector<std::uint64_t>{3, 4, 5, 6});
    CHECK(parse_seed_list("1..2,9") == std::vector<std::uint64_t>{1, 2, 9});
    CHECK(parse_seed_list("").empty());
    CHECK_THROWS_AS(parse_seed_list("5..2"), ConfigError);
    CHECK_THROWS_AS(parse_seed_list("x"), ConfigError);
}

TEST_CASE("modes parse from both spellings")
{
    for (auto m : {Mode::resilience_sweep, Mode::single_embed, Mode::polychromatic, Mode::lemma_checks})
        CHECK(parse_mode(to_string(m)) == m);
}

TEST_CASE("no seeds produce no output")
{
    ExperimentConfig cfg;
    cfg.seeds.clear();
    std::string j, c;
    CHECK(run(cfg, j, c) == 0);
    CHECK(j.empty());
    CHECK(c.empty());
}

TEST_CASE("single-embed records")
{
    ExperimentConfig cfg;
    cfg.mode = Mode::single_embed;
    cfg.n = 120;
    cfg.p = 0.5;
    cfg.r0 = 4;
    cfg.seeds = {1, 2};
    std::string j, c;
    run(cfg, j, c);
    auto ls = lines(j);
    REQUIRE(ls.size() == 2);
    for (auto & l : ls) {
        auto rec = Json::parse(l);
        CHECK(rec.contains("seed"));
        REQUIRE(rec.contains("result"));
        auto & res = rec["result"];
        if (res["success"].get<bool>())
            CHECK(res["verified"].get<bool>());
        else
            CHECK_FALSE(res["stage"].get<std::string>().empty());
    }
    auto cl = lines(c);
    REQUIRE(cl.size() >= 2);
    CHECK(cl[0].rfind("mode,", 0) == 0);
}

TEST_CASE("outputs do not depend on the thread count")
{
    ExperimentConfig cfg;
    cfg.mode = Mode::polychromatic;
    cfg.n = 100;
    cfg.p = 0.5;
    cfg.r0 = 4;
    cfg.ks = {1, 3};
    cfg.seeds = parse_seed_list("1..4");
    std::string j1, c1, j3, c3, j1b, c1b;
    cfg.threads = 1;
    run(cfg, j1, c1);
    run(cfg, j1b, c1b);
    cfg.threads = 3;
    run(cfg, j3, c3);
    CHECK_FALSE(j1.empty());
    CHECK(j1 == j1b);
    CHECK(j1 == j3);
    CHECK(c1 == c3);
    CHECK(lines(j1).size() == 8);
}

TEST_CASE("lemma-check mode exits cleanly when every check passes")
{
    ExperimentConfig cfg;
    cfg.mode = Mode::lemma_checks;
    cfg.lemma_scale = 0.05;
    std::string j, c;
    int rc = run(cfg, j, c);
    bool all = true;
    for (auto & l : lines(j)) {
        auto rec = Json::parse(l);
        all = all && rec["check"]["passed"].get<bool>() && rec["check"]["failures"].get<long>() == 0;
    }
    CHECK_FALSE(j.empty());
    CHECK(rc == (all ? 0 : 1));
    CHECK(all);
}
