#pragma once

#include <sbw/embed.hh>
#include <sbw/lemma_checks.hh>
#include <sbw/polychromatic.hh>

#include <json.hpp>

#include <iosfwd>

namespace sbw
{
    using Json = nlohmann::ordered_json;

    // fixed precision so that reruns are byte-identical
    auto round6(double x) -> double;

    auto to_json(const EmbedResult & r, bool with_map = true) -> Json;
    auto to_json(const RainbowResult & r) -> Json;
    auto to_json(const LemmaCheck & c) -> Json;

    // "guest host" per line, unmapped vertices skipped
    void write_embedding(std::ostream & out, const Embedding & f);
    auto read_embedding(std::istream & in, int guest_n) -> Embedding;

    auto failure_report(const EmbedResult & r) -> Json;
}
