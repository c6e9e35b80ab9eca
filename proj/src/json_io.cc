#include <sbw/json_io.hh>

#include <cmath>
#include <istream>
#include <ostream>

namespace sbw
{
    auto round6(double x) -> double
    {
        if (! std::isfinite(x))
            return x;
        double r = std::round(x * 1e6) / 1e6;
        return r == 0.0 ? 0.0 : r;  // no negative zero
    }

    auto to_json(const EmbedResult & r, bool with_map) -> Json
    {
        Json j;
        j["success"] = r.success;
        j["stage"] = r.stage;
        j["message"] = r.message;
        j["verified"] = r.verified;
        j["specials_ok"] = r.specials_ok;
        j["r"] = r.r;
        j["t"] = r.t;
        j["switchings"] = r.switchings;
        j["density_relaxed_rounds"] = r.density_relaxed_rounds;
        j["precondition_failures"] = r.precondition_failures;
        j["specials"] = r.constraints.specials.size();
        long forbidden = 0;
        for (auto & fam : r.constraints.forbidden)
            forbidden += static_cast<long>(fam.sets.size() + fam.cores.size());
        j["forbidden_sets"] = forbidden;
        if (with_map && r.success)
            j["embedding"] = r.f.map;
        return j;
    }

    auto to_json(const RainbowResult & r) -> Json
    {
        Json j;
        j["success"] = r.success;
        j["stage"] = r.stage;
        j["message"] = r.message;
        j["gamma_edges"] = r.gamma_edges;
        j["kept_edges"] = r.kept_edges;
        j["min_ratio"] = round6(r.min_ratio);
        j["rainbow"] = r.rainbow;
        Json cert = Json::array();
        for (auto & e : r.certificate)
            cert.push_back({e.a, e.b, e.x, e.y, e.color});
        j["certificate"] = cert;
        j["embed"] = to_json(r.embed, false);
        return j;
    }

    auto to_json(const LemmaCheck & c) -> Json
    {
        Json j;
        j["name"] = c.name;
        j["passed"] = c.passed();
        j["cases"] = c.cases;
        j["failures"] = c.failures;
        j["first_failure"] = c.first_failure;
        j["note"] = c.note;
        return j;
    }

    void write_embedding(std::ostream & out, const Embedding & f)
    {
        for (std::size_t g = 0; g < f.map.size(); ++g)
            if (f.map[g] >= 0)
                out << g << ' ' << f.map[g] << '\n';
    }

    auto read_embedding(std::istream & in, int guest_n) -> Embedding
    {
        Embedding f(guest_n);
        long g, h;
        while (in >> g >> h) {
            if (g < 0 || g >= guest_n || h < 0)
                throw GraphError("embedding: bad line " + std::to_string(g) + " " + std::to_string(h));
            if (f.map[g] >= 0)
                throw GraphError("embedding: guest vertex " + std::to_string(g) + " mapped twice");
            f.map[g] = static_cast<int>(h);
        }
        if (! in.eof())
            throw GraphError("embedding: unreadable input");
        return f;
    }

    auto failure_report(const EmbedResult & r) -> Json
    {
        Json j;
        j["stage"] = r.stage;
        j["message"] = r.message;
        j["precondition_failures"] = r.precondition_failures;
        j["density_relaxed_rounds"] = r.density_relaxed_rounds;
        j["r"] = r.r;
        j["t"] = r.t;
        return j;
    }
}
