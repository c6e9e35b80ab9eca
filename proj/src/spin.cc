#include <sbw/spin.hh>

#include <algorithm>
#include <ostream>

namespace sbw
{
    auto ladder(int r) -> Graph
    {
        if (r < 1)
            throw GraphError("ladder needs r >= 1");
        Graph g(2 * r);
        for (int i = 0; i < r; ++i)
            for (int j = std::max(0, i - 1); j <= std::min(r - 1, i + 1); ++j)
                g.add_edge(i, r + j);
        return g;
    }

    auto to_string(SpinRole r) -> std::string
    {
        switch (r) {
            case SpinRole::u: return "u";
            case SpinRole::v: return "v";
            case SpinRole::c: return "c";
            case SpinRole::c_prime: return "c'";
            case SpinRole::b: return "b";
            case SpinRole::b_prime: return "b'";
        }
        return "?";
    }

    SpinGraph::SpinGraph(int r, int t, bool allow_odd_t) : r_(r), t_(t)
    {
        if (r < 1)
            throw GraphError("spin graph needs r >= 1");
        if (t < 2 || (t % 2 != 0 && ! allow_odd_t))
            throw GraphError("spin graph needs t >= 2 even");
    }

    auto SpinGraph::at(SpinRole role, int i, int j) const -> int
    {
        switch (role) {
            case SpinRole::u: return u(i);
            case SpinRole::v: return v(i);
            case SpinRole::c: return c(i, j);
            case SpinRole::c_prime: return cp(i, j);
            case SpinRole::b: return b(i, j);
            case SpinRole::b_prime: return bp(i, j);
        }
        return -1;
    }

    auto SpinGraph::role(int x) const -> SpinVertex
    {
        if (x < 0 || x >= size())
            throw GraphError("spin vertex out of range");
        if (x < r_)
            return {SpinRole::u, x, -1};
        if (x < 2 * r_)
            return {SpinRole::v, x - r_, -1};
        int y = x - 2 * r_;
        int block = y / (2 * r_ * t_);
        int rest = y % (2 * r_ * t_);
        static const SpinRole order[] = {SpinRole::c, SpinRole::c_prime, SpinRole::b, SpinRole::b_prime};
        return {order[block], rest / (2 * t_), rest % (2 * t_)};
    }

    auto SpinGraph::directed_rule(const SpinVertex & a, const SpinVertex & b) const -> bool
    {
        using R = SpinRole;
        bool same_half = b.j >= 0 && a.j >= 0 && is_low(a.j) == is_low(b.j);
        switch (a.role) {
            case R::u:
                return b.role == R::v && a.i == b.i;
            case R::v:
                return (b.role == R::b || b.role == R::c) && a.i == b.i;
            case R::b:
                return b.role == R::b_prime && a.i == b.i && same_half;
            case R::b_prime:
                return b.role == R::b_prime && a.i == b.i && ! same_half;
            case R::c:
                if (b.role != R::c_prime)
                    return false;
                if (a.i == b.i)
                    return same_half;
                // connectors: c_{i-1,high} c'_{i,low} and c'_{i-1,high} c_{i,low}
                if (b.i == a.i + 1)
                    return ! is_low(a.j) && is_low(b.j);
                if (a.i == b.i + 1)
                    return is_low(a.j) && ! is_low(b.j);
                return false;
            case R::c_prime:
                return false;
        }
        return false;
    }

    auto SpinGraph::has_edge(int x, int y) const -> bool
    {
        if (x == y)
            return false;
        auto a = role(x), b = role(y);
        return directed_rule(a, b) || directed_rule(b, a);
    }

    auto SpinGraph::edges() const -> std::vector<std::pair<int, int>>
    {
        std::vector<std::pair<int, int>> out;
        int tt = 2 * t_;
        auto add = [&](int a, int b) { out.emplace_back(std::min(a, b), std::max(a, b)); };
        for (int i = 0; i < r_; ++i) {
            add(u(i), v(i));
            for (int j = 0; j < tt; ++j) {
                add(b(i, j), v(i));
                add(c(i, j), v(i));
                for (int k = 0; k < tt; ++k)
                    if (is_low(j) == is_low(k)) {
                        add(b(i, j), bp(i, k));
                        add(c(i, j), cp(i, k));
                    }
            }
            for (int k = 0; k < t_; ++k)
                for (int l = t_; l < tt; ++l)
                    add(bp(i, k), bp(i, l));
        }
        for (int i = 1; i < r_; ++i)
            for (int l = t_; l < tt; ++l)
                for (int k = 0; k < t_; ++k) {
                    add(c(i - 1, l), cp(i, k));
                    add(cp(i - 1, l), c(i, k));
                }
        std::sort(out.begin(), out.end());
        return out;
    }

    auto SpinGraph::edge_count() const -> long
    {
        long tl = t_;
        return r_ * (1 + 4 * tl + 4 * tl * tl + tl * tl) + (r_ - 1) * 2 * tl * tl;
    }

    auto SpinGraph::materialise() const -> Graph
    {
        if (size() > 20000)
            throw GraphError("spin graph too large to materialise");
        Graph g(size());
        for (auto [a, b] : edges())
            g.add_edge(a, b);
        return g;
    }

    auto spin_graph(int r, int t) -> SpinGraph
    {
        return SpinGraph(r, t);
    }

    void write_spin_graph(std::ostream & out, const SpinGraph & s)
    {
        auto es = s.edges();
        out << s.size() << ' ' << es.size() << '\n';
        for (auto [a, b] : es)
            out << a << ' ' << b << '\n';
        for (int x = 0; x < s.size(); ++x) {
            auto rv = s.role(x);
            out << to_string(rv.role) << ' ' << rv.i << ' ' << rv.j << '\n';
        }
    }

    namespace
    {
        template <typename Target>
        auto violation(const Graph & guest, const Target & target, int target_size, const Homomorphism & h) -> std::pair<int, int>
        {
            if (static_cast<int>(h.size()) != guest.n())
                throw GraphError("homomorphism is not total on the guest");
            for (int x : h)
                if (x < 0 || x >= target_size)
                    throw GraphError("homomorphism image out of range");
            for (auto [a, b] : guest.edges())
                if (h[a] == h[b] || ! target.has_edge(h[a], h[b]))
                    return {a, b};
            return {-1, -1};
        }
    }

    auto homomorphism_violation(const Graph & guest, const Graph & target, const Homomorphism & h) -> std::pair<int, int>
    {
        return violation(guest, target, target.n(), h);
    }

    auto homomorphism_violation(const Graph & guest, const SpinGraph & target, const Homomorphism & h) -> std::pair<int, int>
    {
        return violation(guest, target, target.size(), h);
    }

    auto is_homomorphism(const Graph & guest, const Graph & target, const Homomorphism & h) -> bool
    {
        return homomorphism_violation(guest, target, h).first == -1;
    }

    auto is_homomorphism(const Graph & guest, const SpinGraph & target, const Homomorphism & h) -> bool
    {
        return homomorphism_violation(guest, target, h).first == -1;
    }
}
