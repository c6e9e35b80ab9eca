#pragma once

// Naive reimplementations used as oracles. Deliberately slow: plain loops over
// vectors, no bitset kernels, no shared helpers from the library.

#include <sbw/density.hh>
#include <sbw/embed.hh>
#include <sbw/graph.hh>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle
{
    using sbw::Graph;

    inline auto members(const sbw::VertexSet & s) -> std::vector<int>
    {
        std::vector<int> out;
        for (std::size_t v = 0; v < s.size(); ++v)
            if (s.test(v))
                out.push_back(static_cast<int>(v));
        return out;
    }

    inline auto edges_between(const Graph & g, const std::vector<int> & u, const std::vector<int> & w) -> long
    {
        long e = 0;
        for (int a : u)
            for (int b : w)
                if (g.has_edge(a, b))
                    ++e;
        return e;
    }

    inline auto p_density(const Graph & g, const std::vector<int> & u, const std::vector<int> & w, double p) -> double
    {
        return static_cast<double>(edges_between(g, u, w)) / (p * static_cast<double>(u.size()) * static_cast<double>(w.size()));
    }

    inline auto count_stars(const Graph & g, const std::vector<int> & x, const std::vector<std::vector<int>> & fam) -> long
    {
        long c = 0;
        for (int v : x)
            for (auto & f : fam) {
                bool all = true;
                for (int y : f)
                    all = all && g.has_edge(v, y);
                c += all ? 1 : 0;
            }
        return c;
    }

    inline auto joint_size(const Graph & g, const std::vector<int> & b, const std::vector<int> & within) -> std::vector<int>
    {
        std::vector<int> out;
        for (int z : within) {
            bool all = true;
            for (int y : b)
                all = all && g.has_edge(y, z);
            if (all)
                out.push_back(z);
        }
        return out;
    }

    // every k-subset of items, by recursion on include/exclude
    inline void subsets(const std::vector<int> & items, int k, std::vector<std::vector<int>> & out)
    {
        std::vector<int> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (static_cast<int>(cur.size()) == k) {
                out.push_back(cur);
                return;
            }
            if (i == items.size())
                return;
            cur.push_back(items[i]);
            rec(i + 1);
            cur.pop_back();
            rec(i + 1);
        };
        rec(0);
    }

    inline auto threshold(double eps, std::size_t n) -> int
    {
        int k = 0;
        while (static_cast<double>(k) < eps * static_cast<double>(n) - 1e-9)
            ++k;
        return k;
    }

    inline auto bad_lsets(const Graph & g, const std::vector<int> & y, const std::vector<int> & z, int ell,
        const sbw::DensityParams & prm) -> std::set<std::vector<int>>
    {
        double thr = std::pow((prm.d - prm.eps) * prm.p, ell) * static_cast<double>(z.size());
        std::vector<std::vector<int>> all;
        subsets(y, ell, all);
        std::set<std::vector<int>> out;
        for (auto & b : all)
            if (static_cast<double>(joint_size(g, b, z).size()) < thr)
                out.insert(b);
        return out;
    }

    // brute force over all qualifying subset pairs by bitmask
    inline auto dense(const Graph & g, const std::vector<int> & u, const std::vector<int> & w, const sbw::DensityParams & prm) -> bool
    {
        int tu = std::max(1, threshold(prm.eps, u.size())), tw = std::max(1, threshold(prm.eps, w.size()));
        for (unsigned mu = 1; mu < (1u << u.size()); ++mu) {
            if (__builtin_popcount(mu) < tu)
                continue;
            for (unsigned mw = 1; mw < (1u << w.size()); ++mw) {
                if (__builtin_popcount(mw) < tw)
                    continue;
                long e = 0;
                for (std::size_t a = 0; a < u.size(); ++a)
                    if (mu >> a & 1)
                        for (std::size_t b = 0; b < w.size(); ++b)
                            if ((mw >> b & 1) && g.has_edge(u[a], w[b]))
                                ++e;
                double den = static_cast<double>(e) / (prm.p * __builtin_popcount(mu) * __builtin_popcount(mw));
                if (den < prm.d - prm.eps)
                    return false;
            }
        }
        return true;
    }

    // B is bad iff some nonempty B' ⊆ B has a small joint neighbourhood in Y or a non-dense pair (N_Y(B'), Z)
    inline auto Bad_lsets(const Graph & g, const std::vector<int> & x, const std::vector<int> & y, const std::vector<int> & z,
        int ell, const sbw::DensityParams & prm) -> std::set<std::vector<int>>
    {
        auto sub_bad = [&](const std::vector<int> & bp) {
            auto nb = joint_size(g, bp, y);
            double thr = std::pow((prm.d - prm.eps) * prm.p, static_cast<int>(bp.size())) * static_cast<double>(y.size());
            if (static_cast<double>(nb.size()) < thr)
                return true;
            if (nb.empty() || z.empty())
                return true;
            return ! dense(g, nb, z, prm);
        };
        std::vector<std::vector<int>> all;
        subsets(x, ell, all);
        std::set<std::vector<int>> out;
        for (auto & b : all) {
            bool bad = false;
            for (int l = 1; l <= ell && ! bad; ++l) {
                std::vector<std::vector<int>> subs;
                subsets(b, l, subs);
                for (auto & s : subs)
                    bad = bad || sub_bad(s);
            }
            if (bad)
                out.insert(b);
        }
        return out;
    }

    // candidate rows: u is allowed for ũ iff u is adjacent to the image of every neighbour of ũ
    inline auto candidate_rows(const Graph & h, const std::vector<int> & ut, const Graph & g, const std::vector<int> & u,
        const sbw::Embedding & f) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> rows;
        for (int a : ut) {
            std::vector<int> row;
            for (std::size_t k = 0; k < u.size(); ++k) {
                bool ok = true;
                for (int w = 0; w < h.n(); ++w)
                    if (h.has_edge(a, w))
                        ok = ok && g.has_edge(u[k], f.map[w]);
                if (ok)
                    row.push_back(static_cast<int>(k));
            }
            rows.push_back(row);
        }
        return rows;
    }

    // downward recursion with memo: an i-set is corrupted when more than x corrupted (i+1)-supersets contain it
    inline auto corrupted(const std::vector<int> & ground, const std::vector<std::vector<int>> & fam, int delta, double x) -> std::set<int>
    {
        std::set<std::vector<int>> top;
        for (auto s : fam) {
            std::sort(s.begin(), s.end());
            top.insert(s);
        }
        std::map<std::vector<int>, bool> memo;
        std::function<bool(const std::vector<int> &)> is_corrupt = [&](const std::vector<int> & s) -> bool {
            if (static_cast<int>(s.size()) == delta)
                return top.count(s) > 0;
            auto it = memo.find(s);
            if (it != memo.end())
                return it->second;
            long c = 0;
            for (int v : ground) {
                if (std::find(s.begin(), s.end(), v) != s.end())
                    continue;
                auto t = s;
                t.push_back(v);
                std::sort(t.begin(), t.end());
                c += is_corrupt(t) ? 1 : 0;
            }
            return memo[s] = static_cast<double>(c) > x;
        };
        std::set<int> out;
        for (int v : ground)
            if (is_corrupt({v}))
                out.insert(v);
        return out;
    }

    // maximum bipartite matching by simple augmenting paths
    inline auto max_matching(const std::vector<std::vector<int>> & rows, int n_right) -> int
    {
        std::vector<int> owner(static_cast<std::size_t>(n_right), -1);
        int size = 0;
        for (std::size_t l = 0; l < rows.size(); ++l) {
            std::vector<char> seen(static_cast<std::size_t>(n_right), 0);
            std::function<bool(int)> aug = [&](int a) -> bool {
                for (int r : rows[a]) {
                    if (seen[r])
                        continue;
                    seen[r] = 1;
                    if (owner[r] < 0 || aug(owner[r])) {
                        owner[r] = a;
                        return true;
                    }
                }
                return false;
            };
            size += aug(static_cast<int>(l)) ? 1 : 0;
        }
        return size;
    }
}
