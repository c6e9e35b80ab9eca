#include <sbw/partition_h.hh>

#include <algorithm>
#include <deque>
#include <numeric>

namespace sbw
{
    namespace
    {
        class ClassState
        {
        public:
            ClassState(const Graph & g, int k) :
                col(static_cast<std::size_t>(g.n()), -1), size(static_cast<std::size_t>(k), 0), g_(g), k_(k),
                cnt_(static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(k), 0)
            {
            }

            auto conflicts(int v, int c) const -> int { return cnt_[static_cast<std::size_t>(v) * k_ + c]; }

            void place(int v, int c)
            {
                if (col[v] >= 0) {
                    --size[col[v]];
                    g_.neighbours(v).for_each([&](int w) { --cnt_[static_cast<std::size_t>(w) * k_ + col[v]]; });
                }
                col[v] = c;
                ++size[c];
                g_.neighbours(v).for_each([&](int w) { ++cnt_[static_cast<std::size_t>(w) * k_ + c]; });
            }

            // BFS over classes: X -> Y when some w in X has no neighbour in Y.
            // Returns the moves (vertex, destination) that shift one vertex from a source
            // class into the first class satisfying target, or empty if unreachable.
            template <typename IsTarget>
            auto find_path(const std::vector<int> & sources, IsTarget && is_target) -> std::vector<std::pair<int, int>>
            {
                std::vector<int> parent_class(static_cast<std::size_t>(k_), -2), parent_vertex(static_cast<std::size_t>(k_), -1);
                std::vector<std::vector<int>> members(static_cast<std::size_t>(k_));
                for (int v = 0; v < g_.n(); ++v)
                    if (col[v] >= 0)
                        members[col[v]].push_back(v);
                std::deque<int> q;
                for (int s : sources) {
                    parent_class[s] = -1;
                    q.push_back(s);
                }
                int found = -1;
                while (! q.empty() && found < 0) {
                    int x = q.front();
                    q.pop_front();
                    for (int w : members[x]) {
                        for (int y = 0; y < k_ && found < 0; ++y) {
                            if (parent_class[y] != -2 || conflicts(w, y) != 0)
                                continue;
                            parent_class[y] = x;
                            parent_vertex[y] = w;
                            if (is_target(y))
                                found = y;
                            else
                                q.push_back(y);
                        }
                        if (found >= 0)
                            break;
                    }
                }
                std::vector<std::pair<int, int>> moves;
                for (int y = found; y >= 0 && parent_class[y] >= 0; y = parent_class[y])
                    moves.emplace_back(parent_vertex[y], y);
                return moves;
            }

            std::vector<int> col;
            std::vector<int> size;

        private:
            const Graph & g_;
            int k_;
            std::vector<int> cnt_;
        };
    }

    auto is_equitable(const Graph & g, const std::vector<int> & colouring, int colours) -> bool
    {
        if (static_cast<int>(colouring.size()) != g.n())
            return false;
        std::vector<int> size(static_cast<std::size_t>(colours), 0);
        for (int c : colouring) {
            if (c < 0 || c >= colours)
                return false;
            ++size[c];
        }
        for (auto [u, v] : g.edges())
            if (colouring[u] == colouring[v])
                return false;
        auto [lo, hi] = std::minmax_element(size.begin(), size.end());
        return *hi - *lo <= 1;
    }

    auto equitable_coloring(const Graph & g, int colours, std::uint64_t seed) -> std::vector<int>
    {
        int n = g.n(), k = colours;
        if (k < 1)
            throw GraphError("equitable colouring needs at least one colour");
        if (k < g.max_degree() + 1)
            throw GraphError("equitable colouring needs colours >= max degree + 1");
        int cap = (n + k - 1) / k, lo = n / k;

        for (int attempt = 0; attempt < 50; ++attempt) {
            Rng rng(derive_seed(seed, "equitable", static_cast<std::uint64_t>(attempt)));
            ClassState st(g, k);
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            shuffle_in_place(order, rng);

            bool stuck = false;
            for (int v : order) {
                int best = -1;
                for (int c = 0; c < k; ++c)
                    if (st.conflicts(v, c) == 0 && st.size[c] < cap && (best < 0 || st.size[c] < st.size[best]))
                        best = c;
                if (best >= 0) {
                    st.place(v, best);
                    continue;
                }
                std::vector<int> open;
                for (int c = 0; c < k; ++c)
                    if (st.conflicts(v, c) == 0)
                        open.push_back(c);
                auto moves = st.find_path(open, [&](int y) { return st.size[y] < cap; });
                if (moves.empty()) {
                    stuck = true;
                    break;
                }
                int source = st.col[moves.back().first];
                for (auto [w, dest] : moves)
                    st.place(w, dest);
                st.place(v, source);
            }
            if (stuck)
                continue;

            // all classes are at most cap; lift the poor ones to floor(n/k)
            for (int guard = 0; guard < n + k && ! stuck; ++guard) {
                std::vector<int> rich;
                bool any_poor = false;
                for (int c = 0; c < k; ++c) {
                    if (st.size[c] > lo)
                        rich.push_back(c);
                    if (st.size[c] < lo)
                        any_poor = true;
                }
                if (! any_poor)
                    break;
                auto moves = st.find_path(rich, [&](int y) { return st.size[y] < lo; });
                if (moves.empty())
                    stuck = true;
                for (auto [w, dest] : moves)
                    st.place(w, dest);
            }
            if (! stuck && is_equitable(g, st.col, k))
                return st.col;
        }
        throw GraphError("equitable colouring: retries exhausted");
    }
}
