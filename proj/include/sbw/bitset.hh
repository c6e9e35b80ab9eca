#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sbw
{
    // Fixed-size dynamic bitset. All binary operations require equal sizes.
    class Bitset
    {
    public:
        static constexpr std::size_t npos = static_cast<std::size_t>(-1);

        Bitset() = default;
        explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

        auto size() const -> std::size_t { return n_; }
        auto words() const -> const std::vector<std::uint64_t> & { return w_; }

        auto test(std::size_t i) const -> bool { return (w_[i >> 6] >> (i & 63)) & 1u; }
        void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
        void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
        void assign(std::size_t i, bool b) { b ? set(i) : reset(i); }

        void clear()
        {
            for (auto & x : w_)
                x = 0;
        }

        void set_all()
        {
            for (auto & x : w_)
                x = ~std::uint64_t{0};
            trim();
        }

        auto count() const -> std::size_t
        {
            std::size_t c = 0;
            for (auto x : w_)
                c += std::popcount(x);
            return c;
        }

        auto any() const -> bool
        {
            for (auto x : w_)
                if (x)
                    return true;
            return false;
        }

        auto none() const -> bool { return ! any(); }

        auto intersect_count(const Bitset & o) const -> std::size_t
        {
            std::size_t c = 0;
            for (std::size_t k = 0; k < w_.size(); ++k)
                c += std::popcount(w_[k] & o.w_[k]);
            return c;
        }

        auto intersects(const Bitset & o) const -> bool
        {
            for (std::size_t k = 0; k < w_.size(); ++k)
                if (w_[k] & o.w_[k])
                    return true;
            return false;
        }

        auto is_subset_of(const Bitset & o) const -> bool
        {
            for (std::size_t k = 0; k < w_.size(); ++k)
                if (w_[k] & ~o.w_[k])
                    return false;
            return true;
        }

        auto operator&=(const Bitset & o) -> Bitset &
        {
            for (std::size_t k = 0; k < w_.size(); ++k)
                w_[k] &= o.w_[k];
            return *this;
        }

        auto operator|=(const Bitset & o) -> Bitset &
        {
            for (std::size_t k = 0; k < w_.size(); ++k)
                w_[k] |= o.w_[k];
            return *this;
        }

        // set difference
        auto operator-=(const Bitset & o) -> Bitset &
        {
            for (std::size_t k = 0; k < w_.size(); ++k)
                w_[k] &= ~o.w_[k];
            return *this;
        }

        friend auto operator&(Bitset a, const Bitset & b) -> Bitset { return a &= b; }
        friend auto operator|(Bitset a, const Bitset & b) -> Bitset { return a |= b; }
        friend auto operator-(Bitset a, const Bitset & b) -> Bitset { return a -= b; }
        friend auto operator==(const Bitset & a, const Bitset & b) -> bool { return a.n_ == b.n_ && a.w_ == b.w_; }

        auto first() const -> std::size_t { return next_from(0); }

        // smallest set index >= i, or npos
        auto next_from(std::size_t i) const -> std::size_t
        {
            if (i >= n_)
                return npos;
            std::size_t k = i >> 6;
            std::uint64_t x = w_[k] & (~std::uint64_t{0} << (i & 63));
            while (true) {
                if (x)
                    return (k << 6) + std::countr_zero(x);
                if (++k == w_.size())
                    return npos;
                x = w_[k];
            }
        }

        template <typename F>
        void for_each(F && f) const
        {
            for (std::size_t k = 0; k < w_.size(); ++k) {
                std::uint64_t x = w_[k];
                while (x) {
                    f(static_cast<int>((k << 6) + std::countr_zero(x)));
                    x &= x - 1;
                }
            }
        }

        auto to_vector() const -> std::vector<int>
        {
            std::vector<int> out;
            out.reserve(count());
            for_each([&](int v) { out.push_back(v); });
            return out;
        }

        static auto from(std::size_t n, const std::vector<int> & members) -> Bitset
        {
            Bitset b(n);
            for (int v : members)
                b.set(static_cast<std::size_t>(v));
            return b;
        }

    private:
        void trim()
        {
            if (n_ & 63)
                w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
        }

        std::size_t n_ = 0;
        std::vector<std::uint64_t> w_;
    };

    using VertexSet = Bitset;
}
