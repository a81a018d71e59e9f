#ifndef MERGEINS_EXACT_ANALYSIS_HPP
#define MERGEINS_EXACT_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "binary_insertion.hpp"
#include "rational.hpp"
#include "schedule.hpp"

// Exact average-case cost of the insertion phase, by walking the decision
// tree of all outcomes with states collapsed by their gap counts.

namespace mergeins {

// r pending b's (inserted b_r first); q[i-1] elements sit strictly between
// a_{i-1} and a_i in the main chain that are not a's (q[0] counts those below
// a_1). The chain holds r - 1 + sum(q) elements below a_r.
struct InsertionState {
    std::vector<std::uint32_t> q;

    std::size_t pending() const noexcept { return q.size(); }
    std::uint64_t elements() const noexcept
    {
        return q.empty() ? 0 : q.size() - 1 + std::accumulate(q.begin(), q.end(), std::uint64_t{0});
    }
    friend bool operator<(const InsertionState& a, const InsertionState& b) { return a.q < b.q; }
    friend bool operator==(const InsertionState&, const InsertionState&) = default;
};

// Summed comparisons over all leaves, and the number of leaves. All leaves of
// the tree are equally likely.
struct PathCount {
    BigInt path_length{0};
    BigInt leaves{1};

    Rational average() const { return make_rational(path_length, leaves); }
};

class ExactAnalyzer {
public:
    explicit ExactAnalyzer(Strategy strategy = Strategy::Left, bool memoize = true)
        : strategy_(strategy), memoize_(memoize)
    {
    }

    Strategy strategy() const noexcept { return strategy_; }
    std::size_t memo_size() const noexcept { return memo_.size(); }

    PathCount cost_insert(const InsertionState& state)
    {
        const std::size_t r = state.pending();
        if (r == 0)
            return {};
        if (memoize_) {
            if (auto it = memo_.find(state); it != memo_.end())
                return it->second;
        }
        const auto& prefix = depth_prefix(state.elements());
        PathCount out{0, 0};
        InsertionState child;
        std::uint64_t gap = 0;
        for (std::size_t i = 1; i <= r; ++i) {
            // b_r lands in one of the q_i + 1 gaps of region i.
            child.q.assign(state.q.begin(), state.q.end() - 1);
            if (i < r)
                ++child.q[i - 1];
            const PathCount sub = cost_insert(child);
            const std::uint64_t width = state.q[i - 1] + 1;
            const std::uint64_t depth_sum = prefix[gap + width] - prefix[gap];
            out.path_length += sub.path_length * width + sub.leaves * depth_sum;
            out.leaves += sub.leaves * width;
            gap += width;
        }
        if (memoize_)
            memo_.emplace(state, out);
        return out;
    }

    // Average cost of inserting b_{s+1..e} (top-down) when 2s elements sit
    // below a_{s+1}. cost(s, s) = 0.
    Rational cost(std::uint64_t s, std::uint64_t e)
    {
        if (s < 1 || e < s)
            throw std::domain_error("cost: need 1 <= s <= e, got s=" + std::to_string(s) +
                                    " e=" + std::to_string(e));
        if (e == s)
            return Rational(0);
        InsertionState state;
        state.q.assign(e - s, 0);
        state.q[0] = static_cast<std::uint32_t>(2 * s);
        return cost_insert(state).average();
    }

    // Average comparisons of the whole insertion phase for n b's.
    Rational G(std::uint64_t n)
    {
        if (n < 1)
            throw std::domain_error("G: n must be >= 1");
        Rational total(0);
        int k = 2;
        for (; jacobsthal_bound(k) < n; ++k)
            total += cost(jacobsthal_bound(k - 1), jacobsthal_bound(k));
        total += cost(jacobsthal_bound(k - 1), n);
        return total;
    }

    // Average comparisons of MergeInsertion on n distinct elements.
    Rational F(std::uint64_t n)
    {
        if (n < 1)
            throw std::domain_error("F: n must be >= 1");
        if (n == 1)
            return Rational(0);
        if (auto it = f_memo_.find(n); it != f_memo_.end())
            return it->second;
        Rational v = Rational(static_cast<unsigned long>(n / 2)) + F(n / 2) + G((n + 1) / 2);
        f_memo_.emplace(n, v);
        return v;
    }

private:
    const std::vector<std::uint64_t>& depth_prefix(std::uint64_t m)
    {
        if (prefix_.size() <= m)
            prefix_.resize(m + 1);
        auto& p = prefix_[m];
        if (p.empty()) {
            const auto depths = decision_depths(m, strategy_);
            p.assign(depths.size() + 1, 0);
            for (std::size_t g = 0; g < depths.size(); ++g)
                p[g + 1] = p[g] + static_cast<std::uint64_t>(depths[g]);
        }
        return p;
    }

    Strategy strategy_;
    bool memoize_;
    std::map<InsertionState, PathCount> memo_;
    std::map<std::uint64_t, Rational> f_memo_;
    std::vector<std::vector<std::uint64_t>> prefix_;
};

inline PathCount cost_insert(const InsertionState& state, Strategy strategy = Strategy::Left)
{
    return ExactAnalyzer(strategy).cost_insert(state);
}

inline Rational cost(std::uint64_t s, std::uint64_t e, Strategy strategy = Strategy::Left)
{
    return ExactAnalyzer(strategy).cost(s, e);
}

inline Rational exact_G(std::uint64_t n, Strategy strategy = Strategy::Left)
{
    return ExactAnalyzer(strategy).G(n);
}

inline Rational exact_F(std::uint64_t n, Strategy strategy = Strategy::Left)
{
    return ExactAnalyzer(strategy).F(n);
}

} // namespace mergeins

#endif // MERGEINS_EXACT_ANALYSIS_HPP
