#ifndef MERGEINS_BINARY_INSERTION_HPP
#define MERGEINS_BINARY_INSERTION_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mergeins {

// Pivot rule for binary insertion. Every variant yields a decision tree whose
// leaves sit on at most two consecutive layers; they differ in which gaps get
// the shorter paths.
enum class Strategy { CenterLeft, CenterRight, Left, Right };

inline constexpr std::array<Strategy, 4> all_strategies = {
    Strategy::CenterLeft, Strategy::CenterRight, Strategy::Left, Strategy::Right};

inline std::string_view to_string(Strategy s) noexcept
{
    switch (s) {
    case Strategy::CenterLeft: return "center-left";
    case Strategy::CenterRight: return "center-right";
    case Strategy::Left: return "left";
    case Strategy::Right: return "right";
    }
    return "?";
}

inline Strategy parse_strategy(std::string_view name)
{
    for (Strategy s : all_strategies)
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (expected center-left, center-right, left or right)");
}

// Counts element-vs-element comparisons. Monotone: it only ever goes up.
class Tally {
public:
    std::uint64_t count() const noexcept { return count_; }
    void add(std::uint64_t n = 1) noexcept { count_ += n; }

private:
    std::uint64_t count_ = 0;
};

// Wraps a strict-weak-order predicate so that every call is charged to a
// tally exactly once.
template <class Less>
class CountingLess {
public:
    CountingLess(Less less, Tally& tally) : less_(std::move(less)), tally_(&tally) {}

    template <class A, class B>
    bool operator()(const A& a, const B& b)
    {
        tally_->add();
        return less_(a, b);
    }

    Tally& tally() const noexcept { return *tally_; }

private:
    Less less_;
    Tally* tally_;
};

// 1-based index of the element compared against when `m` candidates remain.
inline std::size_t pivot(std::size_t m, Strategy s) noexcept
{
    if (m <= 1)
        return m;
    const std::size_t pow_k = std::bit_floor(m); // 2^k with k = floor(log2 m)
    switch (s) {
    case Strategy::CenterLeft: return (m + 1) / 2;
    case Strategy::CenterRight: return (m + 2) / 2;
    case Strategy::Left: return std::max(m - pow_k + 1, pow_k / 2);
    case Strategy::Right: return std::min(pow_k, m - pow_k / 2 + 1);
    }
    return (m + 1) / 2;
}

// Binary-inserts `item` into the sorted window [lo, hi) of `chain` and returns
// the position it belongs at, in [lo, hi]. `less(item, element)` is the only
// comparison made and is charged to `tally`.
template <class Seq, class Item, class Less>
std::size_t binary_insert(const Item& item, const Seq& chain, std::size_t lo, std::size_t hi,
                          Strategy strategy, Tally& tally, Less less)
{
    if (lo > hi)
        throw std::out_of_range("binary_insert: lo " + std::to_string(lo) + " > hi " +
                                std::to_string(hi));
    while (lo < hi) {
        const std::size_t c = lo + pivot(hi - lo, strategy) - 1;
        tally.add();
        if (less(item, chain[c]))
            hi = c;
        else
            lo = c + 1;
    }
    return lo;
}

// Number of comparisons binary insertion spends for each of the m+1 gaps
// when inserting into m elements.
inline std::vector<int> decision_depths(std::size_t m, Strategy strategy)
{
    std::vector<int> depths(m + 1, 0);
    // Explicit stack of (first gap, candidate count, depth so far).
    struct Frame {
        std::size_t first;
        std::size_t count;
        int depth;
    };
    std::vector<Frame> stack{{0, m, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.count == 0) {
            depths[f.first] = f.depth;
            continue;
        }
        const std::size_t c = pivot(f.count, strategy);
        stack.push_back({f.first, c - 1, f.depth + 1});
        stack.push_back({f.first + c, f.count - c, f.depth + 1});
    }
    return depths;
}

// ceil(log2(x)) for x >= 1.
inline int ceil_log2(std::uint64_t x) noexcept
{
    return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

} // namespace mergeins

#endif // MERGEINS_BINARY_INSERTION_HPP
