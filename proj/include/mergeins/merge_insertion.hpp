#ifndef MERGEINS_MERGE_INSERTION_HPP
#define MERGEINS_MERGE_INSERTION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "binary_insertion.hpp"
#include "pos_sequence.hpp"
#include "schedule.hpp"

namespace mergeins {

// Raised when an input breaks the distinct-keys precondition (or a prefix
// that should be sorted is not).
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <class T>
struct SortOutcome {
    std::vector<T> sorted;
    std::uint64_t comparisons = 0;
};

// One binary insertion performed during the insertion phase.
struct InsertionEvent {
    int depth = 0;               // recursion level, 0 for the outermost call
    std::size_t n = 0;           // size of the subproblem being sorted
    int batch = 0;               // k
    std::size_t b_index = 0;     // i of b_i, 1-based
    std::size_t chain_size = 0;  // number of elements b_i was inserted into
    std::uint64_t comparisons = 0;
};

using InsertionObserver = std::function<void(const InsertionEvent&)>;

// u_k = floor(4/3 * 2^k): sizes at which MergeInsertion is near-optimal.
inline std::uint64_t optimal_point(int k)
{
    if (k < 0 || k > 61)
        throw std::out_of_range("optimal_point: k out of range");
    return (std::uint64_t{1} << (k + 2)) / 3;
}

// Largest u_k <= n (n >= 1).
inline std::uint64_t largest_optimal_point(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("largest_optimal_point: n must be positive");
    std::uint64_t best = 1;
    for (int k = 0; k <= 61 && optimal_point(k) <= n; ++k)
        best = optimal_point(k);
    return best;
}

namespace detail {

// 1-based Fenwick tree over bucket counts.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i)
    {
        for (; i < tree_.size(); i += i & (~i + 1))
            ++tree_[i];
    }

    std::size_t prefix(std::size_t i) const
    {
        std::size_t s = 0;
        for (; i > 0; i -= i & (~i + 1))
            s += tree_[i];
        return s;
    }

private:
    std::vector<std::size_t> tree_;
};

// Sorts element ids by MergeInsertion. `less` is the raw order on ids;
// every call made through it is charged to the tally.
template <class LessIds>
class MergeInsertionEngine {
public:
    MergeInsertionEngine(LessIds& less, Tally& tally, Strategy strategy, const Schedule& schedule,
                         const InsertionObserver* observer)
        : less_(less), tally_(tally), strategy_(strategy), schedule_(schedule), observer_(observer)
    {
    }

    // Returns the permutation applied: order[j] is the index into `ids` of
    // the j-th smallest element.
    std::vector<std::uint32_t> sort(const std::vector<std::uint32_t>& ids, int depth = 0)
    {
        const std::size_t n = ids.size();
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        if (n <= 1)
            return order;

        // Pairwise comparison: d_i against d_{i + n/2}.
        const std::size_t half = n / 2;
        std::vector<std::uint32_t> a_local(half), b_local(half);
        for (std::size_t i = 0; i < half; ++i) {
            const auto x = static_cast<std::uint32_t>(i);
            const auto y = static_cast<std::uint32_t>(i + half);
            tally_.add();
            if (less_(ids[x], ids[y])) {
                a_local[i] = y;
                b_local[i] = x;
            } else {
                a_local[i] = x;
                b_local[i] = y;
            }
        }

        // Recursion, then rename the smaller half with the permutation the
        // recursive call applied to the larger half.
        std::vector<std::uint32_t> a_ids(half);
        for (std::size_t i = 0; i < half; ++i)
            a_ids[i] = ids[a_local[i]];
        const std::vector<std::uint32_t> sub = sort(a_ids, depth + 1);

        std::vector<std::uint32_t> sa(half), sb(half);
        for (std::size_t j = 0; j < half; ++j) {
            sa[j] = a_local[sub[j]];
            sb[j] = b_local[sub[j]];
        }
        if (n % 2 == 1)
            sb.push_back(static_cast<std::uint32_t>(n - 1));

        PosSequence<std::uint32_t> chain;
        chain.reserve(n);
        chain.push_back(sb[0]);
        for (std::uint32_t a : sa)
            chain.push_back(a);

        auto cmp = [&](std::uint32_t x, std::uint32_t y) { return less_(ids[x], ids[y]); };

        const std::size_t m_b = sb.size();
        for (int k = 2;; ++k) {
            const std::size_t lo = schedule_.boundary(k - 1);
            if (lo >= m_b)
                break;
            const std::size_t hi_b = std::min<std::size_t>(schedule_.boundary(k), m_b);
            // Bucket r counts batch elements that landed between a_{lo+r-1}
            // and a_{lo+r}; a_{lo+r} then sits at 2*lo + r - 1 + prefix(r).
            Fenwick landed(hi_b - lo);
            const std::size_t partnered = std::min(hi_b, half) - lo;
            auto pos_of_a = [&](std::size_t r) { return 2 * lo + r - 1 + landed.prefix(r); };

            for (std::size_t i = hi_b; i > lo; --i) {
                const std::size_t r = i - lo;
                const std::size_t limit = i <= half ? pos_of_a(r) : chain.size();
                const std::uint64_t before = tally_.count();
                const std::size_t p = binary_insert(sb[i - 1], chain, 0, limit, strategy_, tally_, cmp);

                if (observer_ && *observer_)
                    (*observer_)(InsertionEvent{depth, n, k, i, limit, tally_.count() - before});

                if (r > 1) {
                    // First a in this batch at or after p (positions before insertion).
                    std::size_t lo_r = 1, hi_r = std::min(r, partnered) + 1;
                    while (lo_r < hi_r) {
                        const std::size_t mid = (lo_r + hi_r) / 2;
                        if (pos_of_a(mid) >= p)
                            hi_r = mid;
                        else
                            lo_r = mid + 1;
                    }
                    if (lo_r <= std::min(r, partnered))
                        landed.add(lo_r);
                }
                chain.insert(p, sb[i - 1]);
            }
        }
        return chain.to_vector();
    }

private:
    LessIds& less_;
    Tally& tally_;
    Strategy strategy_;
    const Schedule& schedule_;
    const InsertionObserver* observer_;
};

// Expected-cost model for binary insertion of uniformly placed elements.
// Every strategy produces a two-layer tree, so the total path length over
// the m+1 gaps is strategy independent; the position-weighted one is not.
class InsertionCostModel {
public:
    explicit InsertionCostModel(Strategy strategy) : strategy_(strategy) {}

    // Sum of decision depths over all m+1 gaps.
    static long double path_length(std::uint64_t m)
    {
        const int k = ceil_log2(m + 1);
        return static_cast<long double>((m + 1) * static_cast<std::uint64_t>(k)) -
               static_cast<long double>((std::uint64_t{1} << k) - (m + 1));
    }

    // Sum over gaps g of (g + 1) * depth(g).
    long double weighted_path_length(std::uint64_t m)
    {
        if (m == 0)
            return 0.0L;
        if (auto it = weighted_.find(m); it != weighted_.end())
            return it->second;
        const std::uint64_t c = pivot(m, strategy_);
        const long double gaps = static_cast<long double>(m + 1);
        const long double value = gaps * (gaps + 1) / 2 + weighted_path_length(c - 1) +
                                  static_cast<long double>(c) * path_length(m - c) +
                                  weighted_path_length(m - c);
        weighted_.emplace(m, value);
        return value;
    }

private:
    Strategy strategy_;
    std::unordered_map<std::uint64_t, long double> weighted_;
};

// Step sizes (1 or 2) for inserting `count` elements into a sorted chain of
// `start` elements. Chosen by dynamic programming over the chain length so
// that the expected number of comparisons on random input is minimal; ties
// go to single insertion.
inline std::vector<std::uint8_t> one_two_plan(std::size_t start, std::size_t count, Strategy strategy)
{
    std::vector<std::uint8_t> plan;
    if (count == 0)
        return plan;
    InsertionCostModel model(strategy);
    const std::size_t end = start + count;

    // sum_path[g] = sum_{h <= g} path_length(h), for the smaller element of a pair.
    std::vector<long double> sum_path(end + 1);
    long double acc = 0.0L;
    for (std::size_t g = 0; g <= end; ++g) {
        acc += InsertionCostModel::path_length(g);
        sum_path[g] = acc;
    }
    auto single = [&](std::size_t n) {
        return InsertionCostModel::path_length(n) / static_cast<long double>(n + 1);
    };
    // Pair into n: larger lands in gap g with weight g+1, smaller is uniform
    // over the g+1 gaps below it.
    auto pair = [&](std::size_t n) {
        const long double outcomes = static_cast<long double>(n + 2) * static_cast<long double>(n + 1) / 2;
        return 1.0L + (model.weighted_path_length(n) + sum_path[n]) / outcomes;
    };

    std::vector<long double> best(count + 1, 0.0L);
    std::vector<std::uint8_t> step(count + 1, 1);
    for (std::size_t left = 1; left <= count; ++left) {
        const std::size_t n = end - left;
        best[left] = single(n) + best[left - 1];
        if (left >= 2) {
            const long double two = pair(n) + best[left - 2];
            if (two < best[left]) {
                best[left] = two;
                step[left] = 2;
            }
        }
    }
    for (std::size_t left = count; left > 0; left -= step[left])
        plan.push_back(step[left]);
    return plan;
}

// (1,2)-Insertion of `rest` into `chain`, following `one_two_plan`. A pair
// step compares the two elements, binary-inserts the larger into the whole
// chain and the smaller into the part left of the larger; a single step is
// a plain binary insertion.
template <class LessIds>
void one_two_insert_ids(PosSequence<std::uint32_t>& chain, std::span<const std::uint32_t> rest,
                        Strategy strategy, Tally& tally, LessIds& less)
{
    const auto plan = one_two_plan(chain.size(), rest.size(), strategy);
    std::size_t j = 0;
    for (std::uint8_t s : plan) {
        if (s == 2) {
            std::uint32_t large = rest[j], small = rest[j + 1];
            tally.add();
            if (less(large, small))
                std::swap(large, small);
            const std::size_t p_large = binary_insert(large, chain, 0, chain.size(), strategy, tally, less);
            chain.insert(p_large, large);
            const std::size_t p_small = binary_insert(small, chain, 0, p_large, strategy, tally, less);
            chain.insert(p_small, small);
        } else {
            const std::size_t p = binary_insert(rest[j], chain, 0, chain.size(), strategy, tally, less);
            chain.insert(p, rest[j]);
        }
        j += s;
    }
}

template <class T, class Less>
std::vector<T> gather_checked(std::span<const T> input, const std::vector<std::uint32_t>& order, Less& less)
{
    std::vector<T> out;
    out.reserve(order.size());
    for (std::uint32_t id : order)
        out.push_back(input[id]);
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!less(out[i - 1], out[i]))
            throw contract_violation("input keys must be pairwise distinct");
    return out;
}

inline void check_size(std::size_t n)
{
    if (n >= static_cast<std::size_t>(UINT32_MAX))
        throw std::length_error("input too large");
}

} // namespace detail

using detail::one_two_plan;

// Sorts `input` with MergeInsertion. Comparisons are counted in the outcome;
// the final distinctness check runs uncounted.
template <class T, class Less = std::less<>>
SortOutcome<T> merge_insertion(std::span<const T> input, Strategy strategy = Strategy::Left,
                               const Schedule& schedule = {}, Less less = {},
                               const InsertionObserver* observer = nullptr)
{
    detail::check_size(input.size());
    Tally tally;
    auto less_ids = [&](std::uint32_t a, std::uint32_t b) { return less(input[a], input[b]); };
    detail::MergeInsertionEngine engine(less_ids, tally, strategy, schedule, observer);
    std::vector<std::uint32_t> ids(input.size());
    std::iota(ids.begin(), ids.end(), 0u);
    const auto order = engine.sort(ids);
    return {detail::gather_checked(input, order, less), tally.count()};
}

// (1,2)-Insertion of `rest` into an already sorted prefix.
template <class T, class Less = std::less<>>
SortOutcome<T> one_two_insertion(const PosSequence<T>& sorted_prefix, std::span<const T> rest,
                                 Strategy strategy = Strategy::Left, Less less = {})
{
    std::vector<T> all = sorted_prefix.to_vector();
    for (std::size_t i = 1; i < all.size(); ++i)
        if (!less(all[i - 1], all[i]))
            throw contract_violation("one_two_insertion: prefix must be strictly ascending");
    const std::size_t prefix_size = all.size();
    all.insert(all.end(), rest.begin(), rest.end());
    detail::check_size(all.size());

    Tally tally;
    std::span<const T> view(all);
    auto less_ids = [&](std::uint32_t a, std::uint32_t b) { return less(view[a], view[b]); };
    PosSequence<std::uint32_t> chain;
    chain.reserve(all.size());
    for (std::uint32_t i = 0; i < prefix_size; ++i)
        chain.push_back(i);
    std::vector<std::uint32_t> rest_ids(rest.size());
    std::iota(rest_ids.begin(), rest_ids.end(), static_cast<std::uint32_t>(prefix_size));
    detail::one_two_insert_ids(chain, std::span<const std::uint32_t>(rest_ids), strategy, tally, less_ids);
    return {detail::gather_checked(view, chain.to_vector(), less), tally.count()};
}

// Sorts the first m = max{u_k <= n} elements with MergeInsertion and inserts
// the remaining ones with (1,2)-Insertion.
template <class T, class Less = std::less<>>
SortOutcome<T> combined_sort(std::span<const T> input, Strategy strategy = Strategy::Left,
                             const Schedule& schedule = {}, Less less = {})
{
    if (input.empty())
        throw std::invalid_argument("combined_sort: input must not be empty");
    detail::check_size(input.size());
    Tally tally;
    auto less_ids = [&](std::uint32_t a, std::uint32_t b) { return less(input[a], input[b]); };

    const auto m = static_cast<std::size_t>(largest_optimal_point(input.size()));
    std::vector<std::uint32_t> head(m);
    std::iota(head.begin(), head.end(), 0u);
    detail::MergeInsertionEngine engine(less_ids, tally, strategy, schedule, nullptr);
    const auto order = engine.sort(head);

    PosSequence<std::uint32_t> chain;
    chain.reserve(input.size());
    for (std::uint32_t local : order)
        chain.push_back(head[local]);
    std::vector<std::uint32_t> rest(input.size() - m);
    std::iota(rest.begin(), rest.end(), static_cast<std::uint32_t>(m));
    detail::one_two_insert_ids(chain, std::span<const std::uint32_t>(rest), strategy, tally, less_ids);
    return {detail::gather_checked(input, chain.to_vector(), less), tally.count()};
}

// Convenience overloads for containers.
template <class T, class Less = std::less<>>
SortOutcome<T> merge_insertion(const std::vector<T>& input, Strategy strategy = Strategy::Left,
                               const Schedule& schedule = {}, Less less = {},
                               const InsertionObserver* observer = nullptr)
{
    return merge_insertion(std::span<const T>(input), strategy, schedule, std::move(less), observer);
}

template <class T, class Less = std::less<>>
SortOutcome<T> combined_sort(const std::vector<T>& input, Strategy strategy = Strategy::Left,
                             const Schedule& schedule = {}, Less less = {})
{
    return combined_sort(std::span<const T>(input), strategy, schedule, std::move(less));
}

} // namespace mergeins

#endif // MERGEINS_MERGE_INSERTION_HPP
