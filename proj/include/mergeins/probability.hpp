#ifndef MERGEINS_PROBABILITY_HPP
#define MERGEINS_PROBABILITY_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"
#include "schedule.hpp"

// Exact distributions for the insertion of one batch b_{t_{k-1}+1..t_k}
// (inserted from the top down) into the main chain x_1 < ... < x_{2t_{k-1}}
// followed by a_{t_{k-1}+1} < ... < a_{t_k}.
//
//   X_i  gap index, among x_1..x_{2^k} (the a's appended to the x's), where
//        b_{t_{k-1}+i} ends up.
//   Y_i  number of elements b_{t_{k-1}+i} is binary-inserted into.
//   Yt   Ytilde_{i,q}: how many of b_{t_{k-1}+i+1..t_{k-1}+i+q} end up below
//        a_{t_{k-1}+i}; Y_i = Ytilde_{i, t_k - t_{k-1} - i} + 2 t_{k-1} + i - 1.

namespace mergeins {

namespace detail {

inline void check_batch(int k, std::int64_t i)
{
    if (k < 2 || k > 60)
        throw std::domain_error("batch index k must lie in [2, 60], got " + std::to_string(k));
    const auto size = static_cast<std::int64_t>(jacobsthal_bound(k) - jacobsthal_bound(k - 1));
    if (i < 1 || i > size)
        throw std::domain_error("element index i=" + std::to_string(i) + " outside [1, " +
                                std::to_string(size) + "] for k=" + std::to_string(k));
}

inline std::uint64_t u64(std::int64_t v) { return static_cast<std::uint64_t>(v); }

} // namespace detail

inline std::int64_t batch_start(int k) { return static_cast<std::int64_t>(jacobsthal_bound(k - 1)); }
inline std::int64_t batch_size(int k)
{
    return static_cast<std::int64_t>(jacobsthal_bound(k) - jacobsthal_bound(k - 1));
}

// P(X_i = j).
inline Rational p_X(int k, std::int64_t i, std::int64_t j)
{
    detail::check_batch(k, i);
    const std::int64_t top = (std::int64_t{1} << k) - 1;
    if (j < 0 || j > top)
        throw std::domain_error("gap index j=" + std::to_string(j) + " outside [0, " + std::to_string(top) + "]");
    using detail::u64;
    const std::int64_t s = batch_start(k);
    if (j <= 2 * s) {
        const BigInt ratio = factorial(u64(s + i - 1)) / factorial(u64(s));
        return make_rational(pow2(u64(2 * i - 2)) * ratio * ratio * factorial(u64(2 * s)),
                             factorial(u64(2 * s + 2 * i - 1)));
    }
    if (j < 2 * s + i) {
        const BigInt ratio = factorial(u64(s + i - 1)) / factorial(u64(j - s));
        return make_rational(pow2(u64(4 * s - 2 * j + 2 * i - 2)) * ratio * ratio * factorial(u64(2 * j - 2 * s)),
                             factorial(u64(2 * s + 2 * i - 1)));
    }
    return Rational(0);
}

// P(Ytilde_{i,q} = j) in closed form, for a batch whose preceding batches
// leave 2s elements below a_{s+1}.
inline Rational p_Y_tilde_batch(std::int64_t s, std::int64_t i, std::int64_t q, std::int64_t j)
{
    if (s < 1 || i < 1 || q < 0)
        throw std::domain_error("p_Y_tilde: need s >= 1, i >= 1, q >= 0");
    if (j < 0 || j > q)
        return Rational(0);
    using detail::u64;
    const BigInt num = factorial(u64(2 * q - j)) * pow2(u64(j)) * factorial(u64(2 * s + 2 * i + j - 1)) *
                       factorial(u64(s + i + q - 1));
    const BigInt den = factorial(u64(j)) * factorial(u64(q - j)) * factorial(u64(2 * s + 2 * i + 2 * q - 1)) *
                       factorial(u64(s + i - 1));
    return make_rational(num, den);
}

inline Rational p_Y_tilde_closed(int k, std::int64_t i, std::int64_t q, std::int64_t j)
{
    detail::check_batch(k, i);
    if (q < 0 || q > batch_size(k) - i)
        throw std::domain_error("q=" + std::to_string(q) + " outside [0, t_k - t_{k-1} - i]");
    if (j < 0 || j > q)
        throw std::domain_error("j=" + std::to_string(j) + " outside [0, q]");
    return p_Y_tilde_batch(batch_start(k), i, q, j);
}

// Rows q = 0..max_q of Ytilde_{i,q} built by the two-term recurrence
//   P(q, j) = (2s+2i+j-1)/(2s+2i+2q-1) P(q-1, j-1) + (2q-j-1)/(2s+2i+2q-1) P(q-1, j).
inline std::vector<std::vector<Rational>> y_tilde_recurrence_rows(std::int64_t s, std::int64_t i,
                                                                  std::int64_t max_q)
{
    std::vector<std::vector<Rational>> rows;
    rows.reserve(static_cast<std::size_t>(max_q + 1));
    rows.push_back({Rational(1)});
    for (std::int64_t q = 1; q <= max_q; ++q) {
        const auto& prev = rows.back();
        std::vector<Rational> row(static_cast<std::size_t>(q + 1));
        const std::int64_t den = 2 * s + 2 * i + 2 * q - 1;
        for (std::int64_t j = 0; j <= q; ++j) {
            Rational v(0);
            if (j >= 1)
                v += Rational(2 * s + 2 * i + j - 1, den) * prev[static_cast<std::size_t>(j - 1)];
            if (j <= q - 1)
                v += Rational(2 * q - j - 1, den) * prev[static_cast<std::size_t>(j)];
            v.canonicalize();
            row[static_cast<std::size_t>(j)] = v;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Rational p_Y_recurrence(int k, std::int64_t i, std::int64_t q, std::int64_t j)
{
    detail::check_batch(k, i);
    if (q < 0 || q > batch_size(k) - i)
        throw std::domain_error("q=" + std::to_string(q) + " outside [0, t_k - t_{k-1} - i]");
    if (j < 0 || j > q)
        throw std::domain_error("j=" + std::to_string(j) + " outside [0, q]");
    return y_tilde_recurrence_rows(batch_start(k), i, q)[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
}

// P(Y_i = j) for a batch b_{s+1..e}, possibly truncated (e < t_k).
inline Rational p_Y_batch(std::int64_t s, std::int64_t e, std::int64_t i, std::int64_t j)
{
    if (i < 1 || i > e - s)
        throw std::domain_error("p_Y_batch: i outside [1, e - s]");
    return p_Y_tilde_batch(s, i, e - s - i, j - (2 * s + i - 1));
}

// P(Y_i = j), supported on 2t_{k-1}+i-1 <= j <= 2^k - 1.
inline Rational p_Y(int k, std::int64_t i, std::int64_t j)
{
    detail::check_batch(k, i);
    const std::int64_t s = batch_start(k);
    const auto t = static_cast<std::int64_t>(jacobsthal_bound(k));
    const std::int64_t top = (std::int64_t{1} << k) - 1;
    if (j < 2 * s + i - 1 || j > top)
        return Rational(0);
    using detail::u64;
    const BigInt num = pow2(u64(j - 2 * s - i + 1)) * factorial(u64(2 * t - i - j - 1)) * factorial(u64(i + j)) *
                       factorial(u64(t - 1));
    const BigInt den = factorial(u64(j - 2 * s - i + 1)) * factorial(u64(top - j)) * factorial(u64(2 * t - 1)) *
                       factorial(u64(s + i - 1));
    return make_rational(num, den);
}

enum class DistKind { X, Y, YTilde };

// Exact distribution over the contiguous support [lo, lo + mass.size()).
struct DistTable {
    DistKind kind = DistKind::Y;
    int k = 0;
    std::int64_t i = 0;
    std::int64_t q = 0; // only meaningful for YTilde
    std::int64_t lo = 0;
    std::vector<Rational> mass;

    std::int64_t hi() const { return lo + static_cast<std::int64_t>(mass.size()) - 1; }

    Rational at(std::int64_t j) const
    {
        if (j < lo || j > hi())
            return Rational(0);
        return mass[static_cast<std::size_t>(j - lo)];
    }

    Rational total() const
    {
        Rational sum(0);
        for (const auto& m : mass)
            sum += m;
        return sum;
    }

    Rational mean() const
    {
        Rational sum(0);
        for (std::size_t idx = 0; idx < mass.size(); ++idx)
            sum += mass[idx] * (lo + static_cast<std::int64_t>(idx));
        return sum;
    }

    // P(V <= j).
    Rational cdf(std::int64_t j) const
    {
        Rational sum(0);
        for (std::int64_t v = lo; v <= std::min(j, hi()); ++v)
            sum += mass[static_cast<std::size_t>(v - lo)];
        return sum;
    }
};

inline DistTable x_distribution(int k, std::int64_t i)
{
    detail::check_batch(k, i);
    DistTable t{DistKind::X, k, i, 0, 0, {}};
    for (std::int64_t j = 0; j < (std::int64_t{1} << k); ++j)
        t.mass.push_back(p_X(k, i, j));
    return t;
}

inline DistTable y_distribution(int k, std::int64_t i)
{
    detail::check_batch(k, i);
    const std::int64_t lo = 2 * batch_start(k) + i - 1;
    DistTable t{DistKind::Y, k, i, 0, lo, {}};
    for (std::int64_t j = lo; j < (std::int64_t{1} << k); ++j)
        t.mass.push_back(p_Y(k, i, j));
    return t;
}

inline DistTable y_tilde_distribution(int k, std::int64_t i, std::int64_t q)
{
    DistTable t{DistKind::YTilde, k, i, q, 0, {}};
    for (std::int64_t j = 0; j <= q; ++j)
        t.mass.push_back(p_Y_tilde_closed(k, i, q, j));
    return t;
}

// E[Y_i].
inline Rational mean_Y(int k, std::int64_t i) { return y_distribution(k, i).mean(); }

} // namespace mergeins

#endif // MERGEINS_PROBABILITY_HPP
