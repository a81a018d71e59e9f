#ifndef MERGEINS_BOUNDS_HPP
#define MERGEINS_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "binary_insertion.hpp"
#include "schedule.hpp"

// Real-valued bounds on the comparison count. All logarithms are base 2.

namespace mergeins {

using Real = long double;

inline Real log2_3() { return std::log2(Real(3)); }

// ceil(log m) + 1 - 2^ceil(log m) / m: bound on the average cost of a binary
// insertion into m - 1 elements.
inline Real t_ins_avg(std::uint64_t m)
{
    if (m == 0)
        throw std::domain_error("t_ins_avg: m must be >= 1");
    const int k = ceil_log2(m);
    return Real(k) + 1 - std::ldexp(Real(1), k) / Real(m);
}

namespace detail {

// Masses of Ytilde_{i,q} for j = 0..q in a batch with 2s elements below
// a_{s+1}. Built from the ratio P(j+1)/P(j) = 2(2s+2i+j)(q-j) / ((2q-j)(j+1))
// in log space and renormalized, so large batches do not underflow.
inline std::vector<Real> y_tilde_masses(std::uint64_t s, std::uint64_t i, std::uint64_t q)
{
    std::vector<Real> logw(q + 1, 0);
    for (std::uint64_t j = 0; j < q; ++j) {
        const Real num = 2 * Real(2 * s + 2 * i + j) * Real(q - j);
        const Real den = Real(2 * q - j) * Real(j + 1);
        logw[j + 1] = logw[j] + std::log(num / den);
    }
    Real top = logw[0];
    for (Real v : logw)
        top = std::max(top, v);
    std::vector<Real> w(q + 1);
    Real total = 0;
    for (std::uint64_t j = 0; j <= q; ++j) {
        w[j] = std::exp(logw[j] - top);
        total += w[j];
    }
    for (Real& v : w)
        v /= total;
    return w;
}

// E[T_InsAvg(Y_i + 1)] for element i of the batch b_{s+1..e}.
inline Real t_ins_in_batch(std::uint64_t s, std::uint64_t e, std::uint64_t i)
{
    const std::uint64_t q = e - s - i;
    const auto w = y_tilde_masses(s, i, q);
    Real sum = 0;
    for (std::uint64_t j = 0; j <= q; ++j)
        sum += w[j] * t_ins_avg(2 * s + i + j);
    return sum;
}

} // namespace detail

// Sum_j P(Y_i = j) T_InsAvg(j + 1) for the full batch k.
inline Real t_ins(std::uint64_t i, int k)
{
    if (k < 2 || k > 60)
        throw std::domain_error("t_ins: batch index k must lie in [2, 60]");
    const std::uint64_t s = jacobsthal_bound(k - 1);
    const std::uint64_t e = jacobsthal_bound(k);
    if (i < 1 || i > e - s)
        throw std::domain_error("t_ins: element index i=" + std::to_string(i) + " outside the batch");
    return detail::t_ins_in_batch(s, e, i);
}

// Numeric upper bound Fhat(n) = floor(n/2) + Fhat(floor(n/2)) + Ghat(ceil(n/2)),
// Ghat summing t_ins over every element of every (possibly truncated) batch.
class NumericUpperBound {
public:
    Real F(std::uint64_t n)
    {
        if (n < 1)
            throw std::domain_error("numeric_upper_bound_F: n must be >= 1");
        if (n == 1)
            return 0;
        if (auto it = f_.find(n); it != f_.end())
            return it->second;
        const Real v = Real(n / 2) + F(n / 2) + G((n + 1) / 2);
        f_.emplace(n, v);
        return v;
    }

    Real G(std::uint64_t m)
    {
        if (m < 1)
            throw std::domain_error("numeric_upper_bound_G: m must be >= 1");
        Real total = 0;
        int k = 2;
        for (; jacobsthal_bound(k) < m; ++k)
            total += batch(jacobsthal_bound(k - 1), jacobsthal_bound(k));
        total += batch(jacobsthal_bound(k - 1), m);
        return total;
    }

private:
    Real batch(std::uint64_t s, std::uint64_t e)
    {
        if (e <= s)
            return 0;
        const auto key = std::make_pair(s, e);
        if (auto it = batch_.find(key); it != batch_.end())
            return it->second;
        Real sum = 0;
        for (std::uint64_t i = 1; i <= e - s; ++i)
            sum += detail::t_ins_in_batch(s, e, i);
        batch_.emplace(key, sum);
        return sum;
    }

    std::map<std::uint64_t, Real> f_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, Real> batch_;
};

inline Real numeric_upper_bound_F(std::uint64_t n)
{
    static std::mutex mutex;
    static NumericUpperBound shared;
    std::lock_guard lock(mutex);
    return shared.F(n);
}

// Worst case n log n - (3 - log 3) n + n (y + 1 - 2^y),
// y = ceil(log(3n/4)) - log(3n/4). The O(log n) term is taken as 0.
inline Real worst_case_W(std::uint64_t n)
{
    if (n < 1)
        throw std::domain_error("worst_case_W: n must be >= 1");
    const Real nn = Real(n);
    const Real l = std::log2(3 * nn / 4);
    Real y = std::ceil(l) - l;
    if (y >= 1)
        y = 0;
    return nn * std::log2(nn) - (3 - log2_3()) * nn + nn * (y + 1 - std::exp2(y));
}

inline Real c_of_x(Real x)
{
    if (!(x >= 0 && x < 1))
        throw std::domain_error("c_of_x: x must lie in [0, 1)");
    const Real l3 = log2_3();
    return (3 - l3) - (2 - x - std::exp2(1 - x)) + (1 - std::exp2(-x)) * (3 / (std::exp2(x) + 1) - 1) +
           std::exp2(l3 - x) / 2292;
}

// Fractional part of log(3n). 3n is never a power of two, so this is in (0, 1).
inline Real x_of_n(std::uint64_t n)
{
    if (n < 1)
        throw std::domain_error("x_of_n: n must be >= 1");
    const Real l = std::log2(3 * Real(n));
    Real x = l - std::floor(l);
    if (x >= 1)
        x = 0;
    return x;
}

// Binomial stand-in for the distribution of Y_u, u = floor((t_k - t_{k-1})/2).
inline Real binomial_approx_p(int k, std::int64_t j)
{
    if (k < 2 || k > 60)
        throw std::domain_error("binomial_approx_p: k must lie in [2, 60]");
    const std::uint64_t t = jacobsthal_bound(k);
    const std::uint64_t d = t - jacobsthal_bound(k - 1);
    const std::uint64_t u = d / 2;
    const std::int64_t trials = static_cast<std::int64_t>((u + 1) / 2);
    const Real p = Real(u / 2) / Real(2 * t - 1);
    const std::int64_t q = (std::int64_t{1} << k) - 1 - j;
    if (q < 0 || q > trials)
        return 0;
    if (p == 0)
        return q == 0 ? 1 : 0;
    const Real log_choose = std::lgamma(Real(trials + 1)) - std::lgamma(Real(q + 1)) - std::lgamma(Real(trials - q + 1));
    return std::exp(log_choose + Real(q) * std::log(p) + Real(trials - q) * std::log1p(-p));
}

// log(n!) by compensated summation of log i (n <= 10^7), lgamma beyond.
inline Real lower_bound_log_factorial(std::uint64_t n)
{
    if (n < 1)
        throw std::domain_error("lower_bound_log_factorial: n must be >= 1");
    if (n > 10'000'000)
        return std::lgamma(Real(n) + 1) / std::log(Real(2));
    Real sum = 0;
    Real carry = 0;
    for (std::uint64_t i = 2; i <= n; ++i) {
        const Real y = std::log2(Real(i)) - carry;
        const Real t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// (v - n log n) / n.
inline Real normalized(Real v, std::uint64_t n)
{
    const Real nn = Real(n);
    return (v - nn * std::log2(nn)) / nn;
}

} // namespace mergeins

#endif // MERGEINS_BOUNDS_HPP
