#ifndef MERGEINS_SCHEDULE_HPP
#define MERGEINS_SCHEDULE_HPP

#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mergeins {

// t_k = (2^{k+1} + (-1)^k) / 3: 1, 1, 3, 5, 11, 21, 43, ...
inline constexpr std::uint64_t jacobsthal_bound(int k)
{
    if (k < 0 || k > 61)
        throw std::out_of_range("jacobsthal_bound: k out of range");
    const std::uint64_t p = std::uint64_t{1} << (k + 1);
    return (k % 2 == 0) ? (p + 1) / 3 : (p - 1) / 3;
}

// Batch boundaries for the insertion phase, optionally stretched by a
// rational factor f >= 1: boundary(k) = floor(f * t_k).
class Schedule {
public:
    Schedule() = default;

    Schedule(std::uint64_t numerator, std::uint64_t denominator)
    {
        if (denominator == 0 || numerator < denominator)
            throw std::invalid_argument("Schedule: factor must be a rational >= 1");
        const std::uint64_t g = std::gcd(numerator, denominator);
        num_ = numerator / g;
        den_ = denominator / g;
    }

    // Parses a decimal such as "1.03" exactly (103/100).
    static Schedule from_string(std::string_view text)
    {
        std::uint64_t num = 0;
        std::uint64_t den = 1;
        bool seen_digit = false;
        bool after_point = false;
        for (char ch : text) {
            if (ch == '.' && !after_point) {
                after_point = true;
                continue;
            }
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("invalid factor '" + std::string(text) + "'");
            if (num > (UINT64_MAX - 9) / 10 || (after_point && den > UINT64_MAX / 10))
                throw std::invalid_argument("factor '" + std::string(text) + "' has too many digits");
            num = num * 10 + static_cast<std::uint64_t>(ch - '0');
            if (after_point)
                den *= 10;
            seen_digit = true;
        }
        if (!seen_digit)
            throw std::invalid_argument("invalid factor '" + std::string(text) + "'");
        return Schedule(num, den);
    }

    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    bool is_plain() const noexcept { return num_ == den_; }
    double factor() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Last b-index of batch k (k >= 1). Batch 1 is always {b_1}; later
    // boundaries are kept strictly increasing.
    std::uint64_t boundary(int k) const
    {
        if (k <= 1)
            return 1;
        const auto scaled = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(jacobsthal_bound(k)) * num_ / den_);
        const std::uint64_t prev = boundary(k - 1);
        return scaled > prev ? scaled : prev + 1;
    }

    std::string to_string() const
    {
        return is_plain() ? std::string("1") : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
};

} // namespace mergeins

#endif // MERGEINS_SCHEDULE_HPP
