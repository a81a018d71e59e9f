#ifndef MERGEINS_RATIONAL_HPP
#define MERGEINS_RATIONAL_HPP

#include <cstdint>
#include <deque>
#include <mutex>
#include <string>

#include <gmpxx.h>

namespace mergeins {

using BigInt = mpz_class;
using Rational = mpq_class;

// n! with a process-wide memo table. Entries are appended in order under a
// lock, so each value is computed exactly once; deque growth keeps earlier
// references valid.
inline const BigInt& factorial(std::uint64_t n)
{
    static std::mutex mutex;
    static std::deque<BigInt> table{BigInt(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= n)
        table.push_back(table.back() * static_cast<unsigned long>(table.size()));
    return table[n];
}

inline BigInt pow2(std::uint64_t e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Decimal rendering truncated toward zero after `digits` fractional digits.
inline std::string to_decimal(const Rational& q, unsigned digits = 12)
{
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    BigInt scaled = q.get_num() * scale;
    BigInt quot;
    mpz_tdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
    const bool negative = sgn(quot) < 0 || (sgn(quot) == 0 && sgn(q) < 0);
    BigInt mag = abs(quot);
    std::string s = mag.get_str();
    if (s.size() <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    std::string out = negative ? "-" : "";
    out += s.substr(0, s.size() - digits);
    if (digits > 0)
        out += "." + s.substr(s.size() - digits);
    return out;
}

// Nearest double plus the rounding remainder, for a few extra bits.
inline long double to_long_double(const Rational& q)
{
    const double head = q.get_d();
    const Rational rest = q - Rational(head);
    return static_cast<long double>(head) + static_cast<long double>(rest.get_d());
}

} // namespace mergeins

#endif // MERGEINS_RATIONAL_HPP
