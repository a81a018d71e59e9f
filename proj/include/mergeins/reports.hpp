#ifndef MERGEINS_REPORTS_HPP
#define MERGEINS_REPORTS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>

#include "bounds.hpp"
#include "exact_analysis.hpp"
#include "experiment.hpp"
#include "probability.hpp"

// Tables behind the exact, dist and bound subcommands.

namespace mergeins {

// n, F(n)*n!, F(n), (F(n) - n log n)/n.
inline Table exact_table(std::span<const std::uint64_t> ns, Strategy strategy = Strategy::Left)
{
    ExactAnalyzer analyzer(strategy);
    Table t{{"n", "F_times_n_factorial", "avg", "normalized"}, {}};
    for (auto n : ns) {
        const Rational f = analyzer.F(n);
        const Rational scaled = f * factorial(n);
        if (scaled.get_den() != 1)
            throw std::logic_error("F(n) * n! is not an integer for n=" + std::to_string(n));
        t.add_row({std::to_string(n), scaled.get_num().get_str(), to_decimal(f, 12),
                   format_real(normalized(to_long_double(f), n))});
    }
    return t;
}

// One row per support point: exact rational and decimal rendering.
inline Table dist_table(const DistTable& d)
{
    Table t{{"j", "P", "P_exact"}, {}};
    for (std::int64_t j = d.lo; j <= d.hi(); ++j) {
        const Rational p = d.at(j);
        t.add_row({std::to_string(j), format_real(to_long_double(p)), p.get_str()});
    }
    return t;
}

// Y_u of batch k next to its binomial approximation, u = floor((t_k - t_{k-1})/2).
inline Table binomial_table(int k)
{
    const auto u = static_cast<std::int64_t>((jacobsthal_bound(k) - jacobsthal_bound(k - 1)) / 2);
    if (u < 1)
        throw std::domain_error("binomial_table: batch " + std::to_string(k) + " has no middle element");
    const DistTable y = y_distribution(k, u);
    Table t{{"j", "Y", "YAppr"}, {}};
    for (std::int64_t j = y.lo; j <= y.hi(); ++j)
        t.add_row({std::to_string(j), format_real(to_long_double(y.at(j))), format_real(binomial_approx_p(k, j))});
    return t;
}

// All columns normalized as (v - n log n)/n; asymptotic_bound is -c(x_n).
inline Table bound_table(std::span<const std::uint64_t> ns)
{
    Table t{{"num_elements", "lower_bound", "approx", "asymptotic_bound", "worst_case"}, {}};
    for (auto n : ns)
        t.add_row({std::to_string(n), format_real(normalized(lower_bound_log_factorial(n), n)),
                   format_real(normalized(numeric_upper_bound_F(n), n)), format_real(-c_of_x(x_of_n(n))),
                   format_real(normalized(worst_case_W(n), n))});
    return t;
}

} // namespace mergeins

#endif // MERGEINS_REPORTS_HPP
