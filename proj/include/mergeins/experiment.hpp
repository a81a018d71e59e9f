#ifndef MERGEINS_EXPERIMENT_HPP
#define MERGEINS_EXPERIMENT_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "binary_insertion.hpp"
#include "merge_insertion.hpp"
#include "schedule.hpp"

namespace mergeins {

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Algorithm { MergeInsertion, OneTwo, Combined };

inline std::string_view to_string(Algorithm a) noexcept
{
    switch (a) {
    case Algorithm::MergeInsertion: return "mi";
    case Algorithm::OneTwo: return "one-two";
    case Algorithm::Combined: return "combined";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name)
{
    for (Algorithm a : {Algorithm::MergeInsertion, Algorithm::OneTwo, Algorithm::Combined})
        if (to_string(a) == name)
            return a;
    throw config_error("unknown algorithm '" + std::string(name) + "' (expected mi, one-two or combined)");
}

// ---- random permutations -------------------------------------------------

inline constexpr std::string_view generator_name = "mt19937_64 seeded by splitmix64(seed, n, trial)";

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of one trial. Depends only on (seed, n, trial), so different
// configurations run on the same inputs.
inline constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) noexcept
{
    return splitmix64(splitmix64(splitmix64(seed) ^ n) ^ trial);
}

// Unbiased draw in [0, bound) by rejection; the standard distributions are
// not specified bit-for-bit across library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound)
{
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = gen();
        if (r >= threshold)
            return r % bound;
    }
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed)
{
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    std::mt19937_64 gen(seed);
    for (std::size_t i = n; i > 1; --i)
        std::swap(v[i - 1], v[uniform_below(gen, i)]);
    return v;
}

// ---- sorting one input ---------------------------------------------------

struct SortSpec {
    Algorithm algorithm = Algorithm::MergeInsertion;
    Strategy strategy = Strategy::Left;
    Schedule schedule{};
};

inline std::uint64_t count_comparisons(const SortSpec& spec, std::span<const std::uint32_t> input)
{
    switch (spec.algorithm) {
    case Algorithm::MergeInsertion: return merge_insertion(input, spec.strategy, spec.schedule).comparisons;
    case Algorithm::Combined: return combined_sort(input, spec.strategy, spec.schedule).comparisons;
    case Algorithm::OneTwo: return one_two_insertion(PosSequence<std::uint32_t>{}, input, spec.strategy).comparisons;
    }
    return 0;
}

// ---- experiments ---------------------------------------------------------

inline constexpr std::size_t exhaustive_limit = 10;

inline std::uint64_t default_trials(std::uint64_t n)
{
    return std::max<std::uint64_t>(10, std::min<std::uint64_t>(10000, 10'000'000 / std::max<std::uint64_t>(n, 1)));
}

struct ExperimentConfig {
    std::vector<std::uint64_t> ns;
    SortSpec sort{};
    std::optional<std::uint64_t> trials; // default_trials(n) when unset
    std::uint64_t seed = 0;
    bool exhaustive = false; // all n! inputs instead of sampling

    void validate() const
    {
        if (ns.empty())
            throw config_error("no input sizes given");
        for (auto n : ns) {
            if (n < 1)
                throw config_error("input sizes must be >= 1");
            if (n >= UINT32_MAX)
                throw config_error("input size " + std::to_string(n) + " too large");
            if (exhaustive && n > exhaustive_limit)
                throw config_error("exhaustive mode supports n <= " + std::to_string(exhaustive_limit));
        }
        if (trials && *trials < 1)
            throw config_error("trials must be >= 1");
    }
};

struct TrialStats {
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    std::uint64_t sum = 0;         // total comparisons, exact
    unsigned __int128 sum_sq = 0;  // total squared comparisons, exact
    long double mean = 0;
    long double stddev = 0;        // sample standard deviation
    long double normalized = 0;    // (mean - n log n) / n

    long double std_error() const { return trials > 0 ? stddev / std::sqrt((long double)trials) : 0; }
};

inline TrialStats summarize(std::uint64_t n, std::span<const std::uint64_t> counts)
{
    TrialStats s;
    s.n = n;
    s.trials = counts.size();
    for (auto c : counts) {
        s.sum += c;
        s.sum_sq += static_cast<unsigned __int128>(c) * c;
    }
    if (s.trials == 0)
        return s;
    const auto t = static_cast<unsigned __int128>(s.trials);
    s.mean = static_cast<long double>(s.sum) / static_cast<long double>(s.trials);
    if (s.trials > 1) {
        const unsigned __int128 spread = t * s.sum_sq - static_cast<unsigned __int128>(s.sum) * s.sum;
        s.stddev = std::sqrt(static_cast<long double>(spread) / static_cast<long double>(t * (t - 1)));
    }
    const long double nn = static_cast<long double>(n);
    s.normalized = (s.mean - nn * std::log2(nn)) / nn;
    return s;
}

// Comparison counts of `trials` seeded random inputs of size n.
inline std::vector<std::uint64_t> sample_counts(std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                                const SortSpec& spec)
{
    std::vector<std::uint64_t> counts;
    counts.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto perm = random_permutation(n, trial_seed(seed, n, t));
        counts.push_back(count_comparisons(spec, perm));
    }
    return counts;
}

// Comparison counts of all n! inputs, in lexicographic order.
inline std::vector<std::uint64_t> exhaustive_counts(std::uint64_t n, const SortSpec& spec)
{
    if (n > exhaustive_limit)
        throw config_error("exhaustive mode supports n <= " + std::to_string(exhaustive_limit));
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<std::uint64_t> counts;
    do
        counts.push_back(count_comparisons(spec, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return counts;
}

inline std::vector<TrialStats> run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    std::vector<TrialStats> out;
    for (auto n : cfg.ns) {
        const auto counts = cfg.exhaustive ? exhaustive_counts(n, cfg.sort)
                                           : sample_counts(n, cfg.trials.value_or(default_trials(n)), cfg.seed, cfg.sort);
        out.push_back(summarize(n, counts));
    }
    return out;
}

// Mean and standard error of a - b over paired trials.
struct PairedDifference {
    long double mean = 0;
    long double std_error = 0;
};

inline PairedDifference paired_difference(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b)
{
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("paired_difference: need two equally long samples of size >= 2");
    const auto t = static_cast<long double>(a.size());
    long double sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += static_cast<long double>(a[i]) - static_cast<long double>(b[i]);
    const long double mean = sum / t;
    long double ss = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - static_cast<long double>(b[i]) - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (t - 1) / t)};
}

// Sizes spread evenly on a log scale between lo and hi (inclusive, deduplicated).
inline std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, std::size_t points)
{
    if (lo < 1 || hi < lo || points < 1)
        throw config_error("log_spaced: need 1 <= lo <= hi and points >= 1");
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        const auto v = static_cast<std::uint64_t>(
            std::llround(std::exp2(std::log2(double(lo)) + t * (std::log2(double(hi)) - std::log2(double(lo))))));
        const std::uint64_t c = std::clamp(v, lo, hi);
        if (out.empty() || out.back() != c)
            out.push_back(c);
    }
    return out;
}

// ---- tables --------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row)
    {
        if (row.size() != header.size())
            throw std::invalid_argument("table row has " + std::to_string(row.size()) + " cells, header has " +
                                        std::to_string(header.size()));
        rows.push_back(std::move(row));
    }

    friend bool operator==(const Table&, const Table&) = default;
};

// Shortest round-trip rendering, independent of the locale.
inline std::string format_real(long double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, static_cast<double>(v));
    return std::string(buf, res.ptr);
}

inline double parse_real(std::string_view text)
{
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

inline std::size_t emit_tsv(const Table& table, std::ostream& os)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += '\t';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows)
        line(r);
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os)
        throw std::runtime_error("failed to write table");
    return out.size();
}

inline std::size_t emit_tsv(const Table& table, const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    try {
        const auto bytes = emit_tsv(table, os);
        os.close();
        if (!os)
            throw std::runtime_error("close failed");
        return bytes;
    } catch (const std::runtime_error& e) {
        throw std::runtime_error("writing '" + path + "': " + e.what());
    }
}

inline Table parse_tsv(std::istream& is)
{
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto tab = line.find('\t', start);
            cells.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos)
                break;
            start = tab + 1;
        }
        return cells;
    };
    Table t;
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("parse_tsv: missing header");
    t.header = split(line);
    while (std::getline(is, line))
        t.add_row(split(line));
    return t;
}

inline Table stats_table(std::span<const TrialStats> stats)
{
    Table t{{"num_elements", "trials", "mean", "stddev", "normalized"}, {}};
    for (const auto& s : stats)
        t.add_row({std::to_string(s.n), std::to_string(s.trials), format_real(s.mean), format_real(s.stddev),
                   format_real(s.normalized)});
    return t;
}

// Normalized MergeInsertion means, one column per factor (given as decimal
// strings such as "1.03"; they label the columns verbatim).
inline Table sweep_factor(std::span<const std::uint64_t> ns, std::span<const std::string> factors, Strategy strategy,
                          std::optional<std::uint64_t> trials, std::uint64_t seed)
{
    std::vector<Schedule> schedules;
    Table t{{"num_elements"}, {}};
    for (const auto& f : factors) {
        try {
            schedules.push_back(Schedule::from_string(f));
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
        t.header.push_back(f);
    }
    for (auto n : ns) {
        ExperimentConfig cfg{{n}, {Algorithm::MergeInsertion, strategy, {}}, trials, seed, false};
        std::vector<std::string> row{std::to_string(n)};
        for (const auto& s : schedules) {
            cfg.sort.schedule = s;
            row.push_back(format_real(run_experiment(cfg).front().normalized));
        }
        t.add_row(std::move(row));
    }
    return t;
}

// Normalized means of MergeInsertion, (1,2)-Insertion alone, the combined
// algorithm and the combined algorithm with factor 1.03.
inline Table compare_algorithms(std::span<const std::uint64_t> ns, std::optional<std::uint64_t> trials,
                                std::uint64_t seed, Strategy strategy = Strategy::Left)
{
    const SortSpec specs[] = {
        {Algorithm::MergeInsertion, strategy, {}},
        {Algorithm::OneTwo, strategy, {}},
        {Algorithm::Combined, strategy, {}},
        {Algorithm::Combined, strategy, Schedule(103, 100)},
    };
    Table t{{"num_elements", "MI", "12InsertionImproved", "MIw12Ins", "12InsertionCombinedfactor103"}, {}};
    for (auto n : ns) {
        std::vector<std::string> row{std::to_string(n)};
        for (const auto& spec : specs) {
            ExperimentConfig cfg{{n}, spec, trials, seed, false};
            row.push_back(format_real(run_experiment(cfg).front().normalized));
        }
        t.add_row(std::move(row));
    }
    return t;
}

} // namespace mergeins

#endif // MERGEINS_EXPERIMENT_HPP
