// Command line front end: sorting, experiments, exact values and bounds.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mergeins/mergeins.hpp"

namespace {

using namespace mergeins;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> trials;
    std::string strategy = "left";
    std::string factor = "1";
    std::string out;
};

// Sizes from either an explicit list or a log-spaced range.
struct SizeArgs {
    std::vector<std::uint64_t> ns;
    std::vector<std::uint64_t> range; // lo hi
    std::size_t points = 20;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("-n,--n", ns, "input sizes");
        cmd->add_option("--range", range, "log-spaced sizes between LO and HI")->expected(2);
        cmd->add_option("--points", points, "number of sizes in --range")->check(CLI::PositiveNumber);
    }

    std::vector<std::uint64_t> resolve() const
    {
        if (!ns.empty() && !range.empty())
            throw config_error("give either --n or --range, not both");
        if (!range.empty())
            return log_spaced(range[0], range[1], points);
        if (ns.empty())
            throw config_error("no input sizes: use --n or --range");
        for (auto n : ns)
            if (n < 1)
                throw config_error("input sizes must be >= 1");
        return ns;
    }
};

Schedule parse_factor(const std::string& text)
{
    try {
        return Schedule::from_string(text);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

Strategy parse_strategy_arg(const std::string& text)
{
    try {
        return parse_strategy(text);
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

void write_table(const Table& t, const Globals& g)
{
    if (g.out.empty())
        emit_tsv(t, std::cout);
    else
        emit_tsv(t, g.out);
}

void note_generator(const Globals& g, std::uint64_t seed)
{
    std::cerr << "# generator: " << generator_name << "; seed " << seed << "; strategy " << g.strategy
              << "; factor " << g.factor << '\n';
}

int run_sort(const Globals& g, const std::string& algorithm, const std::string& input)
{
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input.empty() && input != "-") {
        file.open(input);
        if (!file)
            throw std::runtime_error("cannot open '" + input + "'");
        in = &file;
    }
    std::vector<long long> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ss(line);
        long long v = 0;
        std::string extra;
        if (!(ss >> v) || (ss >> extra))
            throw config_error("line " + std::to_string(line_no) + ": not an integer: '" + line + "'");
        values.push_back(v);
    }

    const Strategy s = parse_strategy_arg(g.strategy);
    const Schedule sched = parse_factor(g.factor);
    SortOutcome<long long> res;
    switch (parse_algorithm(algorithm)) {
    case Algorithm::MergeInsertion: res = merge_insertion(values, s, sched); break;
    case Algorithm::Combined:
        if (values.empty())
            throw config_error("combined: input must not be empty");
        res = combined_sort(values, s, sched);
        break;
    case Algorithm::OneTwo:
        res = one_two_insertion(PosSequence<long long>{}, std::span<const long long>(values), s);
        break;
    }

    std::ostringstream out;
    for (long long v : res.sorted)
        out << v << '\n';
    if (g.out.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(g.out);
        if (!(f << out.str()))
            throw std::runtime_error("cannot write '" + g.out + "'");
    }
    std::cerr << "comparisons\t" << res.comparisons << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MergeInsertion sorting, comparison counting and analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "64-bit seed for random inputs");
    app.add_option("--trials", g.trials, "trials per input size")->check(CLI::PositiveNumber);
    app.add_option("--strategy", g.strategy, "center-left, center-right, left or right");
    app.add_option("--factor", g.factor, "batch schedule factor f >= 1, e.g. 1.03");
    app.add_option("--out", g.out, "output file (default: stdout)");

    auto* sort_cmd = app.add_subcommand("sort", "sort newline-separated integers, report comparisons on stderr");
    std::string sort_algorithm = "mi", sort_input;
    sort_cmd->add_option("--algorithm", sort_algorithm, "mi, one-two or combined");
    sort_cmd->add_option("--input", sort_input, "input file (default: stdin)");

    auto* count_cmd = app.add_subcommand("count", "comparison statistics on random permutations");
    SizeArgs count_sizes;
    count_sizes.attach(count_cmd);
    std::string count_algorithm = "mi";
    bool exhaustive = false;
    count_cmd->add_option("--algorithm", count_algorithm, "mi, one-two or combined");
    count_cmd->add_flag("--exhaustive", exhaustive, "run all n! permutations (n <= 10)");

    auto* exact_cmd = app.add_subcommand("exact", "exact average comparisons F(n)");
    SizeArgs exact_sizes;
    exact_cmd->add_option("-n,--n", exact_sizes.ns, "input sizes");
    std::uint64_t exact_max = 0;
    exact_cmd->add_option("--max", exact_max, "all sizes 1..MAX")->check(CLI::PositiveNumber);

    auto* dist_cmd = app.add_subcommand("dist", "exact insertion distributions");
    std::string dist_kind = "y";
    int dist_k = 4;
    std::int64_t dist_i = 1, dist_q = -1;
    dist_cmd->add_option("--kind", dist_kind, "x, y, ytilde or binomial")
        ->check(CLI::IsMember({"x", "y", "ytilde", "binomial"}));
    dist_cmd->add_option("--k", dist_k, "batch index");
    dist_cmd->add_option("--i", dist_i, "element index within the batch");
    dist_cmd->add_option("--q", dist_q, "for ytilde: number of later elements (default: rest of batch)");

    auto* bound_cmd = app.add_subcommand("bound", "lower bound, numeric upper bound, c(x_n), worst case");
    SizeArgs bound_sizes;
    bound_sizes.attach(bound_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep-factor", "normalized means for several schedule factors");
    SizeArgs sweep_sizes;
    sweep_sizes.attach(sweep_cmd);
    std::vector<std::string> factors{"1.0", "1.02", "1.03", "1.04", "1.05"};
    sweep_cmd->add_option("--factors", factors, "factors to compare");

    auto* compare_cmd = app.add_subcommand("compare-algos", "MergeInsertion vs (1,2)-Insertion vs combined");
    SizeArgs compare_sizes;
    compare_sizes.attach(compare_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sort_cmd->parsed())
            return run_sort(g, sort_algorithm, sort_input);

        if (count_cmd->parsed()) {
            ExperimentConfig cfg;
            cfg.ns = count_sizes.resolve();
            cfg.sort = {parse_algorithm(count_algorithm), parse_strategy_arg(g.strategy), parse_factor(g.factor)};
            cfg.trials = g.trials;
            cfg.seed = g.seed;
            cfg.exhaustive = exhaustive;
            const auto stats = run_experiment(cfg);
            note_generator(g, g.seed);
            write_table(stats_table(stats), g);
        } else if (exact_cmd->parsed()) {
            std::vector<std::uint64_t> ns = exact_sizes.ns;
            for (std::uint64_t n = 1; n <= exact_max; ++n)
                ns.push_back(n);
            if (ns.empty())
                throw config_error("no input sizes: use --n or --max");
            for (auto n : ns)
                if (n < 1)
                    throw config_error("input sizes must be >= 1");
            write_table(exact_table(ns, parse_strategy_arg(g.strategy)), g);
        } else if (dist_cmd->parsed()) {
            if (dist_kind == "binomial") {
                write_table(binomial_table(dist_k), g);
            } else {
                DistTable d;
                if (dist_kind == "x")
                    d = x_distribution(dist_k, dist_i);
                else if (dist_kind == "y")
                    d = y_distribution(dist_k, dist_i);
                else
                    d = y_tilde_distribution(dist_k, dist_i, dist_q >= 0 ? dist_q : batch_size(dist_k) - dist_i);
                write_table(dist_table(d), g);
            }
        } else if (bound_cmd->parsed()) {
            write_table(bound_table(bound_sizes.resolve()), g);
        } else if (sweep_cmd->parsed()) {
            const auto ns = sweep_sizes.resolve();
            const auto t = sweep_factor(ns, factors, parse_strategy_arg(g.strategy), g.trials, g.seed);
            note_generator(g, g.seed);
            write_table(t, g);
        } else if (compare_cmd->parsed()) {
            const auto ns = compare_sizes.resolve();
            const auto t = compare_algorithms(ns, g.trials, g.seed, parse_strategy_arg(g.strategy));
            note_generator(g, g.seed);
            write_table(t, g);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
