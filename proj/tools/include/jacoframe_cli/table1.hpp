#ifndef JACOFRAME_CLI_TABLE1_HPP
#define JACOFRAME_CLI_TABLE1_HPP

#include <jacoframe/scattered_rule.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace jacoframe::cli {

struct Table1Options {
    double alpha = 0.0;
    double beta = 0.0;
    int points = 1024;
    int trials = 30;
    std::uint64_t seed = 1;        ///< trial t uses random_points(points, seed + t)
    std::vector<int> degrees{256, 512, 768, 896, 1023};
    RuleOptions rule;
};

/// One (degree, trial) outcome. `result` is null when the build failed.
struct TrialRecord {
    int degree;
    int trial;
    std::uint64_t seed;
    const RuleResult* result;
    std::string failure;
};

/// Averages over the successful trials; NaN when every trial failed.
struct Table1Row {
    int degree = 0;
    double cond = 0.0;
    double pos = 0.0;
    double total_variation = 0.0;
    double error = 0.0;
    double time = 0.0;
    int failures = 0;
};

using TrialObserver = std::function<void(const TrialRecord&)>;

std::vector<Table1Row> run_table1(const Table1Options& options, const TrialObserver& observer = {});

/// Columns n,cond,pos,total_variation,error,time,failures.
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);

} // namespace jacoframe::cli

#endif // JACOFRAME_CLI_TABLE1_HPP
