#include "jacoframe_cli/table1.hpp"

#include <jacoframe/errors.hpp>
#include <jacoframe/io.hpp>
#include <jacoframe/point_set.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace jacoframe::cli {

std::vector<Table1Row> run_table1(const Table1Options& options, const TrialObserver& observer)
{
    if (options.trials < 1)
        throw ParameterError("table1 needs at least one trial");
    if (options.degrees.empty())
        throw ParameterError("table1 needs at least one degree");
    for (int d : options.degrees)
        if (d < 1)
            throw ParameterError("table1 degrees must be positive, got " + std::to_string(d));

    const int top = *std::max_element(options.degrees.begin(), options.degrees.end());
    const RecurrenceTable table = build_recurrence(JacobiParams(options.alpha, options.beta), top);

    struct Sums {
        double cond = 0, pos = 0, tv = 0, err = 0, time = 0;
        int ok = 0, failures = 0;
    };
    std::vector<Sums> sums(options.degrees.size());

    for (int t = 0; t < options.trials; ++t) {
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(t);
        const ScatteredSet set = random_points(options.points, seed);
        for (std::size_t d = 0; d < options.degrees.size(); ++d) {
            const int degree = options.degrees[d];
            try {
                const RuleResult r = build_rule(table, set, degree, options.rule);
                const auto& diag = *r.rule.diagnostics;
                auto& s = sums[d];
                s.cond += diag.condition;
                s.pos += diag.positive_count;
                s.tv += diag.total_variation;
                s.err += diag.verify_error;
                s.time += diag.wall_time_seconds;
                ++s.ok;
                if (observer)
                    observer({degree, t, seed, &r, {}});
            } catch (const Error& e) {
                ++sums[d].failures;
                if (observer)
                    observer({degree, t, seed, nullptr, e.what()});
            }
        }
    }

    std::vector<Table1Row> rows;
    for (std::size_t d = 0; d < options.degrees.size(); ++d) {
        const auto& s = sums[d];
        Table1Row row;
        row.degree = options.degrees[d];
        row.failures = s.failures;
        if (s.ok == 0) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.cond = row.pos = row.total_variation = row.error = row.time = nan;
        } else {
            row.cond = s.cond / s.ok;
            row.pos = s.pos / s.ok;
            row.total_variation = s.tv / s.ok;
            row.error = s.err / s.ok;
            row.time = s.time / s.ok;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows)
{
    out << "n,cond,pos,total_variation,error,time,failures\n";
    for (const auto& r : rows)
        out << r.degree << ',' << format_csv_number(r.cond) << ',' << format_csv_number(r.pos) << ','
            << format_csv_number(r.total_variation) << ',' << format_csv_number(r.error) << ','
            << format_csv_number(r.time) << ',' << r.failures << '\n';
}

} // namespace jacoframe::cli
