#ifndef AQMSIM_REPORT_HPP
#define AQMSIM_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aqmsim/hypothesis.hpp"
#include "aqmsim/stats.hpp"
#include "aqmsim/trace.hpp"

namespace aqmsim {

/// Population statistics of one observable, over the whole run.
struct PopulationStats {
    std::string metric;
    std::uint64_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double stddev = 0.0;
};

/// Per-run report: population moments of queuing delay, queue length and
/// (when present) slack, plus the scenario echo that produced them.
struct ExperimentReport {
    std::string config_echo;
    std::uint64_t seed = 0;
    PopulationStats delay;
    PopulationStats qlen;
    std::optional<PopulationStats> slack;
};

/// Builds the report from trace rows. Delay is the sojourn of every
/// dequeued packet; queue length is sampled at every queue event; slack is
/// the estimator value observed at each dequeue.
ExperimentReport build_report(const std::vector<TraceRow>& rows,
                              std::string config_echo, std::uint64_t seed);

void write_report_csv(const ExperimentReport& report, std::ostream& out);
ExperimentReport read_report_csv(std::istream& in);

/// Aligned-text rendering of the population tables.
std::string format_report_table(const ExperimentReport& report);

/// CLT-sample comparison between two runs' delay populations: one-sided
/// Welch t-test (a minus b, greater) and two-sided F-test.
struct ComparisonReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    TTestResult t_test;
    FTestResult f_test;
};

ComparisonReport compare_runs(const ExperimentReport& a, const ExperimentReport& b,
                              std::size_t n, std::uint64_t seed);

std::string format_comparison(const ComparisonReport& cmp);
void write_comparison_csv(const ComparisonReport& cmp, std::ostream& out);

}  // namespace aqmsim

#endif  // AQMSIM_REPORT_HPP
