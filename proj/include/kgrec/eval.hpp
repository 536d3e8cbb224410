#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "kgrec/errors.hpp"

// Recommendation-quality metrics: FindN (relevant hits in the top list),
// TopN (precision over the list) and reciprocal rank, averaged across runs.

namespace kgrec {

struct RunResult {
    std::string run_id;
    std::vector<std::string> top_list;  // unique entries, length N
    std::set<std::string> relevant;
};

inline int find_n(const RunResult& run) {
    int hits = 0;
    for (const auto& id : run.top_list)
        if (run.relevant.count(id)) ++hits;
    return hits;
}

inline double top_n(int find_n_value, int n) {
    if (n < 1)
        throw Error("eval", ErrorCategory::parameter, "n must be at least 1");
    return static_cast<double>(find_n_value) / static_cast<double>(n);
}

// 1 / (1-based rank of the first relevant entry); 0 when none is relevant.
inline double reciprocal_rank(const RunResult& run) {
    for (std::size_t i = 0; i < run.top_list.size(); ++i)
        if (run.relevant.count(run.top_list[i]))
            return 1.0 / static_cast<double>(i + 1);
    return 0.0;
}

struct RunMetrics {
    std::string run_id;
    int find_n = 0;
    double top_n = 0.0;
    double reciprocal_rank = 0.0;
};

struct EvalReport {
    int n = 0;  // uniform top-list length
    std::vector<RunMetrics> per_run;
    double avg_find_n = 0.0;
    double avg_top_n = 0.0;
    double avg_mrr = 0.0;
};

inline EvalReport aggregate(std::span<const RunResult> runs) {
    const char* module = "eval";
    if (runs.empty())
        throw Error(module, ErrorCategory::empty_input, "no runs to aggregate");

    EvalReport report;
    report.n = static_cast<int>(runs.front().top_list.size());
    if (report.n < 1)
        throw Error(module, ErrorCategory::parameter,
                    "run \"" + runs.front().run_id + "\" has an empty top list");
    for (const auto& run : runs) {
        if (static_cast<int>(run.top_list.size()) != report.n)
            throw Error(module, ErrorCategory::parameter,
                        "mixed top-list lengths: run \"" + run.run_id + "\" has " +
                            std::to_string(run.top_list.size()) + ", expected " +
                            std::to_string(report.n));
        std::set<std::string> unique(run.top_list.begin(), run.top_list.end());
        if (unique.size() != run.top_list.size())
            throw Error(module, ErrorCategory::duplicate_id,
                        "run \"" + run.run_id + "\" repeats a paper id in its top list");
        RunMetrics metrics;
        metrics.run_id = run.run_id;
        metrics.find_n = find_n(run);
        metrics.top_n = top_n(metrics.find_n, report.n);
        metrics.reciprocal_rank = reciprocal_rank(run);
        report.avg_find_n += metrics.find_n;
        report.avg_top_n += metrics.top_n;
        report.avg_mrr += metrics.reciprocal_rank;
        report.per_run.push_back(std::move(metrics));
    }
    const double count = static_cast<double>(report.per_run.size());
    report.avg_find_n /= count;
    report.avg_top_n /= count;
    report.avg_mrr /= count;
    return report;
}

}  // namespace kgrec
