#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "labelrank/errors.hpp"
#include "labelrank/ovo.hpp"
#include "labelrank/rng.hpp"
#include "labelrank/synthetic.hpp"

namespace labelrank {

// One experiment: for every (alpha, n) cell, `trials` independent train/test
// repetitions of the full pipeline on a fresh synthetic oracle.
struct ExperimentConfig {
    int depth = 2;
    std::vector<double> alpha_list = {0.2, 0.8};
    std::vector<long> n_list = {10, 30, 100, 300, 1000, 3000, 10000, 30000, 100000};
    int trials = 100;
    long n_test = 1000;
    LearnerSpec learner{};
    TieBreakPolicy tie_break{};
    std::uint64_t base_seed = 0;
    // Oracle split points; empty means the staggered default below. Uniform
    // splits leave equal-popcount labels tied at every x, which the risk
    // estimator rejects.
    std::vector<double> splits{};
    // Wall-clock timing makes the CSV non-reproducible byte-for-byte, so it
    // is opt-in; when false the fit_seconds column is zero.
    bool record_timing = false;
};

// Pairwise-distinct per-level split points: (d+1)/(depth+2) for level d.
inline std::vector<double> default_experiment_splits(int depth) {
    std::vector<double> splits(static_cast<std::size_t>(depth) + 1);
    for (int d = 0; d <= depth; ++d)
        splits[static_cast<std::size_t>(d)] = static_cast<double>(d + 1) / static_cast<double>(depth + 2);
    return splits;
}

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.depth < 0 || cfg.depth > 20) throw validation_error("config.depth must lie in 0..20");
    if (cfg.alpha_list.empty()) throw validation_error("config.alpha_list must be nonempty");
    for (double a : cfg.alpha_list)
        if (!(a > 0.0) || a > 1.0) throw validation_error("config.alpha_list entries must lie in (0,1]");
    if (cfg.n_list.empty()) throw validation_error("config.n_list must be nonempty");
    for (long n : cfg.n_list)
        if (n < 1) throw validation_error("config.n_list entries must be positive");
    if (cfg.trials < 1) throw validation_error("config.trials must be positive");
    if (cfg.n_test < 1) throw validation_error("config.n_test must be positive");
    if (!cfg.splits.empty()) {
        if (cfg.splits.size() != static_cast<std::size_t>(cfg.depth) + 1)
            throw validation_error("config.splits must have depth+1 entries");
        for (double s : cfg.splits)
            if (!(s > 0.0 && s < 1.0)) throw validation_error("config.splits entries must lie in (0,1)");
    }
}

struct TrialRow {
    double alpha = 0.0;
    long n = 0;
    int trial_index = 0;
    double mismatch_rate = 0.0;
    double mean_kendall = 0.0;
    double cycle_rate = 0.0;
    double fit_seconds = 0.0;
};

// Per-trial seed: a fixed SplitMix64-finalizer chain over the base seed and
// the (alpha, n, trial) indices. Never a shared sequential stream, so serial
// and parallel runs agree.
constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t alpha_index,
                                   std::size_t n_index, std::size_t trial_index) {
    std::uint64_t s = avalanche64(base_seed + 0x9E3779B97F4A7C15ULL);
    s = avalanche64(s ^ (static_cast<std::uint64_t>(alpha_index) + 0xD1B54A32D192ED03ULL));
    s = avalanche64(s ^ (static_cast<std::uint64_t>(n_index) + 0x8CB92BA72F3D8DD7ULL));
    s = avalanche64(s ^ (static_cast<std::uint64_t>(trial_index) + 0xA24BAED4963EE407ULL));
    return s;
}

// Runs the full grid. Rows come back sorted by (alpha index, n index, trial)
// no matter how many workers executed them; with record_timing off the
// output is a pure function of the config.
inline std::vector<TrialRow> run_experiment(const ExperimentConfig& cfg, int workers = 0) {
    validate_config(cfg);

    struct Task {
        std::size_t alpha_index, n_index, trial_index;
    };
    std::vector<Task> tasks;
    tasks.reserve(cfg.alpha_list.size() * cfg.n_list.size() * static_cast<std::size_t>(cfg.trials));
    for (std::size_t ai = 0; ai < cfg.alpha_list.size(); ++ai)
        for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni)
            for (std::size_t ti = 0; ti < static_cast<std::size_t>(cfg.trials); ++ti)
                tasks.push_back({ai, ni, ti});

    const std::vector<double> splits =
        cfg.splits.empty() ? default_experiment_splits(cfg.depth) : cfg.splits;

    std::vector<TrialRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            const double alpha = cfg.alpha_list[task.alpha_index];
            const long n = cfg.n_list[task.n_index];
            const PosteriorOracle oracle(cfg.depth, alpha, splits);
            const std::uint64_t seed = trial_seed(cfg.base_seed, task.alpha_index, task.n_index,
                                                  task.trial_index);
            const LabeledDataset train = sample_dataset(oracle, n, seed);
            const auto fit_start = std::chrono::steady_clock::now();
            const LabelRanker ranker = fit_ovo(train, cfg.learner, cfg.tie_break);
            const auto fit_stop = std::chrono::steady_clock::now();
            const RankingRiskReport report = estimate_ranking_risk(
                ranker, oracle, cfg.n_test, avalanche64(seed ^ 0x7E57DA7A5EEDULL));
            TrialRow row;
            row.alpha = alpha;
            row.n = n;
            row.trial_index = static_cast<int>(task.trial_index);
            row.mismatch_rate = report.mismatch_rate;
            row.mean_kendall = report.mean_kendall;
            row.cycle_rate = report.cycle_rate;
            row.fit_seconds = cfg.record_timing
                                  ? std::chrono::duration<double>(fit_stop - fit_start).count()
                                  : 0.0;
            rows[i] = row;
        }
    };

    int worker_count = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

namespace detail {

inline std::string format_g9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

inline double median_sorted(const std::vector<double>& v, std::size_t first, std::size_t last) {
    const std::size_t n = last - first;
    const std::size_t mid = first + n / 2;
    if (n % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace detail

inline constexpr char kTrialCsvHeader[] =
    "alpha,n,trial,mismatch_rate,mean_kendall,cycle_rate,fit_seconds";

inline void write_trial_rows_csv(const std::vector<TrialRow>& rows, std::ostream& out) {
    out << kTrialCsvHeader << '\n';
    for (const TrialRow& row : rows) {
        out << detail::format_g9(row.alpha) << ',' << row.n << ',' << row.trial_index << ','
            << detail::format_g9(row.mismatch_rate) << ',' << detail::format_g9(row.mean_kendall)
            << ',' << detail::format_g9(row.cycle_rate) << ',' << detail::format_g9(row.fit_seconds)
            << '\n';
    }
}

// min / q1 / median / q3 / max with the inclusive quartile convention: for
// odd group sizes the median element belongs to both halves.
struct MetricSummary {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

inline MetricSummary five_number_summary(std::vector<double> values) {
    if (values.empty()) throw parameter_error("five_number_summary: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    MetricSummary s;
    s.min = values.front();
    s.max = values.back();
    s.median = detail::median_sorted(values, 0, n);
    const std::size_t lower_end = (n + 1) / 2;  // inclusive: odd n keeps the middle element
    const std::size_t upper_begin = n / 2;
    s.q1 = detail::median_sorted(values, 0, lower_end);
    s.q3 = detail::median_sorted(values, upper_begin, n);
    return s;
}

struct SummaryRow {
    double alpha = 0.0;
    long n = 0;
    MetricSummary mismatch_rate, mean_kendall, cycle_rate, fit_seconds;
};

// Quartile table per (alpha, n) group, groups in order of first appearance.
inline std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows) {
    if (rows.empty()) throw parameter_error("summarize: no rows");
    std::vector<std::pair<double, long>> keys;
    std::vector<std::vector<const TrialRow*>> groups;
    for (const TrialRow& row : rows) {
        const std::pair<double, long> key{row.alpha, row.n};
        std::size_t g = 0;
        for (; g < keys.size(); ++g)
            if (keys[g] == key) break;
        if (g == keys.size()) {
            keys.push_back(key);
            groups.emplace_back();
        }
        groups[g].push_back(&row);
    }
    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        SummaryRow s;
        s.alpha = keys[g].first;
        s.n = keys[g].second;
        auto collect = [&](auto member) {
            std::vector<double> v;
            v.reserve(groups[g].size());
            for (const TrialRow* row : groups[g]) v.push_back(row->*member);
            return five_number_summary(std::move(v));
        };
        s.mismatch_rate = collect(&TrialRow::mismatch_rate);
        s.mean_kendall = collect(&TrialRow::mean_kendall);
        s.cycle_rate = collect(&TrialRow::cycle_rate);
        s.fit_seconds = collect(&TrialRow::fit_seconds);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace labelrank
