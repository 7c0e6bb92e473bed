#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "labelrank/errors.hpp"
#include "labelrank/harness.hpp"
#include "labelrank/ovo.hpp"
#include "labelrank/permutation.hpp"
#include "labelrank/synthetic.hpp"

namespace labelrank {

using json = nlohmann::json;

// ---- permutations: JSON integer arrays of 1-based ranks ----

inline json permutation_to_json(const Permutation& p) { return json(p.ranks()); }

inline Permutation permutation_from_json(const json& j) {
    if (!j.is_array()) throw validation_error("permutation JSON must be an array of ranks");
    return Permutation(j.get<std::vector<int>>());
}

// ---- tie-break policy ----

inline json tie_break_to_json(const TieBreakPolicy& tb) {
    if (tb.mode == TieBreakPolicy::Mode::lowest_label_first)
        return json{{"mode", "lowest-label-first"}};
    return json{{"mode", "seeded-random"}, {"seed", tb.seed}};
}

inline TieBreakPolicy tie_break_from_json(const json& j) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "lowest-label-first") return TieBreakPolicy::lowest_label();
    if (mode == "seeded-random") return TieBreakPolicy::seeded(j.value("seed", std::uint64_t{0}));
    throw validation_error("tie_break.mode must be lowest-label-first or seeded-random, got " + mode);
}

// ---- binary models: {"stump": {s, eps}} or {"linear": {w, b}} ----
// Infinite stump thresholds are written as the strings "inf" / "-inf"
// because JSON numbers cannot carry them.

inline json stump_threshold_to_json(double s) {
    if (std::isinf(s)) return s > 0 ? json("inf") : json("-inf");
    return json(s);
}

inline double stump_threshold_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw validation_error("stump threshold string must be inf or -inf, got " + s);
    }
    return j.get<double>();
}

inline json binary_model_to_json(const BinaryModel& model) {
    if (const auto* stump = std::get_if<Stump>(&model))
        return json{{"stump", {{"s", stump_threshold_to_json(stump->threshold)}, {"eps", stump->polarity}}}};
    const auto& linear = std::get<LinearBinaryModel>(model);
    return json{{"linear", {{"w", linear.weight}, {"b", linear.bias}}}};
}

inline BinaryModel binary_model_from_json(const json& j) {
    if (j.contains("stump")) {
        const json& inner = j.at("stump");
        Stump stump;
        stump.threshold = stump_threshold_from_json(inner.at("s"));
        stump.polarity = inner.at("eps").get<int>();
        if (stump.polarity != 1 && stump.polarity != -1)
            throw validation_error("stump eps must be +1 or -1");
        return stump;
    }
    if (j.contains("linear")) {
        const json& inner = j.at("linear");
        LinearBinaryModel linear;
        linear.weight = inner.at("w").get<std::vector<double>>();
        linear.bias = inner.at("b").get<double>();
        return linear;
    }
    throw validation_error("binary model JSON must contain a stump or linear entry");
}

// ---- label ranker: {k_count, tie_break, classifiers: [{k, l, model}]} ----

inline json ranker_to_json(const LabelRanker& ranker) {
    json classifiers = json::array();
    const int k_count = ranker.k_count();
    for (int k = 1; k <= k_count; ++k)
        for (int l = k + 1; l <= k_count; ++l)
            classifiers.push_back(
                {{"k", k}, {"l", l}, {"model", binary_model_to_json(ranker.classifier(k, l))}});
    return json{{"k_count", k_count},
                {"tie_break", tie_break_to_json(ranker.tie_break())},
                {"classifiers", std::move(classifiers)}};
}

inline LabelRanker ranker_from_json(const json& j) {
    const int k_count = j.at("k_count").get<int>();
    if (k_count < 2) throw validation_error("ranker k_count must be at least 2");
    const TieBreakPolicy tb = tie_break_from_json(j.at("tie_break"));
    const std::size_t expected = Tournament::pair_count(k_count);
    const json& classifiers = j.at("classifiers");
    if (!classifiers.is_array() || classifiers.size() != expected)
        throw validation_error("ranker needs exactly " + std::to_string(expected) + " classifiers");
    std::vector<BinaryModel> models(expected, BinaryModel{Stump{}});
    std::vector<char> filled(expected, 0);
    for (const json& entry : classifiers) {
        const int k = entry.at("k").get<int>();
        const int l = entry.at("l").get<int>();
        if (k < 1 || l <= k || l > k_count)
            throw validation_error("ranker classifier pair (" + std::to_string(k) + "," +
                                   std::to_string(l) + ") out of range");
        const std::size_t kk = static_cast<std::size_t>(k - 1);
        const std::size_t idx =
            kk * static_cast<std::size_t>(k_count) - kk * (kk + 1) / 2 + static_cast<std::size_t>(l - k - 1);
        if (filled[idx])
            throw validation_error("ranker classifier pair (" + std::to_string(k) + "," +
                                   std::to_string(l) + ") appears twice");
        filled[idx] = 1;
        models[idx] = binary_model_from_json(entry.at("model"));
    }
    for (std::size_t i = 0; i < expected; ++i)
        if (!filled[i]) throw validation_error("ranker is missing classifier pairs");
    return LabelRanker(k_count, std::move(models), tb);
}

// ---- posterior oracle: {depth, alpha, splits} ----

inline json oracle_to_json(const PosteriorOracle& oracle) {
    return json{{"depth", oracle.depth()}, {"alpha", oracle.alpha()}, {"splits", oracle.splits()}};
}

inline PosteriorOracle oracle_from_json(const json& j) {
    return PosteriorOracle(j.at("depth").get<int>(), j.at("alpha").get<double>(),
                           j.value("splits", std::vector<double>{}));
}

// ---- risk report: flat object ----

inline json report_to_json(const RankingRiskReport& report) {
    return json{{"mismatch_rate", report.mismatch_rate},
                {"mean_kendall", report.mean_kendall},
                {"cycle_rate", report.cycle_rate},
                {"n_test", report.n_test},
                {"ties_redrawn", report.ties_redrawn}};
}

// ---- learner spec ----

inline json learner_to_json(const LearnerSpec& spec) {
    if (spec.kind == LearnerSpec::Kind::stump) return json{{"kind", "stump"}};
    return json{{"kind", "linear"},
                {"steps", spec.steps},
                {"step_size", spec.step_size},
                {"seed", spec.seed}};
}

inline LearnerSpec learner_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "stump") return LearnerSpec::stump();
    if (kind == "linear")
        return LearnerSpec::linear(j.value("steps", long{500}), j.value("step_size", 1.0),
                                   j.value("seed", std::uint64_t{0}));
    throw validation_error("learner.kind must be stump or linear, got " + kind);
}

// ---- experiment config: JSON mirror with defaults for missing fields ----

inline json config_to_json(const ExperimentConfig& cfg) {
    return json{{"depth", cfg.depth},
                {"alpha_list", cfg.alpha_list},
                {"n_list", cfg.n_list},
                {"trials", cfg.trials},
                {"n_test", cfg.n_test},
                {"learner", learner_to_json(cfg.learner)},
                {"tie_break", tie_break_to_json(cfg.tie_break)},
                {"base_seed", cfg.base_seed},
                {"splits", cfg.splits},
                {"record_timing", cfg.record_timing}};
}

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.depth = j.value("depth", cfg.depth);
    cfg.alpha_list = j.value("alpha_list", cfg.alpha_list);
    cfg.n_list = j.value("n_list", cfg.n_list);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.n_test = j.value("n_test", cfg.n_test);
    if (j.contains("learner")) cfg.learner = learner_from_json(j.at("learner"));
    if (j.contains("tie_break")) cfg.tie_break = tie_break_from_json(j.at("tie_break"));
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.splits = j.value("splits", cfg.splits);
    cfg.record_timing = j.value("record_timing", cfg.record_timing);
    validate_config(cfg);
    return cfg;
}

// ---- dataset CSV: header "x,y", y 1-based ----

inline void write_dataset_csv(const LabeledDataset& data, std::ostream& out) {
    out << "x,y\n";
    char buf[64];
    for (const auto& p : data.points()) {
        std::snprintf(buf, sizeof(buf), "%.17g", p.x);
        out << buf << ',' << p.y << '\n';
    }
}

inline LabeledDataset read_dataset_csv(std::istream& in, int k_count) {
    std::string line;
    if (!std::getline(in, line)) throw validation_error("dataset CSV: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y") throw validation_error("dataset CSV: header must be x,y, got \"" + line + "\"");
    std::vector<LabeledPoint> points;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw validation_error("dataset CSV: row " + std::to_string(row) + " has no comma");
        try {
            const double x = std::stod(line.substr(0, comma));
            const int y = std::stoi(line.substr(comma + 1));
            points.push_back({x, y});
        } catch (const std::exception&) {
            throw validation_error("dataset CSV: row " + std::to_string(row) + " is malformed: " + line);
        }
        ++row;
    }
    return LabeledDataset(std::move(points), k_count);
}

}  // namespace labelrank
