#include <catch2/catch.hpp>

#include <limits>
#include <sstream>

#include "labelrank/serialize.hpp"

using namespace labelrank;

TEST_CASE("permutation json") {
    const Permutation p({3, 1, 2});
    const json j = permutation_to_json(p);
    CHECK(j.dump() == "[3,1,2]");
    CHECK(permutation_from_json(j) == p);
    CHECK_THROWS_AS(permutation_from_json(json{{"ranks", 1}}), validation_error);
    CHECK_THROWS_AS(permutation_from_json(json::parse("[1,1,2]")), validation_error);
}

TEST_CASE("tie break json") {
    CHECK(tie_break_from_json(tie_break_to_json(TieBreakPolicy::lowest_label())).mode ==
          TieBreakPolicy::Mode::lowest_label_first);
    const TieBreakPolicy seeded = TieBreakPolicy::seeded(321);
    const TieBreakPolicy round = tie_break_from_json(tie_break_to_json(seeded));
    CHECK(round.mode == TieBreakPolicy::Mode::seeded_random);
    CHECK(round.seed == 321);
    CHECK_THROWS_AS(tie_break_from_json(json{{"mode", "coin-flip"}}), validation_error);
}

TEST_CASE("binary model json") {
    SECTION("stump with finite threshold") {
        const BinaryModel m = Stump{0.5, -1};
        const json j = binary_model_to_json(m);
        CHECK(j.at("stump").at("s").get<double>() == 0.5);
        const BinaryModel round = binary_model_from_json(j);
        CHECK(std::get<Stump>(round).threshold == 0.5);
        CHECK(std::get<Stump>(round).polarity == -1);
    }
    SECTION("stump sentinels use inf strings") {
        const BinaryModel m = Stump{};  // (-inf, +1)
        const json j = binary_model_to_json(m);
        CHECK(j.at("stump").at("s").get<std::string>() == "-inf");
        const Stump round = std::get<Stump>(binary_model_from_json(j));
        CHECK(round.threshold == -std::numeric_limits<double>::infinity());

        const json plus = binary_model_to_json(Stump{std::numeric_limits<double>::infinity(), -1});
        CHECK(std::get<Stump>(binary_model_from_json(plus)).threshold ==
              std::numeric_limits<double>::infinity());
    }
    SECTION("linear") {
        LinearBinaryModel linear;
        linear.weight = {1.25};
        linear.bias = -0.75;
        const json j = binary_model_to_json(linear);
        const LinearBinaryModel round = std::get<LinearBinaryModel>(binary_model_from_json(j));
        CHECK(round.weight == std::vector<double>{1.25});
        CHECK(round.bias == -0.75);
    }
    CHECK_THROWS_AS(binary_model_from_json(json{{"forest", json::object()}}), validation_error);
    CHECK_THROWS_AS(binary_model_from_json(json{{"stump", {{"s", 0.5}, {"eps", 2}}}}),
                    validation_error);
}

TEST_CASE("ranker json round trip preserves predictions") {
    const PosteriorOracle oracle(2, 0.8, default_experiment_splits(2));
    const LabeledDataset train = sample_dataset(oracle, 2000, 33);
    const LabelRanker fitted = fit_ovo(train, LearnerSpec::stump(), TieBreakPolicy::seeded(5));
    const LabelRanker round = ranker_from_json(ranker_to_json(fitted));
    CHECK(round.k_count() == fitted.k_count());
    CHECK(round.tie_break().mode == TieBreakPolicy::Mode::seeded_random);
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(predict_permutation(round, x).first == predict_permutation(fitted, x).first);
    }

    json broken = ranker_to_json(fitted);
    broken["classifiers"].erase(0);
    CHECK_THROWS_AS(ranker_from_json(broken), validation_error);

    json duplicated = ranker_to_json(fitted);
    duplicated["classifiers"][1] = duplicated["classifiers"][0];
    CHECK_THROWS_AS(ranker_from_json(duplicated), validation_error);
}

TEST_CASE("oracle json") {
    const PosteriorOracle oracle(1, 0.3, {0.4, 0.6});
    const PosteriorOracle round = oracle_from_json(oracle_to_json(oracle));
    CHECK(round.depth() == 1);
    CHECK(round.alpha() == 0.3);
    CHECK(round.splits() == std::vector<double>{0.4, 0.6});
    // splits may be omitted entirely
    const PosteriorOracle defaulted = oracle_from_json(json{{"depth", 1}, {"alpha", 0.5}});
    CHECK(defaulted.splits() == std::vector<double>{0.5, 0.5});
}

TEST_CASE("report json is flat") {
    RankingRiskReport report;
    report.mismatch_rate = 0.5;
    report.mean_kendall = 2.25;
    report.cycle_rate = 0.125;
    report.n_test = 1000;
    report.ties_redrawn = 3;
    const json j = report_to_json(report);
    CHECK(j.size() == 5);
    CHECK(j.at("mismatch_rate") == 0.5);
    CHECK(j.at("n_test") == 1000);
    CHECK(j.at("ties_redrawn") == 3);
}

TEST_CASE("config json round trip and defaults") {
    ExperimentConfig cfg;
    cfg.depth = 3;
    cfg.alpha_list = {0.4};
    cfg.n_list = {10, 20};
    cfg.trials = 7;
    cfg.n_test = 99;
    cfg.learner = LearnerSpec::linear(250, 0.5, 11);
    cfg.tie_break = TieBreakPolicy::seeded(8);
    cfg.base_seed = 1729;
    cfg.record_timing = true;
    const ExperimentConfig round = config_from_json(config_to_json(cfg));
    CHECK(round.depth == 3);
    CHECK(round.alpha_list == std::vector<double>{0.4});
    CHECK(round.n_list == std::vector<long>{10, 20});
    CHECK(round.trials == 7);
    CHECK(round.n_test == 99);
    CHECK(round.learner.kind == LearnerSpec::Kind::linear);
    CHECK(round.learner.steps == 250);
    CHECK(round.learner.step_size == 0.5);
    CHECK(round.tie_break.seed == 8);
    CHECK(round.base_seed == 1729);
    CHECK(round.record_timing);

    // Missing fields fall back to defaults.
    const ExperimentConfig defaults = config_from_json(json::object());
    CHECK(defaults.depth == 2);
    CHECK(defaults.trials == 100);
    CHECK(defaults.n_test == 1000);
    CHECK(defaults.n_list.size() == 9);
    CHECK(defaults.learner.kind == LearnerSpec::Kind::stump);
    CHECK_FALSE(defaults.record_timing);

    CHECK_THROWS_AS(config_from_json(json{{"trials", 0}}), validation_error);
}

TEST_CASE("dataset csv round trip") {
    const PosteriorOracle oracle(1, 0.7, default_experiment_splits(1));
    const LabeledDataset data = sample_dataset(oracle, 200, 4);
    std::ostringstream out;
    write_dataset_csv(data, out);
    std::istringstream in(out.str());
    const LabeledDataset round = read_dataset_csv(in, data.k_count());
    REQUIRE(round.size() == data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(round.points()[i].x == data.points()[i].x);  // %.17g is lossless
        CHECK(round.points()[i].y == data.points()[i].y);
    }

    std::istringstream bad_header("a,b\n0.5,1\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_header, 2), validation_error);
    std::istringstream bad_row("x,y\n0.5;1\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_row, 2), validation_error);
    std::istringstream bad_label("x,y\n0.5,7\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_label, 2), validation_error);
}
