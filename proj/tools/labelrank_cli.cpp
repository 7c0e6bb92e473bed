// Command-line front end for the label-ranking toolkit.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labelrank/labelrank.hpp"

namespace {

using labelrank::json;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw labelrank::io_error("cannot open " + path + " for reading");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw labelrank::validation_error(path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw labelrank::io_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw labelrank::io_error("failed while writing " + path);
}

labelrank::LabeledDataset read_dataset_file(const std::string& path, int k_count) {
    std::ifstream in(path);
    if (!in) throw labelrank::io_error("cannot open " + path + " for reading");
    return labelrank::read_dataset_csv(in, k_count);
}

labelrank::TieBreakPolicy tie_break_from_flags(const std::string& mode, std::uint64_t seed) {
    if (mode == "lowest-label-first") return labelrank::TieBreakPolicy::lowest_label();
    if (mode == "seeded-random") return labelrank::TieBreakPolicy::seeded(seed);
    throw labelrank::validation_error("--tie-break must be lowest-label-first or seeded-random");
}

struct SynthArgs {
    int depth = 2;
    double alpha = 0.8;
    long n = 1000;
    std::uint64_t seed = 0;
    std::string out;
    std::vector<double> splits;
    std::string oracle_out;
};

void run_synth(const SynthArgs& args) {
    const labelrank::PosteriorOracle oracle(args.depth, args.alpha, args.splits);
    const labelrank::LabeledDataset data = labelrank::sample_dataset(oracle, args.n, args.seed);
    std::ostringstream csv;
    labelrank::write_dataset_csv(data, csv);
    write_text_file(args.out, csv.str());
    if (!args.oracle_out.empty())
        write_text_file(args.oracle_out, labelrank::oracle_to_json(oracle).dump(2) + "\n");
}

struct FitArgs {
    std::string data;
    int k = 0;
    std::string learner = "stump";
    std::string out;
    std::string tie_break = "lowest-label-first";
    std::uint64_t tie_seed = 0;
    long steps = 500;
    double step_size = 1.0;
};

void run_fit(const FitArgs& args) {
    const labelrank::LabeledDataset data = read_dataset_file(args.data, args.k);
    labelrank::LearnerSpec spec;
    if (args.learner == "stump")
        spec = labelrank::LearnerSpec::stump();
    else if (args.learner == "linear")
        spec = labelrank::LearnerSpec::linear(args.steps, args.step_size);
    else
        throw labelrank::validation_error("--learner must be stump or linear");
    const labelrank::LabelRanker ranker =
        labelrank::fit_ovo(data, spec, tie_break_from_flags(args.tie_break, args.tie_seed));
    write_text_file(args.out, labelrank::ranker_to_json(ranker).dump(2) + "\n");
}

void run_predict(const std::string& model_path, double x) {
    const labelrank::LabelRanker ranker = labelrank::ranker_from_json(read_json_file(model_path));
    const labelrank::ScoreVector scores = labelrank::score_labels(ranker, x);
    const auto [permutation, was_cyclic] = labelrank::predict_permutation(ranker, x);
    const json out{{"scores", scores.scores()},
                   {"permutation", labelrank::permutation_to_json(permutation)},
                   {"was_cyclic", was_cyclic}};
    std::cout << out.dump() << '\n';
}

void run_eval(const std::string& model_path, const std::string& oracle_path, long n_test,
              std::uint64_t seed) {
    const labelrank::LabelRanker ranker = labelrank::ranker_from_json(read_json_file(model_path));
    const labelrank::PosteriorOracle oracle =
        labelrank::oracle_from_json(read_json_file(oracle_path));
    const labelrank::RankingRiskReport report =
        labelrank::estimate_ranking_risk(ranker, oracle, n_test, seed);
    std::cout << labelrank::report_to_json(report).dump() << '\n';
}

void run_topk(const std::string& model_path, const std::string& data_path, int k) {
    const labelrank::LabelRanker ranker = labelrank::ranker_from_json(read_json_file(model_path));
    const labelrank::LabeledDataset test = read_dataset_file(data_path, ranker.k_count());
    const double error = labelrank::topk_error(ranker, test, k);
    std::cout << json{{"k", k}, {"topk_error", error}}.dump() << '\n';
}

void run_curve(const std::string& config_path, const std::string& out_path, int workers) {
    const labelrank::ExperimentConfig cfg =
        labelrank::config_from_json(read_json_file(config_path));
    const std::vector<labelrank::TrialRow> rows = labelrank::run_experiment(cfg, workers);
    std::ostringstream csv;
    labelrank::write_trial_rows_csv(rows, csv);
    write_text_file(out_path, csv.str());
}

void run_rate_bound(double alpha, double B, double eps, double V, double C, long n, double delta) {
    const labelrank::RateBoundParams params(alpha, B, eps, V, C);
    const json out{{"r_n", labelrank::rate_bound(params, n, delta)},
                   {"n0_upper_bound", labelrank::n0_upper_bound(params, delta)},
                   {"h", params.h},
                   {"beta", params.beta}};
    std::cout << out.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-versus-one label ranking toolkit"};
    app.require_subcommand(1);

    SynthArgs synth;
    CLI::App* synth_cmd = app.add_subcommand("synth", "Sample a synthetic labeled dataset to CSV");
    synth_cmd->add_option("--depth", synth.depth, "Oracle depth D; K = 2^(D+1)")->required();
    synth_cmd->add_option("--alpha", synth.alpha, "Noise shape in (0,1]")->required();
    synth_cmd->add_option("--n", synth.n, "Number of points")->required();
    synth_cmd->add_option("--seed", synth.seed, "RNG seed")->required();
    synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();
    synth_cmd->add_option("--splits", synth.splits, "Per-level split points (default: all 1/2)");
    synth_cmd->add_option("--oracle-out", synth.oracle_out, "Also write the oracle JSON here");

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit the pairwise ranker on a CSV dataset");
    fit_cmd->add_option("--data", fit.data, "Training CSV (header x,y)")->required();
    fit_cmd->add_option("--k", fit.k, "Number of labels")->required();
    fit_cmd->add_option("--learner", fit.learner, "stump or linear")->required();
    fit_cmd->add_option("--out", fit.out, "Output model JSON path")->required();
    fit_cmd->add_option("--tie-break", fit.tie_break, "lowest-label-first or seeded-random");
    fit_cmd->add_option("--tie-seed", fit.tie_seed, "Seed for seeded-random tie-breaking");
    fit_cmd->add_option("--steps", fit.steps, "Gradient steps (linear learner)");
    fit_cmd->add_option("--step-size", fit.step_size, "Gradient step size (linear learner)");

    std::string predict_model;
    double predict_x = 0.0;
    CLI::App* predict_cmd = app.add_subcommand("predict", "Score and rank the labels at a point");
    predict_cmd->add_option("--model", predict_model, "Model JSON path")->required();
    predict_cmd->add_option("--x", predict_x, "Query point")->required();

    std::string eval_model, eval_oracle;
    long eval_n_test = 1000;
    std::uint64_t eval_seed = 0;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Estimate ranking risk against an oracle");
    eval_cmd->add_option("--model", eval_model, "Model JSON path")->required();
    eval_cmd->add_option("--oracle", eval_oracle, "Oracle JSON path")->required();
    eval_cmd->add_option("--n-test", eval_n_test, "Number of test points");
    eval_cmd->add_option("--seed", eval_seed, "RNG seed");

    std::string topk_model, topk_data;
    int topk_k = 1;
    CLI::App* topk_cmd = app.add_subcommand("topk", "Top-k miss rate on a labeled CSV");
    topk_cmd->add_option("--model", topk_model, "Model JSON path")->required();
    topk_cmd->add_option("--data", topk_data, "Test CSV (header x,y)")->required();
    topk_cmd->add_option("--k", topk_k, "List length")->required();

    std::string curve_config, curve_out;
    int curve_workers = 0;
    CLI::App* curve_cmd = app.add_subcommand("curve", "Run the learning-curve experiment grid");
    curve_cmd->add_option("--config", curve_config, "Experiment config JSON path")->required();
    curve_cmd->add_option("--out", curve_out, "Output CSV path")->required();
    curve_cmd->add_option("--workers", curve_workers, "Worker threads (0 = all cores)");

    double rb_alpha = 0.5, rb_B = 1.0, rb_eps = 1.0, rb_V = 2.0, rb_C = 1.0, rb_delta = 0.1;
    long rb_n = 1000;
    CLI::App* rb_cmd = app.add_subcommand("rate-bound", "Evaluate the closed-form rate bound");
    rb_cmd->add_option("--alpha", rb_alpha, "Noise exponent, strictly inside (0,1)")->required();
    rb_cmd->add_option("--B", rb_B, "Noise constant B")->required();
    rb_cmd->add_option("--eps", rb_eps, "Pairwise mass floor")->required();
    rb_cmd->add_option("--V", rb_V, "VC dimension of the binary class")->required();
    rb_cmd->add_option("--C", rb_C, "Rademacher complexity constant")->required();
    rb_cmd->add_option("--n", rb_n, "Sample size")->required();
    rb_cmd->add_option("--delta", rb_delta, "Confidence level in (0,1)")->required();

    try {
        app.parse(argc, argv);
        if (synth_cmd->parsed()) run_synth(synth);
        if (fit_cmd->parsed()) run_fit(fit);
        if (predict_cmd->parsed()) run_predict(predict_model, predict_x);
        if (eval_cmd->parsed()) run_eval(eval_model, eval_oracle, eval_n_test, eval_seed);
        if (topk_cmd->parsed()) run_topk(topk_model, topk_data, topk_k);
        if (curve_cmd->parsed()) run_curve(curve_config, curve_out, curve_workers);
        if (rb_cmd->parsed())
            run_rate_bound(rb_alpha, rb_B, rb_eps, rb_V, rb_C, rb_n, rb_delta);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const labelrank::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const labelrank::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
