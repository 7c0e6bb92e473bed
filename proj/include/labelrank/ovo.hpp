#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "labelrank/errors.hpp"
#include "labelrank/learners.hpp"
#include "labelrank/permutation.hpp"
#include "labelrank/rng.hpp"
#include "labelrank/synthetic.hpp"

namespace labelrank {

// Anything that can referee all pairwise duels at a query point. duel(k,l,x)
// returns +1 when label l wins and -1 when label k wins, for any k != l,
// with the sign-flip convention duel(l,k) = -duel(k,l).
template <class R>
concept PairwiseRanker = requires(const R& r, int k, int l, double x) {
    { r.k_count() } -> std::convertible_to<int>;
    { r.duel(k, l, x) } -> std::convertible_to<int>;
    { r.tie_break() } -> std::convertible_to<TieBreakPolicy>;
};

// Which binary learner the pipeline fits per label pair.
struct LearnerSpec {
    enum class Kind { stump, linear };

    Kind kind = Kind::stump;
    // linear options
    long steps = 500;
    double step_size = 1.0;
    std::uint64_t seed = 0;

    static LearnerSpec stump() { return {}; }
    static LearnerSpec linear(long steps = 500, double step_size = 1.0, std::uint64_t seed = 0) {
        return {Kind::linear, steps, step_size, seed};
    }
};

// A fitted collection of K(K-1)/2 pairwise classifiers plus the tie-break
// policy applied when scores collide. Immutable once constructed.
class LabelRanker {
  public:
    LabelRanker(int k_count, std::vector<BinaryModel> classifiers, TieBreakPolicy tie_break)
        : k_(k_count), classifiers_(std::move(classifiers)), tie_break_(tie_break) {
        if (k_ < 2) throw parameter_error("LabelRanker: need at least 2 labels");
        const std::size_t expected = Tournament::pair_count(k_);
        if (classifiers_.size() != expected)
            throw dimension_error("LabelRanker: expected " + std::to_string(expected) +
                                  " classifiers, got " + std::to_string(classifiers_.size()));
    }

    int k_count() const { return k_; }
    const TieBreakPolicy& tie_break() const { return tie_break_; }

    const BinaryModel& classifier(int k, int l) const {
        check_pair(k, l);
        return classifiers_[pair_index(k, l)];
    }

    const std::vector<BinaryModel>& classifiers() const { return classifiers_; }

    int duel(int k, int l, double x) const {
        if (k > l) return -duel(l, k, x);
        check_pair(k, l);
        return model_predict(classifiers_[pair_index(k, l)], x);
    }

  private:
    void check_pair(int k, int l) const {
        if (k < 1 || l <= k || l > k_)
            throw parameter_error("LabelRanker: bad label pair (" + std::to_string(k) + "," +
                                  std::to_string(l) + ")");
    }

    std::size_t pair_index(int k, int l) const {
        const std::size_t kk = static_cast<std::size_t>(k - 1);
        return kk * static_cast<std::size_t>(k_) - kk * (kk + 1) / 2 + static_cast<std::size_t>(l - k - 1);
    }

    int k_;
    std::vector<BinaryModel> classifiers_;
    TieBreakPolicy tie_break_;
};

// Referee whose duels are the optimal binary rules of a synthetic oracle.
// Exactly tied posteriors (reachable in floating point where the link
// saturates near a split) are resolved toward the lower label; both labels
// carry equal mass there, so the resolution does not move any risk.
class BayesLabelRanker {
  public:
    explicit BayesLabelRanker(PosteriorOracle oracle, TieBreakPolicy tie_break = {})
        : oracle_(std::move(oracle)), tie_break_(tie_break) {}

    int k_count() const { return oracle_.k_count(); }
    const TieBreakPolicy& tie_break() const { return tie_break_; }
    const PosteriorOracle& oracle() const { return oracle_; }

    int duel(int k, int l, double x) const {
        if (k > l) return -duel(l, k, x);
        const std::vector<double> e = oracle_.eta(x);
        const double ek = e[static_cast<std::size_t>(k) - 1];
        const double el = e[static_cast<std::size_t>(l) - 1];
        if (ek == el) return -1;  // lower label wins a dead heat
        return el > ek ? +1 : -1;
    }

  private:
    PosteriorOracle oracle_;
    TieBreakPolicy tie_break_;
};

// Fits one binary classifier per label pair on the pairwise slices of the
// data. The fits touch disjoint state and the result does not depend on the
// order they run in.
inline LabelRanker fit_ovo(const LabeledDataset& data, const LearnerSpec& learner,
                           TieBreakPolicy tie_break = {}) {
    const int k_count = data.k_count();
    if (k_count < 2) throw parameter_error("fit_ovo: need at least 2 labels, got " + std::to_string(k_count));
    std::vector<BinaryModel> classifiers;
    classifiers.reserve(Tournament::pair_count(k_count));
    for (int k = 1; k <= k_count; ++k)
        for (int l = k + 1; l <= k_count; ++l) {
            const BinaryView view = binary_view(data, k, l);
            if (learner.kind == LearnerSpec::Kind::stump)
                classifiers.emplace_back(fit_stump_erm(view));
            else
                classifiers.emplace_back(fit_linear(view, learner.steps, learner.step_size, learner.seed));
        }
    return LabelRanker(k_count, std::move(classifiers), tie_break);
}

// Duel outcomes at x as a complete directed graph: l beats k exactly when
// duel(k,l,x) = +1.
template <PairwiseRanker R>
Tournament tournament_at(const R& ranker, double x) {
    return Tournament::build(ranker.k_count(),
                             [&](int k, int l) { return ranker.duel(k, l, x) == +1; });
}

// score(k) = 1 + duels lost by label k at x.
template <PairwiseRanker R>
ScoreVector score_labels(const R& ranker, double x) {
    return copeland_ranks(tournament_at(ranker, x));
}

// Scores turned into a full ranking; the flag reports whether the duel graph
// at x contained a cycle (in which case ties were broken by policy).
template <PairwiseRanker R>
std::pair<Permutation, bool> predict_permutation(const R& ranker, double x) {
    const Tournament t = tournament_at(ranker, x);
    const ScoreVector scores = copeland_ranks(t);
    return {ranks_from_scores(scores, ranker.tie_break()), !is_acyclic(t)};
}

// Monte Carlo estimates of ranking risk against a synthetic oracle.
struct RankingRiskReport {
    double mismatch_rate = 0.0;  // P{predicted permutation != optimal one}
    double mean_kendall = 0.0;   // E[kendall_tau(predicted, optimal)]
    double cycle_rate = 0.0;     // fraction of test points with a cyclic duel graph
    long n_test = 0;
    long ties_redrawn = 0;  // test points discarded because eta(x) had exact ties
};

namespace detail {
inline bool has_exact_tie(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i - 1] == values[i]) return true;
    return false;
}
}  // namespace detail

// Draws n_test uniform points, compares the ranker's prediction with the
// oracle-optimal permutation, and averages the mismatch indicator, Kendall
// distance and cycle indicator. Points whose posterior vector carries an
// exact tie are redrawn (and counted); an oracle that is tied everywhere is
// reported as degenerate after 1000 + 10*n_test redraws.
template <PairwiseRanker R>
RankingRiskReport estimate_ranking_risk(const R& ranker, const PosteriorOracle& oracle, long n_test,
                                        std::uint64_t seed) {
    if (oracle.k_count() != ranker.k_count())
        throw dimension_error("estimate_ranking_risk: oracle has " + std::to_string(oracle.k_count()) +
                              " labels, ranker has " + std::to_string(ranker.k_count()));
    if (n_test < 1) throw parameter_error("estimate_ranking_risk: n_test must be positive");
    Rng rng(seed);
    const long max_redraws = 1000 + 10 * n_test;
    long mismatches = 0, cycles = 0, redraws = 0;
    long long kendall_sum = 0;
    for (long i = 0; i < n_test; ++i) {
        double x = 0.0;
        std::vector<double> e;
        for (;;) {
            x = rng.next_double();
            e = oracle.eta(x);
            if (!detail::has_exact_tie(e)) break;
            if (++redraws > max_redraws)
                throw degeneracy_error(
                    "estimate_ranking_risk: oracle posteriors look tied almost everywhere "
                    "(exceeded redraw budget); use pairwise-distinct split points");
        }
        const Permutation optimal = sigma_star(e);
        const auto [predicted, was_cyclic] = predict_permutation(ranker, x);
        if (predicted != optimal) ++mismatches;
        kendall_sum += kendall_tau(predicted, optimal);
        if (was_cyclic) ++cycles;
    }
    RankingRiskReport report;
    report.mismatch_rate = static_cast<double>(mismatches) / static_cast<double>(n_test);
    report.mean_kendall = static_cast<double>(kendall_sum) / static_cast<double>(n_test);
    report.cycle_rate = static_cast<double>(cycles) / static_cast<double>(n_test);
    report.n_test = n_test;
    report.ties_redrawn = redraws;
    return report;
}

// Fraction of labeled test points whose true label is missing from the
// predicted top-k list.
template <PairwiseRanker R>
double topk_error(const R& ranker, const LabeledDataset& test, int k) {
    const int k_count = ranker.k_count();
    if (k < 1 || k > k_count)
        throw parameter_error("topk_error: k must lie in 1.." + std::to_string(k_count) + ", got " +
                              std::to_string(k));
    if (test.k_count() != k_count)
        throw dimension_error("topk_error: test set has " + std::to_string(test.k_count()) +
                              " labels, ranker has " + std::to_string(k_count));
    if (test.empty()) return 0.0;
    long misses = 0;
    for (const auto& p : test.points()) {
        const auto [predicted, was_cyclic] = predict_permutation(ranker, p.x);
        (void)was_cyclic;
        if (predicted.rank_of(p.y) > k) ++misses;
    }
    return static_cast<double>(misses) / static_cast<double>(test.size());
}

}  // namespace labelrank
