#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "labelrank/errors.hpp"
#include "labelrank/permutation.hpp"
#include "labelrank/rng.hpp"

namespace labelrank {

// Sigmoid-like link on [0,1] crossing 1/2 at x = 1/2, with a margin profile
// controlled by alpha:
//
//   h_alpha(x) = 1/2 + 1/2 * sign(2x - 1) * |2x - 1|^((1-alpha)/alpha)
//
// alpha = 1/2 is the identity; alpha -> 1 steepens towards a hard step,
// alpha -> 0 flattens the neighborhood of 1/2. At alpha = 1 the exponent is
// zero and |2x-1|^0 is taken to be 1 everywhere, including x = 1/2, so the
// function is the step 1{2x > 1} (value 0 at x = 1/2).
inline double h_alpha(double alpha, double x) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw parameter_error("h_alpha: alpha must lie in (0,1], got " + std::to_string(alpha));
    const double exponent = (1.0 - alpha) / alpha;
    const double sign = (2.0 * x > 1.0) ? 1.0 : -1.0;
    const double magnitude = (exponent == 0.0) ? 1.0 : std::pow(std::abs(2.0 * x - 1.0), exponent);
    return 0.5 + 0.5 * sign * magnitude;
}

// h_alpha reparametrized so that the crossing sits at x0 instead of 1/2:
// the left piece [0,x0) maps onto [0,1/2), the right piece [x0,1] onto
// [1/2,1].
inline double h_alpha_warped(double alpha, double x0, double x) {
    if (!(x0 > 0.0 && x0 < 1.0))
        throw parameter_error("h_alpha_warped: x0 must lie in (0,1), got " + std::to_string(x0));
    if (x < x0) return h_alpha(alpha, x / (2.0 * x0));
    return h_alpha(alpha, 0.5 + (x - x0) / (2.0 * (1.0 - x0)));
}

// Synthetic conditional label distribution on [0,1] over K = 2^(depth+1)
// labels. Level d contributes the factor h_{alpha,splits[d]}(x) to labels
// whose bit d of (k-1) is set and its complement otherwise, so the K
// products telescope to 1 at every x.
//
// Note that with all splits equal (the default), labels sharing a popcount
// of (k-1) receive identical products; pass pairwise-distinct splits to get
// posteriors that are almost everywhere tie-free.
class PosteriorOracle {
  public:
    PosteriorOracle(int depth, double alpha, std::vector<double> splits = {})
        : depth_(depth), alpha_(alpha), splits_(std::move(splits)) {
        if (depth_ < 0 || depth_ > 20)
            throw parameter_error("PosteriorOracle: depth must lie in 0..20, got " + std::to_string(depth_));
        if (!(alpha_ > 0.0) || alpha_ > 1.0)
            throw parameter_error("PosteriorOracle: alpha must lie in (0,1], got " + std::to_string(alpha_));
        if (splits_.empty()) splits_.assign(static_cast<std::size_t>(depth_) + 1, 0.5);
        if (splits_.size() != static_cast<std::size_t>(depth_) + 1)
            throw parameter_error("PosteriorOracle: expected " + std::to_string(depth_ + 1) +
                                  " split points, got " + std::to_string(splits_.size()));
        for (double s : splits_)
            if (!(s > 0.0 && s < 1.0))
                throw parameter_error("PosteriorOracle: split " + std::to_string(s) + " outside (0,1)");
    }

    int depth() const { return depth_; }
    double alpha() const { return alpha_; }
    const std::vector<double>& splits() const { return splits_; }
    int k_count() const { return 1 << (depth_ + 1); }

    // Posterior vector (eta_1(x), ..., eta_K(x)); sums to 1 by construction.
    std::vector<double> eta(double x) const {
        std::vector<double> probs{1.0};
        for (int d = 0; d <= depth_; ++d) {
            const double hd = h_alpha_warped(alpha_, splits_[static_cast<std::size_t>(d)], x);
            const std::size_t half = probs.size();
            probs.resize(half * 2);
            for (std::size_t i = 0; i < half; ++i) {
                probs[half + i] = probs[i] * hd;
                probs[i] *= (1.0 - hd);
            }
        }
        return probs;
    }

  private:
    int depth_;
    double alpha_;
    std::vector<double> splits_;
};

// Permutation ranking labels by decreasing posterior mass; rank 1 is the
// argmax. Exact ties are refused: the caller decides whether to perturb or
// skip the offending point.
inline Permutation sigma_star(const std::vector<double>& eta_vec) {
    const int k = static_cast<int>(eta_vec.size());
    if (k < 1) throw parameter_error("sigma_star: empty posterior vector");
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ea = eta_vec[static_cast<std::size_t>(a) - 1];
        const double eb = eta_vec[static_cast<std::size_t>(b) - 1];
        if (ea != eb) return ea > eb;
        return a < b;
    });
    for (int r = 1; r < k; ++r)
        if (eta_vec[static_cast<std::size_t>(order[static_cast<std::size_t>(r) - 1]) - 1] ==
            eta_vec[static_cast<std::size_t>(order[static_cast<std::size_t>(r)]) - 1])
            throw degeneracy_error("sigma_star: tied posterior values at labels " +
                                   std::to_string(order[static_cast<std::size_t>(r) - 1]) + " and " +
                                   std::to_string(order[static_cast<std::size_t>(r)]));
    std::vector<int> ranks(static_cast<std::size_t>(k));
    for (int r = 1; r <= k; ++r) ranks[static_cast<std::size_t>(order[static_cast<std::size_t>(r) - 1]) - 1] = r;
    return Permutation(std::move(ranks));
}

// Optimal duel between labels k < l: +1 when label l carries more posterior
// mass, -1 when label k does. Exact equality is a degenerate duel.
inline int bayes_binary(const std::vector<double>& eta_vec, int k, int l) {
    const int kc = static_cast<int>(eta_vec.size());
    if (k < 1 || l <= k || l > kc)
        throw parameter_error("bayes_binary: need 1 <= k < l <= " + std::to_string(kc));
    const double ek = eta_vec[static_cast<std::size_t>(k) - 1];
    const double el = eta_vec[static_cast<std::size_t>(l) - 1];
    if (ek == el)
        throw degeneracy_error("bayes_binary: tied posteriors for labels " + std::to_string(k) + " and " +
                               std::to_string(l));
    return el > ek ? +1 : -1;
}

struct LabeledPoint {
    double x;
    int y;  // 1-based label
};

// An i.i.d. sample (x_i, y_i) with x in [0,1] and y in 1..k_count.
class LabeledDataset {
  public:
    LabeledDataset(std::vector<LabeledPoint> points, int k_count)
        : points_(std::move(points)), k_(k_count) {
        if (k_ < 1) throw parameter_error("LabeledDataset: k_count must be positive");
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i].y < 1 || points_[i].y > k_)
                throw validation_error("LabeledDataset: label " + std::to_string(points_[i].y) + " at row " +
                                       std::to_string(i) + " is outside 1.." + std::to_string(k_));
    }

    int k_count() const { return k_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<LabeledPoint>& points() const { return points_; }

    // n_k for k = 1..K, at index k-1.
    std::vector<long> label_counts() const {
        std::vector<long> counts(static_cast<std::size_t>(k_), 0);
        for (const auto& p : points_) ++counts[static_cast<std::size_t>(p.y) - 1];
        return counts;
    }

  private:
    std::vector<LabeledPoint> points_;
    int k_;
};

// n independent draws: x uniform on [0,1), y categorical with weights
// eta(x). Deterministic given the seed.
inline LabeledDataset sample_dataset(const PosteriorOracle& oracle, long n, std::uint64_t seed) {
    if (n < 0) throw parameter_error("sample_dataset: negative sample count");
    Rng rng(seed);
    std::vector<LabeledPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double x = rng.next_double();
        const std::vector<double> e = oracle.eta(x);
        const int y = static_cast<int>(rng.pick_weighted(e)) + 1;
        points.push_back({x, y});
    }
    return LabeledDataset(std::move(points), oracle.k_count());
}

namespace detail {

// Sequentially assigns ranks next_rank, next_rank+1, ... to the given labels,
// drawing each stage with probability proportional to the remaining weights.
// Zero-weight labels are never drawn while positive mass remains; if only
// zero weights remain, the tail is filled in ascending label order. `labels`
// must be sorted ascending.
inline void sequential_rank_fill(std::vector<int>& ranks, std::vector<int> labels,
                                 std::vector<double> weights, int next_rank, Rng& rng) {
    while (!labels.empty()) {
        double total = 0.0;
        for (double w : weights) total += w;
        std::size_t chosen = 0;
        if (total > 0.0) chosen = rng.pick_weighted(weights);
        ranks[static_cast<std::size_t>(labels[chosen]) - 1] = next_rank++;
        labels.erase(labels.begin() + static_cast<std::ptrdiff_t>(chosen));
        weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(chosen));
    }
}

}  // namespace detail

// Random permutation from the sequential choice model: the label at rank 1
// is drawn with probability w_k / sum(w), the next rank from the remaining
// labels with renormalized weights, and so on.
inline Permutation plackett_luce_sample(const std::vector<double>& weights, std::uint64_t seed) {
    const int k = static_cast<int>(weights.size());
    if (k < 1) throw parameter_error("plackett_luce_sample: empty weight vector");
    for (int i = 0; i < k; ++i)
        if (!(weights[static_cast<std::size_t>(i)] > 0.0))
            throw parameter_error("plackett_luce_sample: weight at index " + std::to_string(i + 1) +
                                  " must be positive");
    Rng rng(seed);
    std::vector<int> ranks(static_cast<std::size_t>(k), 0);
    std::vector<int> labels(static_cast<std::size_t>(k));
    std::iota(labels.begin(), labels.end(), 1);
    detail::sequential_rank_fill(ranks, std::move(labels), weights, 1, rng);
    return Permutation(std::move(ranks));
}

// Couples an observed label y with a full random permutation: y is pinned at
// rank 1 and the remaining labels are ordered by a sequential draw over the
// leftover weights. Composed with y ~ Categorical(eta), the output is
// distributed like plackett_luce_sample(eta).
inline Permutation couple_sigma(int y, const std::vector<double>& eta_vec, std::uint64_t seed) {
    const int k = static_cast<int>(eta_vec.size());
    if (y < 1 || y > k) throw parameter_error("couple_sigma: label " + std::to_string(y) + " out of range");
    if (!(eta_vec[static_cast<std::size_t>(y) - 1] > 0.0))
        throw parameter_error("couple_sigma: observed label must carry positive mass");
    for (int i = 0; i < k; ++i)
        if (eta_vec[static_cast<std::size_t>(i)] < 0.0)
            throw parameter_error("couple_sigma: negative weight at index " + std::to_string(i + 1));
    Rng rng(seed);
    std::vector<int> ranks(static_cast<std::size_t>(k), 0);
    ranks[static_cast<std::size_t>(y) - 1] = 1;
    std::vector<int> labels;
    std::vector<double> weights;
    labels.reserve(static_cast<std::size_t>(k) - 1);
    weights.reserve(static_cast<std::size_t>(k) - 1);
    for (int label = 1; label <= k; ++label) {
        if (label == y) continue;
        labels.push_back(label);
        weights.push_back(eta_vec[static_cast<std::size_t>(label) - 1]);
    }
    detail::sequential_rank_fill(ranks, std::move(labels), std::move(weights), 2, rng);
    return Permutation(std::move(ranks));
}

// Empirical margin and mass floor of an oracle, probed on a uniform grid.
// h_margin is the smallest |p_kl(x) - 1/2| over grid points and pairs with
// eta_k + eta_l > 0, where p_kl = eta_k / (eta_k + eta_l); eps_min is the
// smallest pairwise mass eta_k + eta_l. Bookkeeping for experiments only.
struct NoiseDiagnostics {
    double h_margin;
    double eps_min;
};

inline NoiseDiagnostics noise_diagnostics(const PosteriorOracle& oracle, long grid_size) {
    if (grid_size < 2) throw parameter_error("noise_diagnostics: grid_size must be at least 2");
    const int k = oracle.k_count();
    double h_margin = 0.5;
    double eps_min = 1.0;
    for (long i = 0; i < grid_size; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        const std::vector<double> e = oracle.eta(x);
        for (int a = 1; a <= k; ++a)
            for (int b = a + 1; b <= k; ++b) {
                const double mass = e[static_cast<std::size_t>(a) - 1] + e[static_cast<std::size_t>(b) - 1];
                eps_min = std::min(eps_min, mass);
                if (mass > 0.0) {
                    const double p = e[static_cast<std::size_t>(a) - 1] / mass;
                    h_margin = std::min(h_margin, std::abs(p - 0.5));
                }
            }
    }
    return {h_margin, eps_min};
}

}  // namespace labelrank
