#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "labelrank/errors.hpp"
#include "labelrank/synthetic.hpp"

namespace labelrank {

// 1-D threshold classifier: predict(x) = 2*1{(x - threshold)*polarity >= 0} - 1.
// The (-inf, +1) sentinel predicts +1 everywhere and is what fitting an empty
// view returns.
struct Stump {
    double threshold = -std::numeric_limits<double>::infinity();
    int polarity = +1;

    int predict(double x) const { return ((x - threshold) * polarity >= 0.0) ? +1 : -1; }
};

// Affine score with sign decision; sign(0) = +1.
struct LinearBinaryModel {
    std::vector<double> weight{0.0};
    double bias = 0.0;

    int predict(double x) const {
        const double score = (weight.empty() ? 0.0 : weight[0] * x) + bias;
        return score >= 0.0 ? +1 : -1;
    }
};

using BinaryModel = std::variant<Stump, LinearBinaryModel>;

template <class Model>
int model_predict(const Model& m, double x) {
    return m.predict(x);
}
inline int model_predict(const BinaryModel& m, double x) {
    return std::visit([x](const auto& inner) { return inner.predict(x); }, m);
}

// The two-label slice of a dataset, relabeled to +/-1: +1 for the higher
// source label, -1 for the lower one.
struct BinaryView {
    std::vector<std::pair<double, int>> points;  // (x, +/-1)
    int label_neg = 0;                           // source label mapped to -1
    int label_pos = 0;                           // source label mapped to +1
    long n_neg = 0;
    long n_pos = 0;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

inline BinaryView binary_view(const LabeledDataset& data, int k, int l) {
    if (k < 1 || l <= k || l > data.k_count())
        throw parameter_error("binary_view: need 1 <= k < l <= " + std::to_string(data.k_count()));
    BinaryView view;
    view.label_neg = k;
    view.label_pos = l;
    for (const auto& p : data.points()) {
        if (p.y == k) {
            view.points.emplace_back(p.x, -1);
            ++view.n_neg;
        } else if (p.y == l) {
            view.points.emplace_back(p.x, +1);
            ++view.n_pos;
        }
    }
    return view;
}

template <class Model>
long error_count(const Model& model, const BinaryView& view) {
    long errors = 0;
    for (const auto& [x, y] : view.points)
        if (model_predict(model, x) != y) ++errors;
    return errors;
}

// Fraction of the view misclassified; an empty view counts as 0 (the 0/0
// convention, so unobserved label pairs are costless).
template <class Model>
double empirical_binary_risk(const Model& model, const BinaryView& view) {
    if (view.empty()) return 0.0;
    return static_cast<double>(error_count(model, view)) / static_cast<double>(view.size());
}

// Exact empirical risk minimizer over all stumps, by sorting and scanning
// the n+1 threshold intervals (midpoints between consecutive distinct x
// values plus the -inf/+inf sentinels) for both polarities. Ties among
// minimizers go to the smallest threshold, then polarity +1.
inline Stump fit_stump_erm(const BinaryView& view) {
    if (view.empty()) return Stump{};

    std::vector<std::pair<double, int>> pts = view.points;
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // Distinct x values with positive/negative counts per group.
    std::vector<double> values;
    std::vector<long> pos, neg;
    for (const auto& [x, y] : pts) {
        if (values.empty() || values.back() != x) {
            values.push_back(x);
            pos.push_back(0);
            neg.push_back(0);
        }
        (y > 0 ? pos.back() : neg.back()) += 1;
    }
    const std::size_t m = values.size();
    std::vector<long> pos_before(m + 1, 0), neg_before(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) {
        pos_before[j + 1] = pos_before[j] + pos[j];
        neg_before[j + 1] = neg_before[j] + neg[j];
    }
    const long total_pos = pos_before[m];
    const long total_neg = neg_before[m];

    const double inf = std::numeric_limits<double>::infinity();
    long best_errors = std::numeric_limits<long>::max();
    Stump best;
    for (std::size_t j = 0; j <= m; ++j) {
        const double s = (j == 0) ? -inf : (j == m) ? +inf : 0.5 * (values[j - 1] + values[j]);
        // polarity +1 predicts +1 on x >= s
        const long errors_plus = pos_before[j] + (total_neg - neg_before[j]);
        if (errors_plus < best_errors) {
            best_errors = errors_plus;
            best = Stump{s, +1};
        }
        // polarity -1 predicts +1 on x <= s
        const long errors_minus = neg_before[j] + (total_pos - pos_before[j]);
        if (errors_minus < best_errors) {
            best_errors = errors_minus;
            best = Stump{s, -1};
        }
    }
    return best;
}

// Mean logistic loss of a linear model on a view; numerically stable form.
inline double logistic_loss(const LinearBinaryModel& model, const BinaryView& view) {
    if (view.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [x, y] : view.points) {
        const double margin = y * ((model.weight.empty() ? 0.0 : model.weight[0] * x) + model.bias);
        sum += margin > 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
    }
    return sum / static_cast<double>(view.size());
}

// Full-batch gradient descent on the mean logistic loss, from the zero
// model. Deterministic given its inputs; the seed is reserved for optional
// shuffling and unused in full-batch mode.
inline LinearBinaryModel fit_linear(const BinaryView& view, long steps, double step_size,
                                    std::uint64_t /*seed*/ = 0) {
    if (steps < 0) throw parameter_error("fit_linear: steps must be nonnegative");
    if (!(step_size > 0.0)) throw parameter_error("fit_linear: step_size must be positive");
    for (const auto& [x, y] : view.points) {
        (void)y;
        if (!std::isfinite(x)) throw validation_error("fit_linear: non-finite feature value");
    }
    LinearBinaryModel model;
    if (view.empty()) return model;
    const double n = static_cast<double>(view.size());
    for (long step = 0; step < steps; ++step) {
        double grad_w = 0.0, grad_b = 0.0;
        for (const auto& [x, y] : view.points) {
            const double margin = y * (model.weight[0] * x + model.bias);
            const double p = 1.0 / (1.0 + std::exp(margin));  // sigmoid(-margin)
            grad_w -= y * x * p;
            grad_b -= y * p;
        }
        model.weight[0] -= step_size * grad_w / n;
        model.bias -= step_size * grad_b / n;
    }
    return model;
}

}  // namespace labelrank
