#include <catch2/catch.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "labelrank/learners.hpp"
#include "labelrank/rng.hpp"

using namespace labelrank;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BinaryView make_view(std::vector<std::pair<double, int>> points, int k = 1, int l = 2) {
    BinaryView view;
    view.points = std::move(points);
    view.label_neg = k;
    view.label_pos = l;
    for (const auto& [x, y] : view.points) {
        (void)x;
        (y < 0 ? view.n_neg : view.n_pos) += 1;
    }
    return view;
}

// Brute-force ERM oracle: evaluate a representative of every threshold
// interval (below the minimum, between consecutive distinct values, above
// the maximum) for both polarities by direct prediction.
long brute_force_min_errors(const BinaryView& view) {
    if (view.empty()) return 0;
    std::vector<double> xs;
    for (const auto& [x, y] : view.points) {
        (void)y;
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> candidates{-kInf, +kInf};
    for (std::size_t i = 1; i < xs.size(); ++i) candidates.push_back(0.5 * (xs[i - 1] + xs[i]));
    long best = std::numeric_limits<long>::max();
    for (double s : candidates)
        for (int eps : {+1, -1}) {
            const Stump stump{s, eps};
            best = std::min(best, error_count(stump, view));
        }
    return best;
}

BinaryView random_view(Rng& rng, std::size_t max_size = 50) {
    const std::size_t n = rng.next_u64() % (max_size + 1);
    std::vector<std::pair<double, int>> points;
    const bool coarse = (rng.next_u64() % 2) == 0;  // force duplicate x values half the time
    for (std::size_t i = 0; i < n; ++i) {
        double x = rng.next_double();
        if (coarse) x = std::floor(x * 10.0) / 10.0;
        const int y = (rng.next_u64() % 2) ? +1 : -1;
        points.emplace_back(x, y);
    }
    return make_view(std::move(points));
}

}  // namespace

TEST_CASE("stump predictions") {
    CHECK(Stump{0.5, +1}.predict(0.7) == +1);
    CHECK(Stump{0.5, +1}.predict(0.5) == +1);  // boundary counts as >= 0
    CHECK(Stump{0.5, +1}.predict(0.3) == -1);
    CHECK(Stump{0.5, -1}.predict(0.3) == +1);
    CHECK(Stump{0.5, -1}.predict(0.7) == -1);
    // Sentinels behave as constant classifiers.
    CHECK(Stump{-kInf, +1}.predict(0.0) == +1);
    CHECK(Stump{-kInf, -1}.predict(0.0) == -1);
    CHECK(Stump{+kInf, +1}.predict(0.0) == -1);
    CHECK(Stump{+kInf, -1}.predict(0.0) == +1);
}

TEST_CASE("binary_view extraction") {
    const LabeledDataset data({{0.1, 1}, {0.2, 1}, {0.3, 2}, {0.4, 3}}, 3);

    const BinaryView v12 = binary_view(data, 1, 2);
    REQUIRE(v12.size() == 3);
    CHECK(v12.points[0] == std::pair<double, int>{0.1, -1});
    CHECK(v12.points[1] == std::pair<double, int>{0.2, -1});
    CHECK(v12.points[2] == std::pair<double, int>{0.3, +1});
    CHECK(v12.n_neg == 2);
    CHECK(v12.n_pos == 1);

    CHECK(binary_view(data, 2, 3).size() == 2);
    CHECK_THROWS_AS(binary_view(data, 2, 2), parameter_error);
    CHECK_THROWS_AS(binary_view(data, 1, 4), parameter_error);
}

TEST_CASE("pairwise views cover each point K-1 times") {
    Rng rng(404);
    std::vector<LabeledPoint> points;
    for (int i = 0; i < 200; ++i)
        points.push_back({rng.next_double(), 1 + static_cast<int>(rng.next_u64() % 5)});
    const LabeledDataset data(std::move(points), 5);
    std::size_t total = 0;
    for (int k = 1; k <= 5; ++k)
        for (int l = k + 1; l <= 5; ++l) total += binary_view(data, k, l).size();
    CHECK(total == 4 * data.size());
}

TEST_CASE("empirical_binary_risk") {
    const BinaryView empty = make_view({});
    const Stump any{0.5, +1};
    CHECK(empirical_binary_risk(any, empty) == 0.0);

    const BinaryView v = make_view({{0.1, -1}, {0.2, -1}, {0.8, +1}});
    CHECK(empirical_binary_risk(Stump{0.5, +1}, v) == 0.0);

    const BinaryView mostly_neg =
        make_view({{0.1, -1}, {0.2, -1}, {0.3, -1}, {0.4, +1}, {0.5, +1}});
    CHECK(empirical_binary_risk(Stump{-kInf, +1}, mostly_neg) == Approx(0.6));

    // Sign-flip complement identity on nonempty views.
    struct Flipped {
        Stump inner;
        int predict(double x) const { return -inner.predict(x); }
    };
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        BinaryView view = random_view(rng);
        if (view.empty()) continue;
        const Stump stump{rng.next_double(), (rng.next_u64() % 2) ? +1 : -1};
        const double risk = empirical_binary_risk(stump, view);
        CHECK(risk >= 0.0);
        CHECK(risk <= 1.0);
        CHECK(risk == Approx(1.0 - empirical_binary_risk(Flipped{stump}, view)));
    }
}

TEST_CASE("fit_stump_erm examples") {
    const BinaryView v = make_view({{0.1, -1}, {0.2, -1}, {0.8, +1}});
    const Stump fitted = fit_stump_erm(v);
    CHECK(fitted.polarity == +1);
    CHECK(fitted.threshold == Approx(0.5));
    CHECK(error_count(fitted, v) == 0);

    const BinaryView all_pos = make_view({{0.3, +1}, {0.6, +1}});
    const Stump sentinel = fit_stump_erm(all_pos);
    CHECK(sentinel.polarity == +1);
    CHECK(sentinel.threshold == -kInf);
    CHECK(error_count(sentinel, all_pos) == 0);

    const Stump from_empty = fit_stump_erm(make_view({}));
    CHECK(from_empty.polarity == +1);
    CHECK(from_empty.threshold == -kInf);
}

TEST_CASE("fit_stump_erm achieves the brute-force minimum") {
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const BinaryView view = random_view(rng);
        const Stump fitted = fit_stump_erm(view);
        CHECK(error_count(fitted, view) == brute_force_min_errors(view));
    }
}

TEST_CASE("stump ERM risk is invariant under increasing reparametrization") {
    Rng rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const BinaryView view = random_view(rng);
        BinaryView warped = view;
        for (auto& [x, y] : warped.points) {
            (void)y;
            x = x * x * x;  // strictly increasing on [0,1]
        }
        CHECK(error_count(fit_stump_erm(view), view) ==
              error_count(fit_stump_erm(warped), warped));
    }
}

TEST_CASE("fit_linear") {
    CHECK_THROWS_AS(fit_linear(make_view({{0.1, 1}}), -1, 0.1), parameter_error);
    CHECK_THROWS_AS(fit_linear(make_view({{0.1, 1}}), 10, 0.0), parameter_error);
    CHECK_THROWS_AS(fit_linear(make_view({{std::nan(""), 1}}), 10, 0.1), validation_error);

    SECTION("zero steps gives the zero model, predicting +1 everywhere") {
        const LinearBinaryModel model = fit_linear(make_view({{0.2, -1}, {0.8, +1}}), 0, 0.5);
        CHECK(model.weight[0] == 0.0);
        CHECK(model.bias == 0.0);
        CHECK(model.predict(-3.0) == +1);
        CHECK(model.predict(0.7) == +1);
    }

    SECTION("separable view reaches zero risk") {
        const BinaryView v =
            make_view({{0.05, -1}, {0.2, -1}, {0.35, -1}, {0.65, +1}, {0.8, +1}, {0.95, +1}});
        const LinearBinaryModel model = fit_linear(v, 500, 2.0);
        CHECK(empirical_binary_risk(model, v) == 0.0);
    }

    SECTION("loss is non-increasing along the descent path") {
        Rng rng(31337);
        const BinaryView view = random_view(rng, 30);
        if (!view.empty()) {
            double prev = logistic_loss(LinearBinaryModel{}, view);
            for (long steps = 1; steps <= 40; ++steps) {
                const double cur = logistic_loss(fit_linear(view, steps, 0.1), view);
                CHECK(cur <= prev + 1e-12);
                prev = cur;
            }
        }
    }
}
