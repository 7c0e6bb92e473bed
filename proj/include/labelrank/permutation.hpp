#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "labelrank/errors.hpp"
#include "labelrank/rng.hpp"

namespace labelrank {

// Rank assignment over K labels. ranks()[k-1] is the rank of label k, with
// rank 1 meaning "on top". Labels and ranks are both 1-based throughout.
class Permutation {
  public:
    explicit Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
        const int k = k_count();
        if (k < 1) throw validation_error("Permutation: needs at least one label");
        std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
        for (int label = 1; label <= k; ++label) {
            const int r = ranks_[static_cast<std::size_t>(label) - 1];
            if (r < 1 || r > k)
                throw validation_error("Permutation: rank " + std::to_string(r) + " at index " +
                                       std::to_string(label) + " is outside 1.." + std::to_string(k));
            if (seen[static_cast<std::size_t>(r)])
                throw validation_error("Permutation: duplicate rank " + std::to_string(r) +
                                       " at index " + std::to_string(label));
            seen[static_cast<std::size_t>(r)] = 1;
        }
    }

    static Permutation identity(int k_count) {
        std::vector<int> r(static_cast<std::size_t>(k_count));
        std::iota(r.begin(), r.end(), 1);
        return Permutation(std::move(r));
    }

    int k_count() const { return static_cast<int>(ranks_.size()); }

    // sigma(label), 1-based on both sides.
    int rank_of(int label) const { return ranks_[static_cast<std::size_t>(label) - 1]; }

    const std::vector<int>& ranks() const { return ranks_; }

    bool operator==(const Permutation& other) const { return ranks_ == other.ranks_; }
    bool operator!=(const Permutation& other) const { return !(*this == other); }

  private:
    std::vector<int> ranks_;
};

// The inverse view: invert(p).rank_of(r) is the label placed at rank r.
inline Permutation invert(const Permutation& p) {
    const int k = p.k_count();
    std::vector<int> inv(static_cast<std::size_t>(k));
    for (int label = 1; label <= k; ++label)
        inv[static_cast<std::size_t>(p.rank_of(label)) - 1] = label;
    return Permutation(std::move(inv));
}

// Label occupying the given rank; linear scan through the inverse relation.
inline int label_at_rank(const Permutation& p, int rank) {
    for (int label = 1; label <= p.k_count(); ++label)
        if (p.rank_of(label) == rank) return label;
    throw parameter_error("label_at_rank: rank " + std::to_string(rank) + " out of range");
}

namespace detail {
inline void require_same_k(const Permutation& a, const Permutation& b, const char* op) {
    if (a.k_count() != b.k_count())
        throw dimension_error(std::string(op) + ": permutations over " + std::to_string(a.k_count()) +
                              " and " + std::to_string(b.k_count()) + " labels");
}
}  // namespace detail

// Number of label pairs the two rankings order oppositely.
inline long kendall_tau(const Permutation& a, const Permutation& b) {
    detail::require_same_k(a, b, "kendall_tau");
    const int k = a.k_count();
    long discordant = 0;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            const long da = a.rank_of(i) - a.rank_of(j);
            const long db = b.rank_of(i) - b.rank_of(j);
            if (da * db < 0) ++discordant;
        }
    return discordant;
}

// Sum of absolute rank displacements.
inline long footrule_distance(const Permutation& a, const Permutation& b) {
    detail::require_same_k(a, b, "footrule_distance");
    long sum = 0;
    for (int i = 1; i <= a.k_count(); ++i) {
        const long d = a.rank_of(i) - b.rank_of(i);
        sum += d < 0 ? -d : d;
    }
    return sum;
}

// Sum of squared rank displacements.
inline long spearman_rho_distance(const Permutation& a, const Permutation& b) {
    detail::require_same_k(a, b, "spearman_rho_distance");
    long sum = 0;
    for (int i = 1; i <= a.k_count(); ++i) {
        const long d = a.rank_of(i) - b.rank_of(i);
        sum += d * d;
    }
    return sum;
}

// Number of labels whose ranks disagree.
inline long hamming_distance(const Permutation& a, const Permutation& b) {
    detail::require_same_k(a, b, "hamming_distance");
    long count = 0;
    for (int i = 1; i <= a.k_count(); ++i)
        if (a.rank_of(i) != b.rank_of(i)) ++count;
    return count;
}

inline long zero_one_distance(const Permutation& a, const Permutation& b) {
    detail::require_same_k(a, b, "zero_one_distance");
    return a == b ? 0 : 1;
}

enum class Metric { kendall, footrule, spearman_rho, hamming, zero_one };

inline double permutation_distance(Metric metric, const Permutation& a, const Permutation& b) {
    switch (metric) {
        case Metric::kendall: return static_cast<double>(kendall_tau(a, b));
        case Metric::footrule: return static_cast<double>(footrule_distance(a, b));
        case Metric::spearman_rho: return static_cast<double>(spearman_rho_distance(a, b));
        case Metric::hamming: return static_cast<double>(hamming_distance(a, b));
        case Metric::zero_one: return static_cast<double>(zero_one_distance(a, b));
    }
    throw parameter_error("permutation_distance: unknown metric");
}

// Orientation of every duel among K labels: for each unordered pair exactly
// one direction holds. Stored as one flag per pair (k < l): whether the
// higher-numbered label wins.
class Tournament {
  public:
    Tournament(int k_count, std::vector<std::uint8_t> higher_label_wins)
        : k_(k_count), higher_wins_(std::move(higher_label_wins)) {
        if (k_ < 2) throw parameter_error("Tournament: need at least 2 labels");
        if (higher_wins_.size() != pair_count(k_))
            throw dimension_error("Tournament: expected " + std::to_string(pair_count(k_)) +
                                  " pair orientations, got " + std::to_string(higher_wins_.size()));
    }

    // pred(k, l) for k < l returns true when label l beats label k.
    template <class WinnerPred>
    static Tournament build(int k_count, WinnerPred&& pred) {
        std::vector<std::uint8_t> orient;
        orient.reserve(pair_count(k_count));
        for (int k = 1; k <= k_count; ++k)
            for (int l = k + 1; l <= k_count; ++l) orient.push_back(pred(k, l) ? 1 : 0);
        return Tournament(k_count, std::move(orient));
    }

    // Bit i of `bits` orients the i-th pair in (1,2),(1,3),...,(K-1,K) order:
    // set means the higher label wins. Handy for exhaustive enumeration.
    static Tournament from_bits(int k_count, std::uint64_t bits) {
        const std::size_t n = pair_count(k_count);
        if (n > 64) throw parameter_error("Tournament::from_bits: too many pairs for a 64-bit mask");
        std::vector<std::uint8_t> orient(n);
        for (std::size_t i = 0; i < n; ++i) orient[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
        return Tournament(k_count, std::move(orient));
    }

    int k_count() const { return k_; }

    bool beats(int winner, int loser) const {
        check_label(winner);
        check_label(loser);
        if (winner == loser) throw parameter_error("Tournament::beats: identical labels");
        if (winner < loser) return higher_wins_[pair_index(winner, loser)] == 0;
        return higher_wins_[pair_index(loser, winner)] == 1;
    }

    static std::size_t pair_count(int k_count) {
        return static_cast<std::size_t>(k_count) * (k_count - 1) / 2;
    }

  private:
    void check_label(int label) const {
        if (label < 1 || label > k_)
            throw parameter_error("Tournament: label " + std::to_string(label) + " out of range");
    }

    // Lexicographic index of pair (k, l), k < l, both 1-based.
    std::size_t pair_index(int k, int l) const {
        const std::size_t kk = static_cast<std::size_t>(k - 1);
        return kk * static_cast<std::size_t>(k_) - kk * (kk + 1) / 2 + static_cast<std::size_t>(l - k - 1);
    }

    int k_;
    std::vector<std::uint8_t> higher_wins_;
};

// Scores of the form 1 + duels lost; a bijection of 1..K exactly when the
// underlying tournament is acyclic.
class ScoreVector {
  public:
    explicit ScoreVector(std::vector<int> scores) : scores_(std::move(scores)) {
        const int k = k_count();
        if (k < 1) throw validation_error("ScoreVector: needs at least one label");
        long sum = 0;
        for (int label = 1; label <= k; ++label) {
            const int s = scores_[static_cast<std::size_t>(label) - 1];
            if (s < 1 || s > k)
                throw validation_error("ScoreVector: score " + std::to_string(s) + " at index " +
                                       std::to_string(label) + " is outside 1.." + std::to_string(k));
            sum += s - 1;
        }
        const long expected = static_cast<long>(k) * (k - 1) / 2;
        if (sum != expected)
            throw validation_error("ScoreVector: losses sum to " + std::to_string(sum) + ", expected " +
                                   std::to_string(expected));
    }

    int k_count() const { return static_cast<int>(scores_.size()); }
    int score_of(int label) const { return scores_[static_cast<std::size_t>(label) - 1]; }
    const std::vector<int>& scores() const { return scores_; }

    bool is_bijection() const {
        std::vector<char> seen(scores_.size() + 1, 0);
        for (int s : scores_) {
            if (seen[static_cast<std::size_t>(s)]) return false;
            seen[static_cast<std::size_t>(s)] = 1;
        }
        return true;
    }

  private:
    std::vector<int> scores_;
};

// score(k) = 1 + number of duels label k lost. Equivalently (K+1-C(k))/2 in
// terms of the Copeland score C(k) = wins - losses.
inline ScoreVector copeland_ranks(const Tournament& t) {
    const int k = t.k_count();
    std::vector<int> scores(static_cast<std::size_t>(k), 1);
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
            if (t.beats(a, b))
                ++scores[static_cast<std::size_t>(b) - 1];
            else
                ++scores[static_cast<std::size_t>(a) - 1];
        }
    return ScoreVector(std::move(scores));
}

// True when the beats relation is transitive. A complete tournament is
// transitive exactly when it contains no directed 3-cycle.
inline bool is_acyclic(const Tournament& t) {
    const int k = t.k_count();
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b) {
            if (b == a) continue;
            if (!t.beats(a, b)) continue;
            for (int c = 1; c <= k; ++c) {
                if (c == a || c == b) continue;
                if (t.beats(b, c) && !t.beats(a, c)) return false;
            }
        }
    return true;
}

// How score ties are resolved when converting scores into a full ranking.
struct TieBreakPolicy {
    enum class Mode { lowest_label_first, seeded_random };

    Mode mode = Mode::lowest_label_first;
    std::uint64_t seed = 0;

    static TieBreakPolicy lowest_label() { return {}; }
    static TieBreakPolicy seeded(std::uint64_t seed) { return {Mode::seeded_random, seed}; }
};

// Orders labels by ascending score; tied groups are resolved by the policy.
// When the scores already form a bijection the output equals them exactly.
inline Permutation ranks_from_scores(const ScoreVector& s, const TieBreakPolicy& tb) {
    const int k = s.k_count();
    std::vector<std::uint64_t> priority(static_cast<std::size_t>(k), 0);
    if (tb.mode == TieBreakPolicy::Mode::seeded_random) {
        Rng rng(tb.seed);
        for (auto& p : priority) p = rng.next_u64();
    }
    std::vector<int> labels(static_cast<std::size_t>(k));
    std::iota(labels.begin(), labels.end(), 1);
    std::sort(labels.begin(), labels.end(), [&](int a, int b) {
        if (s.score_of(a) != s.score_of(b)) return s.score_of(a) < s.score_of(b);
        const std::uint64_t pa = priority[static_cast<std::size_t>(a) - 1];
        const std::uint64_t pb = priority[static_cast<std::size_t>(b) - 1];
        if (pa != pb) return pa < pb;
        return a < b;
    });
    std::vector<int> ranks(static_cast<std::size_t>(k));
    for (int r = 1; r <= k; ++r) ranks[static_cast<std::size_t>(labels[static_cast<std::size_t>(r) - 1]) - 1] = r;
    return Permutation(std::move(ranks));
}

}  // namespace labelrank
