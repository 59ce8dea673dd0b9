#include "subprof/topicselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "subprof/error.hpp"

namespace subprof {

SortedTopicDist SortedTopicDist::from_unsorted(std::span<const double> probs) {
    SortedTopicDist dist;
    dist.topic_ids.resize(probs.size());
    std::iota(dist.topic_ids.begin(), dist.topic_ids.end(), 0);
    std::stable_sort(dist.topic_ids.begin(), dist.topic_ids.end(),
                     [&](int a, int b) { return probs[static_cast<std::size_t>(a)] > probs[static_cast<std::size_t>(b)]; });
    dist.probs.reserve(probs.size());
    for (int id : dist.topic_ids) dist.probs.push_back(probs[static_cast<std::size_t>(id)]);
    return dist;
}

std::size_t SortedTopicDist::positive_count() const {
    // Sorted non-increasing, so the positive entries form a prefix.
    std::size_t n = 0;
    while (n < probs.size() && probs[n] > 0.0) ++n;
    return n;
}

namespace {

struct Named {
    std::string_view name;
    Measure measure;
};

constexpr Named kMeasureNames[] = {
    {"cosine", Measure::Cosine},         {"dice", Measure::Dice},
    {"jaccard", Measure::Jaccard},       {"czekanowski", Measure::Czekanowski},
    {"ruzicka", Measure::Ruzicka},       {"overlap", Measure::Overlap},
    {"euclidean", Measure::Euclidean},   {"hamming", Measure::Hamming},
    {"chebyshev", Measure::Chebyshev},   {"sorensen", Measure::SorensenDist},
    {"soergel", Measure::Soergel},       {"kulczynski", Measure::Kulczynski},
    {"camberra", Measure::Camberra},     {"divergence", Measure::Divergence},
    {"neyman", Measure::Neyman},
};

}  // namespace

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Euclidean: return "euclidean";
    case Strategy::Dice: return "dice";
    case Strategy::Sorensen: return "sorensen";
    case Strategy::Cosine: return "cosine";
    case Strategy::Overlap: return "overlap";
    }
    return {};
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    for (Strategy s : kAllStrategies)
        if (strategy_name(s) == name) return s;
    return std::nullopt;
}

std::string_view measure_name(Measure m) {
    for (const auto& entry : kMeasureNames)
        if (entry.measure == m) return entry.name;
    return {};
}

std::optional<Measure> parse_measure(std::string_view name) {
    for (const auto& entry : kMeasureNames)
        if (entry.name == name) return entry.measure;
    return std::nullopt;
}

bool is_similarity(Measure m) {
    switch (m) {
    case Measure::Cosine:
    case Measure::Dice:
    case Measure::Jaccard:
    case Measure::Czekanowski:
    case Measure::Ruzicka:
    case Measure::Overlap:
        return true;
    default:
        return false;
    }
}

Strategy strategy_of(Measure m) {
    switch (m) {
    case Measure::Cosine:
        return Strategy::Cosine;
    case Measure::Dice:
    case Measure::Jaccard:
        return Strategy::Dice;
    case Measure::Czekanowski:
    case Measure::Ruzicka:
    case Measure::SorensenDist:
    case Measure::Soergel:
    case Measure::Kulczynski:
        return Strategy::Sorensen;
    case Measure::Euclidean:
    case Measure::Hamming:
    case Measure::Chebyshev:
    case Measure::Neyman:
        return Strategy::Euclidean;
    case Measure::Overlap:
    case Measure::Camberra:
    case Measure::Divergence:
        return Strategy::Overlap;
    }
    return Strategy::Overlap;
}

bool needs_positive_entries(Measure m) {
    return m == Measure::Kulczynski || m == Measure::Neyman || m == Measure::Camberra || m == Measure::Divergence;
}

int select_count(const SortedTopicDist& dist, Strategy strategy) {
    const std::size_t positives = dist.positive_count();
    if (positives == 0) throw Error(Errc::DegenerateDistribution, "select_count: all probabilities are zero");
    if (strategy == Strategy::Euclidean) return 1;
    if (strategy == Strategy::Overlap) return static_cast<int>(positives);

    double sum_sq = 0.0;
    for (double p : dist.probs) sum_sq += p * p;

    int best = 1;
    double best_value = -std::numeric_limits<double>::infinity();
    double prefix = 0.0;
    for (std::size_t j = 1; j <= positives; ++j) {
        prefix += dist.probs[j - 1];
        const double jd = static_cast<double>(j);
        double value = 0.0;
        switch (strategy) {
        case Strategy::Cosine: value = prefix / std::sqrt(jd); break;
        case Strategy::Dice: value = prefix / (jd + sum_sq); break;
        case Strategy::Sorensen: value = prefix / (jd + 1.0); break;
        default: break;
        }
        if (value > best_value) {
            best_value = value;
            best = static_cast<int>(j);
        }
    }
    return best;
}

double measure_score(const SortedTopicDist& dist, int j, Measure measure) {
    const std::size_t k = dist.size();
    if (j < 1 || static_cast<std::size_t>(j) > k)
        throw Error(Errc::InvalidArgument, "measure_score: j must lie in 1..k");
    const auto ju = static_cast<std::size_t>(j);
    const double jd = j;
    const double kd = static_cast<double>(k);
    constexpr double inf = std::numeric_limits<double>::infinity();

    double prefix = 0.0;
    for (std::size_t i = 0; i < ju; ++i) prefix += dist.probs[i];
    double sum_sq = 0.0;
    for (double p : dist.probs) sum_sq += p * p;

    switch (measure) {
    case Measure::Cosine:
        return prefix / (std::sqrt(jd) * std::sqrt(sum_sq));
    case Measure::Dice:
        return 2.0 * prefix / (jd + sum_sq);
    case Measure::Jaccard:
        return prefix / (jd + sum_sq - prefix);
    case Measure::Czekanowski:
        return 2.0 * prefix / (jd + 1.0);
    case Measure::Ruzicka:
        return prefix / (jd + 1.0 - prefix);
    case Measure::Overlap:
        return prefix;
    case Measure::Euclidean:
        return std::sqrt(std::max(0.0, jd + sum_sq - 2.0 * prefix));
    case Measure::Hamming:
        return jd + 1.0 - 2.0 * prefix;
    case Measure::Chebyshev:
        return 1.0 - dist.probs[ju - 1];
    case Measure::SorensenDist:
        return 1.0 - 2.0 * prefix / (jd + 1.0);
    case Measure::Soergel:
        return 1.0 - prefix / (jd + 1.0 - prefix);
    case Measure::Kulczynski:
        return prefix > 0.0 ? (jd + 1.0) / prefix - 2.0 : inf;
    case Measure::Camberra: {
        double sum = 0.0;
        for (std::size_t i = 0; i < ju; ++i) sum += (1.0 - dist.probs[i]) / (1.0 + dist.probs[i]);
        return sum + (kd - jd);
    }
    case Measure::Divergence: {
        double sum = 0.0;
        for (std::size_t i = 0; i < ju; ++i) {
            const double r = (1.0 - dist.probs[i]) / (1.0 + dist.probs[i]);
            sum += r * r;
        }
        return 2.0 * sum + 2.0 * (kd - jd);
    }
    case Measure::Neyman: {
        double sum = 0.0;
        for (std::size_t i = 0; i < ju; ++i) {
            if (dist.probs[i] <= 0.0) return inf;
            sum += 1.0 / dist.probs[i];
        }
        return sum + 1.0 - 2.0 * jd;
    }
    }
    return inf;
}

int brute_force_select(const SortedTopicDist& dist, Measure measure) {
    if (dist.positive_count() == 0)
        throw Error(Errc::DegenerateDistribution, "brute_force_select: all probabilities are zero");
    const bool maximize = is_similarity(measure);
    int best = 1;
    double best_value = measure_score(dist, 1, measure);
    for (int j = 2; j <= static_cast<int>(dist.size()); ++j) {
        const double value = measure_score(dist, j, measure);
        if (maximize ? value > best_value : value < best_value) {
            best_value = value;
            best = j;
        }
    }
    return best;
}

}  // namespace subprof
