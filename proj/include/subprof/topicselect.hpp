#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace subprof {

/// Topic distribution sorted by non-increasing probability.
struct SortedTopicDist {
    std::vector<double> probs;
    std::vector<int> topic_ids;

    /// Sorts `probs` (indexed by topic id) descending; equal probabilities keep
    /// ascending topic id order.
    static SortedTopicDist from_unsorted(std::span<const double> probs);

    std::size_t size() const { return probs.size(); }
    std::size_t positive_count() const;
};

enum class Strategy { Euclidean, Dice, Sorensen, Cosine, Overlap };

enum class Measure {
    Cosine,
    Dice,
    Jaccard,
    Czekanowski,
    Ruzicka,
    Overlap,
    Euclidean,
    Hamming,
    Chebyshev,
    SorensenDist,
    Soergel,
    Kulczynski,
    Camberra,
    Divergence,
    Neyman,
};

inline constexpr std::array<Strategy, 5> kAllStrategies = {Strategy::Euclidean, Strategy::Dice, Strategy::Sorensen,
                                                           Strategy::Cosine, Strategy::Overlap};

inline constexpr std::array<Measure, 15> kAllMeasures = {
    Measure::Cosine,     Measure::Dice,      Measure::Jaccard,      Measure::Czekanowski, Measure::Ruzicka,
    Measure::Overlap,    Measure::Euclidean, Measure::Hamming,      Measure::Chebyshev,   Measure::SorensenDist,
    Measure::Soergel,    Measure::Kulczynski, Measure::Camberra,    Measure::Divergence,  Measure::Neyman,
};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

/// True for similarities (argmax), false for distances (argmin).
bool is_similarity(Measure m);

/// The strategy whose closed form yields the same selection as the measure.
Strategy strategy_of(Measure m);

/// Kulczynski, Neyman, Camberra and Divergence divide by p_i.
bool needs_positive_entries(Measure m);

/// How many of the most probable topics to keep. Only strictly positive
/// entries are candidates; ties go to the smaller count.
/// Throws DegenerateDistribution when every entry is zero.
int select_count(const SortedTopicDist& dist, Strategy strategy);

/// Sim(p, I_j) or Dist(p, I_j) in its reduced form, j in 1..k. Division by a
/// zero probability yields +infinity.
double measure_score(const SortedTopicDist& dist, int j, Measure measure);

/// argbest over j = 1..k of measure_score, ties toward smaller j.
int brute_force_select(const SortedTopicDist& dist, Measure measure);

}  // namespace subprof
