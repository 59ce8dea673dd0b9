#include <doctest.h>

#include <algorithm>
#include <random>

#include "measure_oracle.hpp"
#include "subprof/error.hpp"
#include "subprof/topicselect.hpp"
#include "support.hpp"

using namespace subprof;

namespace {

SortedTopicDist sorted(std::vector<double> p) { return SortedTopicDist::from_unsorted(p); }

std::vector<double> random_dist(std::mt19937_64& gen, std::size_t k, std::size_t zeros) {
    std::uniform_real_distribution<double> u(0.001, 1.0), power(1.0, 4.0);
    const double e = power(gen);
    std::vector<double> p(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i + zeros < k; ++i) total += p[i] = std::pow(u(gen), e);
    for (double& x : p) x /= total;
    return p;
}

}  // namespace

TEST_CASE("worked selection example") {
    const auto d = sorted({0.50, 0.29, 0.19, 0.01, 0.01});
    CHECK(select_count(d, Strategy::Cosine) == 3);
    CHECK(select_count(d, Strategy::Sorensen) == 2);
    CHECK(select_count(d, Strategy::Dice) == 1);
    CHECK(select_count(d, Strategy::Euclidean) == 1);
    CHECK(select_count(d, Strategy::Overlap) == 5);
    // The overlap score grows up to j = k.
    for (int j = 1; j < 5; ++j) CHECK(measure_score(d, j, Measure::Overlap) < measure_score(d, j + 1, Measure::Overlap));
}

TEST_CASE("single positive topic") {
    const auto d = sorted({1.0, 0.0, 0.0, 0.0});
    for (Strategy s : kAllStrategies) CHECK(select_count(d, s) == 1);
}

TEST_CASE("all-zero distribution is degenerate") {
    CHECK_ERRC(select_count(sorted({0.0, 0.0}), Strategy::Cosine), Errc::DegenerateDistribution);
    CHECK_ERRC(brute_force_select(sorted({0.0, 0.0}), Measure::Dice), Errc::DegenerateDistribution);
}

TEST_CASE("hand-evaluated measure values") {
    CHECK(measure_score(sorted({1.0, 0.0}), 1, Measure::Euclidean) == 0.0);
    CHECK(measure_score(sorted({0.5, 0.5}), 2, Measure::Hamming) == doctest::Approx(1.0));
    CHECK(measure_score(sorted({0.5, 0.5}), 2, Measure::Czekanowski) == doctest::Approx(2.0 / 3.0));
    CHECK(measure_score(sorted({0.5, 0.5}), 1, Measure::Kulczynski) == doctest::Approx(2.0));
    CHECK(measure_score(sorted({1.0, 0.0}), 2, Measure::Neyman) == std::numeric_limits<double>::infinity());
    CHECK(measure_score(sorted({1.0, 0.0}), 1, Measure::Neyman) == doctest::Approx(0.0));
    CHECK_ERRC(measure_score(sorted({1.0, 0.0}), 3, Measure::Cosine), Errc::InvalidArgument);
}

TEST_CASE("camberra prefers all topics, chebyshev one") {
    const auto d = sorted({0.6, 0.3, 0.1});
    // Cam(p, I_1) = 0.25 + 2, Cam(p, I_2) = 0.25 + 0.5385 + 1, Cam(p, I_3) = 0.25 + 0.5385 + 0.8182
    CHECK(measure_score(d, 1, Measure::Camberra) == doctest::Approx(0.4 / 1.6 + 2));
    CHECK(measure_score(d, 3, Measure::Camberra) == doctest::Approx(0.4 / 1.6 + 0.7 / 1.3 + 0.9 / 1.1));
    CHECK(brute_force_select(d, Measure::Camberra) == 3);
    CHECK(brute_force_select(d, Measure::Chebyshev) == 1);
    CHECK(brute_force_select(sorted({0.34, 0.33, 0.33}), Measure::Chebyshev) == 1);
}

TEST_CASE("reduced forms equal the textbook definitions") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(trial % 30);
        const auto p = random_dist(gen, k, 0);
        const auto d = sorted(p);
        for (Measure m : kAllMeasures) {
            for (int j = 1; j <= static_cast<int>(k); ++j) {
                const double expected = testing::textbook_measure(d.probs, j, m);
                const double got = measure_score(d, j, m);
                CHECK_MESSAGE(got == doctest::Approx(expected).epsilon(1e-9), measure_name(m), " j=", j);
            }
        }
    }
}

TEST_CASE("jaccard agrees with dice and the collapse mapping holds") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(trial % 49);
        const std::size_t zeros = trial % 3 == 0 ? static_cast<std::size_t>(trial % 5) % k : 0;
        const auto d = sorted(random_dist(gen, k, zeros));
        CHECK(brute_force_select(d, Measure::Jaccard) == brute_force_select(d, Measure::Dice));
        for (Measure m : kAllMeasures) {
            if (zeros > 0 && needs_positive_entries(m)) continue;
            INFO(measure_name(m), " k=", k, " zeros=", zeros);
            CHECK(brute_force_select(d, m) == select_count(d, strategy_of(m)));
        }
    }
}

TEST_CASE("monotone distances") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto d = sorted(random_dist(gen, 2 + static_cast<std::size_t>(trial % 40), 0));
        for (int j = 1; j < static_cast<int>(d.size()); ++j) {
            CHECK(measure_score(d, j, Measure::Euclidean) <= measure_score(d, j + 1, Measure::Euclidean));
            CHECK(measure_score(d, j, Measure::Hamming) <= measure_score(d, j + 1, Measure::Hamming));
            CHECK(measure_score(d, j, Measure::Camberra) >= measure_score(d, j + 1, Measure::Camberra));
        }
    }
}

TEST_CASE("selection bounds and independence from topic ids") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 2 + static_cast<std::size_t>(trial % 20);
        auto p = random_dist(gen, k, static_cast<std::size_t>(trial) % k);
        std::shuffle(p.begin(), p.end(), gen);
        const auto d = sorted(p);
        for (Strategy s : kAllStrategies) {
            const int n = select_count(d, s);
            CHECK(n >= 1);
            CHECK(n <= static_cast<int>(d.positive_count()));
            SortedTopicDist relabeled = d;
            std::reverse(relabeled.topic_ids.begin(), relabeled.topic_ids.end());
            CHECK(select_count(relabeled, s) == n);
        }
        CHECK(select_count(d, Strategy::Overlap) == static_cast<int>(d.positive_count()));
    }
}

TEST_CASE("sorting keeps ties in topic order") {
    const auto d = sorted({0.2, 0.4, 0.2, 0.2});
    CHECK(d.probs == std::vector<double>{0.4, 0.2, 0.2, 0.2});
    CHECK(d.topic_ids == std::vector<int>{1, 0, 2, 3});
    CHECK(d.positive_count() == 4);
}

TEST_CASE("names") {
    for (Strategy s : kAllStrategies) CHECK(parse_strategy(strategy_name(s)) == s);
    for (Measure m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
    CHECK(parse_strategy("sorensen") == Strategy::Sorensen);
    CHECK(parse_measure("camberra") == Measure::Camberra);
    CHECK_FALSE(parse_strategy("bm25").has_value());
}
