#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "subprof/error.hpp"
#include "subprof/lda.hpp"
#include "subprof/splitter.hpp"
#include "support.hpp"

using namespace subprof;

namespace {

// k = 3 topics over 4 terms, one document "d" with theta (0.6, 0.3, 0.1).
TopicModel toy_model() {
    std::vector<double> phi = {
        0.1, 0.4, 0.2, 0.3,  // topic 0
        0.4, 0.1, 0.4, 0.1,  // topic 1
        0.5, 0.1, 0.1, 0.3,  // topic 2
    };
    return TopicModel(3, 4, {"d"}, phi, {0.6, 0.3, 0.1}, 0.1, 0.1, 1, 1);
}

std::map<TermId, std::uint32_t> union_counts(const std::vector<Subdocument>& subs) {
    std::map<TermId, std::uint32_t> out;
    for (const auto& s : subs)
        for (const auto& tc : s.terms) out[tc.term] += tc.count;
    return out;
}

std::map<TermId, std::uint32_t> as_map(const TermCounts& tc) {
    std::map<TermId, std::uint32_t> out;
    for (const auto& t : tc) out[t.term] = t.count;
    return out;
}

}  // namespace

TEST_CASE("posterior examples") {
    std::vector<double> phi1{1.0}, theta1{1.0};
    CHECK(topic_posterior(phi1, theta1) == std::vector<double>{1.0});
    std::vector<double> phi{0.2, 0.2}, theta{0.5, 0.5};
    auto p = topic_posterior(phi, theta);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));
    std::vector<double> zeros{0.0, 0.0};
    CHECK_ERRC(topic_posterior(zeros, theta), Errc::ZeroDenominator);
}

TEST_CASE("renormalized posterior") {
    const auto model = toy_model();
    const std::vector<int> top2{0, 1};
    auto p = renormalized_posterior(model, "d", 0, top2);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(1.0 / 3.0));
    CHECK(p[1] == doctest::Approx(2.0 / 3.0));

    const std::vector<int> all{0, 1, 2};
    for (TermId t = 0; t < 4; ++t) {
        auto full = topic_posterior(model, "d", t);
        auto renorm = renormalized_posterior(model, "d", t, all);
        CHECK(std::accumulate(full.begin(), full.end(), 0.0) == doctest::Approx(1.0));
        for (std::size_t i = 0; i < 3; ++i) CHECK(renorm[i] == doctest::Approx(full[i]));
    }
    const std::vector<int> one{0};
    CHECK(renormalized_posterior(model, "d", 2, one) == std::vector<double>{1.0});
}

TEST_CASE("frequency distribution examples") {
    const std::vector<double> probs{0.390, 0.225, 0.157, 0.077, 0.076, 0.075};
    CHECK(distribute_frequency(7, probs) == std::vector<std::uint32_t>{3, 2, 1, 1, 0, 0});
    CHECK(distribute_frequency(3, probs) == std::vector<std::uint32_t>{2, 1, 0, 0, 0, 0});
    CHECK(distribute_frequency(5, std::vector<double>{1.0}) == std::vector<std::uint32_t>{5});
    // Half rounds up: 2 * 0.25 = 0.5 -> 1 for both, then the surplus leaves the
    // less probable (later) one.
    CHECK(distribute_frequency(1, std::vector<double>{0.5, 0.5}) == std::vector<std::uint32_t>{1, 0});
    // 0.68, 0.66, 0.66 all round to 1; the later of the two equal entries gives one back.
    CHECK(distribute_frequency(2, std::vector<double>{0.34, 0.33, 0.33}) == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("frequency distribution properties") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 12);
        std::vector<double> probs(k);
        double total = 0.0;
        for (std::size_t i = 0; i < k; ++i) total += probs[i] = (i > 0 && trial % 4 == 0 && i % 3 == 0) ? 0.0 : u(gen);
        if (total == 0.0) continue;
        for (double& p : probs) p /= total;
        for (std::uint32_t freq = 1; freq <= 20; ++freq) {
            const auto r = distribute_frequency(freq, probs);
            REQUIRE(r.size() == k);
            std::uint64_t sum = 0;
            std::int64_t rounded_sum = 0;
            for (std::size_t i = 0; i < k; ++i) {
                sum += r[i];
                rounded_sum += static_cast<std::int64_t>(std::floor(freq * probs[i] + 0.5));
            }
            CHECK(sum == freq);
            const double slack = 1.0 + std::ceil(std::abs(static_cast<double>(rounded_sum) - freq) / k);
            for (std::size_t i = 0; i < k; ++i) {
                CHECK(std::abs(r[i] - freq * probs[i]) <= slack);
                if (probs[i] == 0.0) CHECK(r[i] == 0);
            }
        }
    }
}

TEST_CASE("strategy selection on theta") {
    const std::vector<double> theta{0.19, 0.50, 0.01, 0.29, 0.01};
    CHECK(selected_topics(theta, Strategy::Cosine) == std::vector<int>{1, 3, 0});
    CHECK(selected_topics(theta, Strategy::Euclidean) == std::vector<int>{1});
    CHECK(selected_topics(theta, Strategy::Overlap).size() == 5);
}

TEST_CASE("split a hand-built document") {
    const auto model = toy_model();
    Document d{"d", "i", "c", {{0, 3}, {1, 1}, {2, 5}, {3, 2}}, 11};

    SUBCASE("euclidean keeps the whole document on the top topic") {
        auto subs = split_document(model, d, Strategy::Euclidean);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].topic == 0);
        CHECK(subs[0].terms == d.terms);
    }
    SUBCASE("overlap reconstructs the document") {
        auto subs = split_document(model, d, Strategy::Overlap);
        CHECK(subs.size() <= 3);
        CHECK(union_counts(subs) == as_map(d.terms));
        for (std::size_t i = 1; i < subs.size(); ++i) CHECK(subs[i - 1].topic < subs[i].topic);
        for (const auto& s : subs)
            for (const auto& tc : s.terms) CHECK(tc.count >= 1);
    }
}

TEST_CASE("reconstruction on a trained model") {
    auto built = build_corpus(testing::two_topic_records(), testing::no_filter());
    const auto model = train_lda(built.corpus, built.vocabulary.size(), LdaParams{4, 0.0, 0.1, 30, 4});
    for (const auto& d : built.corpus.documents()) {
        for (Strategy s : kAllStrategies) {
            auto subs = split_document(model, d, s);
            CHECK(union_counts(subs) == as_map(d.terms));
            CHECK(static_cast<int>(subs.size()) <= static_cast<int>(selected_topics(model.theta(d.doc_id), s).size()));
        }
        CHECK(split_document(model, d, Strategy::Euclidean).size() == 1);
        CHECK(split_document(model, d, Strategy::Cosine) == split_document(model, d, Strategy::Cosine));
    }
}

TEST_CASE("subdocument dump") {
    auto built = build_corpus({testing::record("i", "c", "alpha beta beta")}, testing::no_filter());
    std::vector<Subdocument> subs{{"i:c", 2, {{0, 1}, {1, 2}}}};
    std::ostringstream out;
    write_subdocuments(out, subs, built.vocabulary);
    CHECK(out.str() == "i:c 2 alpha 1\ni:c 2 beta 2\n");
}
