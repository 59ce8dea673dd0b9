#include <doctest.h>

#include <bit>
#include <cmath>
#include <sstream>

#include "subprof/error.hpp"
#include "subprof/eval.hpp"
#include "support.hpp"

using namespace subprof;
using testing::record;

namespace {

// Ranking of `length` candidates where bit i of `mask` marks position i + 1 as
// relevant; `extra` relevant candidates are never retrieved.
struct Case {
    std::vector<std::string> ranking;
    std::set<std::string> relevant;
};

Case make_case(int length, unsigned mask, int extra) {
    Case c;
    for (int i = 0; i < length; ++i) {
        c.ranking.push_back("r" + std::to_string(i));
        if (mask >> i & 1U) c.relevant.insert(c.ranking.back());
    }
    for (int i = 0; i < extra; ++i) c.relevant.insert("missing" + std::to_string(i));
    return c;
}

double dcg(const std::vector<int>& gains, int cutoff) {
    double total = 0;
    for (int i = 0; i < std::min<int>(cutoff, static_cast<int>(gains.size())); ++i)
        total += gains[static_cast<std::size_t>(i)] / std::log2(i + 2.0);
    return total;
}

}  // namespace

TEST_CASE("ndcg examples") {
    std::vector<std::string> ranking{"a", "x", "b", "y"};
    CHECK(ndcg_at(ranking, {"a", "b"}, 10) == doctest::Approx((1 + 0.5) / (1 + 1 / std::log2(3.0))));
    CHECK(ndcg_at(ranking, {"a", "b"}, 10) == doctest::Approx(0.9197).epsilon(1e-4));
    std::vector<std::string> all(10);
    std::set<std::string> rel;
    for (int i = 0; i < 10; ++i) rel.insert(all[static_cast<std::size_t>(i)] = "c" + std::to_string(i));
    rel.insert("c99");
    CHECK(ndcg_at(all, rel, 10) == 1.0);
    CHECK(ndcg_at(all, {"zzz"}, 10) == 0.0);
    CHECK_ERRC(ndcg_at(all, {}, 10), Errc::UndefinedForEmptyQrel);
}

TEST_CASE("precision and recall examples") {
    std::vector<std::string> ranking;
    for (int i = 0; i < 10; ++i) ranking.push_back("c" + std::to_string(i));
    CHECK(precision_at(ranking, {"c0", "c1", "c2", "c3", "c4", "c5", "c6"}, 10) == doctest::Approx(0.7));
    CHECK(recall_at_nr(ranking, {"c0", "c1", "c2"}) == 1.0);
    CHECK(recall_at_nr(ranking, {"c0", "c9"}) == 0.5);
    CHECK_ERRC(recall_at_nr(ranking, {}), Errc::UndefinedForEmptyQrel);
    // Short rankings count missing positions as non-relevant.
    std::vector<std::string> short_ranking{"c0"};
    CHECK(precision_at(short_ranking, {"c0"}, 10) == doctest::Approx(0.1));
}

TEST_CASE("metrics equal brute force on every small ranking") {
    long cases = 0;
    for (int length = 0; length <= 12; ++length) {
        for (unsigned mask = 0; mask < (1U << length); ++mask) {
            const int hits = std::popcount(mask);
            if (hits > 6) continue;
            for (int nr = std::max(1, hits); nr <= 6; ++nr) {
                const Case c = make_case(length, mask, nr - hits);
                std::vector<int> gains, ideal(static_cast<std::size_t>(nr), 1);
                for (int i = 0; i < length; ++i) gains.push_back(mask >> i & 1U ? 1 : 0);
                for (int cutoff : {1, 5, 10}) {
                    const double expected = dcg(gains, cutoff) / dcg(ideal, cutoff);
                    REQUIRE(ndcg_at(c.ranking, c.relevant, cutoff) == doctest::Approx(expected).epsilon(1e-12));
                    int top = 0;
                    for (int i = 0; i < std::min(cutoff, length); ++i) top += gains[static_cast<std::size_t>(i)];
                    REQUIRE(precision_at(c.ranking, c.relevant, cutoff) == doctest::Approx(top / double(cutoff)));
                }
                int top_nr = 0;
                for (int i = 0; i < std::min(nr, length); ++i) top_nr += gains[static_cast<std::size_t>(i)];
                const double recall = recall_at_nr(c.ranking, c.relevant);
                REQUIRE(recall == doctest::Approx(top_nr / double(nr)));
                REQUIRE(precision_at(c.ranking, c.relevant, nr) == recall);
                ++cases;
            }
        }
    }
    CHECK(cases > 10000);
}

TEST_CASE("queries from initiatives") {
    auto built = build_corpus({record("i1", "c1", "transport concessions older people elderly public", "K", "", {})},
                              testing::no_filter());
    PreprocessConfig config = testing::no_filter();
    config.stopwords = {"for"};
    Initiative init{"i1", "K", "Transport concessions for older people", {"Public Transport", "Elderly"}};
    const Query q = make_query(init, config, built.vocabulary);
    CHECK(q.query_id == "i1");
    CHECK(total_count(q.terms) == 7);
    CHECK(q.terms[0] == TermCount{*built.vocabulary.find("transport"), 2});

    Initiative title_only{"i2", "K", "older people", {}};
    CHECK(total_count(make_query(title_only, config, built.vocabulary).terms) == 2);

    Initiative stop{"i3", "K", "for", {"FOR"}};
    CHECK_ERRC(make_query(stop, config, built.vocabulary), Errc::EmptyQuery);
}

TEST_CASE("qrels from committee membership") {
    std::vector<RawIntervention> records;
    for (int m = 0; m < 15; ++m) {
        const int docs = m < 12 ? 10 : 9;  // three members below the floor
        for (int d = 0; d < docs; ++d)
            records.push_back(record("t" + std::to_string(d), "m" + std::to_string(m), "word"));
    }
    auto built = build_corpus(records, testing::no_filter());
    Memberships members;
    for (int m = 0; m < 15; ++m) members["K"].insert("m" + std::to_string(m));
    std::vector<Initiative> test{{"q1", "K", "t", {}}, {"q2", "", "t", {}}, {"q3", "Other", "t", {}}};
    const auto qrels = make_qrels(test, members, built.corpus, 10);
    CHECK(qrels.relevant.size() == 1);
    CHECK(qrels.nr("q1") == 12);
    CHECK_FALSE(qrels.relevant.at("q1").contains("m12"));
    CHECK(qrels.nr("q2") == 0);

    std::ostringstream out;
    write_qrels(out, qrels);
    std::istringstream in(out.str());
    CHECK(read_qrels(in).relevant == qrels.relevant);
}

TEST_CASE("membership file round-trip") {
    testing::TempDir dir;
    Memberships m{{"K1", {"a", "b"}}, {"K2", {"c"}}};
    save_memberships(dir.file("m.txt"), m);
    CHECK(load_memberships(dir.file("m.txt")) == m);
    CHECK_ERRC(load_memberships(dir.file("none.txt")), Errc::MissingArtifact);
}

TEST_CASE("paired t-test") {
    const std::vector<double> a{0.5, 0.6, 0.7, 0.8, 0.9}, b{0.4, 0.6, 0.5, 0.7, 0.6};
    // d = (0.1, 0, 0.2, 0.1, 0.3): mean 0.14, sd sqrt(0.013), t = 0.14 / (sd / sqrt 5) = 2.7456 on 4 df.
    const double t = 0.14 / (std::sqrt(0.052 / 4) / std::sqrt(5.0));
    CHECK(t == doctest::Approx(2.7456).epsilon(1e-4));
    CHECK(paired_t_test(a, b) == doctest::Approx(0.0516060).epsilon(1e-5));
    CHECK(paired_t_test(a, a) == 1.0);
    std::vector<double> shifted = a;
    for (double& x : shifted) x += 0.1;
    CHECK(paired_t_test(shifted, a) == 0.0);
    CHECK_ERRC(paired_t_test(std::vector<double>{1.0}, std::vector<double>{2.0}), Errc::InvalidArgument);
}

TEST_CASE("normalized entropy") {
    const std::vector<std::uint64_t> uniform{4, 4, 4}, point{0, 9, 0}, skew{3, 1};
    CHECK(normalized_entropy(uniform) == doctest::Approx(1.0));
    CHECK(normalized_entropy(point) == 0.0);
    CHECK(normalized_entropy(skew) == doctest::Approx(0.8113).epsilon(1e-4));
    CHECK_ERRC(normalized_entropy(std::vector<std::uint64_t>{5}), Errc::SingleCategory);
}

TEST_CASE("entropy scatter") {
    std::vector<ScoredHit> same_topic, spread;
    for (int i = 0; i < 20; ++i) {
        same_topic.push_back({"c" + std::to_string(i), "x3", 3, 1.0, i + 1});
        spread.push_back({"c0", "x" + std::to_string(i), i, 1.0, i + 1});
    }
    const auto points = entropy_scatter({{"q1", same_topic}, {"q2", {}}, {"q3", spread}}, 20, 70, 40);
    REQUIRE(points.size() == 2);
    CHECK(points[0].query_id == "q1");
    CHECK(points[0].topic_entropy == 0.0);
    CHECK(points[0].candidate_entropy == doctest::Approx(std::log(20.0) / std::log(40.0)));
    CHECK(points[1].topic_entropy == doctest::Approx(std::log(20.0) / std::log(70.0)));
    CHECK(points[1].candidate_entropy == 0.0);
}
