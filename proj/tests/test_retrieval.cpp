#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "subprof/error.hpp"
#include "subprof/retrieval.hpp"
#include "support.hpp"

using namespace subprof;

namespace {

Subprofile sp(std::string cand, std::string facet, TermCounts terms) {
    Subprofile s{std::move(cand), std::move(facet), kNoTopic, std::move(terms), 0};
    s.size = total_count(s.terms);
    return s;
}

Query query(std::vector<TermId> terms) { return Query::from_terms("q", terms); }

// Independent scoring straight from the subprofile bags.
double oracle_score(const std::vector<Subprofile>& sps, std::size_t i, const Query& q, double mu) {
    double collection = 0;
    for (const auto& s : sps) collection += static_cast<double>(s.size);
    double score = 0;
    for (const auto& qt : q.terms) {
        double ctf = 0, c = 0;
        for (std::size_t u = 0; u < sps.size(); ++u)
            for (const auto& tc : sps[u].terms)
                if (tc.term == qt.term) {
                    ctf += tc.count;
                    if (u == i) c = tc.count;
                }
        if (ctf == 0) continue;
        score += qt.count * std::log((c + mu * ctf / collection) / (static_cast<double>(sps[i].size) + mu));
    }
    return score;
}

}  // namespace

TEST_CASE("query terms are sorted counts") {
    auto q = query({3, 1, 3, 2});
    CHECK(q.terms == TermCounts{{1, 1}, {2, 1}, {3, 2}});
}

TEST_CASE("index basics") {
    auto index = build_index({sp("c", "*", {{0, 2}})});
    CHECK(index.collection_length() == 2);
    CHECK(index.size() == 1);
    CHECK(index.count(0, 0) == 2);
    CHECK(index.count(0, 7) == 0);
    CHECK_ERRC(build_index({}), Errc::EmptyInput);
    CHECK_ERRC(build_index({sp("c", "*", {{0, 1}}), sp("c", "*", {{1, 1}})}), Errc::DuplicateId);
}

TEST_CASE("postings match the input") {
    std::vector<Subprofile> sps{sp("a", "x0", {{0, 1}, {2, 3}}), sp("b", "x1", {{2, 1}}), sp("b", "x2", {{1, 4}})};
    auto index = build_index(sps);
    for (TermId t = 0; t < 3; ++t) {
        std::uint64_t cf = 0;
        for (std::size_t u = 0; u < sps.size(); ++u)
            for (const auto& tc : sps[u].terms)
                if (tc.term == t) {
                    cf += tc.count;
                    CHECK(index.count(u, t) == tc.count);
                }
        CHECK(index.collection_frequency(t) == cf);
        std::uint64_t from_postings = 0;
        for (const auto& p : index.postings(t)) from_postings += p.count;
        CHECK(from_postings == cf);
    }
}

TEST_CASE("hand-computed dirichlet scores") {
    // a = 0, b = 1
    auto index = build_index({sp("c1", "*", {{0, 2}, {1, 2}}), sp("c2", "*", {{1, 4}})});
    const auto q = query({0});
    CHECK(lm_score(q, 0, index, 1.0) == doctest::Approx(std::log(2.25 / 5)));
    CHECK(lm_score(q, 1, index, 1.0) == doctest::Approx(std::log(0.25 / 5)));
    // Unknown terms contribute nothing.
    CHECK(lm_score(query({0, 9}), 0, index, 1.0) == doctest::Approx(std::log(2.25 / 5)));
    CHECK(lm_score(query({9}), 0, index, 1.0) == 0.0);
    CHECK(search(query({9}), index, 1.0).empty());
    CHECK_ERRC(lm_score(q, 0, index, 0.0), Errc::InvalidArgument);
}

TEST_CASE("score properties") {
    auto index = build_index({sp("c1", "*", {{0, 3}, {1, 1}}), sp("c2", "*", {{0, 1}, {1, 3}})});
    CHECK(lm_score(query({0}), 0, index) > lm_score(query({0}), 1, index));
    CHECK(lm_score(query({0, 1}), 0, index) == lm_score(query({1, 0}), 0, index));
    CHECK(lm_score(query({0, 0}), 1, index) == doctest::Approx(2 * lm_score(query({0}), 1, index)));
}

TEST_CASE("search equals exhaustive scoring") {
    std::mt19937 gen(12);
    std::uniform_int_distribution<int> term(0, 14), count(1, 5), len(1, 8);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Subprofile> sps;
        for (int u = 0; u < 60; ++u) {
            std::map<TermId, std::uint32_t> bag;
            for (int w = len(gen); w > 0; --w) bag[static_cast<TermId>(term(gen))] += static_cast<std::uint32_t>(count(gen));
            TermCounts tc;
            for (auto [t, c] : bag) tc.push_back({t, c});
            sps.push_back(sp("c" + std::to_string(u % 17), "x" + std::to_string(u), tc));
        }
        auto index = build_index(sps);
        const auto q = query({static_cast<TermId>(term(gen)), static_cast<TermId>(term(gen)), 20});
        const double mu = 10.0;

        std::vector<std::pair<double, std::string>> expected;
        for (std::size_t u = 0; u < sps.size(); ++u) {
            bool shares = false;
            for (const auto& tc : sps[u].terms)
                for (const auto& qt : q.terms) shares |= tc.term == qt.term;
            if (shares) expected.emplace_back(oracle_score(sps, u, q, mu), sps[u].id());
        }
        std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        const auto hits = search(q, index, mu, 1000);
        REQUIRE(hits.size() == expected.size());
        for (std::size_t i = 0; i < hits.size(); ++i) {
            CHECK(hits[i].target_id() == expected[i].second);
            CHECK(hits[i].score == doctest::Approx(expected[i].first).epsilon(1e-12));
            CHECK(hits[i].rank == static_cast<int>(i) + 1);
        }
        const auto top = search(q, index, mu, 1);
        if (!hits.empty()) {
            REQUIRE(top.size() == 1);
            CHECK(top[0].target_id() == hits[0].target_id());
        }
    }
}

TEST_CASE("ties break by subprofile id") {
    auto index = build_index({sp("b", "*", {{0, 1}}), sp("a", "*", {{0, 1}})});
    const auto hits = search(query({0}), index);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].candidate_id == "a");
}

TEST_CASE("index persistence") {
    testing::TempDir dir;
    std::vector<Subprofile> sps{sp("a", "x0", {{0, 1}, {2, 3}}), sp("b", "i7", {{2, 1}}), sp("b", "x2", {{1, 4}})};
    sps[0].topic = 0;
    sps[2].topic = 2;
    auto index = build_index(sps);
    save_index(dir.file("index.txt"), index);
    auto loaded = load_index(dir.file("index.txt"));
    CHECK(loaded == index);
    const auto q = query({0, 2});
    for (std::size_t u = 0; u < 3; ++u) CHECK(lm_score(q, u, loaded) == lm_score(q, u, index));
    CHECK(loaded.unit(2).topic == 2);
    CHECK_ERRC(load_index(dir.file("missing")), Errc::MissingArtifact);
}

TEST_CASE("cosine topic search") {
    std::vector<TopicProfile> profiles{{"a", "*", {1.0, 0.0}}, {"b", "*", {0.0, 1.0}}, {"c", "*", {0.6, 0.8}}};
    const std::vector<double> q{0.6, 0.8};
    auto hits = cosine_topic_search(q, profiles, 10);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].candidate_id == "c");
    CHECK(hits[0].score == doctest::Approx(1.0));
    CHECK(hits[1].candidate_id == "b");
    CHECK(hits[1].score == doctest::Approx(0.8));
    CHECK(hits[2].score == doctest::Approx(0.6));
    const std::vector<double> orth{1.0, 0.0}, other{0.0, 1.0};
    CHECK(cosine_similarity(orth, other) == 0.0);
    const std::vector<double> zero{0.0, 0.0};
    CHECK_ERRC(cosine_topic_search(zero, profiles, 10), Errc::ZeroVector);
}

TEST_CASE("run lines round-trip") {
    std::vector<ScoredHit> hits{{"c1", "x3", 3, -1.25, 1}, {"c2", "", kNoTopic, 0.5, 2}};
    std::ostringstream out;
    write_run(out, "q7", hits, "tag");
    CHECK(out.str() == "q7 Q0 c1#x3 1 -1.25 tag\nq7 Q0 c2 2 0.5 tag\n");
    std::istringstream in(out.str());
    auto lines = read_run(in);
    REQUIRE(lines.size() == 2);
    auto hit = hit_from_run_line(lines[0]);
    CHECK(hit.candidate_id == "c1");
    CHECK(hit.facet == "x3");
    CHECK(hit.topic == 3);
    CHECK(hit.score == -1.25);
    CHECK(hit_from_run_line(lines[1]).facet.empty());
    std::istringstream bad("q Q0 x\n");
    CHECK_ERRC(read_run(bad), Errc::MalformedInput);
}
