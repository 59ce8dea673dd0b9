#include "subprof/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace subprof {

CandidateRanking comb_lg_dcs(const std::vector<ScoredHit>& hits) {
    std::vector<ScoredHit> ordered = hits;
    std::stable_sort(ordered.begin(), ordered.end(), [](const ScoredHit& a, const ScoredHit& b) { return a.rank < b.rank; });

    std::map<std::string, std::size_t> position;
    CandidateRanking ranking;
    for (const auto& hit : ordered) {
        auto [it, first] = position.emplace(hit.candidate_id, ranking.size());
        if (first) ranking.push_back({hit.candidate_id, 0.0, {}});
        const int rank = first ? 1 : hit.rank;
        FusedCandidate& c = ranking[it->second];
        c.score += hit.score / std::log2(static_cast<double>(rank) + 1.0);
        c.hits.push_back(hit);
    }
    std::sort(ranking.begin(), ranking.end(), [](const FusedCandidate& a, const FusedCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.candidate_id < b.candidate_id;
    });
    return ranking;
}

std::vector<ScoredHit> shift_positive(std::vector<ScoredHit> hits, double epsilon) {
    if (hits.empty()) return hits;
    double lowest = hits.front().score;
    for (const auto& h : hits) lowest = std::min(lowest, h.score);
    for (auto& h : hits) h.score = h.score - lowest + epsilon;
    return hits;
}

std::vector<ScoredHit> ranking_as_hits(const CandidateRanking& ranking) {
    std::vector<ScoredHit> out;
    out.reserve(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i)
        out.push_back({ranking[i].candidate_id, "", kNoTopic, ranking[i].score, static_cast<int>(i) + 1});
    return out;
}

}  // namespace subprof
