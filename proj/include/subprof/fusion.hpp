#pragma once

#include <string>
#include <vector>

#include "subprof/retrieval.hpp"

namespace subprof {

inline constexpr double kShiftEpsilon = 1e-6;

struct FusedCandidate {
    std::string candidate_id;
    double score = 0.0;
    std::vector<ScoredHit> hits;  // contributing hits in ranking order
};

using CandidateRanking = std::vector<FusedCandidate>;

/// CombLgDCS: each candidate sums s / log2(rank + 1) over their hits, where the
/// candidate's first hit in the ranking counts as rank 1 and every later hit
/// uses its own position. Sorted by fused score, ties by candidate id.
CandidateRanking comb_lg_dcs(const std::vector<ScoredHit>& hits);

/// Shifts scores so the minimum becomes kShiftEpsilon; order is preserved.
std::vector<ScoredHit> shift_positive(std::vector<ScoredHit> hits, double epsilon = kShiftEpsilon);

/// Candidate ranking as run hits (facet empty, ranks from 1).
std::vector<ScoredHit> ranking_as_hits(const CandidateRanking& ranking);

}  // namespace subprof
