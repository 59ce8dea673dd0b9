#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/fusion.hpp"
#include "subprof/retrieval.hpp"
#include "subprof/text.hpp"

namespace subprof {

/// Query from an initiative's title and subject labels, preprocessed like the
/// corpus; terms missing from `vocab` are dropped. Throws EmptyQuery when
/// nothing survives normalization.
Query make_query(const Initiative& initiative, const PreprocessConfig& config, const Vocabulary& vocab);

/// committee id -> member candidate ids
using Memberships = std::map<std::string, std::set<std::string>>;

/// Lines "committee_id candidate_id".
Memberships load_memberships(const std::string& path);
void save_memberships(const std::string& path, const Memberships& memberships);

struct QrelSet {
    std::map<std::string, std::set<std::string>> relevant;  // query id -> candidates

    std::size_t nr(const std::string& query_id) const;
};

/// Relevant candidates of each test initiative: members of its committee with
/// at least `min_interventions` training documents. Initiatives without a
/// committee, or left with no relevant candidate, get no entry.
QrelSet make_qrels(const std::vector<Initiative>& test_initiatives, const Memberships& memberships,
                   const Corpus& train, int min_interventions = 10);

/// "query_id 0 candidate_id 1"
void write_qrels(std::ostream& out, const QrelSet& qrels);
QrelSet read_qrels(std::istream& in);

/// Binary-gain NDCG with log2(i + 1) discounts. Throws UndefinedForEmptyQrel.
double ndcg_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, int cutoff);
double precision_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, int cutoff);
double recall_at_nr(std::span<const std::string> ranking, const std::set<std::string>& relevant);

std::vector<std::string> candidate_ids(const CandidateRanking& ranking);

/// Two-sided paired t-test p-value.
double paired_t_test(std::span<const double> a, std::span<const double> b);

/// Entropy of the count distribution divided by log(counts.size()).
/// Throws SingleCategory for fewer than two categories.
double normalized_entropy(std::span<const std::uint64_t> counts);

struct EntropyPoint {
    std::string query_id;
    double topic_entropy = 0.0;
    double candidate_entropy = 0.0;
};

/// For each non-empty hit list: normalized entropies of the topic ids and the
/// candidate ids among its first `top` hits.
std::vector<EntropyPoint> entropy_scatter(const std::vector<std::pair<std::string, std::vector<ScoredHit>>>& runs,
                                          int top, int n_topics, int n_candidates);

}  // namespace subprof
