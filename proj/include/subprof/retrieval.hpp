#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/profiles.hpp"

namespace subprof {

inline constexpr double kDefaultMu = 2000.0;
inline constexpr int kDefaultDepth = 1000;

struct Query {
    std::string query_id;
    TermCounts terms;  // sorted by term id

    static Query from_terms(std::string query_id, std::span<const TermId> terms);
};

struct ScoredHit {
    std::string candidate_id;
    std::string facet;
    int topic = kNoTopic;
    double score = 0.0;
    int rank = 0;

    std::string target_id() const { return candidate_id + "#" + facet; }
};

struct Posting {
    std::uint32_t unit;
    std::uint32_t count;
};

/// Inverted index over subprofiles for query-likelihood scoring.
class Index {
  public:
    struct Unit {
        std::string candidate_id;
        std::string facet;
        int topic = kNoTopic;
        std::uint64_t length = 0;
    };

    std::size_t size() const { return units_.size(); }
    const Unit& unit(std::size_t i) const { return units_[i]; }
    std::string unit_id(std::size_t i) const { return units_[i].candidate_id + "#" + units_[i].facet; }
    std::uint64_t collection_length() const { return collection_length_; }
    std::uint64_t collection_frequency(TermId term) const {
        return term < collection_tf_.size() ? collection_tf_[term] : 0;
    }
    std::span<const Posting> postings(TermId term) const;

    /// Count of `term` in unit `i`.
    std::uint32_t count(std::size_t i, TermId term) const;

    friend Index build_index(const std::vector<Subprofile>& subprofiles);
    friend void save_index(const std::string& path, const Index& index);
    friend Index load_index(const std::string& path);
    friend bool operator==(const Index&, const Index&);

  private:
    std::vector<Unit> units_;
    std::vector<std::vector<Posting>> postings_;  // by term id, sorted by unit
    std::vector<std::uint64_t> collection_tf_;
    std::uint64_t collection_length_ = 0;
};

bool operator==(const Index::Unit& a, const Index::Unit& b);

/// Throws EmptyInput for no subprofiles, DuplicateId for repeated ids.
Index build_index(const std::vector<Subprofile>& subprofiles);
void save_index(const std::string& path, const Index& index);
Index load_index(const std::string& path);

/// Dirichlet-smoothed query log-likelihood of unit `unit`. Terms absent from
/// the collection are skipped.
double lm_score(const Query& query, std::size_t unit, const Index& index, double mu = kDefaultMu);

/// Units sharing at least one query term, scored and ranked; ties by unit id.
std::vector<ScoredHit> search(const Query& query, const Index& index, double mu = kDefaultMu,
                              int top_n = kDefaultDepth);

double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Profiles ranked by cosine similarity to `query_vector`; ties by profile id.
/// Throws ZeroVector for an all-zero query.
std::vector<ScoredHit> cosine_topic_search(std::span<const double> query_vector,
                                           const std::vector<TopicProfile>& profiles, int top_n = kDefaultDepth);

/// "query_id Q0 target_id rank score run_tag"
void write_run(std::ostream& out, const std::string& query_id, const std::vector<ScoredHit>& hits,
               const std::string& run_tag);

struct RunLine {
    std::string query_id;
    std::string target_id;
    int rank = 0;
    double score = 0.0;
    std::string run_tag;
};

std::vector<RunLine> read_run(std::istream& in);

/// Splits "candidate#facet" back into a hit; topic parsed from "x<id>" facets.
ScoredHit hit_from_run_line(const RunLine& line);

}  // namespace subprof
