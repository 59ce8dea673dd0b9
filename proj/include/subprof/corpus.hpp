#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "subprof/text.hpp"

namespace subprof {

using TermId = std::uint32_t;

struct TermCount {
    TermId term;
    std::uint32_t count;

    friend bool operator==(const TermCount&, const TermCount&) = default;
};

/// Sparse bag of words, sorted by term id, all counts >= 1.
using TermCounts = std::vector<TermCount>;

std::uint64_t total_count(const TermCounts& counts);

/// Adds `other` into `into`, keeping the sorted-by-term invariant.
void merge_counts(TermCounts& into, const TermCounts& other);

struct RawIntervention {
    std::string initiative_id;
    std::string candidate_id;
    std::string committee_id;  // empty when the initiative has no committee
    std::string title;
    std::vector<std::string> subjects;
    std::string body;
};

struct Document {
    std::string doc_id;
    std::string initiative_id;
    std::string candidate_id;
    TermCounts terms;
    std::uint64_t length = 0;
};

/// Title, subjects and committee of an initiative; used for queries and qrels.
struct Initiative {
    std::string id;
    std::string committee_id;
    std::string title;
    std::vector<std::string> subjects;
};

class Vocabulary {
  public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_freq);

    std::size_t size() const { return terms_.size(); }
    const std::string& term(TermId id) const { return terms_.at(id); }
    std::optional<TermId> find(std::string_view term) const;
    std::uint32_t doc_freq(TermId id) const { return doc_freq_.at(id); }
    const std::vector<std::string>& terms() const { return terms_; }

  private:
    std::vector<std::string> terms_;
    std::vector<std::uint32_t> doc_freq_;
    std::unordered_map<std::string, TermId> ids_;
};

class Corpus {
  public:
    Corpus() = default;
    Corpus(std::vector<Document> documents, std::vector<Initiative> initiatives);

    const std::vector<Document>& documents() const { return documents_; }
    const std::vector<Initiative>& initiatives() const { return initiatives_; }
    const Initiative* initiative(const std::string& id) const;
    bool empty() const { return documents_.empty(); }
    std::size_t size() const { return documents_.size(); }

    /// Documents (and initiative records) whose initiative is in `ids`.
    Corpus restrict_to(const std::set<std::string>& ids) const;

    /// Candidate ids in first-appearance order.
    std::vector<std::string> candidates() const;

    /// Number of documents per candidate.
    std::map<std::string, std::size_t> documents_per_candidate() const;

    /// Non-zero entries of the document-term matrix.
    std::uint64_t nonzero_entries() const;

    /// Distinct terms used by at least one document.
    std::size_t distinct_terms() const;

  private:
    std::vector<Document> documents_;
    std::vector<Initiative> initiatives_;
    std::unordered_map<std::string, std::size_t> initiative_index_;
};

struct BuiltCorpus {
    Corpus corpus;
    Vocabulary vocabulary;
    std::vector<std::string> skipped;  // ids of documents emptied by filtering
};

/// One document per (initiative, candidate) pair built from the record
/// bodies, with the min_df filter applied. Throws EmptyInput on no records and
/// AllDocumentsEmpty when filtering leaves nothing.
BuiltCorpus build_corpus(const std::vector<RawIntervention>& records, const PreprocessConfig& config);

struct CorpusPartition {
    std::set<std::string> train;
    std::set<std::string> test;
    std::uint64_t seed = 0;
};

/// Random initiative-level train/test splits. Throws TooFewInitiatives when
/// the corpus has fewer than two initiatives.
std::vector<CorpusPartition> make_partitions(const Corpus& corpus, double ratio, int n_splits,
                                             std::uint64_t seed);

// Line-delimited JSON records, one RawIntervention per line.
std::vector<RawIntervention> read_records(const std::string& path);
void write_records(const std::string& path, const std::vector<RawIntervention>& records);
RawIntervention parse_record(std::string_view line);
std::string format_record(const RawIntervention& record);

// On-disk corpus artifacts written by `ingest`.
void save_corpus(const std::string& dir, const BuiltCorpus& built);
BuiltCorpus load_corpus(const std::string& dir);
void save_partitions(const std::string& path, const std::vector<CorpusPartition>& partitions);
std::vector<CorpusPartition> load_partitions(const std::string& path);

}  // namespace subprof
