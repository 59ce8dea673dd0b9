#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "subprof/corpus.hpp"

namespace subprof {

/// LDA point estimate: topic-term distributions p(t|x) and per-document
/// topic distributions p(x|d) for the training documents.
class TopicModel {
  public:
    TopicModel() = default;
    TopicModel(std::size_t k, std::size_t m, std::vector<std::string> doc_ids, std::vector<double> phi,
               std::vector<double> theta, double alpha, double beta, std::uint64_t seed, int iterations);

    std::size_t topics() const { return k_; }
    std::size_t terms() const { return m_; }
    std::size_t documents() const { return doc_ids_.size(); }

    /// p(t|x) as a row over the vocabulary.
    std::span<const double> phi(std::size_t topic) const { return {phi_.data() + topic * m_, m_}; }
    double phi(std::size_t topic, TermId term) const { return phi_[topic * m_ + term]; }

    /// p(x|d) for the training document at `row`.
    std::span<const double> theta(std::size_t row) const { return {theta_.data() + row * k_, k_}; }

    /// Row of a training document, or -1 if the model has not seen it.
    std::ptrdiff_t row_of(const std::string& doc_id) const;
    std::span<const double> theta(const std::string& doc_id) const;

    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    std::uint64_t seed() const { return seed_; }
    int iterations() const { return iterations_; }

    friend bool operator==(const TopicModel&, const TopicModel&) = default;

  private:
    std::size_t k_ = 0;
    std::size_t m_ = 0;
    std::vector<std::string> doc_ids_;
    std::vector<double> phi_;    // k x m
    std::vector<double> theta_;  // n x k
    double alpha_ = 0.0;
    double beta_ = 0.0;
    std::uint64_t seed_ = 0;
    int iterations_ = 0;
    std::unordered_map<std::string, std::size_t> row_index_;
};

struct KHeuristic {
    enum class Kind { TermsDocsOverNnz, SqrtHalfN, Fixed };
    Kind kind = Kind::SqrtHalfN;
    int value = 0;  // only for Fixed

    static KHeuristic parse(std::string_view text);
    std::string name() const;
};

struct CorpusStats {
    std::uint64_t m = 0;      // distinct terms
    std::uint64_t n = 0;      // documents
    std::uint64_t t_nnz = 0;  // non-zero document-term entries
};

CorpusStats corpus_stats(const Corpus& corpus);

/// Number of topics under a heuristic, never below 2.
int choose_k(const CorpusStats& stats, const KHeuristic& heuristic);

struct LdaParams {
    int k = 2;
    double alpha = 0.0;  // <= 0 selects 50/k
    double beta = 0.1;
    int iterations = 1000;
    std::uint64_t seed = 1;

    double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / k; }
};

/// Collapsed Gibbs sampling over `corpus`; `vocab_size` is the width of phi
/// and must exceed every term id in the corpus. The estimate is taken from the
/// final sampler state.
TopicModel train_lda(const Corpus& corpus, std::size_t vocab_size, const LdaParams& params);

/// Degenerate one-topic model: phi is the smoothed collection unigram and
/// every theta row is (1). This is what Gibbs sampling converges to for k = 1.
TopicModel train_single_topic(const Corpus& corpus, std::size_t vocab_size, double beta = 0.1);

/// Topic distribution for an unseen bag of words with phi frozen. Terms outside
/// the model vocabulary are ignored; NoKnownTerms if none remain.
std::vector<double> fold_in(const TopicModel& model, const TermCounts& doc, int iterations = 50,
                            std::uint64_t seed = 1);

/// exp(-log-likelihood / tokens) of `docs` under the model, each document's
/// topic mixture obtained by fold-in.
double perplexity(const TopicModel& model, const std::vector<Document>& docs, int fold_in_iterations = 50,
                  std::uint64_t seed = 1);

void save_model(const std::string& path, const TopicModel& model);
TopicModel load_model(const std::string& path);

}  // namespace subprof
