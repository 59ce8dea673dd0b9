#pragma once

#include <span>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/lda.hpp"
#include "subprof/topicselect.hpp"

namespace subprof {

/// The part of one document's term occurrences assigned to one topic.
struct Subdocument {
    std::string doc_id;
    int topic = 0;
    TermCounts terms;  // counts >= 1

    std::uint64_t size() const { return total_count(terms); }
    friend bool operator==(const Subdocument&, const Subdocument&) = default;
};

/// p(x|t,d) over all k topics. Throws ZeroDenominator if every
/// p(t|x) p(x|d) is zero.
std::vector<double> topic_posterior(std::span<const double> term_given_topic,
                                    std::span<const double> topic_given_doc);
std::vector<double> topic_posterior(const TopicModel& model, const std::string& doc_id, TermId term);

/// p_o(x|t,d) restricted to `selected` (topic ids), returned in the order of
/// `selected`.
std::vector<double> renormalized_posterior(std::span<const double> term_given_topic,
                                           std::span<const double> topic_given_doc, std::span<const int> selected);
std::vector<double> renormalized_posterior(const TopicModel& model, const std::string& doc_id, TermId term,
                                           std::span<const int> selected);

/// Integer split of `freq` proportional to `probs`: round half up, then repair
/// the total by removing from the least probable positive entries or adding to
/// the most probable ones. Equal probabilities rank by position, the earlier
/// one counting as more probable.
std::vector<std::uint32_t> distribute_frequency(std::uint32_t freq, std::span<const double> probs);

/// Topic ids kept for a document under a strategy, most probable first.
std::vector<int> selected_topics(std::span<const double> topic_given_doc, Strategy strategy);

/// Splits a training document of `model` into per-topic subdocuments, ordered
/// by topic id. The union of the output equals `doc`.
std::vector<Subdocument> split_document(const TopicModel& model, const Document& doc, Strategy strategy);

/// Debug dump lines: doc_id topic term count.
void write_subdocuments(std::ostream& out, const std::vector<Subdocument>& subdocs, const Vocabulary& vocab);

}  // namespace subprof
