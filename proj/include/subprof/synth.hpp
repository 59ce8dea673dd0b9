#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/eval.hpp"

namespace subprof {

struct IntRange {
    int lo = 0;
    int hi = 0;
};

/// Planted-topic corpus description. Candidates are assigned to committees
/// round-robin; a candidate's expertise is their committee's topic subset.
struct SynthSpec {
    int n_topics = 8;
    int vocab_per_topic = 60;
    int shared_vocab = 40;
    int n_candidates = 40;
    std::vector<std::vector<int>> committees = default_committees();
    IntRange docs_per_candidate{25, 25};
    IntRange doc_length{80, 200};
    double topic_mixture_concentration = 0.5;
    double shared_word_rate = 0.15;     // chance a token comes from the shared vocabulary
    double digression_rate = 0.3;       // chance a document touches one topic outside the expertise
    double outsider_rate = 0.1;         // chance an intervention joins another committee's initiative
    double title_context_rate = 0.3;    // chance a title word comes from another committee topic
    int max_participants = 4;           // interventions per initiative
    std::uint64_t seed = 1;

    static std::vector<std::vector<int>> default_committees();

    /// Throws InvalidSpec on empty ranges, unknown topics or no committees.
    void validate() const;
};

struct SynthTruth {
    std::map<std::string, std::vector<int>> expertise;          // candidate -> topics
    std::map<std::string, std::string> candidate_committee;     // candidate -> committee
    std::map<std::string, std::string> initiative_committee;    // initiative -> committee
    std::map<std::string, int> initiative_topic;                // initiative -> focus topic
    // Planted topic of every body token, per record, in emission order;
    // -1 marks shared-vocabulary words.
    std::vector<std::vector<int>> token_topics;

    Memberships memberships() const;
};

struct SynthCorpus {
    std::vector<RawIntervention> records;
    SynthTruth truth;
};

SynthCorpus generate(const SynthSpec& spec);

/// Planted word for topic `topic`, rank `rank` (letters only).
std::string topic_word(int topic, int rank);
std::string shared_word(int rank);

/// Lines "candidate <id> <topic>..." and "initiative <id> <committee> <topic>".
void write_truth(const std::string& path, const SynthTruth& truth);

/// Reads key-value overrides for SynthSpec fields.
SynthSpec load_synth_spec(const std::string& path);

}  // namespace subprof
