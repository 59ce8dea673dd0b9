#pragma once

#include <map>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/lda.hpp"
#include "subprof/topicselect.hpp"

namespace subprof {

inline constexpr int kNoTopic = -1;
inline constexpr std::string_view kMonolithicFacet = "*";

/// A retrievable bag of words belonging to one candidate. `facet` names the
/// part of the candidate it covers: "x<topic>" for LDA subprofiles, "*" for a
/// monolithic profile, the initiative id for an intervention subprofile.
struct Subprofile {
    std::string candidate_id;
    std::string facet;
    int topic = kNoTopic;
    TermCounts terms;
    std::uint64_t size = 0;

    std::string id() const { return candidate_id + "#" + facet; }
};

std::string topic_facet(int topic);

struct TopicProfile {
    std::string candidate_id;
    std::string facet;
    std::vector<double> topic_vector;

    std::string id() const { return candidate_id + "#" + facet; }
};

/// Number of subdocuments each document was split into.
struct DocumentSplitCount {
    std::string candidate_id;
    std::string doc_id;
    std::size_t subdocuments = 0;
};

struct LdaSubprofiles {
    std::vector<Subprofile> subprofiles;
    std::vector<DocumentSplitCount> splits;
};

/// Per-(candidate, topic) merge of subdocuments; sorted by candidate id then
/// topic id, empty subprofiles omitted.
LdaSubprofiles build_lda_subprofiles(const Corpus& train, const TopicModel& model, Strategy strategy);

/// One profile per candidate with all their documents concatenated.
std::vector<Subprofile> build_term_monolithic(const Corpus& train);

/// Every document as its own subprofile, facet = initiative id.
std::vector<Subprofile> build_term_intervention(const Corpus& train);

enum class TopicProfileMode { Monolithic, Intervention };

struct TopicProfileSet {
    TopicModel model;
    std::vector<TopicProfile> profiles;
};

/// TopicMon (LDA over per-candidate concatenations) or TopicInt (LDA over the
/// individual documents); each trains its own model.
TopicProfileSet build_topic_profiles(const Corpus& train, std::size_t vocab_size, TopicProfileMode mode,
                                     const LdaParams& params);

inline constexpr std::uint64_t kTinySubprofileSize = 50;

struct ProfileStats {
    std::size_t total_subprofiles = 0;
    std::size_t candidates = 0;
    double avg_per_candidate = 0.0;
    double avg_size = 0.0;
    std::size_t tiny_count = 0;
    double tiny_fraction = 0.0;
    // Averages over candidates of the per-candidate mean/max/min number of
    // subdocuments per document.
    double subdocs_mean = 0.0;
    double subdocs_max = 0.0;
    double subdocs_min = 0.0;
};

ProfileStats profile_stats(const std::vector<Subprofile>& subprofiles,
                           const std::vector<DocumentSplitCount>& splits);

/// Plain-text table with the columns #SP, Avg.#SP, Avg.SP-size, #tiny, %tiny,
/// and mean/max/min subdocuments per document.
std::string format_stats_table(const std::vector<std::pair<std::string, ProfileStats>>& rows);

// Profile store: lines "candidate_id facet term count".
void save_subprofiles(const std::string& path, const std::vector<Subprofile>& subprofiles, const Vocabulary& vocab);
std::vector<Subprofile> load_subprofiles(const std::string& path, const Vocabulary& vocab);
void save_topic_profiles(const std::string& path, const std::vector<TopicProfile>& profiles);
std::vector<TopicProfile> load_topic_profiles(const std::string& path);

}  // namespace subprof
