#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/eval.hpp"
#include "subprof/lda.hpp"
#include "subprof/topicselect.hpp"

namespace subprof {

/// A system is either an LDA distribution strategy or one of the baselines.
struct SystemSpec {
    enum class Kind { Strategy, TermMon, TermInt, TopicMon, TopicInt };
    Kind kind = Kind::TermMon;
    Strategy strategy = Strategy::Sorensen;

    static SystemSpec parse(std::string_view name);
    std::string name() const;
    bool uses_k() const { return kind == Kind::Strategy || kind == Kind::TopicMon || kind == Kind::TopicInt; }
};

struct RunConfig {
    std::string corpus_path;  // records file
    std::string memberships_path;
    std::string workdir = "work";
    PreprocessConfig preprocess;

    std::vector<KHeuristic> k_heuristics{KHeuristic{}};
    double alpha = 0.0;  // <= 0: 50/k
    double beta = 0.1;
    int iterations = 1000;
    int fold_in_iterations = 50;
    std::uint64_t seed = 1;

    std::vector<SystemSpec> systems;
    double mu = 2000.0;
    int depth = 1000;

    int splits = 5;
    double ratio = 0.8;
    int cutoff = 10;
    int min_interventions = 10;

    bool pairwise_pvalues = false;
    int scatter_top = 20;

    /// INI-style file. Sections: [paths] [preprocess] [lda] [systems]
    /// [retrieval] [evaluation].
    static RunConfig load(const std::string& path);
};

struct QueryMetrics {
    std::string query_id;
    double ndcg = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

struct SystemResult {
    std::string system;
    std::string k_label;  // "-" for k-independent systems
    int k = 0;            // k of the last split, 0 if not applicable
    double ndcg = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    std::vector<std::vector<QueryMetrics>> per_split;
    std::size_t total_subprofiles = 0;  // summed over splits, term systems only
};

struct MetricReport {
    int cutoff = 10;
    std::vector<SystemResult> systems;
    // (i, j) -> p-value for ndcg@cutoff when requested
    std::map<std::pair<std::size_t, std::size_t>, double> pvalues;
    // system row -> per-query entropy points of split 0
    std::map<std::size_t, std::vector<EntropyPoint>> scatter;
};

struct ExperimentInputs {
    Corpus corpus;
    Vocabulary vocabulary;
    std::vector<CorpusPartition> partitions;
    Memberships memberships;
};

/// Runs every system on every partition. Per-system means are taken over the
/// queries of each split, then over splits.
MetricReport run_experiment(const RunConfig& config, const ExperimentInputs& inputs);

/// Builds the corpus and partitions from the config's paths, then runs.
MetricReport run_experiment(const RunConfig& config);

void write_report_text(std::ostream& out, const MetricReport& report);
void write_report_jsonl(std::ostream& out, const MetricReport& report);
void write_scatter(std::ostream& out, const std::vector<EntropyPoint>& points);

}  // namespace subprof
