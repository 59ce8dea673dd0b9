// subprof: command-line front end for the expert-finding pipeline.
//
// Artifacts live under the workdir:
//   corpus/ partitions.txt memberships.txt      (ingest)
//   split-<i>/model-<k>.txt                      (train)
//   split-<i>/subdocs-<system>.txt               (split-docs)
//   split-<i>/profiles-<system>.txt              (profile)
//   split-<i>/index-<system>.txt                 (index)
//   report.txt report.jsonl split-<i>/runs/      (evaluate)

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "subprof/corpus.hpp"
#include "subprof/error.hpp"
#include "subprof/eval.hpp"
#include "subprof/experiment.hpp"
#include "subprof/fusion.hpp"
#include "subprof/lda.hpp"
#include "subprof/profiles.hpp"
#include "subprof/retrieval.hpp"
#include "subprof/splitter.hpp"
#include "subprof/synth.hpp"
#include "subprof/topicselect.hpp"

namespace fs = std::filesystem;
using namespace subprof;

namespace {

// Exit statuses. Library errors map to kErrcBase + their code, so every
// error class has its own status.
constexpr int kUsage = 2;
constexpr int kLocked = 3;
constexpr int kUnexpected = 4;
constexpr int kErrcBase = 10;

int exit_code(Errc code) { return kErrcBase + static_cast<int>(code); }

struct Globals {
    std::string config_path;
    std::string workdir;
    std::optional<std::uint64_t> seed;
    int split = 0;
};

// Config file (if any), then environment, then command-line flags.
RunConfig resolve_config(const Globals& g) {
    RunConfig config = g.config_path.empty() ? RunConfig{} : RunConfig::load(g.config_path);
    if (const char* env = std::getenv("SUBPROF_WORKDIR"); env && *env) config.workdir = env;
    if (const char* env = std::getenv("SUBPROF_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            config.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            throw Error(Errc::MalformedConfig, std::string("SUBPROF_SEED is not an integer: ") + env);
        }
    }
    if (!g.workdir.empty()) config.workdir = g.workdir;
    if (g.seed) config.seed = *g.seed;
    if (config.workdir.empty()) throw Error(Errc::MalformedConfig, "no workdir configured");
    return config;
}

// Advisory lock held for the lifetime of a command touching the workdir.
class WorkdirLock {
  public:
    WorkdirLock(const std::string& workdir, bool create) {
        if (create)
            fs::create_directories(workdir);
        else if (!fs::is_directory(workdir))
            throw Error(Errc::MissingArtifact, "no workdir " + workdir + " (run ingest)");
        const auto path = (fs::path(workdir) / ".lock").string();
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0) throw Error(Errc::MissingArtifact, "cannot open lock file: " + path);
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            held_elsewhere_ = true;
        }
    }
    ~WorkdirLock() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    WorkdirLock(const WorkdirLock&) = delete;
    WorkdirLock& operator=(const WorkdirLock&) = delete;

    bool busy() const { return held_elsewhere_; }

  private:
    int fd_ = -1;
    bool held_elsewhere_ = false;
};

struct LockBusy {};

std::string file_safe(std::string s) {
    for (char& c : s)
        if (c == '@' || c == ':') c = '_';
    return s;
}

fs::path split_dir(const RunConfig& config, int split) { return fs::path(config.workdir) / ("split-" + std::to_string(split)); }

// The workdir's ingested corpus, partitions and memberships.
struct Workspace {
    BuiltCorpus built;
    std::vector<CorpusPartition> partitions;
    Memberships memberships;

    const CorpusPartition& partition(int split) const {
        if (split < 0 || split >= static_cast<int>(partitions.size()))
            throw Error(Errc::InvalidArgument, "split " + std::to_string(split) + " does not exist (have " +
                                                   std::to_string(partitions.size()) + ")");
        return partitions[static_cast<std::size_t>(split)];
    }
    Corpus train(int split) const { return built.corpus.restrict_to(partition(split).train); }
};

Workspace load_workspace(const RunConfig& config) {
    const fs::path root(config.workdir);
    if (!fs::exists(root / "corpus")) throw Error(Errc::MissingArtifact, "no ingested corpus in " + root.string() + " (run ingest)");
    Workspace ws;
    ws.built = load_corpus((root / "corpus").string());
    ws.partitions = load_partitions((root / "partitions.txt").string());
    ws.memberships = load_memberships((root / "memberships.txt").string());
    return ws;
}

KHeuristic pick_heuristic(const RunConfig& config, const std::string& flag) {
    if (!flag.empty()) return KHeuristic::parse(flag);
    if (config.k_heuristics.empty()) throw Error(Errc::MalformedConfig, "no k heuristic configured");
    return config.k_heuristics.front();
}

std::string system_label(const SystemSpec& system, const KHeuristic& h) {
    return file_safe(system.name() + (system.uses_k() ? "@" + h.name() : std::string()));
}

fs::path model_path(const RunConfig& config, int split, const KHeuristic& h) {
    return split_dir(config, split) / ("model-" + file_safe(h.name()) + ".txt");
}

TopicModel load_split_model(const RunConfig& config, int split, const KHeuristic& h) {
    const auto path = model_path(config, split, h);
    if (!fs::exists(path)) throw Error(Errc::MissingArtifact, "missing model " + path.string() + " (run train)");
    return load_model(path.string());
}

bool is_topic_baseline(const SystemSpec& s) {
    return s.kind == SystemSpec::Kind::TopicMon || s.kind == SystemSpec::Kind::TopicInt;
}

std::vector<Subprofile> term_subprofiles(const RunConfig& config, const Workspace& ws, int split, const SystemSpec& system,
                                         const KHeuristic& h, std::vector<DocumentSplitCount>* splits = nullptr) {
    const Corpus train = ws.train(split);
    switch (system.kind) {
    case SystemSpec::Kind::TermMon: return build_term_monolithic(train);
    case SystemSpec::Kind::TermInt: return build_term_intervention(train);
    case SystemSpec::Kind::Strategy: {
        auto built = build_lda_subprofiles(train, load_split_model(config, split, h), system.strategy);
        if (splits) *splits = std::move(built.splits);
        return std::move(built.subprofiles);
    }
    default: throw Error(Errc::InvalidArgument, system.name() + " has no term subprofiles");
    }
}

std::vector<double> parse_dist(const std::string& text) {
    std::vector<double> out;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(Errc::InvalidArgument, "bad probability: " + item);
        }
        if (out.back() < 0.0) throw Error(Errc::InvalidArgument, "probabilities must be non-negative");
    }
    if (out.empty()) throw Error(Errc::InvalidArgument, "empty distribution");
    return out;
}

// ---- subcommands ----------------------------------------------------------

int cmd_measures(const std::string& dist_text) {
    const auto dist = SortedTopicDist::from_unsorted(parse_dist(dist_text));
    std::cout << std::left << std::setw(13) << "measure" << std::setw(11) << "strategy" << std::right << std::setw(4)
              << "j";
    for (std::size_t j = 1; j <= dist.size(); ++j) std::cout << std::setw(12) << ("j=" + std::to_string(j));
    std::cout << '\n';
    for (Measure m : {Measure::Cosine, Measure::Dice, Measure::Jaccard, Measure::Czekanowski, Measure::Ruzicka,
                      Measure::Overlap, Measure::Euclidean, Measure::Hamming, Measure::Chebyshev,
                      Measure::SorensenDist, Measure::Soergel, Measure::Kulczynski, Measure::Camberra,
                      Measure::Divergence, Measure::Neyman}) {
        std::cout << std::left << std::setw(13) << measure_name(m) << std::setw(11) << strategy_name(strategy_of(m))
                  << std::right << std::setw(4) << brute_force_select(dist, m);
        for (std::size_t j = 1; j <= dist.size(); ++j) {
            std::ostringstream v;
            v << std::setprecision(5) << measure_score(dist, static_cast<int>(j), m);
            std::cout << std::setw(12) << v.str();
        }
        std::cout << '\n';
    }
    std::cout << "\nselected topics:";
    for (Strategy s : kAllStrategies) std::cout << ' ' << strategy_name(s) << '=' << select_count(dist, s);
    std::cout << '\n';
    return 0;
}

int cmd_synth(const Globals& g, const std::string& spec_path, const std::string& out_dir) {
    SynthSpec spec = spec_path.empty() ? SynthSpec{} : load_synth_spec(spec_path);
    if (const char* env = std::getenv("SUBPROF_SEED"); env && *env) spec.seed = std::stoull(env);
    if (g.seed) spec.seed = *g.seed;
    const auto corpus = generate(spec);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_records((dir / "records.jsonl").string(), corpus.records);
    save_memberships((dir / "memberships.txt").string(), corpus.truth.memberships());
    write_truth((dir / "truth.txt").string(), corpus.truth);
    std::cout << "wrote " << corpus.records.size() << " records for " << corpus.truth.expertise.size()
              << " candidates to " << dir.string() << '\n';
    return 0;
}

int cmd_ingest(const RunConfig& config, std::string records, std::string memberships) {
    if (records.empty()) records = config.corpus_path;
    if (memberships.empty()) memberships = config.memberships_path;
    if (records.empty()) throw Error(Errc::MalformedConfig, "no records file given (--records or [paths] corpus)");
    if (memberships.empty())
        throw Error(Errc::MalformedConfig, "no memberships file given (--memberships or [paths] memberships)");
    const auto built = build_corpus(read_records(records), config.preprocess);
    const auto members = load_memberships(memberships);
    const auto partitions = make_partitions(built.corpus, config.ratio, config.splits, config.seed);
    const fs::path root(config.workdir);
    save_corpus((root / "corpus").string(), built);
    save_partitions((root / "partitions.txt").string(), partitions);
    save_memberships((root / "memberships.txt").string(), members);
    std::cout << "documents " << built.corpus.size() << "\ninitiatives " << built.corpus.initiatives().size()
              << "\ncandidates " << built.corpus.candidates().size() << "\nvocabulary " << built.vocabulary.size()
              << "\nskipped " << built.skipped.size() << "\nsplits " << partitions.size() << '\n';
    return 0;
}

int cmd_train(const RunConfig& config, int split, const std::string& k_flag) {
    const Workspace ws = load_workspace(config);
    const Corpus train = ws.train(split);
    const auto stats = corpus_stats(train);
    std::vector<KHeuristic> heuristics = k_flag.empty() ? config.k_heuristics : std::vector{KHeuristic::parse(k_flag)};
    fs::create_directories(split_dir(config, split));
    for (const auto& h : heuristics) {
        LdaParams params{choose_k(stats, h), config.alpha, config.beta, config.iterations, config.seed + split};
        const TopicModel model = train_lda(train, ws.built.vocabulary.size(), params);
        save_model(model_path(config, split, h).string(), model);
        std::cout << h.name() << " k=" << model.topics() << " -> " << model_path(config, split, h).string() << '\n';
    }
    return 0;
}

int cmd_split_docs(const RunConfig& config, int split, const std::string& strategy_name_, const std::string& k_flag) {
    const auto strategy = parse_strategy(strategy_name_);
    if (!strategy) throw Error(Errc::InvalidArgument, "unknown strategy: " + strategy_name_);
    const auto h = pick_heuristic(config, k_flag);
    const Workspace ws = load_workspace(config);
    const TopicModel model = load_split_model(config, split, h);
    const auto path = split_dir(config, split) / ("subdocs-" + system_label(SystemSpec::parse(strategy_name_), h) + ".txt");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write " + path.string());
    const Corpus train = ws.train(split);
    std::size_t docs = 0, parts = 0;
    for (const auto& doc : train.documents()) {
        const auto subdocs = split_document(model, doc, *strategy);
        write_subdocuments(out, subdocs, ws.built.vocabulary);
        ++docs;
        parts += subdocs.size();
    }
    std::cout << docs << " documents -> " << parts << " subdocuments in " << path.string() << '\n';
    return 0;
}

int cmd_profile(const RunConfig& config, int split, const std::string& system_name, const std::string& k_flag) {
    const auto system = SystemSpec::parse(system_name);
    const auto h = pick_heuristic(config, k_flag);
    const Workspace ws = load_workspace(config);
    const auto dir = split_dir(config, split);
    fs::create_directories(dir);
    const auto label = system_label(system, h);
    if (is_topic_baseline(system)) {
        const Corpus train = ws.train(split);
        LdaParams params{choose_k(corpus_stats(train), h), config.alpha, config.beta, config.iterations,
                         config.seed + split};
        const auto mode = system.kind == SystemSpec::Kind::TopicMon ? TopicProfileMode::Monolithic
                                                                     : TopicProfileMode::Intervention;
        const auto set = build_topic_profiles(train, ws.built.vocabulary.size(), mode, params);
        save_model((dir / ("model-" + label + ".txt")).string(), set.model);
        save_topic_profiles((dir / ("profiles-" + label + ".txt")).string(), set.profiles);
        std::cout << set.profiles.size() << " topic profiles -> " << (dir / ("profiles-" + label + ".txt")).string()
                  << '\n';
        return 0;
    }
    const auto subprofiles = term_subprofiles(config, ws, split, system, h);
    save_subprofiles((dir / ("profiles-" + label + ".txt")).string(), subprofiles, ws.built.vocabulary);
    std::cout << subprofiles.size() << " subprofiles -> " << (dir / ("profiles-" + label + ".txt")).string() << '\n';
    return 0;
}

int cmd_index(const RunConfig& config, int split, const std::string& system_name, const std::string& k_flag) {
    const auto system = SystemSpec::parse(system_name);
    if (is_topic_baseline(system)) throw Error(Errc::InvalidArgument, system.name() + " is searched without an index");
    const auto h = pick_heuristic(config, k_flag);
    const Workspace ws = load_workspace(config);
    const auto dir = split_dir(config, split);
    const auto label = system_label(system, h);
    const auto profiles = dir / ("profiles-" + label + ".txt");
    if (!fs::exists(profiles)) throw Error(Errc::MissingArtifact, "missing " + profiles.string() + " (run profile)");
    const Index index = build_index(load_subprofiles(profiles.string(), ws.built.vocabulary));
    save_index((dir / ("index-" + label + ".txt")).string(), index);
    std::cout << index.size() << " units -> " << (dir / ("index-" + label + ".txt")).string() << '\n';
    return 0;
}

int cmd_search(const RunConfig& config, int split, const std::string& system_name, const std::string& k_flag,
               const std::string& text, const std::string& query_id) {
    const auto system = SystemSpec::parse(system_name);
    const auto h = pick_heuristic(config, k_flag);
    const Workspace ws = load_workspace(config);
    const auto dir = split_dir(config, split);
    const auto label = system_label(system, h);

    std::vector<Query> queries;
    if (!text.empty()) {
        queries.push_back(make_query(Initiative{query_id, "", text, {}}, config.preprocess, ws.built.vocabulary));
    } else {
        // Every test initiative of the split.
        for (const auto& init : ws.built.corpus.initiatives()) {
            if (!ws.partition(split).test.contains(init.id)) continue;
            try {
                queries.push_back(make_query(init, config.preprocess, ws.built.vocabulary));
            } catch (const Error& e) {
                if (e.code() != Errc::EmptyQuery) throw;
            }
        }
    }

    if (is_topic_baseline(system)) {
        const auto model_file = dir / ("model-" + label + ".txt");
        const auto profiles_file = dir / ("profiles-" + label + ".txt");
        if (!fs::exists(profiles_file)) throw Error(Errc::MissingArtifact, "missing " + profiles_file.string() + " (run profile)");
        const TopicModel model = load_model(model_file.string());
        const auto profiles = load_topic_profiles(profiles_file.string());
        for (const auto& q : queries) {
            const auto theta = fold_in(model, q.terms, config.fold_in_iterations, config.seed + split);
            write_run(std::cout, q.query_id, cosine_topic_search(theta, profiles, config.depth), label);
        }
        return 0;
    }
    const auto index_file = dir / ("index-" + label + ".txt");
    if (!fs::exists(index_file)) throw Error(Errc::MissingArtifact, "missing " + index_file.string() + " (run index)");
    const Index index = load_index(index_file.string());
    for (const auto& q : queries) write_run(std::cout, q.query_id, search(q, index, config.mu, config.depth), label);
    return 0;
}

int cmd_fuse(const std::string& run_path, bool shift, const std::string& tag) {
    std::vector<RunLine> lines;
    if (run_path.empty() || run_path == "-") {
        lines = read_run(std::cin);
    } else {
        std::ifstream in(run_path);
        if (!in) throw Error(Errc::MissingArtifact, "missing run file: " + run_path);
        lines = read_run(in);
    }
    // Hits grouped per query, keeping first-appearance order of queries.
    std::vector<std::pair<std::string, std::vector<ScoredHit>>> per_query;
    std::map<std::string, std::size_t> position;
    for (const auto& line : lines) {
        auto [it, inserted] = position.emplace(line.query_id, per_query.size());
        if (inserted) per_query.emplace_back(line.query_id, std::vector<ScoredHit>{});
        per_query[it->second].second.push_back(hit_from_run_line(line));
    }
    for (auto& [query, hits] : per_query) {
        std::stable_sort(hits.begin(), hits.end(), [](const ScoredHit& a, const ScoredHit& b) { return a.rank < b.rank; });
        const auto ranking = comb_lg_dcs(shift ? shift_positive(std::move(hits)) : std::move(hits));
        write_run(std::cout, query, ranking_as_hits(ranking), tag);
    }
    return 0;
}

int cmd_evaluate(RunConfig config, const std::vector<std::string>& systems, bool pvalues) {
    if (!systems.empty()) {
        config.systems.clear();
        for (const auto& s : systems) config.systems.push_back(SystemSpec::parse(s));
    }
    if (config.systems.empty()) throw Error(Errc::MalformedConfig, "no systems to evaluate ([systems] run or --system)");
    if (pvalues) config.pairwise_pvalues = true;
    Workspace ws = load_workspace(config);
    ExperimentInputs inputs{std::move(ws.built.corpus), std::move(ws.built.vocabulary), std::move(ws.partitions),
                            std::move(ws.memberships)};
    const auto report = run_experiment(config, inputs);
    write_report_text(std::cout, report);
    return 0;
}

int cmd_stats(const RunConfig& config, int split, std::vector<std::string> systems, const std::string& k_flag) {
    if (systems.empty())
        for (const auto& s : config.systems) systems.push_back(s.name());
    if (systems.empty()) throw Error(Errc::MalformedConfig, "no systems given ([systems] run or --system)");
    const auto h = pick_heuristic(config, k_flag);
    const Workspace ws = load_workspace(config);
    std::vector<std::pair<std::string, ProfileStats>> rows;
    for (const auto& name : systems) {
        const auto system = SystemSpec::parse(name);
        if (is_topic_baseline(system)) continue;
        std::vector<DocumentSplitCount> splits;
        const auto subprofiles = term_subprofiles(config, ws, split, system, h, &splits);
        rows.emplace_back(system.name(), profile_stats(subprofiles, splits));
    }
    std::cout << format_stats_table(rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expert finding with topic-based subprofiles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "subprof 0.1");

    Globals g;
    std::uint64_t seed_flag = 0;
    app.add_option("-c,--config", g.config_path, "Run configuration (INI)")->check(CLI::ExistingFile);
    app.add_option("-w,--workdir", g.workdir, "Working directory (overrides SUBPROF_WORKDIR and the config)");
    auto* seed_opt = app.add_option("--seed", seed_flag, "Random seed (overrides SUBPROF_SEED and the config)");
    app.add_option("--split", g.split, "Split index for per-split commands")->check(CLI::NonNegativeNumber);

    std::string k_flag;
    auto add_k = [&](CLI::App* cmd) { cmd->add_option("-k,--k", k_flag, "k heuristic: sqrt_half_n, terms_docs_over_nnz or a number"); };

    auto* measures = app.add_subcommand("measures", "Show all 15 measures for a topic distribution");
    std::string dist;
    measures->add_option("--dist", dist, "Comma-separated probabilities, e.g. 0.5,0.29,0.19,0.01,0.01")->required();

    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted topics");
    std::string spec_path, synth_out;
    synth->add_option("--spec", spec_path, "Synthetic corpus spec (INI)")->check(CLI::ExistingFile);
    synth->add_option("-o,--out", synth_out, "Output directory")->required();

    auto* ingest = app.add_subcommand("ingest", "Build the corpus, vocabulary and train/test partitions");
    std::string records, memberships;
    ingest->add_option("--records", records, "Records file (JSON lines)");
    ingest->add_option("--memberships", memberships, "Committee memberships file");

    auto* train = app.add_subcommand("train", "Train the LDA model of a split");
    add_k(train);

    auto* split_docs = app.add_subcommand("split-docs", "Dump the subdocuments of a split's training documents");
    std::string strategy;
    split_docs->add_option("-s,--strategy", strategy, "euclidean, dice, sorensen, cosine or overlap")->required();
    add_k(split_docs);

    std::string system;
    auto* profile = app.add_subcommand("profile", "Build the (sub)profiles of one system");
    profile->add_option("-s,--system", system, "Strategy or baseline (term-mon, term-int, topic-mon, topic-int)")->required();
    add_k(profile);

    auto* index = app.add_subcommand("index", "Index the subprofiles of one system");
    index->add_option("-s,--system", system, "Strategy or term baseline")->required();
    add_k(index);

    auto* search_cmd = app.add_subcommand("search", "Search one system; prints run lines");
    std::string query_text, query_id = "query";
    search_cmd->add_option("-s,--system", system, "Strategy or baseline")->required();
    search_cmd->add_option("-q,--query", query_text, "Free-text query (default: the split's test initiatives)");
    search_cmd->add_option("--id", query_id, "Query id for --query");
    add_k(search_cmd);

    auto* fuse = app.add_subcommand("fuse", "Fuse a subprofile run into a candidate ranking (CombLgDCS)");
    std::string run_path, tag = "fused";
    bool no_shift = false;
    fuse->add_option("run", run_path, "Run file ('-' or omitted: standard input)");
    fuse->add_flag("--no-shift", no_shift, "Fuse scores as given (they must already be positive)");
    fuse->add_option("--tag", tag, "Run tag of the output");

    auto* evaluate = app.add_subcommand("evaluate", "Run all systems on all splits and report metrics");
    std::vector<std::string> systems;
    bool pvalues = false;
    evaluate->add_option("-s,--system", systems, "Systems to run (default: the config's [systems] run)");
    evaluate->add_flag("--pvalues", pvalues, "Add pairwise paired t-tests on ndcg");

    auto* stats = app.add_subcommand("stats", "Subprofile statistics of a split");
    stats->add_option("-s,--system", systems, "Systems (default: the config's [systems] run)");
    add_k(stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (*seed_opt) g.seed = seed_flag;

    try {
        if (*measures) return cmd_measures(dist);
        if (*synth) return cmd_synth(g, spec_path, synth_out);
        if (*fuse) return cmd_fuse(run_path, !no_shift, tag);

        const RunConfig config = resolve_config(g);
        WorkdirLock lock(config.workdir, ingest->parsed());
        if (lock.busy()) throw LockBusy{};
        if (*ingest) return cmd_ingest(config, records, memberships);
        if (*train) return cmd_train(config, g.split, k_flag);
        if (*split_docs) return cmd_split_docs(config, g.split, strategy, k_flag);
        if (*profile) return cmd_profile(config, g.split, system, k_flag);
        if (*index) return cmd_index(config, g.split, system, k_flag);
        if (*search_cmd) return cmd_search(config, g.split, system, k_flag, query_text, query_id);
        if (*evaluate) return cmd_evaluate(config, systems, pvalues);
        if (*stats) return cmd_stats(config, g.split, systems, k_flag);
    } catch (const LockBusy&) {
        std::cerr << "subprof: workdir is locked by another invocation\n";
        return kLocked;
    } catch (const Error& e) {
        std::cerr << "subprof: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "subprof: " << e.what() << '\n';
        return kUnexpected;
    }
    return kUsage;
}
