#include "subprof/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "numfmt.hpp"
#include "ini.hpp"
#include "subprof/error.hpp"
#include "subprof/fusion.hpp"
#include "subprof/profiles.hpp"
#include "subprof/retrieval.hpp"

namespace subprof {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

SystemSpec SystemSpec::parse(std::string_view name) {
    const std::string n = lower(trim(name));
    SystemSpec spec;
    if (auto s = parse_strategy(n)) {
        spec.kind = Kind::Strategy;
        spec.strategy = *s;
    } else if (n == "term-mon" || n == "termmon") {
        spec.kind = Kind::TermMon;
    } else if (n == "term-int" || n == "termint") {
        spec.kind = Kind::TermInt;
    } else if (n == "topic-mon" || n == "topicmon") {
        spec.kind = Kind::TopicMon;
    } else if (n == "topic-int" || n == "topicint") {
        spec.kind = Kind::TopicInt;
    } else {
        throw Error(Errc::MalformedConfig, "unknown system: " + std::string(name));
    }
    return spec;
}

std::string SystemSpec::name() const {
    switch (kind) {
    case Kind::Strategy: return std::string(strategy_name(strategy));
    case Kind::TermMon: return "term-mon";
    case Kind::TermInt: return "term-int";
    case Kind::TopicMon: return "topic-mon";
    case Kind::TopicInt: return "topic-int";
    }
    return {};
}

RunConfig RunConfig::load(const std::string& path) {
    if (!fs::exists(path)) throw Error(Errc::MissingArtifact, "cannot open config: " + path);
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error(Errc::MalformedConfig, e.what());
    }
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        if (p.empty()) return p;
        fs::path q(p);
        return (q.is_relative() ? base / q : q).lexically_normal().string();
    };

    RunConfig config;
    try {
        config.corpus_path = resolve(detail::setting<std::string>(tree, "paths.corpus", ""));
        config.memberships_path = resolve(detail::setting<std::string>(tree, "paths.memberships", ""));
        config.workdir = resolve(detail::setting<std::string>(tree, "paths.workdir", config.workdir));

        if (auto file = tree.get_optional<std::string>("preprocess.stopword_file"); file && !file->empty())
            config.preprocess.stopwords = load_stopwords(resolve(*file));
        config.preprocess.stemmer_name = detail::setting<std::string>(tree, "preprocess.stemmer", "identity");
        config.preprocess.stem = stemmer_by_name(config.preprocess.stemmer_name);
        config.preprocess.min_df_fraction =
            detail::setting(tree, "preprocess.min_df_fraction", config.preprocess.min_df_fraction);

        if (auto ks = tree.get_optional<std::string>("lda.k")) {
            config.k_heuristics.clear();
            for (const auto& k : split_list(*ks)) config.k_heuristics.push_back(KHeuristic::parse(k));
        }
        config.alpha = detail::setting(tree, "lda.alpha", config.alpha);
        config.beta = detail::setting(tree, "lda.beta", config.beta);
        config.iterations = detail::setting(tree, "lda.iterations", config.iterations);
        config.fold_in_iterations = detail::setting(tree, "lda.fold_in_iterations", config.fold_in_iterations);
        config.seed = detail::setting(tree, "lda.seed", config.seed);

        for (const auto& s : split_list(detail::setting<std::string>(tree, "systems.run", "")))
            config.systems.push_back(SystemSpec::parse(s));

        config.mu = detail::setting(tree, "retrieval.mu", config.mu);
        config.depth = detail::setting(tree, "retrieval.depth", config.depth);

        config.splits = detail::setting(tree, "evaluation.splits", config.splits);
        config.ratio = detail::setting(tree, "evaluation.ratio", config.ratio);
        config.cutoff = detail::setting(tree, "evaluation.cutoff", config.cutoff);
        config.min_interventions = detail::setting(tree, "evaluation.min_interventions", config.min_interventions);
        config.pairwise_pvalues = detail::setting(tree, "evaluation.pvalues", config.pairwise_pvalues);
        config.scatter_top = detail::setting(tree, "evaluation.scatter_top", config.scatter_top);
    } catch (const boost::property_tree::ptree_error& e) {
        throw Error(Errc::MalformedConfig, std::string("run config: ") + e.what());
    }
    if (config.k_heuristics.empty()) throw Error(Errc::MalformedConfig, "no k heuristic configured");
    if (config.splits < 1) throw Error(Errc::MalformedConfig, "splits must be positive");
    if (!(config.ratio > 0.0 && config.ratio < 1.0)) throw Error(Errc::MalformedConfig, "ratio must lie in (0, 1)");
    if (config.cutoff < 1 || config.depth < 1) throw Error(Errc::MalformedConfig, "cutoff and depth must be positive");
    if (!(config.mu > 0.0)) throw Error(Errc::MalformedConfig, "mu must be positive");
    if (config.iterations < 1 || config.fold_in_iterations < 1)
        throw Error(Errc::MalformedConfig, "iterations must be positive");
    return config;
}

namespace {

struct EvalQuery {
    Query query;
    const std::set<std::string>* relevant = nullptr;
};

// One report row: a system, with the k heuristic for k-dependent systems.
struct Row {
    SystemSpec system;
    std::optional<KHeuristic> heuristic;
    std::string label() const {
        return system.name() + (heuristic ? "@" + heuristic->name() : std::string());
    }
};

QueryMetrics score_query(const EvalQuery& q, const CandidateRanking& ranking, int cutoff) {
    const auto ids = candidate_ids(ranking);
    return {q.query.query_id, ndcg_at(ids, *q.relevant, cutoff), precision_at(ids, *q.relevant, cutoff),
            recall_at_nr(ids, *q.relevant)};
}

std::string file_safe(std::string s) {
    for (char& c : s)
        if (c == '@' || c == ':') c = '_';
    return s;
}

}  // namespace

MetricReport run_experiment(const RunConfig& config, const ExperimentInputs& inputs) {
    if (config.systems.empty()) throw Error(Errc::MalformedConfig, "no systems to evaluate");
    if (inputs.partitions.empty()) throw Error(Errc::InvalidArgument, "no partitions");

    std::vector<Row> rows;
    for (const auto& system : config.systems) {
        if (system.uses_k()) {
            for (const auto& h : config.k_heuristics) rows.push_back({system, h});
        } else {
            rows.push_back({system, std::nullopt});
        }
    }

    MetricReport report;
    report.cutoff = config.cutoff;
    report.systems.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        report.systems[r].system = rows[r].system.name();
        report.systems[r].k_label = rows[r].heuristic ? rows[r].heuristic->name() : "-";
    }

    const std::size_t vocab_size = inputs.vocabulary.size();
    const bool write_artifacts = !config.workdir.empty();

    for (std::size_t s = 0; s < inputs.partitions.size(); ++s) {
        const auto& partition = inputs.partitions[s];
        const Corpus train = inputs.corpus.restrict_to(partition.train);
        if (train.empty()) throw Error(Errc::EmptyCorpus, "split " + std::to_string(s) + " has no training documents");

        std::vector<Initiative> test_initiatives;
        for (const auto& init : inputs.corpus.initiatives())
            if (partition.test.contains(init.id)) test_initiatives.push_back(init);
        const QrelSet qrels = make_qrels(test_initiatives, inputs.memberships, train, config.min_interventions);

        std::vector<EvalQuery> queries;
        for (const auto& [query_id, relevant] : qrels.relevant) {
            const Initiative* init = inputs.corpus.initiative(query_id);
            try {
                queries.push_back({make_query(*init, config.preprocess, inputs.vocabulary), &relevant});
            } catch (const Error& e) {
                if (e.code() != Errc::EmptyQuery) throw;
                std::clog << "split " << s << ": skipping query " << query_id << ": " << e.what() << '\n';
            }
        }

        fs::path split_dir;
        if (write_artifacts) {
            split_dir = fs::path(config.workdir) / ("split-" + std::to_string(s));
            fs::create_directories(split_dir / "runs");
            std::ofstream qout(split_dir / "qrels.txt", std::ios::binary);
            write_qrels(qout, qrels);
        }

        const CorpusStats stats = corpus_stats(train);
        const std::uint64_t lda_seed = config.seed + s;
        std::map<std::string, TopicModel> models;  // by heuristic name
        auto model_for = [&](const KHeuristic& h) -> const TopicModel& {
            auto it = models.find(h.name());
            if (it != models.end()) return it->second;
            LdaParams params{choose_k(stats, h), config.alpha, config.beta, config.iterations, lda_seed};
            TopicModel model = train_lda(train, vocab_size, params);
            if (write_artifacts) save_model((split_dir / ("model-" + file_safe(h.name()) + ".txt")).string(), model);
            return models.emplace(h.name(), std::move(model)).first->second;
        };

        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Row& row = rows[r];
            SystemResult& result = report.systems[r];
            std::vector<QueryMetrics> metrics;
            std::vector<std::pair<std::string, std::vector<ScoredHit>>> runs;
            std::ostringstream run_text;

            if (row.system.kind == SystemSpec::Kind::TopicMon || row.system.kind == SystemSpec::Kind::TopicInt) {
                const int k = choose_k(stats, *row.heuristic);
                result.k = k;
                LdaParams params{k, config.alpha, config.beta, config.iterations, lda_seed};
                const auto mode = row.system.kind == SystemSpec::Kind::TopicMon ? TopicProfileMode::Monolithic
                                                                                : TopicProfileMode::Intervention;
                const TopicProfileSet set = build_topic_profiles(train, vocab_size, mode, params);
                for (const auto& q : queries) {
                    const auto theta = fold_in(set.model, q.query.terms, config.fold_in_iterations, lda_seed);
                    auto hits = cosine_topic_search(theta, set.profiles, config.depth);
                    const auto ranking = comb_lg_dcs(hits);
                    metrics.push_back(score_query(q, ranking, config.cutoff));
                    if (write_artifacts) write_run(run_text, q.query.query_id, ranking_as_hits(ranking), row.label());
                }
            } else {
                std::vector<Subprofile> subprofiles;
                std::optional<int> n_topics;
                switch (row.system.kind) {
                case SystemSpec::Kind::TermMon: subprofiles = build_term_monolithic(train); break;
                case SystemSpec::Kind::TermInt: subprofiles = build_term_intervention(train); break;
                default: {
                    const TopicModel& model = model_for(*row.heuristic);
                    result.k = static_cast<int>(model.topics());
                    n_topics = result.k;
                    subprofiles = build_lda_subprofiles(train, model, row.system.strategy).subprofiles;
                }
                }
                result.total_subprofiles += subprofiles.size();
                const Index index = build_index(subprofiles);
                for (const auto& q : queries) {
                    auto hits = search(q.query, index, config.mu, config.depth);
                    const auto ranking = comb_lg_dcs(shift_positive(hits));
                    metrics.push_back(score_query(q, ranking, config.cutoff));
                    if (write_artifacts) write_run(run_text, q.query.query_id, ranking_as_hits(ranking), row.label());
                    if (s == 0 && n_topics) runs.emplace_back(q.query.query_id, std::move(hits));
                }
                if (s == 0 && n_topics && *n_topics >= 2) {
                    const auto n_candidates = train.candidates().size();
                    if (n_candidates >= 2)
                        report.scatter[r] = entropy_scatter(runs, config.scatter_top, *n_topics,
                                                            static_cast<int>(n_candidates));
                }
            }

            if (write_artifacts) {
                std::ofstream out(split_dir / "runs" / (file_safe(row.label()) + ".run"), std::ios::binary);
                out << run_text.str();
            }
            result.per_split.push_back(std::move(metrics));
        }
    }

    // Means over queries within a split, then over splits that had queries.
    bool any_queries = false;
    for (auto& result : report.systems) {
        double ndcg = 0.0, precision = 0.0, recall = 0.0;
        std::size_t splits = 0;
        for (const auto& split : result.per_split) {
            if (split.empty()) continue;
            double n = 0.0, p = 0.0, rc = 0.0;
            for (const auto& m : split) {
                n += m.ndcg;
                p += m.precision;
                rc += m.recall;
            }
            const auto count = static_cast<double>(split.size());
            ndcg += n / count;
            precision += p / count;
            recall += rc / count;
            ++splits;
        }
        if (splits > 0) {
            any_queries = true;
            result.ndcg = ndcg / static_cast<double>(splits);
            result.precision = precision / static_cast<double>(splits);
            result.recall = recall / static_cast<double>(splits);
        }
    }
    if (!any_queries) throw Error(Errc::EmptyInput, "no evaluable queries in any split");

    if (config.pairwise_pvalues) {
        auto flat = [](const SystemResult& r) {
            std::vector<double> v;
            for (const auto& split : r.per_split)
                for (const auto& m : split) v.push_back(m.ndcg);
            return v;
        };
        for (std::size_t i = 0; i < report.systems.size(); ++i) {
            const auto a = flat(report.systems[i]);
            for (std::size_t j = i + 1; j < report.systems.size(); ++j) {
                const auto b = flat(report.systems[j]);
                if (a.size() >= 2 && a.size() == b.size()) report.pvalues[{i, j}] = paired_t_test(a, b);
            }
        }
    }

    if (write_artifacts) {
        std::ofstream text(fs::path(config.workdir) / "report.txt", std::ios::binary);
        write_report_text(text, report);
        std::ofstream jsonl(fs::path(config.workdir) / "report.jsonl", std::ios::binary);
        write_report_jsonl(jsonl, report);
        for (const auto& [row, points] : report.scatter) {
            std::ofstream out(fs::path(config.workdir) / "split-0" / ("scatter-" + file_safe(rows[row].label()) + ".txt"),
                              std::ios::binary);
            write_scatter(out, points);
        }
    }
    return report;
}

MetricReport run_experiment(const RunConfig& config) {
    if (config.corpus_path.empty()) throw Error(Errc::MalformedConfig, "no corpus path configured");
    if (config.memberships_path.empty()) throw Error(Errc::MalformedConfig, "no memberships path configured");
    BuiltCorpus built = build_corpus(read_records(config.corpus_path), config.preprocess);
    ExperimentInputs inputs;
    inputs.partitions = make_partitions(built.corpus, config.ratio, config.splits, config.seed);
    inputs.corpus = std::move(built.corpus);
    inputs.vocabulary = std::move(built.vocabulary);
    inputs.memberships = load_memberships(config.memberships_path);
    return run_experiment(config, inputs);
}

void write_report_text(std::ostream& out, const MetricReport& report) {
    const std::string c = std::to_string(report.cutoff);
    std::size_t width = 6;
    for (const auto& r : report.systems) width = std::max(width, r.system.size());
    std::size_t kwidth = 1;
    for (const auto& r : report.systems) kwidth = std::max(kwidth, r.k_label.size());

    out << std::left << std::setw(static_cast<int>(width)) << "system" << "  " << std::setw(static_cast<int>(kwidth))
        << "k" << "  " << std::right << std::setw(4) << "#k" << "  " << std::setw(8) << ("ndcg@" + c) << "  "
        << std::setw(8) << ("p@" + c) << "  " << std::setw(9) << "recall@nr" << "  " << std::setw(8) << "#SP" << '\n';
    for (const auto& r : report.systems) {
        out << std::left << std::setw(static_cast<int>(width)) << r.system << "  "
            << std::setw(static_cast<int>(kwidth)) << r.k_label << "  " << std::right << std::setw(4)
            << (r.k > 0 ? std::to_string(r.k) : std::string("-")) << "  " << std::setw(8) << detail::fixed(r.ndcg)
            << "  " << std::setw(8) << detail::fixed(r.precision) << "  " << std::setw(9) << detail::fixed(r.recall)
            << "  " << std::setw(8) << (r.total_subprofiles ? std::to_string(r.total_subprofiles) : std::string("-"))
            << '\n';
    }
    if (!report.pvalues.empty()) {
        out << "\npaired t-test on ndcg@" << c << " (two-sided p)\n";
        for (const auto& [pair, p] : report.pvalues) {
            const auto& a = report.systems[pair.first];
            const auto& b = report.systems[pair.second];
            out << a.system << (a.k_label == "-" ? "" : "@" + a.k_label) << " vs " << b.system
                << (b.k_label == "-" ? "" : "@" + b.k_label) << "  " << detail::fixed(p, 6) << '\n';
        }
    }
}

void write_report_jsonl(std::ostream& out, const MetricReport& report) {
    const std::string c = std::to_string(report.cutoff);
    for (const auto& r : report.systems) {
        nlohmann::ordered_json row;
        row["system"] = r.system;
        row["k"] = r.k_label;
        row["topics"] = r.k;
        row["ndcg@" + c] = r.ndcg;
        row["p@" + c] = r.precision;
        row["recall@nr"] = r.recall;
        row["subprofiles"] = r.total_subprofiles;
        std::size_t queries = 0;
        for (const auto& split : r.per_split) queries += split.size();
        row["queries"] = queries;
        out << row.dump() << '\n';
    }
    for (const auto& [pair, p] : report.pvalues) {
        nlohmann::ordered_json row;
        row["a"] = report.systems[pair.first].system + "@" + report.systems[pair.first].k_label;
        row["b"] = report.systems[pair.second].system + "@" + report.systems[pair.second].k_label;
        row["p"] = p;
        out << row.dump() << '\n';
    }
}

void write_scatter(std::ostream& out, const std::vector<EntropyPoint>& points) {
    for (const auto& p : points) out << detail::fixed(p.topic_entropy, 6) << ' ' << detail::fixed(p.candidate_entropy, 6) << '\n';
}

}  // namespace subprof
