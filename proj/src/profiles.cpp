#include "subprof/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "subprof/error.hpp"
#include "subprof/splitter.hpp"
#include "numfmt.hpp"

namespace subprof {

std::string topic_facet(int topic) { return "x" + std::to_string(topic); }

namespace {

Subprofile make_subprofile(std::string candidate, std::string facet, int topic, TermCounts terms) {
    Subprofile sp{std::move(candidate), std::move(facet), topic, std::move(terms), 0};
    sp.size = total_count(sp.terms);
    return sp;
}

bool by_candidate_then_facet(const Subprofile& a, const Subprofile& b) {
    if (a.candidate_id != b.candidate_id) return a.candidate_id < b.candidate_id;
    if (a.topic != b.topic) return a.topic < b.topic;
    return a.facet < b.facet;
}

}  // namespace

LdaSubprofiles build_lda_subprofiles(const Corpus& train, const TopicModel& model, Strategy strategy) {
    std::map<std::pair<std::string, int>, TermCounts> merged;
    LdaSubprofiles out;
    for (const auto& doc : train.documents()) {
        auto parts = split_document(model, doc, strategy);
        out.splits.push_back({doc.candidate_id, doc.doc_id, parts.size()});
        for (auto& part : parts) merge_counts(merged[{doc.candidate_id, part.topic}], part.terms);
    }
    for (auto& [key, terms] : merged)
        out.subprofiles.push_back(make_subprofile(key.first, topic_facet(key.second), key.second, std::move(terms)));
    return out;
}

std::vector<Subprofile> build_term_monolithic(const Corpus& train) {
    std::map<std::string, TermCounts> merged;
    for (const auto& doc : train.documents()) merge_counts(merged[doc.candidate_id], doc.terms);
    std::vector<Subprofile> out;
    for (auto& [candidate, terms] : merged)
        out.push_back(make_subprofile(candidate, std::string(kMonolithicFacet), kNoTopic, std::move(terms)));
    return out;
}

std::vector<Subprofile> build_term_intervention(const Corpus& train) {
    std::vector<Subprofile> out;
    for (const auto& doc : train.documents())
        out.push_back(make_subprofile(doc.candidate_id, doc.initiative_id, kNoTopic, doc.terms));
    std::stable_sort(out.begin(), out.end(), by_candidate_then_facet);
    return out;
}

TopicProfileSet build_topic_profiles(const Corpus& train, std::size_t vocab_size, TopicProfileMode mode,
                                     const LdaParams& params) {
    if (train.empty()) throw Error(Errc::EmptyCorpus, "build_topic_profiles: empty training corpus");
    if (params.k < 1) throw Error(Errc::InvalidK, "build_topic_profiles: k must be positive");

    auto fit = [&](const Corpus& corpus) {
        return params.k == 1 ? train_single_topic(corpus, vocab_size, params.beta)
                             : train_lda(corpus, vocab_size, params);
    };

    TopicProfileSet set;
    if (mode == TopicProfileMode::Monolithic) {
        std::map<std::string, TermCounts> merged;
        for (const auto& doc : train.documents()) merge_counts(merged[doc.candidate_id], doc.terms);
        std::vector<Document> compiled;
        for (auto& [candidate, terms] : merged) {
            Document d{candidate, "", candidate, std::move(terms), 0};
            d.length = total_count(d.terms);
            compiled.push_back(std::move(d));
        }
        set.model = fit(Corpus(std::move(compiled), {}));
        for (std::size_t row = 0; row < set.model.documents(); ++row) {
            auto theta = set.model.theta(row);
            set.profiles.push_back({set.model.doc_ids()[row], std::string(kMonolithicFacet), {theta.begin(), theta.end()}});
        }
    } else {
        set.model = fit(train);
        const auto& docs = train.documents();
        for (std::size_t row = 0; row < docs.size(); ++row) {
            auto theta = set.model.theta(row);
            set.profiles.push_back({docs[row].candidate_id, docs[row].initiative_id, {theta.begin(), theta.end()}});
        }
        std::stable_sort(set.profiles.begin(), set.profiles.end(), [](const TopicProfile& a, const TopicProfile& b) {
            return a.candidate_id != b.candidate_id ? a.candidate_id < b.candidate_id : a.facet < b.facet;
        });
    }
    return set;
}

ProfileStats profile_stats(const std::vector<Subprofile>& subprofiles, const std::vector<DocumentSplitCount>& splits) {
    ProfileStats stats;
    std::set<std::string> candidates;
    std::uint64_t total_size = 0;
    for (const auto& sp : subprofiles) {
        candidates.insert(sp.candidate_id);
        total_size += sp.size;
        if (sp.size < kTinySubprofileSize) ++stats.tiny_count;
    }
    stats.total_subprofiles = subprofiles.size();
    stats.candidates = candidates.size();
    if (stats.total_subprofiles > 0) {
        stats.avg_per_candidate = static_cast<double>(stats.total_subprofiles) / static_cast<double>(stats.candidates);
        stats.avg_size = static_cast<double>(total_size) / static_cast<double>(stats.total_subprofiles);
        stats.tiny_fraction = static_cast<double>(stats.tiny_count) / static_cast<double>(stats.total_subprofiles);
    }

    struct Acc {
        std::size_t docs = 0;
        std::size_t sum = 0;
        std::size_t max = 0;
        std::size_t min = 0;
    };
    std::map<std::string, Acc> per_candidate;
    for (const auto& s : splits) {
        Acc& acc = per_candidate[s.candidate_id];
        acc.min = acc.docs == 0 ? s.subdocuments : std::min(acc.min, s.subdocuments);
        acc.max = std::max(acc.max, s.subdocuments);
        acc.sum += s.subdocuments;
        ++acc.docs;
    }
    if (!per_candidate.empty()) {
        for (const auto& [candidate, acc] : per_candidate) {
            stats.subdocs_mean += static_cast<double>(acc.sum) / static_cast<double>(acc.docs);
            stats.subdocs_max += static_cast<double>(acc.max);
            stats.subdocs_min += static_cast<double>(acc.min);
        }
        const auto n = static_cast<double>(per_candidate.size());
        stats.subdocs_mean /= n;
        stats.subdocs_max /= n;
        stats.subdocs_min /= n;
    }
    return stats;
}

std::string format_stats_table(const std::vector<std::pair<std::string, ProfileStats>>& rows) {
    using detail::fixed;
    std::ostringstream out;
    out << std::left << std::setw(12) << "system" << std::right << std::setw(8) << "#SP" << std::setw(10) << "Avg.#SP"
        << std::setw(13) << "Avg.SP-size" << std::setw(8) << "#tiny" << std::setw(8) << "%tiny" << std::setw(10)
        << "sd-mean" << std::setw(9) << "sd-max" << std::setw(9) << "sd-min" << '\n';
    for (const auto& [name, s] : rows) {
        out << std::left << std::setw(12) << name << std::right << std::setw(8) << s.total_subprofiles << std::setw(10)
            << fixed(s.avg_per_candidate, 2) << std::setw(13) << fixed(s.avg_size, 2) << std::setw(8) << s.tiny_count
            << std::setw(8) << fixed(100.0 * s.tiny_fraction, 2) << std::setw(10) << fixed(s.subdocs_mean, 2)
            << std::setw(9) << fixed(s.subdocs_max, 2) << std::setw(9) << fixed(s.subdocs_min, 2) << '\n';
    }
    return out.str();
}

void save_subprofiles(const std::string& path, const std::vector<Subprofile>& subprofiles, const Vocabulary& vocab) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write profiles: " + path);
    for (const auto& sp : subprofiles)
        for (const auto& tc : sp.terms)
            out << sp.candidate_id << ' ' << sp.facet << ' ' << vocab.term(tc.term) << ' ' << tc.count << '\n';
}

namespace {

int topic_of_facet(const std::string& facet) {
    if (facet.size() < 2 || facet[0] != 'x') return kNoTopic;
    int topic = 0;
    auto [ptr, ec] = std::from_chars(facet.data() + 1, facet.data() + facet.size(), topic);
    return ec == std::errc() && ptr == facet.data() + facet.size() ? topic : kNoTopic;
}

}  // namespace

std::vector<Subprofile> load_subprofiles(const std::string& path, const Vocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "missing profiles: " + path);
    std::vector<Subprofile> out;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string candidate, facet, term;
        std::uint32_t count = 0;
        if (!(fields >> candidate >> facet >> term >> count) || count == 0)
            throw Error(Errc::MalformedInput, "bad profile line: " + line);
        auto id = vocab.find(term);
        if (!id) throw Error(Errc::MalformedInput, "profile term not in vocabulary: " + term);
        auto [it, inserted] = index.emplace(std::make_pair(candidate, facet), out.size());
        if (inserted) out.push_back({candidate, facet, topic_of_facet(facet), {}, 0});
        auto& terms = out[it->second].terms;
        if (terms.empty() || terms.back().term < *id)
            terms.push_back({*id, count});
        else
            merge_counts(terms, TermCounts{{*id, count}});
        out[it->second].size += count;
    }
    return out;
}

void save_topic_profiles(const std::string& path, const std::vector<TopicProfile>& profiles) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write topic profiles: " + path);
    for (const auto& p : profiles) {
        out << p.candidate_id << ' ' << p.facet;
        for (double v : p.topic_vector) {
            out << ' ';
            detail::put_double(out, v);
        }
        out << '\n';
    }
}

std::vector<TopicProfile> load_topic_profiles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "missing topic profiles: " + path);
    std::vector<TopicProfile> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        TopicProfile p;
        if (!(fields >> p.candidate_id >> p.facet)) throw Error(Errc::MalformedInput, "bad topic profile line");
        std::string token;
        while (fields >> token) p.topic_vector.push_back(detail::parse_double(token));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace subprof
