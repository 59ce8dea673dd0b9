#include "subprof/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "subprof/error.hpp"

namespace subprof {

Query make_query(const Initiative& initiative, const PreprocessConfig& config, const Vocabulary& vocab) {
    std::string text = initiative.title;
    for (const auto& subject : initiative.subjects) {
        text += ". ";
        text += subject;
    }
    auto words = normalize(text, config);
    if (words.empty()) throw Error(Errc::EmptyQuery, "query for initiative " + initiative.id + " is empty");
    std::vector<TermId> ids;
    for (const auto& w : words)
        if (auto id = vocab.find(w)) ids.push_back(*id);
    return Query::from_terms(initiative.id, ids);
}

Memberships load_memberships(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "missing memberships: " + path);
    Memberships out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string committee, candidate;
        if (!(fields >> committee)) continue;
        if (!(fields >> candidate)) throw Error(Errc::MalformedInput, "bad membership line: " + line);
        out[committee].insert(candidate);
    }
    return out;
}

void save_memberships(const std::string& path, const Memberships& memberships) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write memberships: " + path);
    for (const auto& [committee, members] : memberships)
        for (const auto& m : members) out << committee << ' ' << m << '\n';
}

std::size_t QrelSet::nr(const std::string& query_id) const {
    auto it = relevant.find(query_id);
    return it == relevant.end() ? 0 : it->second.size();
}

QrelSet make_qrels(const std::vector<Initiative>& test_initiatives, const Memberships& memberships,
                   const Corpus& train, int min_interventions) {
    const auto counts = train.documents_per_candidate();
    QrelSet qrels;
    for (const auto& init : test_initiatives) {
        if (init.committee_id.empty()) continue;
        auto members = memberships.find(init.committee_id);
        if (members == memberships.end()) continue;
        std::set<std::string> relevant;
        for (const auto& candidate : members->second) {
            auto c = counts.find(candidate);
            if (c != counts.end() && c->second >= static_cast<std::size_t>(min_interventions)) relevant.insert(candidate);
        }
        if (!relevant.empty()) qrels.relevant.emplace(init.id, std::move(relevant));
    }
    return qrels;
}

void write_qrels(std::ostream& out, const QrelSet& qrels) {
    for (const auto& [query, relevant] : qrels.relevant)
        for (const auto& candidate : relevant) out << query << " 0 " << candidate << " 1\n";
}

QrelSet read_qrels(std::istream& in) {
    QrelSet qrels;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string query, iter, candidate;
        int grade = 0;
        if (!(fields >> query)) continue;
        if (!(fields >> iter >> candidate >> grade)) throw Error(Errc::MalformedInput, "bad qrels line: " + line);
        if (grade > 0) qrels.relevant[query].insert(candidate);
    }
    return qrels;
}

namespace {

void check_qrel(const std::set<std::string>& relevant, int cutoff) {
    if (relevant.empty()) throw Error(Errc::UndefinedForEmptyQrel, "metric undefined for an empty relevant set");
    if (cutoff < 1) throw Error(Errc::InvalidArgument, "metric cutoff must be positive");
}

std::size_t relevant_in_top(std::span<const std::string> ranking, const std::set<std::string>& relevant,
                            std::size_t cutoff) {
    const std::size_t n = std::min(cutoff, ranking.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += relevant.contains(ranking[i]) ? 1 : 0;
    return hits;
}

}  // namespace

double ndcg_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, int cutoff) {
    check_qrel(relevant, cutoff);
    const std::size_t n = std::min(static_cast<std::size_t>(cutoff), ranking.size());
    double dcg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (relevant.contains(ranking[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    double ideal = 0.0;
    const std::size_t ideal_n = std::min(static_cast<std::size_t>(cutoff), relevant.size());
    for (std::size_t i = 0; i < ideal_n; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    return dcg / ideal;
}

double precision_at(std::span<const std::string> ranking, const std::set<std::string>& relevant, int cutoff) {
    check_qrel(relevant, cutoff);
    return static_cast<double>(relevant_in_top(ranking, relevant, static_cast<std::size_t>(cutoff))) / cutoff;
}

double recall_at_nr(std::span<const std::string> ranking, const std::set<std::string>& relevant) {
    check_qrel(relevant, 1);
    return static_cast<double>(relevant_in_top(ranking, relevant, relevant.size())) /
           static_cast<double>(relevant.size());
}

std::vector<std::string> candidate_ids(const CandidateRanking& ranking) {
    std::vector<std::string> out;
    out.reserve(ranking.size());
    for (const auto& c : ranking) out.push_back(c.candidate_id);
    return out;
}

double paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw Error(Errc::InvalidArgument, "paired_t_test: need two equal-length samples of size >= 2");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) return mean == 0.0 ? 1.0 : 0.0;
    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))));
}

double normalized_entropy(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) throw Error(Errc::SingleCategory, "normalized_entropy: need at least two categories");
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    if (total == 0.0) throw Error(Errc::InvalidArgument, "normalized_entropy: no observations");
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(counts.size()));
}

std::vector<EntropyPoint> entropy_scatter(const std::vector<std::pair<std::string, std::vector<ScoredHit>>>& runs,
                                          int top, int n_topics, int n_candidates) {
    std::vector<EntropyPoint> out;
    for (const auto& [query_id, hits] : runs) {
        if (hits.empty()) continue;
        const std::size_t n = std::min(hits.size(), static_cast<std::size_t>(std::max(top, 0)));
        std::vector<std::uint64_t> topics(static_cast<std::size_t>(std::max(n_topics, 2)), 0);
        std::map<std::string, std::uint64_t> by_candidate;
        for (std::size_t i = 0; i < n; ++i) {
            if (hits[i].topic >= 0 && hits[i].topic < n_topics) ++topics[static_cast<std::size_t>(hits[i].topic)];
            ++by_candidate[hits[i].candidate_id];
        }
        std::vector<std::uint64_t> candidates;
        for (const auto& [id, c] : by_candidate) candidates.push_back(c);
        candidates.resize(std::max({candidates.size(), static_cast<std::size_t>(n_candidates), std::size_t{2}}), 0);

        EntropyPoint point{query_id, 0.0, 0.0};
        if (std::any_of(topics.begin(), topics.end(), [](auto c) { return c > 0; }))
            point.topic_entropy = normalized_entropy(topics);
        point.candidate_entropy = normalized_entropy(candidates);
        out.push_back(point);
    }
    return out;
}

}  // namespace subprof
