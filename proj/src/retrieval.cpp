#include "subprof/retrieval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "subprof/error.hpp"
#include "numfmt.hpp"

namespace subprof {

Query Query::from_terms(std::string query_id, std::span<const TermId> terms) {
    std::map<TermId, std::uint32_t> counts;
    for (TermId t : terms) ++counts[t];
    Query q{std::move(query_id), {}};
    for (auto [t, c] : counts) q.terms.push_back({t, c});
    return q;
}

bool operator==(const Index::Unit& a, const Index::Unit& b) {
    return a.candidate_id == b.candidate_id && a.facet == b.facet && a.topic == b.topic && a.length == b.length;
}

bool operator==(const Index& a, const Index& b) {
    if (a.units_ != b.units_ || a.collection_length_ != b.collection_length_ || a.collection_tf_ != b.collection_tf_ ||
        a.postings_.size() != b.postings_.size())
        return false;
    for (std::size_t t = 0; t < a.postings_.size(); ++t) {
        const auto& pa = a.postings_[t];
        const auto& pb = b.postings_[t];
        if (pa.size() != pb.size()) return false;
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa[i].unit != pb[i].unit || pa[i].count != pb[i].count) return false;
    }
    return true;
}

std::span<const Posting> Index::postings(TermId term) const {
    if (term >= postings_.size()) return {};
    return postings_[term];
}

std::uint32_t Index::count(std::size_t i, TermId term) const {
    auto list = postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), i,
                               [](const Posting& p, std::size_t unit) { return p.unit < unit; });
    return it != list.end() && it->unit == i ? it->count : 0;
}

Index build_index(const std::vector<Subprofile>& subprofiles) {
    if (subprofiles.empty()) throw Error(Errc::EmptyInput, "build_index: no subprofiles");
    Index index;
    std::set<std::string> ids;
    TermId max_term = 0;
    for (const auto& sp : subprofiles) {
        if (!ids.insert(sp.id()).second) throw Error(Errc::DuplicateId, "build_index: duplicate subprofile " + sp.id());
        if (!sp.terms.empty()) max_term = std::max(max_term, sp.terms.back().term);
    }
    index.postings_.resize(static_cast<std::size_t>(max_term) + 1);
    index.collection_tf_.assign(index.postings_.size(), 0);
    for (std::size_t i = 0; i < subprofiles.size(); ++i) {
        const auto& sp = subprofiles[i];
        Index::Unit unit{sp.candidate_id, sp.facet, sp.topic, 0};
        for (const auto& tc : sp.terms) {
            index.postings_[tc.term].push_back({static_cast<std::uint32_t>(i), tc.count});
            index.collection_tf_[tc.term] += tc.count;
            unit.length += tc.count;
        }
        index.collection_length_ += unit.length;
        index.units_.push_back(std::move(unit));
    }
    return index;
}

namespace {
constexpr std::string_view kIndexMagic = "subprof-index 1";
}

void save_index(const std::string& path, const Index& index) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write index: " + path);
    out << kIndexMagic << '\n' << index.units_.size() << ' ' << index.postings_.size() << '\n';
    for (const auto& u : index.units_) out << u.candidate_id << ' ' << u.facet << ' ' << u.topic << ' ' << u.length << '\n';
    for (std::size_t t = 0; t < index.postings_.size(); ++t) {
        if (index.postings_[t].empty()) continue;
        out << t;
        for (const auto& p : index.postings_[t]) out << ' ' << p.unit << ':' << p.count;
        out << '\n';
    }
}

Index load_index(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "missing index: " + path);
    std::string line;
    std::getline(in, line);
    if (line != kIndexMagic) throw Error(Errc::MalformedInput, "not an index file: " + path);
    std::size_t n_units = 0, n_terms = 0;
    in >> n_units >> n_terms;
    Index index;
    for (std::size_t i = 0; i < n_units; ++i) {
        Index::Unit u;
        if (!(in >> u.candidate_id >> u.facet >> u.topic >> u.length))
            throw Error(Errc::MalformedInput, "index truncated: " + path);
        index.units_.push_back(std::move(u));
    }
    std::getline(in, line);
    index.postings_.resize(n_terms);
    index.collection_tf_.assign(n_terms, 0);
    std::vector<std::uint64_t> lengths(n_units, 0);
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::size_t term = 0;
        if (!(fields >> term) || term >= n_terms) throw Error(Errc::MalformedInput, "bad postings line: " + line);
        std::string pair;
        while (fields >> pair) {
            auto colon = pair.find(':');
            if (colon == std::string::npos) throw Error(Errc::MalformedInput, "bad posting: " + pair);
            Posting p{static_cast<std::uint32_t>(std::stoul(pair.substr(0, colon))),
                      static_cast<std::uint32_t>(std::stoul(pair.substr(colon + 1)))};
            if (p.unit >= n_units) throw Error(Errc::MalformedInput, "posting refers to unknown unit");
            index.postings_[term].push_back(p);
            index.collection_tf_[term] += p.count;
            lengths[p.unit] += p.count;
        }
    }
    for (std::size_t i = 0; i < n_units; ++i) {
        if (lengths[i] != index.units_[i].length) throw Error(Errc::MalformedInput, "index lengths inconsistent");
        index.collection_length_ += lengths[i];
    }
    return index;
}

double lm_score(const Query& query, std::size_t unit, const Index& index, double mu) {
    if (!(mu > 0.0)) throw Error(Errc::InvalidArgument, "lm_score: mu must be positive");
    const double length = static_cast<double>(index.unit(unit).length);
    const double collection = static_cast<double>(index.collection_length());
    double score = 0.0;
    for (const auto& tc : query.terms) {
        const auto ctf = index.collection_frequency(tc.term);
        if (ctf == 0) continue;
        const double background = static_cast<double>(ctf) / collection;
        const double count = index.count(unit, tc.term);
        score += tc.count * std::log((count + mu * background) / (length + mu));
    }
    return score;
}

namespace {

void rank_hits(std::vector<ScoredHit>& hits, int top_n) {
    std::sort(hits.begin(), hits.end(), [](const ScoredHit& a, const ScoredHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.target_id() < b.target_id();
    });
    if (hits.size() > static_cast<std::size_t>(top_n)) hits.resize(static_cast<std::size_t>(top_n));
    for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = static_cast<int>(i) + 1;
}

}  // namespace

std::vector<ScoredHit> search(const Query& query, const Index& index, double mu, int top_n) {
    if (top_n < 1) throw Error(Errc::InvalidArgument, "search: top_n must be positive");
    std::set<std::uint32_t> units;
    for (const auto& tc : query.terms)
        for (const auto& p : index.postings(tc.term)) units.insert(p.unit);
    std::vector<ScoredHit> hits;
    hits.reserve(units.size());
    for (std::uint32_t u : units) {
        const auto& unit = index.unit(u);
        hits.push_back({unit.candidate_id, unit.facet, unit.topic, lm_score(query, u, index, mu), 0});
    }
    rank_hits(hits, top_n);
    return hits;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(Errc::InvalidArgument, "cosine_similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<ScoredHit> cosine_topic_search(std::span<const double> query_vector,
                                           const std::vector<TopicProfile>& profiles, int top_n) {
    if (top_n < 1) throw Error(Errc::InvalidArgument, "cosine_topic_search: top_n must be positive");
    if (std::all_of(query_vector.begin(), query_vector.end(), [](double v) { return v == 0.0; }))
        throw Error(Errc::ZeroVector, "cosine_topic_search: query vector is all zero");
    std::vector<ScoredHit> hits;
    hits.reserve(profiles.size());
    for (const auto& p : profiles)
        hits.push_back({p.candidate_id, p.facet, kNoTopic, cosine_similarity(query_vector, p.topic_vector), 0});
    rank_hits(hits, top_n);
    return hits;
}

void write_run(std::ostream& out, const std::string& query_id, const std::vector<ScoredHit>& hits,
               const std::string& run_tag) {
    for (const auto& h : hits) {
        out << query_id << " Q0 " << (h.facet.empty() ? h.candidate_id : h.target_id()) << ' ' << h.rank << ' ';
        detail::put_double(out, h.score);
        out << ' ' << run_tag << '\n';
    }
}

std::vector<RunLine> read_run(std::istream& in) {
    std::vector<RunLine> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        RunLine r;
        std::string q0, score;
        if (!(fields >> r.query_id >> q0 >> r.target_id >> r.rank >> score >> r.run_tag))
            throw Error(Errc::MalformedInput, "bad run line: " + line);
        r.score = detail::parse_double(score);
        out.push_back(std::move(r));
    }
    return out;
}

ScoredHit hit_from_run_line(const RunLine& line) {
    ScoredHit hit;
    auto hash = line.target_id.find('#');
    hit.candidate_id = line.target_id.substr(0, hash);
    if (hash != std::string::npos) hit.facet = line.target_id.substr(hash + 1);
    if (hit.facet.size() > 1 && hit.facet[0] == 'x') {
        int topic = 0;
        auto [ptr, ec] = std::from_chars(hit.facet.data() + 1, hit.facet.data() + hit.facet.size(), topic);
        if (ec == std::errc() && ptr == hit.facet.data() + hit.facet.size()) hit.topic = topic;
    }
    hit.score = line.score;
    hit.rank = line.rank;
    return hit;
}

}  // namespace subprof
