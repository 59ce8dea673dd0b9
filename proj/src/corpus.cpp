#include "subprof/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "subprof/error.hpp"
#include "subprof/random.hpp"

namespace subprof {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t total_count(const TermCounts& counts) {
    std::uint64_t total = 0;
    for (const auto& tc : counts) total += tc.count;
    return total;
}

void merge_counts(TermCounts& into, const TermCounts& other) {
    TermCounts merged;
    merged.reserve(into.size() + other.size());
    auto a = into.begin();
    auto b = other.begin();
    while (a != into.end() || b != other.end()) {
        if (b == other.end() || (a != into.end() && a->term < b->term)) {
            merged.push_back(*a++);
        } else if (a == into.end() || b->term < a->term) {
            merged.push_back(*b++);
        } else {
            merged.push_back({a->term, a->count + b->count});
            ++a;
            ++b;
        }
    }
    into = std::move(merged);
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_freq)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)) {
    if (terms_.size() != doc_freq_.size())
        throw Error(Errc::InvalidArgument, "vocabulary: term and frequency lists differ in length");
    for (TermId i = 0; i < terms_.size(); ++i) {
        if (!ids_.emplace(terms_[i], i).second)
            throw Error(Errc::DuplicateId, "vocabulary: duplicate term " + terms_[i]);
    }
}

std::optional<TermId> Vocabulary::find(std::string_view term) const {
    auto it = ids_.find(std::string(term));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

Corpus::Corpus(std::vector<Document> documents, std::vector<Initiative> initiatives)
    : documents_(std::move(documents)), initiatives_(std::move(initiatives)) {
    for (std::size_t i = 0; i < initiatives_.size(); ++i) initiative_index_.emplace(initiatives_[i].id, i);
}

const Initiative* Corpus::initiative(const std::string& id) const {
    auto it = initiative_index_.find(id);
    return it == initiative_index_.end() ? nullptr : &initiatives_[it->second];
}

Corpus Corpus::restrict_to(const std::set<std::string>& ids) const {
    std::vector<Document> docs;
    for (const auto& d : documents_)
        if (ids.contains(d.initiative_id)) docs.push_back(d);
    std::vector<Initiative> inits;
    for (const auto& init : initiatives_)
        if (ids.contains(init.id)) inits.push_back(init);
    return Corpus(std::move(docs), std::move(inits));
}

std::vector<std::string> Corpus::candidates() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& d : documents_)
        if (seen.insert(d.candidate_id).second) out.push_back(d.candidate_id);
    return out;
}

std::map<std::string, std::size_t> Corpus::documents_per_candidate() const {
    std::map<std::string, std::size_t> out;
    for (const auto& d : documents_) ++out[d.candidate_id];
    return out;
}

std::uint64_t Corpus::nonzero_entries() const {
    std::uint64_t nnz = 0;
    for (const auto& d : documents_) nnz += d.terms.size();
    return nnz;
}

std::size_t Corpus::distinct_terms() const {
    std::set<TermId> terms;
    for (const auto& d : documents_)
        for (const auto& tc : d.terms) terms.insert(tc.term);
    return terms.size();
}

namespace {

void check_id(const std::string& value, const char* field, bool allow_empty) {
    if (value.empty() && !allow_empty) throw Error(Errc::MalformedInput, std::string(field) + " must not be empty");
    if (std::any_of(value.begin(), value.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        throw Error(Errc::MalformedInput, std::string(field) + " must not contain whitespace: '" + value + "'");
}

std::string document_id(const std::string& initiative, const std::string& candidate) {
    return initiative + ":" + candidate;
}

}  // namespace

BuiltCorpus build_corpus(const std::vector<RawIntervention>& records, const PreprocessConfig& config) {
    if (records.empty()) throw Error(Errc::EmptyInput, "build_corpus: no records");

    struct Pending {
        std::string initiative_id;
        std::string candidate_id;
        std::vector<std::string> tokens;
    };
    std::vector<Pending> pending;
    std::map<std::pair<std::string, std::string>, std::size_t> pending_index;
    std::vector<Initiative> initiatives;
    std::map<std::string, std::size_t> initiative_index;

    for (const auto& r : records) {
        check_id(r.initiative_id, "initiative_id", false);
        check_id(r.candidate_id, "candidate_id", false);
        if (r.candidate_id.find('#') != std::string::npos)
            throw Error(Errc::MalformedInput, "candidate_id must not contain '#': " + r.candidate_id);
        check_id(r.committee_id, "committee_id", true);

        auto [init_it, new_init] = initiative_index.emplace(r.initiative_id, initiatives.size());
        if (new_init) {
            initiatives.push_back({r.initiative_id, r.committee_id, r.title, r.subjects});
        } else {
            Initiative& init = initiatives[init_it->second];
            if (init.committee_id.empty()) init.committee_id = r.committee_id;
            if (init.title.empty()) init.title = r.title;
            if (init.subjects.empty()) init.subjects = r.subjects;
        }

        auto key = std::make_pair(r.initiative_id, r.candidate_id);
        auto [it, inserted] = pending_index.emplace(key, pending.size());
        if (inserted) pending.push_back({r.initiative_id, r.candidate_id, {}});
        auto tokens = normalize(r.body, config);
        auto& dest = pending[it->second].tokens;
        dest.insert(dest.end(), std::make_move_iterator(tokens.begin()), std::make_move_iterator(tokens.end()));
    }

    // Document frequency over built documents, before any removal.
    std::unordered_map<std::string, std::uint32_t> df;
    for (const auto& p : pending) {
        std::set<std::string_view> seen(p.tokens.begin(), p.tokens.end());
        for (auto term : seen) ++df[std::string(term)];
    }
    const double raw_threshold = config.min_df_fraction * static_cast<double>(pending.size());
    const auto threshold = static_cast<std::uint32_t>(std::max(0.0, std::ceil(raw_threshold - 1e-9)));

    std::vector<std::string> terms;
    std::unordered_map<std::string, TermId> ids;
    for (const auto& p : pending) {
        for (const auto& token : p.tokens) {
            if (df[token] < threshold || ids.contains(token)) continue;
            ids.emplace(token, static_cast<TermId>(terms.size()));
            terms.push_back(token);
        }
    }

    BuiltCorpus built;
    std::vector<Document> documents;
    std::vector<std::uint32_t> doc_freq(terms.size(), 0);
    for (const auto& p : pending) {
        std::map<TermId, std::uint32_t> counts;
        for (const auto& token : p.tokens) {
            auto it = ids.find(token);
            if (it != ids.end()) ++counts[it->second];
        }
        std::string id = document_id(p.initiative_id, p.candidate_id);
        if (counts.empty()) {
            built.skipped.push_back(std::move(id));
            continue;
        }
        Document doc{std::move(id), p.initiative_id, p.candidate_id, {}, 0};
        for (auto [term, count] : counts) {
            doc.terms.push_back({term, count});
            doc.length += count;
            ++doc_freq[term];
        }
        documents.push_back(std::move(doc));
    }
    if (documents.empty()) throw Error(Errc::AllDocumentsEmpty, "every document is empty after preprocessing");

    built.corpus = Corpus(std::move(documents), std::move(initiatives));
    built.vocabulary = Vocabulary(std::move(terms), std::move(doc_freq));
    return built;
}

std::vector<CorpusPartition> make_partitions(const Corpus& corpus, double ratio, int n_splits, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error(Errc::InvalidArgument, "partition ratio must lie in (0, 1)");
    if (n_splits < 1) throw Error(Errc::InvalidArgument, "n_splits must be positive");
    std::vector<std::string> ids;
    for (const auto& init : corpus.initiatives()) ids.push_back(init.id);
    if (ids.size() < 2) throw Error(Errc::TooFewInitiatives, "need at least two initiatives to partition");

    const auto total = static_cast<long>(ids.size());
    const long n_train = std::clamp(std::lround(ratio * static_cast<double>(total)), 1L, total - 1);

    Rng rng(seed);
    std::vector<CorpusPartition> out;
    for (int s = 0; s < n_splits; ++s) {
        std::vector<std::string> order = ids;
        rng.shuffle(order);
        CorpusPartition part;
        part.seed = seed;
        part.train.insert(order.begin(), order.begin() + n_train);
        part.test.insert(order.begin() + n_train, order.end());
        out.push_back(std::move(part));
    }
    return out;
}

RawIntervention parse_record(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw Error(Errc::MalformedInput, std::string("record is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::MalformedInput, "record must be a JSON object");
    auto text = [&](const char* key, bool required) -> std::string {
        auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            if (required) throw Error(Errc::MalformedInput, std::string("record lacks field ") + key);
            return {};
        }
        if (!it->is_string()) throw Error(Errc::MalformedInput, std::string("field ") + key + " must be a string");
        return it->get<std::string>();
    };
    RawIntervention r;
    r.initiative_id = text("initiative_id", true);
    r.candidate_id = text("candidate_id", true);
    r.committee_id = text("committee_id", false);
    r.title = text("title", false);
    r.body = text("body", false);
    if (auto it = j.find("subjects"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw Error(Errc::MalformedInput, "field subjects must be an array");
        for (const auto& s : *it) {
            if (!s.is_string()) throw Error(Errc::MalformedInput, "subjects must be strings");
            r.subjects.push_back(s.get<std::string>());
        }
    }
    return r;
}

std::string format_record(const RawIntervention& r) {
    json j;
    j["initiative_id"] = r.initiative_id;
    j["candidate_id"] = r.candidate_id;
    j["committee_id"] = r.committee_id;
    j["title"] = r.title;
    j["subjects"] = r.subjects;
    j["body"] = r.body;
    return j.dump();
}

std::vector<RawIntervention> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "cannot open records: " + path);
    std::vector<RawIntervention> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(parse_record(line));
        } catch (const Error& e) {
            throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_records(const std::string& path, const std::vector<RawIntervention>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write records: " + path);
    for (const auto& r : records) out << format_record(r) << '\n';
}

void save_corpus(const std::string& dir, const BuiltCorpus& built) {
    fs::create_directories(dir);
    {
        std::ofstream out(fs::path(dir) / "vocab.tsv", std::ios::binary);
        const auto& v = built.vocabulary;
        for (TermId i = 0; i < v.size(); ++i) out << i << '\t' << v.term(i) << '\t' << v.doc_freq(i) << '\n';
    }
    {
        std::ofstream out(fs::path(dir) / "documents.txt", std::ios::binary);
        for (const auto& d : built.corpus.documents()) {
            out << d.doc_id << ' ' << d.initiative_id << ' ' << d.candidate_id;
            for (const auto& tc : d.terms) out << ' ' << tc.term << ':' << tc.count;
            out << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "initiatives.jsonl", std::ios::binary);
        for (const auto& init : built.corpus.initiatives()) {
            json j;
            j["initiative_id"] = init.id;
            j["committee_id"] = init.committee_id;
            j["title"] = init.title;
            j["subjects"] = init.subjects;
            out << j.dump() << '\n';
        }
    }
    {
        std::ofstream out(fs::path(dir) / "skipped.txt", std::ios::binary);
        for (const auto& id : built.skipped) out << id << '\n';
    }
}

namespace {

std::ifstream open_artifact(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "missing artifact: " + path.string());
    return in;
}

}  // namespace

BuiltCorpus load_corpus(const std::string& dir) {
    BuiltCorpus built;
    std::string line;
    {
        auto in = open_artifact(fs::path(dir) / "vocab.tsv");
        std::vector<std::string> terms;
        std::vector<std::uint32_t> df;
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            std::string id, term, freq;
            if (!std::getline(fields, id, '\t') || !std::getline(fields, term, '\t') || !std::getline(fields, freq))
                throw Error(Errc::MalformedInput, "bad vocabulary line: " + line);
            if (std::stoul(id) != terms.size()) throw Error(Errc::MalformedInput, "vocabulary ids out of order");
            terms.push_back(term);
            df.push_back(static_cast<std::uint32_t>(std::stoul(freq)));
        }
        built.vocabulary = Vocabulary(std::move(terms), std::move(df));
    }
    std::vector<Document> docs;
    {
        auto in = open_artifact(fs::path(dir) / "documents.txt");
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            Document d;
            fields >> d.doc_id >> d.initiative_id >> d.candidate_id;
            std::string pair;
            while (fields >> pair) {
                auto colon = pair.find(':');
                if (colon == std::string::npos) throw Error(Errc::MalformedInput, "bad term count: " + pair);
                TermCount tc{static_cast<TermId>(std::stoul(pair.substr(0, colon))),
                             static_cast<std::uint32_t>(std::stoul(pair.substr(colon + 1)))};
                if (tc.term >= built.vocabulary.size() || tc.count == 0)
                    throw Error(Errc::MalformedInput, "term count out of range: " + pair);
                d.terms.push_back(tc);
                d.length += tc.count;
            }
            docs.push_back(std::move(d));
        }
    }
    std::vector<Initiative> inits;
    {
        auto in = open_artifact(fs::path(dir) / "initiatives.jsonl");
        while (std::getline(in, line)) {
            auto j = json::parse(line);
            Initiative init;
            init.id = j.at("initiative_id").get<std::string>();
            init.committee_id = j.at("committee_id").get<std::string>();
            init.title = j.at("title").get<std::string>();
            init.subjects = j.at("subjects").get<std::vector<std::string>>();
            inits.push_back(std::move(init));
        }
    }
    built.corpus = Corpus(std::move(docs), std::move(inits));
    if (std::ifstream in(fs::path(dir) / "skipped.txt"); in) {
        while (std::getline(in, line))
            if (!line.empty()) built.skipped.push_back(line);
    }
    return built;
}

void save_partitions(const std::string& path, const std::vector<CorpusPartition>& partitions) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write partitions: " + path);
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        out << i << " seed " << partitions[i].seed << '\n';
        out << i << " train";
        for (const auto& id : partitions[i].train) out << ' ' << id;
        out << '\n' << i << " test";
        for (const auto& id : partitions[i].test) out << ' ' << id;
        out << '\n';
    }
}

std::vector<CorpusPartition> load_partitions(const std::string& path) {
    auto in = open_artifact(path);
    std::vector<CorpusPartition> out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::size_t index = 0;
        std::string kind;
        if (!(fields >> index >> kind)) continue;
        if (index >= out.size()) out.resize(index + 1);
        if (kind == "seed") {
            fields >> out[index].seed;
        } else if (kind == "train" || kind == "test") {
            auto& dest = kind == "train" ? out[index].train : out[index].test;
            std::string id;
            while (fields >> id) dest.insert(id);
        } else {
            throw Error(Errc::MalformedInput, "bad partition line: " + line);
        }
    }
    return out;
}

}  // namespace subprof
