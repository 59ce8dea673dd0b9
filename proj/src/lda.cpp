#include "subprof/lda.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "subprof/error.hpp"
#include "subprof/random.hpp"
#include "numfmt.hpp"

namespace subprof {

using detail::get_double;
using detail::put_double;

TopicModel::TopicModel(std::size_t k, std::size_t m, std::vector<std::string> doc_ids, std::vector<double> phi,
                       std::vector<double> theta, double alpha, double beta, std::uint64_t seed, int iterations)
    : k_(k), m_(m), doc_ids_(std::move(doc_ids)), phi_(std::move(phi)), theta_(std::move(theta)), alpha_(alpha),
      beta_(beta), seed_(seed), iterations_(iterations) {
    if (phi_.size() != k_ * m_ || theta_.size() != k_ * doc_ids_.size())
        throw Error(Errc::InvalidArgument, "topic model: matrix shapes do not match k, m, n");
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        if (!row_index_.emplace(doc_ids_[i], i).second)
            throw Error(Errc::DuplicateId, "topic model: duplicate document id " + doc_ids_[i]);
    }
}

std::ptrdiff_t TopicModel::row_of(const std::string& doc_id) const {
    auto it = row_index_.find(doc_id);
    return it == row_index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::span<const double> TopicModel::theta(const std::string& doc_id) const {
    auto row = row_of(doc_id);
    if (row < 0) throw Error(Errc::InvalidArgument, "document not in model: " + doc_id);
    return theta(static_cast<std::size_t>(row));
}

KHeuristic KHeuristic::parse(std::string_view text) {
    KHeuristic h;
    if (text == "terms_docs_over_nnz") {
        h.kind = Kind::TermsDocsOverNnz;
        return h;
    }
    if (text == "sqrt_half_n") {
        h.kind = Kind::SqrtHalfN;
        return h;
    }
    std::string_view digits = text;
    if (digits.starts_with("fixed:")) digits.remove_prefix(6);
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw Error(Errc::MalformedConfig, "unknown k heuristic: " + std::string(text));
    if (value < 2) throw Error(Errc::InvalidK, "fixed k must be at least 2");
    h.kind = Kind::Fixed;
    h.value = value;
    return h;
}

std::string KHeuristic::name() const {
    switch (kind) {
    case Kind::TermsDocsOverNnz: return "terms_docs_over_nnz";
    case Kind::SqrtHalfN: return "sqrt_half_n";
    case Kind::Fixed: return "fixed:" + std::to_string(value);
    }
    return {};
}

CorpusStats corpus_stats(const Corpus& corpus) {
    return {corpus.distinct_terms(), corpus.size(), corpus.nonzero_entries()};
}

int choose_k(const CorpusStats& stats, const KHeuristic& heuristic) {
    double k = 0.0;
    switch (heuristic.kind) {
    case KHeuristic::Kind::TermsDocsOverNnz:
        if (stats.t_nnz == 0) throw Error(Errc::InvalidArgument, "choose_k: no non-zero entries");
        k = std::floor(static_cast<double>(stats.m) * static_cast<double>(stats.n) / static_cast<double>(stats.t_nnz));
        break;
    case KHeuristic::Kind::SqrtHalfN:
        k = std::floor(std::sqrt(static_cast<double>(stats.n) / 2.0));
        break;
    case KHeuristic::Kind::Fixed:
        k = heuristic.value;
        break;
    }
    return std::max(2, static_cast<int>(k));
}

namespace {

struct TokenStream {
    std::vector<TermId> terms;
    std::vector<std::size_t> doc_begin;  // size n + 1
};

TokenStream flatten(const std::vector<Document>& docs) {
    TokenStream s;
    s.doc_begin.reserve(docs.size() + 1);
    for (const auto& d : docs) {
        s.doc_begin.push_back(s.terms.size());
        for (const auto& tc : d.terms) s.terms.insert(s.terms.end(), tc.count, tc.term);
    }
    s.doc_begin.push_back(s.terms.size());
    return s;
}

// Inverse-transform draw from unnormalized cumulative weights.
std::size_t draw(const std::vector<double>& cumulative, Rng& rng) {
    const double u = rng.uniform() * cumulative.back();
    for (std::size_t x = 0; x < cumulative.size(); ++x)
        if (u < cumulative[x]) return x;
    return cumulative.size() - 1;
}

}  // namespace

TopicModel train_lda(const Corpus& corpus, std::size_t vocab_size, const LdaParams& params) {
    if (corpus.empty()) throw Error(Errc::EmptyCorpus, "train_lda: empty corpus");
    if (params.k < 2) throw Error(Errc::InvalidK, "train_lda: k must be at least 2");
    if (params.iterations < 1) throw Error(Errc::InvalidArgument, "train_lda: iterations must be positive");
    if (!(params.beta > 0.0)) throw Error(Errc::InvalidArgument, "train_lda: beta must be positive");

    const std::size_t k = static_cast<std::size_t>(params.k);
    const std::size_t m = vocab_size;
    const std::size_t n = corpus.size();
    const double alpha = params.effective_alpha();
    const double beta = params.beta;
    const double m_beta = static_cast<double>(m) * beta;

    const auto& docs = corpus.documents();
    for (const auto& d : docs) {
        if (d.terms.empty()) throw Error(Errc::EmptyCorpus, "train_lda: empty document " + d.doc_id);
        if (d.terms.back().term >= m) throw Error(Errc::InvalidArgument, "train_lda: term id beyond vocab_size");
    }

    TokenStream tokens = flatten(docs);
    std::vector<std::uint32_t> z(tokens.terms.size());
    std::vector<std::uint32_t> doc_topic(n * k, 0);   // n_dx
    std::vector<std::uint32_t> term_topic(m * k, 0);  // n_tx, term-major
    std::vector<std::uint64_t> topic_total(k, 0);     // n_x

    Rng rng(params.seed);
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t i = tokens.doc_begin[d]; i < tokens.doc_begin[d + 1]; ++i) {
            auto x = static_cast<std::uint32_t>(rng.below(k));
            z[i] = x;
            ++doc_topic[d * k + x];
            ++term_topic[tokens.terms[i] * k + x];
            ++topic_total[x];
        }
    }

    std::vector<double> cumulative(k);
    for (int sweep = 0; sweep < params.iterations; ++sweep) {
        for (std::size_t d = 0; d < n; ++d) {
            std::uint32_t* nd = &doc_topic[d * k];
            for (std::size_t i = tokens.doc_begin[d]; i < tokens.doc_begin[d + 1]; ++i) {
                const TermId t = tokens.terms[i];
                std::uint32_t* nt = &term_topic[t * k];
                const std::uint32_t old = z[i];
                --nd[old];
                --nt[old];
                --topic_total[old];

                double cum = 0.0;
                for (std::size_t x = 0; x < k; ++x) {
                    cum += (nd[x] + alpha) * (nt[x] + beta) / (static_cast<double>(topic_total[x]) + m_beta);
                    cumulative[x] = cum;
                }
                const auto x = static_cast<std::uint32_t>(draw(cumulative, rng));
                z[i] = x;
                ++nd[x];
                ++nt[x];
                ++topic_total[x];
            }
        }
#ifndef NDEBUG
        for (std::size_t d = 0; d < n; ++d) {
            std::uint64_t sum = 0;
            for (std::size_t x = 0; x < k; ++x) sum += doc_topic[d * k + x];
            assert(sum == docs[d].length);
        }
#endif
    }

    std::vector<double> phi(k * m);
    for (std::size_t x = 0; x < k; ++x) {
        const double denom = static_cast<double>(topic_total[x]) + m_beta;
        for (std::size_t t = 0; t < m; ++t) phi[x * m + t] = (term_topic[t * k + x] + beta) / denom;
    }
    std::vector<double> theta(n * k);
    const double k_alpha = static_cast<double>(k) * alpha;
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t d = 0; d < n; ++d) {
        const double denom = static_cast<double>(docs[d].length) + k_alpha;
        for (std::size_t x = 0; x < k; ++x) theta[d * k + x] = (doc_topic[d * k + x] + alpha) / denom;
        ids.push_back(docs[d].doc_id);
    }
    return TopicModel(k, m, std::move(ids), std::move(phi), std::move(theta), alpha, beta, params.seed,
                      params.iterations);
}

TopicModel train_single_topic(const Corpus& corpus, std::size_t vocab_size, double beta) {
    if (corpus.empty()) throw Error(Errc::EmptyCorpus, "train_single_topic: empty corpus");
    std::vector<std::uint64_t> counts(vocab_size, 0);
    std::uint64_t total = 0;
    std::vector<std::string> ids;
    for (const auto& d : corpus.documents()) {
        for (const auto& tc : d.terms) {
            if (tc.term >= vocab_size) throw Error(Errc::InvalidArgument, "train_single_topic: term id beyond vocab_size");
            counts[tc.term] += tc.count;
        }
        total += d.length;
        ids.push_back(d.doc_id);
    }
    std::vector<double> phi(vocab_size);
    const double denom = static_cast<double>(total) + static_cast<double>(vocab_size) * beta;
    for (std::size_t t = 0; t < vocab_size; ++t) phi[t] = (counts[t] + beta) / denom;
    std::vector<double> theta(ids.size(), 1.0);
    return TopicModel(1, vocab_size, std::move(ids), std::move(phi), std::move(theta), 50.0, beta, 0, 0);
}

std::vector<double> fold_in(const TopicModel& model, const TermCounts& doc, int iterations, std::uint64_t seed) {
    const std::size_t k = model.topics();
    std::vector<TermId> tokens;
    for (const auto& tc : doc)
        if (tc.term < model.terms()) tokens.insert(tokens.end(), tc.count, tc.term);
    if (tokens.empty()) throw Error(Errc::NoKnownTerms, "fold_in: no term of the document is in the model");

    const double alpha = model.alpha();
    Rng rng(seed);
    std::vector<std::uint32_t> z(tokens.size());
    std::vector<std::uint32_t> counts(k, 0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        z[i] = static_cast<std::uint32_t>(rng.below(k));
        ++counts[z[i]];
    }
    std::vector<double> cumulative(k);
    for (int sweep = 0; sweep < iterations; ++sweep) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            --counts[z[i]];
            double cum = 0.0;
            for (std::size_t x = 0; x < k; ++x) {
                cum += (counts[x] + alpha) * model.phi(x, tokens[i]);
                cumulative[x] = cum;
            }
            z[i] = static_cast<std::uint32_t>(draw(cumulative, rng));
            ++counts[z[i]];
        }
    }
    std::vector<double> theta(k);
    const double denom = static_cast<double>(tokens.size()) + static_cast<double>(k) * alpha;
    for (std::size_t x = 0; x < k; ++x) theta[x] = (counts[x] + alpha) / denom;
    return theta;
}

double perplexity(const TopicModel& model, const std::vector<Document>& docs, int fold_in_iterations,
                  std::uint64_t seed) {
    double log_likelihood = 0.0;
    std::uint64_t tokens = 0;
    for (const auto& d : docs) {
        auto theta = fold_in(model, d.terms, fold_in_iterations, seed);
        for (const auto& tc : d.terms) {
            if (tc.term >= model.terms()) continue;
            double p = 0.0;
            for (std::size_t x = 0; x < model.topics(); ++x) p += model.phi(x, tc.term) * theta[x];
            log_likelihood += tc.count * std::log(p);
            tokens += tc.count;
        }
    }
    if (tokens == 0) throw Error(Errc::NoKnownTerms, "perplexity: no known tokens");
    return std::exp(-log_likelihood / static_cast<double>(tokens));
}

namespace {

constexpr std::string_view kModelMagic = "subprof-lda-model 1";

}  // namespace

void save_model(const std::string& path, const TopicModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write model: " + path);
    out << kModelMagic << '\n';
    out << model.topics() << ' ' << model.terms() << ' ' << model.documents() << ' ';
    put_double(out, model.alpha());
    out << ' ';
    put_double(out, model.beta());
    out << ' ' << model.seed() << ' ' << model.iterations() << '\n';
    for (const auto& id : model.doc_ids()) out << id << '\n';
    auto row = [&](std::span<const double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out << ' ';
            put_double(out, values[i]);
        }
        out << '\n';
    };
    for (std::size_t x = 0; x < model.topics(); ++x) row(model.phi(x));
    for (std::size_t d = 0; d < model.documents(); ++d) row(model.theta(d));
}

TopicModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::MissingArtifact, "missing model: " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != kModelMagic) throw Error(Errc::MalformedInput, "not a model file: " + path);
    std::size_t k = 0, m = 0, n = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    in >> k >> m >> n;
    double alpha = get_double(in);
    double beta = get_double(in);
    in >> seed >> iterations;
    if (!in) throw Error(Errc::MalformedInput, "bad model header: " + path);
    std::vector<std::string> ids(n);
    for (auto& id : ids) in >> id;
    std::vector<double> phi(k * m);
    for (double& v : phi) v = get_double(in);
    std::vector<double> theta(n * k);
    for (double& v : theta) v = get_double(in);
    return TopicModel(k, m, std::move(ids), std::move(phi), std::move(theta), alpha, beta, seed, iterations);
}

}  // namespace subprof
