#include "subprof/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "subprof/error.hpp"

namespace subprof {

std::vector<double> topic_posterior(std::span<const double> term_given_topic, std::span<const double> topic_given_doc) {
    if (term_given_topic.size() != topic_given_doc.size())
        throw Error(Errc::InvalidArgument, "topic_posterior: vectors differ in length");
    std::vector<double> out(term_given_topic.size());
    double total = 0.0;
    for (std::size_t x = 0; x < out.size(); ++x) {
        out[x] = term_given_topic[x] * topic_given_doc[x];
        total += out[x];
    }
    if (!(total > 0.0)) throw Error(Errc::ZeroDenominator, "topic_posterior: p(t|d) is zero");
    for (double& v : out) v /= total;
    return out;
}

std::vector<double> renormalized_posterior(std::span<const double> term_given_topic,
                                           std::span<const double> topic_given_doc, std::span<const int> selected) {
    std::vector<double> out;
    out.reserve(selected.size());
    double total = 0.0;
    for (int x : selected) {
        const auto xu = static_cast<std::size_t>(x);
        if (x < 0 || xu >= term_given_topic.size() || xu >= topic_given_doc.size())
            throw Error(Errc::InvalidArgument, "renormalized_posterior: topic id out of range");
        out.push_back(term_given_topic[xu] * topic_given_doc[xu]);
        total += out.back();
    }
    if (!(total > 0.0)) throw Error(Errc::ZeroDenominator, "renormalized_posterior: zero mass on selected topics");
    for (double& v : out) v /= total;
    return out;
}

namespace {

std::vector<double> term_column(const TopicModel& model, TermId term) {
    if (term >= model.terms()) throw Error(Errc::InvalidArgument, "term outside the model vocabulary");
    std::vector<double> column(model.topics());
    for (std::size_t x = 0; x < column.size(); ++x) column[x] = model.phi(x, term);
    return column;
}

}  // namespace

std::vector<double> topic_posterior(const TopicModel& model, const std::string& doc_id, TermId term) {
    return topic_posterior(term_column(model, term), model.theta(doc_id));
}

std::vector<double> renormalized_posterior(const TopicModel& model, const std::string& doc_id, TermId term,
                                           std::span<const int> selected) {
    return renormalized_posterior(term_column(model, term), model.theta(doc_id), selected);
}

std::vector<std::uint32_t> distribute_frequency(std::uint32_t freq, std::span<const double> probs) {
    if (probs.empty()) throw Error(Errc::InvalidArgument, "distribute_frequency: no topics");
    const std::size_t n = probs.size();
    std::vector<std::uint32_t> r(n);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = static_cast<std::uint32_t>(std::floor(freq * probs[i] + 0.5));
        sum += r[i];
    }

    // Most probable first; equal probabilities keep position order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });

    if (sum > freq) {
        // Remove from the least probable entries that still hold an instance.
        while (sum > freq) {
            for (auto it = order.rbegin(); it != order.rend() && sum > freq; ++it) {
                if (r[*it] > 0) {
                    --r[*it];
                    --sum;
                }
            }
        }
    } else if (sum < freq) {
        std::vector<std::size_t> eligible;
        for (std::size_t i : order)
            if (probs[i] > 0.0) eligible.push_back(i);
        if (eligible.empty()) eligible = order;
        while (sum < freq) {
            for (auto it = eligible.begin(); it != eligible.end() && sum < freq; ++it) {
                ++r[*it];
                ++sum;
            }
        }
    }
    return r;
}

std::vector<int> selected_topics(std::span<const double> topic_given_doc, Strategy strategy) {
    auto dist = SortedTopicDist::from_unsorted(topic_given_doc);
    const int count = select_count(dist, strategy);
    return {dist.topic_ids.begin(), dist.topic_ids.begin() + count};
}

std::vector<Subdocument> split_document(const TopicModel& model, const Document& doc, Strategy strategy) {
    const auto row = model.row_of(doc.doc_id);
    if (row < 0) throw Error(Errc::InvalidArgument, "split_document: document not in model: " + doc.doc_id);
    const auto theta = model.theta(static_cast<std::size_t>(row));
    const auto selected = selected_topics(theta, strategy);

    std::vector<TermCounts> parts(selected.size());
    std::vector<double> column(model.topics());
    for (const auto& tc : doc.terms) {
        if (tc.term >= model.terms()) throw Error(Errc::InvalidArgument, "split_document: term outside the model");
        for (std::size_t x = 0; x < column.size(); ++x) column[x] = model.phi(x, tc.term);
        const auto probs = renormalized_posterior(column, theta, selected);
        const auto counts = distribute_frequency(tc.count, probs);
        for (std::size_t l = 0; l < selected.size(); ++l)
            if (counts[l] > 0) parts[l].push_back({tc.term, counts[l]});
    }

    std::vector<Subdocument> out;
    for (std::size_t l = 0; l < selected.size(); ++l) {
        if (parts[l].empty()) continue;
        out.push_back({doc.doc_id, selected[l], std::move(parts[l])});
    }
    std::sort(out.begin(), out.end(), [](const Subdocument& a, const Subdocument& b) { return a.topic < b.topic; });
    return out;
}

void write_subdocuments(std::ostream& out, const std::vector<Subdocument>& subdocs, const Vocabulary& vocab) {
    for (const auto& sd : subdocs)
        for (const auto& tc : sd.terms) out << sd.doc_id << ' ' << sd.topic << ' ' << vocab.term(tc.term) << ' ' << tc.count << '\n';
}

}  // namespace subprof
