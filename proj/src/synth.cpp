#include "subprof/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ini.hpp"
#include "subprof/error.hpp"
#include "subprof/random.hpp"

namespace subprof {

namespace {

// Base-16 over the letters a..p, so 'w', 's' and 'z' never occur inside a
// number and can delimit word parts.
std::string letters(int n) {
    std::string out;
    do {
        out.insert(out.begin(), static_cast<char>('a' + n % 16));
        n /= 16;
    } while (n > 0);
    return out;
}

std::string padded(char prefix, int value, int width) {
    std::string digits = std::to_string(value);
    if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return std::string(1, prefix) + digits;
}

int digits_of(int n) { return static_cast<int>(std::to_string(std::max(n - 1, 0)).size()); }

std::vector<double> zipf_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = 1.0 / std::pow(i + 1.0, 0.8);
    return w;
}

}  // namespace

std::string topic_word(int topic, int rank) { return "t" + letters(topic) + "w" + letters(rank); }

std::string shared_word(int rank) { return "zz" + letters(rank); }

std::vector<std::vector<int>> SynthSpec::default_committees() {
    return {{0, 1}, {2, 3}, {4}, {5, 6}, {7, 0, 2}, {1, 5}};
}

void SynthSpec::validate() const {
    auto fail = [](const std::string& what) { throw Error(Errc::InvalidSpec, "synth spec: " + what); };
    if (n_topics < 1) fail("n_topics must be positive");
    if (vocab_per_topic < 1) fail("vocab_per_topic must be positive");
    if (shared_vocab < 0) fail("shared_vocab must be non-negative");
    if (shared_vocab == 0 && shared_word_rate > 0.0) fail("shared_word_rate needs a shared vocabulary");
    if (n_candidates < 1) fail("n_candidates must be positive");
    if (committees.empty()) fail("at least one committee is required");
    for (const auto& c : committees) {
        if (c.empty()) fail("committees must name at least one topic");
        for (int t : c)
            if (t < 0 || t >= n_topics) fail("committee topic out of range");
    }
    if (docs_per_candidate.lo < 1 || docs_per_candidate.hi < docs_per_candidate.lo) fail("bad docs_per_candidate range");
    if (doc_length.lo < 1 || doc_length.hi < doc_length.lo) fail("bad doc_length range");
    if (!(topic_mixture_concentration > 0.0)) fail("topic_mixture_concentration must be positive");
    for (double rate : {shared_word_rate, digression_rate, outsider_rate, title_context_rate})
        if (rate < 0.0 || rate > 1.0) fail("rates must lie in [0, 1]");
    if (max_participants < 1) fail("max_participants must be positive");
}

Memberships SynthTruth::memberships() const {
    Memberships out;
    for (const auto& [candidate, committee] : candidate_committee) out[committee].insert(candidate);
    return out;
}

SynthCorpus generate(const SynthSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    SynthCorpus out;
    SynthTruth& truth = out.truth;

    const int n_committees = static_cast<int>(spec.committees.size());
    std::vector<std::string> committee_ids;
    for (int c = 0; c < n_committees; ++c) committee_ids.push_back(padded('C', c, digits_of(n_committees)));

    std::vector<std::string> candidate_ids;
    std::vector<int> candidate_committee;
    for (int i = 0; i < spec.n_candidates; ++i) {
        candidate_ids.push_back(padded('c', i, digits_of(spec.n_candidates)));
        candidate_committee.push_back(i % n_committees);
        truth.expertise[candidate_ids.back()] = spec.committees[static_cast<std::size_t>(i % n_committees)];
        truth.candidate_committee[candidate_ids.back()] = committee_ids[static_cast<std::size_t>(i % n_committees)];
    }

    const auto topic_weights = zipf_weights(spec.vocab_per_topic);
    const auto shared_weights = spec.shared_vocab > 0 ? zipf_weights(spec.shared_vocab) : std::vector<double>{};
    auto draw_topic_word = [&](int topic) {
        return topic_word(topic, static_cast<int>(rng.categorical(topic_weights)));
    };
    auto draw_shared_word = [&] { return shared_word(static_cast<int>(rng.categorical(shared_weights))); };
    // Titles and subjects mix in generic words at the same rate as speech, and
    // some words from the committee's other topics.
    auto draw_title_word = [&](int focus, const std::vector<int>& committee_topics) {
        if (spec.shared_vocab > 0 && rng.uniform() < spec.shared_word_rate) return draw_shared_word();
        if (committee_topics.size() > 1 && rng.uniform() < spec.title_context_rate)
            return draw_topic_word(committee_topics[rng.below(committee_topics.size())]);
        return draw_topic_word(focus);
    };

    // Interventions are produced in a shuffled order so initiatives mix
    // candidates of the same committee.
    std::vector<int> slots;
    for (int i = 0; i < spec.n_candidates; ++i) {
        const auto n_docs = rng.between(spec.docs_per_candidate.lo, spec.docs_per_candidate.hi);
        slots.insert(slots.end(), static_cast<std::size_t>(n_docs), i);
    }
    rng.shuffle(slots);

    struct OpenInitiative {
        std::string id;
        int focus = 0;
        std::string title;
        std::vector<std::string> subjects;
        std::set<int> participants;
    };
    std::vector<std::optional<OpenInitiative>> open(static_cast<std::size_t>(n_committees));
    int next_initiative = 0;
    const int initiative_width = digits_of(static_cast<int>(slots.size()));

    for (int candidate : slots) {
        int committee = candidate_committee[static_cast<std::size_t>(candidate)];
        if (n_committees > 1 && rng.uniform() < spec.outsider_rate) {
            int other = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_committees - 1)));
            committee = other >= committee ? other + 1 : other;
        }
        auto& slot = open[static_cast<std::size_t>(committee)];
        const bool join = slot && static_cast<int>(slot->participants.size()) < spec.max_participants &&
                          !slot->participants.contains(candidate) && rng.uniform() < 0.75;
        if (!join) {
            OpenInitiative init;
            init.id = padded('i', next_initiative++, initiative_width);
            const auto& topics = spec.committees[static_cast<std::size_t>(committee)];
            init.focus = topics[rng.below(topics.size())];
            const auto title_len = rng.between(4, 7);
            for (int w = 0; w < title_len; ++w) init.title += (w ? " " : "") + draw_title_word(init.focus, topics);
            for (int s = 0; s < 2; ++s) {
                std::string subject = draw_title_word(init.focus, topics);
                if (rng.uniform() < 0.5) subject += " " + draw_title_word(init.focus, topics);
                init.subjects.push_back(std::move(subject));
            }
            truth.initiative_committee[init.id] = committee_ids[static_cast<std::size_t>(committee)];
            truth.initiative_topic[init.id] = init.focus;
            slot = std::move(init);
        }
        slot->participants.insert(candidate);

        // Topic mixture: the candidate's expertise plus the initiative focus,
        // occasionally one digression topic.
        std::vector<double> concentration(static_cast<std::size_t>(spec.n_topics), 0.0);
        for (int t : spec.committees[static_cast<std::size_t>(candidate_committee[static_cast<std::size_t>(candidate)])])
            concentration[static_cast<std::size_t>(t)] = spec.topic_mixture_concentration;
        concentration[static_cast<std::size_t>(slot->focus)] += spec.topic_mixture_concentration;
        if (spec.n_topics > 1 && rng.uniform() < spec.digression_rate) {
            std::vector<int> outside;
            for (int t = 0; t < spec.n_topics; ++t)
                if (concentration[static_cast<std::size_t>(t)] == 0.0) outside.push_back(t);
            if (!outside.empty())
                concentration[static_cast<std::size_t>(outside[rng.below(outside.size())])] =
                    spec.topic_mixture_concentration / 2.0;
        }
        std::vector<int> active;
        std::vector<double> active_conc;
        for (int t = 0; t < spec.n_topics; ++t) {
            if (concentration[static_cast<std::size_t>(t)] > 0.0) {
                active.push_back(t);
                active_conc.push_back(concentration[static_cast<std::size_t>(t)]);
            }
        }
        const auto mixture = rng.dirichlet(active_conc);

        const auto length = rng.between(spec.doc_length.lo, spec.doc_length.hi);
        std::string body;
        std::vector<int> token_topics;
        token_topics.reserve(static_cast<std::size_t>(length));
        for (int w = 0; w < length; ++w) {
            std::string word;
            int topic = -1;
            if (spec.shared_vocab > 0 && rng.uniform() < spec.shared_word_rate) {
                word = draw_shared_word();
            } else {
                topic = active[rng.categorical(mixture)];
                word = draw_topic_word(topic);
            }
            if (!body.empty()) body += ' ';
            body += word;
            token_topics.push_back(topic);
        }

        out.records.push_back({slot->id, candidate_ids[static_cast<std::size_t>(candidate)],
                               committee_ids[static_cast<std::size_t>(committee)], slot->title, slot->subjects,
                               std::move(body)});
        truth.token_topics.push_back(std::move(token_topics));
    }
    return out;
}

void write_truth(const std::string& path, const SynthTruth& truth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::MissingArtifact, "cannot write truth file: " + path);
    for (const auto& [candidate, topics] : truth.expertise) {
        out << "candidate " << candidate << ' ' << truth.candidate_committee.at(candidate);
        for (int t : topics) out << ' ' << t;
        out << '\n';
    }
    for (const auto& [initiative, committee] : truth.initiative_committee)
        out << "initiative " << initiative << ' ' << committee << ' ' << truth.initiative_topic.at(initiative) << '\n';
}

namespace {

IntRange parse_range(const std::string& text) {
    IntRange r;
    auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dash));
            r.hi = std::stoi(text.substr(dash + 1));
        }
    } catch (const std::exception&) {
        throw Error(Errc::MalformedConfig, "bad range: " + text);
    }
    return r;
}

std::vector<std::vector<int>> parse_committees(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> topics;
        std::istringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                topics.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw Error(Errc::MalformedConfig, "bad committee list: " + text);
            }
        }
        out.push_back(std::move(topics));
    }
    return out;
}

}  // namespace

SynthSpec load_synth_spec(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw Error(Errc::MalformedConfig, e.what());
    }
    const auto& section = tree.get_child_optional("synth") ? tree.get_child("synth") : tree;
    SynthSpec spec;
    try {
        spec.n_topics = detail::setting(section, "n_topics", spec.n_topics);
        spec.vocab_per_topic = detail::setting(section, "vocab_per_topic", spec.vocab_per_topic);
        spec.shared_vocab = detail::setting(section, "shared_vocab", spec.shared_vocab);
        spec.n_candidates = detail::setting(section, "n_candidates", spec.n_candidates);
        if (auto c = section.get_optional<std::string>("committees")) spec.committees = parse_committees(*c);
        if (auto r = section.get_optional<std::string>("docs_per_candidate")) spec.docs_per_candidate = parse_range(*r);
        if (auto r = section.get_optional<std::string>("doc_length")) spec.doc_length = parse_range(*r);
        spec.topic_mixture_concentration =
            detail::setting(section, "topic_mixture_concentration", spec.topic_mixture_concentration);
        spec.shared_word_rate = detail::setting(section, "shared_word_rate", spec.shared_word_rate);
        spec.digression_rate = detail::setting(section, "digression_rate", spec.digression_rate);
        spec.outsider_rate = detail::setting(section, "outsider_rate", spec.outsider_rate);
        spec.title_context_rate = detail::setting(section, "title_context_rate", spec.title_context_rate);
        spec.max_participants = detail::setting(section, "max_participants", spec.max_participants);
        spec.seed = detail::setting(section, "seed", spec.seed);
    } catch (const boost::property_tree::ptree_error& e) {
        throw Error(Errc::MalformedConfig, std::string("synth spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace subprof
