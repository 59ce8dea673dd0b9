#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "subprof/corpus.hpp"
#include "subprof/error.hpp"

namespace testing {

// Scratch directory removed on scope exit.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("subprof-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline subprof::RawIntervention record(std::string init, std::string cand, std::string body,
                                       std::string committee = "", std::string title = "",
                                       std::vector<std::string> subjects = {}) {
    return {std::move(init), std::move(cand), std::move(committee), std::move(title), std::move(subjects),
            std::move(body)};
}

inline subprof::PreprocessConfig no_filter() {
    subprof::PreprocessConfig c;
    c.min_df_fraction = 0.0;
    return c;
}

// Two groups of documents with disjoint vocabularies: words a* and b*.
inline std::vector<subprof::RawIntervention> two_topic_records(int docs_per_group = 10, unsigned seed = 7) {
    std::mt19937 gen(seed);
    std::vector<subprof::RawIntervention> out;
    const std::vector<std::string> a = {"apple", "apricot", "avocado", "almond", "anise", "artichoke"};
    const std::vector<std::string> b = {"bolt", "bracket", "beam", "brace", "bearing", "bushing"};
    for (int g = 0; g < 2; ++g) {
        const auto& words = g == 0 ? a : b;
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        for (int d = 0; d < docs_per_group; ++d) {
            std::string body;
            for (int w = 0; w < 40; ++w) body += words[pick(gen)] + " ";
            out.push_back(record("i" + std::to_string(g) + "_" + std::to_string(d),
                                 "c" + std::to_string(g) + "_" + std::to_string(d % 3), body));
        }
    }
    return out;
}

}  // namespace testing

// Evaluates `expr` and checks it throws subprof::Error with code `errc`.
#define CHECK_ERRC(expr, errc)                                                   \
    do {                                                                         \
        bool thrown_ = false;                                                    \
        try {                                                                    \
            (void)(expr);                                                        \
        } catch (const subprof::Error& e_) {                                     \
            thrown_ = true;                                                      \
            CHECK_MESSAGE(e_.code() == (errc), subprof::errc_name(e_.code()));   \
        }                                                                        \
        CHECK_MESSAGE(thrown_, "expected subprof::Error from " #expr);           \
    } while (0)
