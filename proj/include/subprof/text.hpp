#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace subprof {

using Stemmer = std::function<std::string(std::string_view)>;

/// Looks up a registered stemmer by name ("identity", "suffix").
/// Throws Error(MalformedConfig) for unknown names.
Stemmer stemmer_by_name(std::string_view name);

std::vector<std::string> registered_stemmers();

struct PreprocessConfig {
    std::unordered_set<std::string> stopwords;
    std::string stemmer_name = "identity";
    Stemmer stem = stemmer_by_name("identity");
    double min_df_fraction = 0.01;
};

/// Reads a key-value preprocess file with keys stopword_file, stemmer and
/// min_df_fraction. A relative stopword_file resolves against the config's
/// directory.
PreprocessConfig load_preprocess_config(const std::string& path);

/// One word per line; blank lines and lines starting with '#' are ignored.
/// Words are normalized the same way as text (lowercased).
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// Lowercase, split on non-letter code points, drop stopwords, stem, drop
/// empty tokens. Stopwords are matched before stemming.
std::vector<std::string> normalize(std::string_view text, const PreprocessConfig& config);

/// Splits UTF-8 text into lowercased runs of letters. Invalid byte sequences
/// act as separators.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace subprof
