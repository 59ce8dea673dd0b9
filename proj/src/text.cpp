#include "subprof/text.hpp"

#include <array>
#include <filesystem>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "ini.hpp"
#include "subprof/error.hpp"

namespace subprof {

namespace {

bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    if (c < 0x80) return false;
    if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
    if (c >= 0xC0 && c <= 0xFF) return c != 0xD7 && c != 0xF7;
    if (c >= 0x100 && c <= 0x2AF) return true;   // Latin Extended-A/B, IPA
    if (c >= 0x386 && c <= 0x3FF) return c != 0x387 && c != 0x3F6;  // Greek
    if (c >= 0x400 && c <= 0x52F) return !(c >= 0x482 && c <= 0x489);  // Cyrillic
    if (c >= 0x1E00 && c <= 0x1EFF) return true;  // Latin Extended Additional
    return false;
}

char32_t to_lower(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 32;
    if (c < 0xC0) return c;
    if (c <= 0xDE) return c == 0xD7 ? c : c + 32;
    if (c >= 0x100 && c <= 0x137) return c | 1;
    if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
    if (c >= 0x14A && c <= 0x177) return c | 1;
    if (c == 0x178) return 0xFF;
    if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
    if (c == 0x386) return 0x3AC;
    if (c >= 0x388 && c <= 0x38A) return c + 37;
    if (c == 0x38C) return 0x3CC;
    if (c == 0x38E || c == 0x38F) return c + 63;
    if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
    if (c >= 0x400 && c <= 0x40F) return c + 80;
    if (c >= 0x410 && c <= 0x42F) return c + 32;
    if (c >= 0x1E00 && c <= 0x1EFF) return c | 1;
    return c;
}

void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

// Decodes one code point at `pos`, advancing it. Returns U+FFFD for malformed
// input (consuming one byte), which is not a letter.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int extra = 0;
    char32_t c = 0;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        c = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        c = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        c = b0 & 0x07;
    } else {
        ++pos;
        return 0xFFFD;
    }
    for (int i = 1; i <= extra; ++i) {
        if (pos + i >= s.size() || (byte(pos + i) & 0xC0) != 0x80) {
            ++pos;
            return 0xFFFD;
        }
        c = (c << 6) | (byte(pos + i) & 0x3F);
    }
    pos += extra + 1;
    return c;
}

std::string identity_stem(std::string_view word) { return std::string(word); }

// Light suffix stripper: removes the first matching suffix when at least three
// characters of stem remain.
std::string suffix_stem(std::string_view word) {
    static constexpr std::array<std::string_view, 3> kSuffixes = {"ing", "es", "s"};
    for (std::string_view suffix : kSuffixes) {
        if (word.size() >= suffix.size() + 3 && word.substr(word.size() - suffix.size()) == suffix)
            return std::string(word.substr(0, word.size() - suffix.size()));
    }
    return std::string(word);
}

}  // namespace

Stemmer stemmer_by_name(std::string_view name) {
    if (name == "identity" || name.empty()) return identity_stem;
    if (name == "suffix") return suffix_stem;
    throw Error(Errc::MalformedConfig, "unknown stemmer: " + std::string(name));
}

std::vector<std::string> registered_stemmers() { return {"identity", "suffix"}; }

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t c = decode_utf8(text, pos);
        if (is_letter(c)) {
            append_utf8(current, to_lower(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> normalize(std::string_view text, const PreprocessConfig& config) {
    std::vector<std::string> out;
    for (std::string& token : tokenize(text)) {
        if (config.stopwords.contains(token)) continue;
        std::string stemmed = config.stem ? config.stem(token) : token;
        if (!stemmed.empty()) out.push_back(std::move(stemmed));
    }
    return out;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingArtifact, "cannot open stopword file: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (std::string& token : tokenize(line)) words.insert(std::move(token));
    }
    return words;
}

PreprocessConfig load_preprocess_config(const std::string& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_ini(path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        if (!std::filesystem::exists(path)) throw Error(Errc::MissingArtifact, "cannot open config: " + path);
        throw Error(Errc::MalformedConfig, e.what());
    }
    PreprocessConfig config;
    try {
        if (auto file = tree.get_optional<std::string>("stopword_file"); file && !file->empty()) {
            std::filesystem::path p(*file);
            if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
            config.stopwords = load_stopwords(p.string());
        }
        config.stemmer_name = detail::setting<std::string>(tree, "stemmer", "identity");
        config.stem = stemmer_by_name(config.stemmer_name);
        config.min_df_fraction = detail::setting<double>(tree, "min_df_fraction", 0.01);
    } catch (const boost::property_tree::ptree_error& e) {
        throw Error(Errc::MalformedConfig, std::string("preprocess config: ") + e.what());
    }
    if (config.min_df_fraction < 0.0 || config.min_df_fraction > 1.0)
        throw Error(Errc::MalformedConfig, "min_df_fraction must lie in [0, 1]");
    return config;
}

}  // namespace subprof
