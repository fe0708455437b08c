#pragma once

// Shared helpers for the test suites: asset loading, random generators and
// independent oracles. Nothing here calls into the code paths it checks.

#include "sentikit/eval.hpp"
#include "sentikit/lexicon.hpp"
#include "sentikit/polarity.hpp"
#include "sentikit/record.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace sentikit::testkit {

inline std::filesystem::path data_dir() { return SENTIKIT_DATA_DIR; }
inline std::filesystem::path test_dir() { return SENTIKIT_TEST_DIR; }
inline std::filesystem::path demo_dir() { return SENTIKIT_DEMO_DIR; }

inline const lexicon &bundled_lexicon() {
    static const lexicon lex = load_lexicon(data_dir() / "lexicon.tsv");
    return lex;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
    const std::filesystem::path p = std::filesystem::temp_directory_path() / ("sentikit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline const std::vector<std::string> &filler_words() {
    static const std::vector<std::string> words{ "the", "data", "python", "uses", "server", "patch", "team", "report", "today", "network", "cloud", "users" };
    return words;
}

inline std::vector<std::string> lexicon_words(const lexicon &lex, int sign) {
    std::vector<std::string> out;
    for (const auto &[token, v] : lex.entries()) {
        const bool alpha_only = token.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos;
        if (alpha_only && ((sign > 0 && v > 0) || (sign < 0 && v < 0) || (sign == 0 && v != 0))) {
            out.push_back(token);
        }
    }
    return out;
}

template <typename T>
const T &pick(std::mt19937_64 &rng, const std::vector<T> &v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

/// Arbitrary printable text with punctuation, URLs, handles, caps and
/// occasional multi-byte characters.
inline std::string random_text(std::mt19937_64 &rng) {
    static const std::vector<std::string> pieces{
        "Great",  "great!!", "NOT",   "bad",      "https://x.co/a?b=1", "@user",   "#infosec", "www.site.org", "don't", "Node.js",
        "the",    "a",       "and",   "running",  "caresses",           "é",       "日本",     ",",            "!!!",   "...",
        "  ",     "\t",      "Hello", "security", "is",                 "difficult", "ABOUT",  "abouts",       "y",     "agreed",
        "(:",     "C++",     "1234",  "e-mail",   "HTTP://UP.CASE",     "\"quoted\"", "it's",  "--",           "~",     "ourselves",
    };
    std::string out;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            out += std::uniform_int_distribution<int>(0, 5)(rng) == 0 ? "  " : " ";
        }
        out += pick(rng, pieces);
    }
    return out;
}

inline std::string random_unicode_field(std::mt19937_64 &rng) {
    static const std::vector<std::string> atoms{ "a", "Z", ",", "\"", "\r\n", "\n", "\r", " ", "é", "😀", "x,y", "\"\"", "0", "-", "\t" };
    std::string out;
    const int n = std::uniform_int_distribution<int>(0, 10)(rng);
    for (int i = 0; i < n; ++i) {
        out += pick(rng, atoms);
    }
    return out;
}

inline content_record random_record(std::mt19937_64 &rng, std::size_t index) {
    content_record r;
    r.id = "id" + std::to_string(index) + random_unicode_field(rng);
    r.source = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? source_kind::twitter : source_kind::reddit;
    r.section = random_unicode_field(rng);
    r.created_utc = std::uniform_int_distribution<std::int64_t>(-4'000'000'000LL, 4'000'000'000LL)(rng);
    r.text = random_unicode_field(rng);
    r.engagement = std::uniform_int_distribution<std::int64_t>(0, 1'000'000)(rng);
    if (r.source == source_kind::reddit) {
        r.listing = static_cast<listing_kind>(std::uniform_int_distribution<int>(0, 4)(rng));
    }
    return r;
}

// ---------------------------------------------------------------------------
// brute-force metrics oracle: recounts TP/FP/FN straight from label lists
// ---------------------------------------------------------------------------

struct oracle_class {
    double precision{ 0 };
    double recall{ 0 };
    double f1{ 0 };
    std::size_t support{ 0 };
};

struct oracle_report {
    std::map<polarity_label, oracle_class> per_class;
    double accuracy{ 0 };
    std::array<double, 3> macro{};
    std::array<double, 3> weighted{};
};

inline oracle_report brute_force_metrics(const std::vector<polarity_label> &truth, const std::vector<polarity_label> &predicted) {
    oracle_report out;
    std::vector<polarity_label> present;
    for (const polarity_label l : all_labels) {
        bool seen = false;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            seen = seen || truth[i] == l || predicted[i] == l;
        }
        if (seen) {
            present.push_back(l);
        }
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        correct += truth[i] == predicted[i] ? 1 : 0;
    }
    out.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    for (const polarity_label c : present) {
        std::size_t tp = 0;
        std::size_t fp = 0;
        std::size_t fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == c && predicted[i] == c) {
                ++tp;
            } else if (truth[i] != c && predicted[i] == c) {
                ++fp;
            } else if (truth[i] == c && predicted[i] != c) {
                ++fn;
            }
        }
        oracle_class m;
        m.support = tp + fn;
        m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
        m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
        m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2 * m.precision * m.recall / (m.precision + m.recall);
        out.per_class[c] = m;
    }
    for (const auto &[c, m] : out.per_class) {
        const double k = static_cast<double>(out.per_class.size());
        const double w = static_cast<double>(m.support) / static_cast<double>(truth.size());
        out.macro[0] += m.precision / k;
        out.macro[1] += m.recall / k;
        out.macro[2] += m.f1 / k;
        out.weighted[0] += m.precision * w;
        out.weighted[1] += m.recall * w;
        out.weighted[2] += m.f1 * w;
    }
    return out;
}

/// Rounds half away from zero to two decimals, the way the published
/// tables are read.
inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace sentikit::testkit
