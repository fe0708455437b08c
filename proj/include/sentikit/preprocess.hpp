#pragma once

#include "sentikit/error.hpp"
#include "sentikit/lexicon.hpp"
#include "sentikit/porter.hpp"
#include "sentikit/record.hpp"
#include "sentikit/text.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentikit {

/// Cleaning steps, listed in the order they are applied.
enum class preprocess_step {
    lowercase,
    strip_urls,
    strip_handles_hashmarks,
    strip_punctuation,
    remove_stopwords,
    stem,
    collapse_whitespace,
};

inline constexpr std::array<preprocess_step, 7> all_preprocess_steps{
    preprocess_step::lowercase,         preprocess_step::strip_urls, preprocess_step::strip_handles_hashmarks,
    preprocess_step::strip_punctuation, preprocess_step::remove_stopwords,
    preprocess_step::stem,              preprocess_step::collapse_whitespace,
};

[[nodiscard]] constexpr std::string_view to_string(preprocess_step s) noexcept {
    switch (s) {
        case preprocess_step::lowercase:
            return "lowercase";
        case preprocess_step::strip_urls:
            return "strip_urls";
        case preprocess_step::strip_handles_hashmarks:
            return "strip_handles_hashmarks";
        case preprocess_step::strip_punctuation:
            return "strip_punctuation";
        case preprocess_step::remove_stopwords:
            return "remove_stopwords";
        case preprocess_step::stem:
            return "stem";
        case preprocess_step::collapse_whitespace:
            return "collapse_whitespace";
    }
    return "";
}

[[nodiscard]] inline preprocess_step parse_preprocess_step(std::string_view s) {
    for (const preprocess_step step : all_preprocess_steps) {
        if (to_string(step) == s) {
            return step;
        }
    }
    throw data_error("unknown preprocessing step '" + std::string(s) + "'");
}

struct preprocess_config {
    std::vector<preprocess_step> steps;
    word_set stopwords;

    [[nodiscard]] bool enabled(preprocess_step s) const {
        for (const preprocess_step e : steps) {
            if (e == s) {
                return true;
            }
        }
        return false;
    }

    void validate() const {
        std::set<preprocess_step> seen;
        for (const preprocess_step s : steps) {
            if (!seen.insert(s).second) {
                throw data_error("preprocessing step listed twice: " + std::string(to_string(s)));
            }
        }
        if (enabled(preprocess_step::remove_stopwords) && stopwords.empty()) {
            throw data_error("remove_stopwords is enabled but the stopword list is empty");
        }
    }

    /// Every step enabled.
    [[nodiscard]] static preprocess_config full(word_set stopwords) {
        return { std::vector<preprocess_step>(all_preprocess_steps.begin(), all_preprocess_steps.end()), std::move(stopwords) };
    }
};

namespace detail {

/// Rewrites each whitespace-delimited piece of `s` through `fn`, keeping
/// the separators. `fn` returning nullopt drops the piece.
template <typename Fn>
std::string map_pieces(std::string_view s, Fn &&fn) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (text::is_space(s[i])) {
            out.push_back(s[i++]);
            continue;
        }
        const std::size_t start = i;
        while (i < s.size() && !text::is_space(s[i])) {
            ++i;
        }
        if (std::optional<std::string> piece = fn(s.substr(start, i - start))) {
            out += *piece;
        }
    }
    return out;
}

inline std::size_t find_url(std::string_view piece) {
    const std::string lower = text::to_lower(piece);
    const std::size_t a = lower.find("http://");
    const std::size_t b = lower.find("https://");
    return std::min(a, b);
}

inline std::string strip_urls(std::string_view s) {
    return map_pieces(s, [](std::string_view piece) -> std::optional<std::string> {
        if (text::looks_like_url(piece)) {
            return std::nullopt;
        }
        const std::size_t at = find_url(piece);
        return std::string(piece.substr(0, at));
    });
}

inline std::string strip_handles_hashmarks(std::string_view s) {
    return map_pieces(s, [](std::string_view piece) -> std::optional<std::string> {
        if (piece.front() == '@') {
            return std::nullopt;
        }
        while (!piece.empty() && piece.front() == '#') {
            piece.remove_prefix(1);
        }
        return std::string(piece);
    });
}

inline std::string strip_punctuation(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (!text::is_punct(c)) {
            out.push_back(c);
        }
    }
    return out;
}

inline std::string stem_to_fixpoint(std::string_view word) {
    std::string current(word);
    for (int i = 0; i < 16; ++i) {
        std::string next = porter_stem(current);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return current;
}

inline std::string apply_steps_once(std::string_view input, const preprocess_config &cfg) {
    std::string s(input);
    if (cfg.enabled(preprocess_step::lowercase)) {
        s = text::to_lower(s);
    }
    if (cfg.enabled(preprocess_step::strip_urls)) {
        s = strip_urls(s);
    }
    if (cfg.enabled(preprocess_step::strip_handles_hashmarks)) {
        s = strip_handles_hashmarks(s);
    }
    if (cfg.enabled(preprocess_step::strip_punctuation)) {
        s = strip_punctuation(s);
    }
    if (cfg.enabled(preprocess_step::remove_stopwords)) {
        s = map_pieces(s, [&](std::string_view piece) -> std::optional<std::string> {
            if (cfg.stopwords.count(text::to_lower(piece)) != 0) {
                return std::nullopt;
            }
            return std::string(piece);
        });
    }
    if (cfg.enabled(preprocess_step::stem)) {
        s = map_pieces(s, [](std::string_view piece) -> std::optional<std::string> { return stem_to_fixpoint(piece); });
    }
    if (cfg.enabled(preprocess_step::collapse_whitespace)) {
        s = text::collapse_whitespace(s);
    }
    return s;
}

}  // namespace detail

/// Runs the enabled steps in their fixed order. The pass is repeated until
/// the text stops changing (stemming can expose a stopword or another
/// suffix), so the result is a fixpoint: preprocess_text(preprocess_text(x))
/// equals preprocess_text(x).
///
/// Stemming only touches pieces made of a-z; URL stripping removes pieces
/// starting with "www." and everything from "http(s)://" to the end of a
/// piece; handle stripping drops "@name" pieces and leading '#' marks.
[[nodiscard]] inline std::string preprocess_text(std::string_view input, const preprocess_config &cfg) {
    std::string current(input);
    for (int pass = 0; pass < 32; ++pass) {
        std::string next = detail::apply_steps_once(current, cfg);
        if (next == current) {
            break;
        }
        current = std::move(next);
    }
    return current;
}

/// Drops records whose whitespace-collapsed text repeats an earlier record
/// from the same source. Order is preserved; the first occurrence wins.
[[nodiscard]] inline std::vector<content_record> dedup(const std::vector<content_record> &records) {
    std::set<std::pair<source_kind, std::string>> seen;
    std::vector<content_record> out;
    out.reserve(records.size());
    for (const content_record &r : records) {
        if (seen.emplace(r.source, text::collapse_whitespace(r.text)).second) {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace sentikit
