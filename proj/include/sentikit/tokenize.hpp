#pragma once

#include "sentikit/lexicon.hpp"
#include "sentikit/text.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sentikit {

struct token {
    std::string text;  ///< original casing, outer punctuation removed
    bool all_caps{ false };
    int exclamations{ 0 };  ///< '!' peeled off this token
    int questions{ 0 };
};

struct tokenized_text {
    std::vector<token> tokens;
    int exclamations{ 0 };  ///< all peeled '!' including punctuation-only pieces
    int questions{ 0 };

    [[nodiscard]] bool empty() const noexcept { return tokens.empty(); }
};

namespace detail {

inline bool is_all_caps(std::string_view s) noexcept {
    bool any_alpha = false;
    for (const char c : s) {
        if (text::is_lower(c)) {
            return false;
        }
        any_alpha = any_alpha || text::is_upper(c);
    }
    return any_alpha;
}

inline void count_marks(std::string_view punct, int &exclamations, int &questions) noexcept {
    for (const char c : punct) {
        exclamations += c == '!' ? 1 : 0;
        questions += c == '?' ? 1 : 0;
    }
}

}  // namespace detail

/// Whitespace tokenizer with punctuation peeling.
///
/// Each whitespace-separated piece is matched against `intact` first (so
/// emoticons such as ":)" survive), then again with a trailing run of '!'/'?'
/// removed, and otherwise has its leading and trailing punctuation stripped.
/// Pieces that are pure punctuation or URLs produce no token; the '!' and '?'
/// they carry still count toward the text totals.
[[nodiscard]] inline tokenized_text tokenize(std::string_view input, const lexicon *intact = nullptr) {
    tokenized_text out;
    for (const std::string_view piece : text::split_whitespace(input)) {
        token tok;
        if (intact != nullptr && intact->contains(piece)) {
            tok.text = std::string(piece);
        } else {
            std::size_t core_end = piece.size();
            while (core_end > 0 && (piece[core_end - 1] == '!' || piece[core_end - 1] == '?')) {
                --core_end;
            }
            const std::string_view core = piece.substr(0, core_end);
            if (intact != nullptr && core_end < piece.size() && !core.empty() && intact->contains(core)) {
                tok.text = std::string(core);
                detail::count_marks(piece.substr(core_end), tok.exclamations, tok.questions);
            } else {
                std::size_t begin = 0;
                std::size_t end = piece.size();
                while (begin < end && text::is_punct(piece[begin])) {
                    ++begin;
                }
                while (end > begin && text::is_punct(piece[end - 1])) {
                    --end;
                }
                detail::count_marks(piece.substr(0, begin), tok.exclamations, tok.questions);
                detail::count_marks(piece.substr(end), tok.exclamations, tok.questions);
                const std::string_view stripped = piece.substr(begin, end - begin);
                if (stripped.empty() || text::looks_like_url(stripped)) {
                    out.exclamations += tok.exclamations;
                    out.questions += tok.questions;
                    continue;
                }
                tok.text = std::string(stripped);
            }
        }
        tok.all_caps = detail::is_all_caps(tok.text);
        out.exclamations += tok.exclamations;
        out.questions += tok.questions;
        out.tokens.push_back(std::move(tok));
    }
    return out;
}

}  // namespace sentikit
