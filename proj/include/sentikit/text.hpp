#pragma once

// Small byte-level string helpers. Case handling is ASCII only: bytes >= 0x80
// (UTF-8 continuation and lead bytes) are never treated as letters, spaces,
// or punctuation, so multi-byte characters pass through untouched.

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace sentikit::text {

[[nodiscard]] constexpr bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

[[nodiscard]] constexpr bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }
[[nodiscard]] constexpr bool is_lower(char c) noexcept { return c >= 'a' && c <= 'z'; }
[[nodiscard]] constexpr bool is_alpha(char c) noexcept { return is_upper(c) || is_lower(c); }
[[nodiscard]] constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

[[nodiscard]] constexpr bool is_punct(char c) noexcept {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

[[nodiscard]] constexpr char to_lower(char c) noexcept {
    return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c;
}

[[nodiscard]] inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](char c) { return to_lower(c); });
    return out;
}

[[nodiscard]] inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

/// Splits on runs of whitespace; never yields empty pieces.
[[nodiscard]] inline std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !is_space(s[i])) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

/// Joins the whitespace-separated pieces of `s` with single spaces.
[[nodiscard]] inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    for (const std::string_view piece : split_whitespace(s)) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out.append(piece);
    }
    return out;
}

[[nodiscard]] inline bool looks_like_url(std::string_view token) noexcept {
    const auto starts = [&](std::string_view prefix) {
        if (token.size() < prefix.size()) {
            return false;
        }
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            if (to_lower(token[i]) != prefix[i]) {
                return false;
            }
        }
        return true;
    };
    return starts("http://") || starts("https://") || starts("www.");
}

}  // namespace sentikit::text
