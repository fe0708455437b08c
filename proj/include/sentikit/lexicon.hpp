#pragma once

#include "sentikit/error.hpp"
#include "sentikit/text.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentikit {

inline constexpr double max_abs_valence = 4.0;

struct lexicon_entry {
    std::string token;
    double valence{ 0.0 };
};

/// Immutable token -> valence map. Tokens are stored lower-cased.
class lexicon {
  public:
    lexicon() = default;

    /// Builds from entries in order; a repeated token keeps the last valence
    /// and records a warning.
    explicit lexicon(const std::vector<lexicon_entry> &entries) {
        for (const lexicon_entry &e : entries) {
            validate(e);
            auto [it, inserted] = entries_.insert_or_assign(text::to_lower(e.token), e.valence);
            if (!inserted) {
                warnings_.push_back("duplicate token '" + it->first + "': last entry wins");
            }
        }
    }

    /// Valence of `token` (matched case-insensitively), or 0 when absent.
    [[nodiscard]] double valence(std::string_view token) const {
        const auto it = entries_.find(text::to_lower(token));
        return it == entries_.end() ? 0.0 : it->second;
    }

    /// `token` must already be lower case.
    [[nodiscard]] bool contains_lower(std::string_view token) const { return entries_.find(token) != entries_.end(); }

    [[nodiscard]] bool contains(std::string_view token) const { return contains_lower(text::to_lower(token)); }

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] const std::vector<std::string> &warnings() const noexcept { return warnings_; }
    [[nodiscard]] const std::map<std::string, double, std::less<>> &entries() const noexcept { return entries_; }

    static void validate(const lexicon_entry &e) {
        if (e.token.empty()) {
            throw data_error("lexicon token must not be empty");
        }
        for (const char c : e.token) {
            if (text::is_space(c)) {
                throw data_error("lexicon token '" + e.token + "' contains whitespace");
            }
        }
        if (!std::isfinite(e.valence) || std::fabs(e.valence) > max_abs_valence) {
            throw data_error("valence of '" + e.token + "' must be finite and within [-4, 4]");
        }
    }

  private:
    std::map<std::string, double, std::less<>> entries_;
    std::vector<std::string> warnings_;
};

namespace detail {

inline bool parse_double(std::string_view s, double &out) {
    s = text::trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

}  // namespace detail

/// Reads `token<TAB>valence` lines. Blank lines and lines starting with '#'
/// are skipped. Throws parse_error naming the offending line.
[[nodiscard]] inline lexicon load_lexicon(std::istream &in) {
    std::vector<lexicon_entry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = detail::strip_cr(line);
        if (text::trim(view).empty() || view.front() == '#') {
            continue;
        }
        const auto tab = view.find('\t');
        if (tab == std::string_view::npos || view.find('\t', tab + 1) != std::string_view::npos) {
            throw parse_error("expected exactly two tab-separated fields", line_no);
        }
        lexicon_entry entry{ std::string(view.substr(0, tab)), 0.0 };
        if (!detail::parse_double(view.substr(tab + 1), entry.valence)) {
            throw parse_error("valence is not a number: '" + std::string(view.substr(tab + 1)) + "'", line_no);
        }
        try {
            lexicon::validate(entry);
        } catch (const data_error &e) {
            throw parse_error(e.what(), line_no);
        }
        entries.push_back(std::move(entry));
    }
    if (entries.empty()) {
        throw parse_error("lexicon is empty");
    }
    return lexicon{ entries };
}

[[nodiscard]] inline lexicon load_lexicon(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw io_error("cannot open lexicon file: " + path.string());
    }
    try {
        return load_lexicon(in);
    } catch (const parse_error &e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

using word_set = std::set<std::string, std::less<>>;

/// One lower-cased token per line; '#' comments and blank lines skipped.
[[nodiscard]] inline word_set load_word_list(std::istream &in) {
    word_set words;
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view view = text::trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        words.insert(text::to_lower(view));
    }
    return words;
}

[[nodiscard]] inline word_set load_word_list(const std::filesystem::path &path) {
    std::ifstream in{ path };
    if (!in) {
        throw io_error("cannot open word list: " + path.string());
    }
    return load_word_list(in);
}

}  // namespace sentikit
