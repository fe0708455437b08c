#pragma once

#include "sentikit/error.hpp"
#include "sentikit/lexicon.hpp"
#include "sentikit/record.hpp"
#include "sentikit/text.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sentikit {

struct entity_count {
    std::string term;
    std::size_t count{ 0 };
    std::size_t rank{ 0 };

    friend bool operator==(const entity_count &, const entity_count &) = default;
};

struct entity_options {
    std::size_t min_length{ 3 };
};

/// Lower-cased countable term for a raw whitespace piece, or empty when the
/// piece does not count. '#'/'@' sigils and outer punctuation go; inner
/// punctuation stays, so "node.js" remains one term.
[[nodiscard]] inline std::string entity_term(std::string_view piece) {
    if (text::looks_like_url(piece)) {
        return {};
    }
    std::size_t begin = 0;
    std::size_t end = piece.size();
    while (begin < end && text::is_punct(piece[begin])) {
        ++begin;
    }
    while (end > begin && text::is_punct(piece[end - 1])) {
        --end;
    }
    return text::to_lower(piece.substr(begin, end - begin));
}

/// Raw term frequencies over all record texts.
[[nodiscard]] inline std::map<std::string, std::size_t> count_terms(const std::vector<content_record> &records, const word_set &stoplist,
                                                                     const entity_options &opts = {}) {
    std::map<std::string, std::size_t> counts;
    for (const content_record &r : records) {
        for (const std::string_view piece : text::split_whitespace(r.text)) {
            std::string term = entity_term(piece);
            if (term.size() < opts.min_length || stoplist.count(term) != 0) {
                continue;
            }
            ++counts[std::move(term)];
        }
    }
    return counts;
}

/// The `k` most frequent terms, by count descending then term ascending.
[[nodiscard]] inline std::vector<entity_count> top_entities(const std::vector<content_record> &records, const word_set &stoplist, std::size_t k,
                                                            const entity_options &opts = {}) {
    if (k < 1) {
        throw data_error("top_entities: k must be at least 1");
    }
    const std::map<std::string, std::size_t> counts = count_terms(records, stoplist, opts);
    std::vector<entity_count> ranked;
    ranked.reserve(counts.size());
    for (const auto &[term, count] : counts) {
        ranked.push_back({ term, count, 0 });
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const entity_count &a, const entity_count &b) { return a.count > b.count; });
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        ranked[i].rank = i + 1;
    }
    return ranked;
}

}  // namespace sentikit
