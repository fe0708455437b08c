#pragma once

#include "sentikit/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sentikit {

enum class source_kind { twitter, reddit };

/// Reddit listing a post was collected from.
enum class listing_kind { top, hot, new_, rising, controversial };

[[nodiscard]] constexpr std::string_view to_string(source_kind s) noexcept {
    return s == source_kind::twitter ? "twitter" : "reddit";
}

[[nodiscard]] inline source_kind parse_source(std::string_view s) {
    if (s == "twitter") {
        return source_kind::twitter;
    }
    if (s == "reddit") {
        return source_kind::reddit;
    }
    throw data_error("unknown source '" + std::string(s) + "'");
}

[[nodiscard]] constexpr std::string_view to_string(listing_kind l) noexcept {
    switch (l) {
        case listing_kind::top:
            return "top";
        case listing_kind::hot:
            return "hot";
        case listing_kind::new_:
            return "new";
        case listing_kind::rising:
            return "rising";
        case listing_kind::controversial:
            return "controversial";
    }
    return "top";
}

[[nodiscard]] inline listing_kind parse_listing(std::string_view s) {
    if (s == "top") {
        return listing_kind::top;
    }
    if (s == "hot") {
        return listing_kind::hot;
    }
    if (s == "new") {
        return listing_kind::new_;
    }
    if (s == "rising") {
        return listing_kind::rising;
    }
    if (s == "controversial") {
        return listing_kind::controversial;
    }
    throw data_error("unknown listing '" + std::string(s) + "'");
}

/// One tweet or Reddit post.
struct content_record {
    std::string id;
    source_kind source{ source_kind::twitter };
    std::string section;  ///< hashtag without '#', or subreddit name
    std::int64_t created_utc{ 0 };
    std::string text;
    std::int64_t engagement{ 0 };  ///< likes (twitter) or score (reddit)
    std::optional<listing_kind> listing;

    friend bool operator==(const content_record &, const content_record &) = default;
};

/// Throws data_error when `r` breaks a record invariant.
inline void validate(const content_record &r) {
    if (r.id.empty()) {
        throw data_error("record id must not be empty");
    }
    if (r.engagement < 0) {
        throw data_error("record " + r.id + ": engagement must be >= 0");
    }
    if (r.source == source_kind::reddit && !r.listing) {
        throw data_error("record " + r.id + ": reddit record needs a listing");
    }
    if (r.source == source_kind::twitter && r.listing) {
        throw data_error("record " + r.id + ": twitter record must not carry a listing");
    }
}

/// Half-open interval [start, end) of epoch seconds.
struct collection_window {
    std::int64_t start{ 0 };
    std::int64_t end{ 0 };

    [[nodiscard]] bool contains(std::int64_t t) const noexcept { return start <= t && t < end; }

    void validate() const {
        if (!(start < end)) {
            throw data_error("collection window start must precede end");
        }
    }
};

}  // namespace sentikit
