#pragma once

#include "sentikit/error.hpp"

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace sentikit {

/// Sentiment class. The enumerator order is the natural order neg < neu < pos.
enum class polarity_label { negative = 0, neutral = 1, positive = 2 };

inline constexpr std::array<polarity_label, 3> all_labels{ polarity_label::negative, polarity_label::neutral, polarity_label::positive };

[[nodiscard]] constexpr std::string_view to_string(polarity_label label) noexcept {
    switch (label) {
        case polarity_label::negative:
            return "neg";
        case polarity_label::neutral:
            return "neu";
        case polarity_label::positive:
            return "pos";
    }
    return "neu";
}

/// Parses the serialized form ("pos", "neu", "neg"). Anything else throws.
[[nodiscard]] inline polarity_label parse_label(std::string_view s) {
    if (s == "pos") {
        return polarity_label::positive;
    }
    if (s == "neu") {
        return polarity_label::neutral;
    }
    if (s == "neg") {
        return polarity_label::negative;
    }
    throw data_error("invalid polarity label '" + std::string(s) + "' (expected pos, neu or neg)");
}

enum class scheme_name { base, moderate, extreme };

/// Compound-score thresholds. A compound equal to a threshold is neutral.
struct classification_scheme {
    scheme_name name{ scheme_name::base };
    double positive_threshold{ 0.0 };
    double negative_threshold{ 0.0 };

    [[nodiscard]] static constexpr classification_scheme base() noexcept { return { scheme_name::base, 0.0, 0.0 }; }
    [[nodiscard]] static constexpr classification_scheme moderate() noexcept { return { scheme_name::moderate, 0.25, -0.25 }; }
    [[nodiscard]] static constexpr classification_scheme extreme() noexcept { return { scheme_name::extreme, 0.75, -0.75 }; }

    [[nodiscard]] static constexpr classification_scheme named(scheme_name n) noexcept {
        switch (n) {
            case scheme_name::base:
                return base();
            case scheme_name::moderate:
                return moderate();
            case scheme_name::extreme:
                return extreme();
        }
        return base();
    }
};

inline constexpr std::array<scheme_name, 3> all_schemes{ scheme_name::base, scheme_name::moderate, scheme_name::extreme };

[[nodiscard]] constexpr std::string_view to_string(scheme_name n) noexcept {
    switch (n) {
        case scheme_name::base:
            return "base";
        case scheme_name::moderate:
            return "moderate";
        case scheme_name::extreme:
            return "extreme";
    }
    return "base";
}

[[nodiscard]] inline scheme_name parse_scheme(std::string_view s) {
    if (s == "base") {
        return scheme_name::base;
    }
    if (s == "moderate") {
        return scheme_name::moderate;
    }
    if (s == "extreme") {
        return scheme_name::extreme;
    }
    throw data_error("unknown classification scheme '" + std::string(s) + "'");
}

/// Maps a compound score to a label: positive iff compound > positive_threshold,
/// negative iff compound < negative_threshold, neutral otherwise.
[[nodiscard]] inline polarity_label label(double compound, const classification_scheme &scheme) {
    if (!(compound >= -1.0 && compound <= 1.0)) {
        throw data_error("compound score out of range [-1, 1]: " + std::to_string(compound));
    }
    if (compound > scheme.positive_threshold) {
        return polarity_label::positive;
    }
    if (compound < scheme.negative_threshold) {
        return polarity_label::negative;
    }
    return polarity_label::neutral;
}

}  // namespace sentikit
