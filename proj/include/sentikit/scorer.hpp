#pragma once

#include "sentikit/error.hpp"
#include "sentikit/lexicon.hpp"
#include "sentikit/polarity.hpp"
#include "sentikit/tokenize.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace sentikit {

/// Heuristic constants of the scorer. Every field is tunable; the defaults
/// are the empirically derived values of the original rule-based tool.
struct heuristic_config {
    double alpha{ 15.0 };                   ///< normalization constant, > 0
    double exclamation_increment{ 0.292 };  ///< per '!', sign-following
    int exclamation_cap{ 4 };
    double caps_increment{ 0.733 };
    double degree_increment{ 0.293 };  ///< boosters add, dampeners subtract
    double negation_scalar{ -0.74 };   ///< in (-1, 0)
    int negation_window{ 3 };          ///< tokens looked back for negations and degree modifiers
    double but_pre_weight{ 0.5 };
    double but_post_weight{ 1.5 };

    void validate() const {
        const auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(alpha) || alpha <= 0.0) {
            throw data_error("heuristic alpha must be finite and > 0");
        }
        if (!finite(exclamation_increment) || exclamation_increment < 0.0 || exclamation_cap < 0) {
            throw data_error("exclamation increment and cap must be non-negative");
        }
        if (!finite(caps_increment) || caps_increment < 0.0 || !finite(degree_increment) || degree_increment < 0.0) {
            throw data_error("caps and degree increments must be finite and non-negative");
        }
        if (!finite(negation_scalar) || negation_scalar <= -1.0 || negation_scalar >= 0.0) {
            throw data_error("negation scalar must lie in (-1, 0)");
        }
        if (negation_window < 1) {
            throw data_error("negation window must be at least 1");
        }
        if (!finite(but_pre_weight) || but_pre_weight <= 0.0 || but_pre_weight > 1.0) {
            throw data_error("but_pre_weight must lie in (0, 1]");
        }
        if (!finite(but_post_weight) || but_post_weight < 1.0) {
            throw data_error("but_post_weight must be >= 1");
        }
    }
};

struct sentiment_score {
    double pos{ 0.0 };
    double neu{ 0.0 };
    double neg{ 0.0 };
    double compound{ 0.0 };
};

/// Negation words and degree modifiers consulted by the scorer.
struct modifier_words {
    word_set negations;
    word_set boosters;
    word_set dampeners;

    /// Built-in English lists; identical to the bundled data files.
    [[nodiscard]] static const modifier_words &english() {
        static const modifier_words words{
            { "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt", "dont", "hadnt", "hasnt",
              "havent", "isnt", "mightnt", "mustnt", "neednt", "neither", "never", "no", "nobody", "none", "nope",
              "nor", "not", "nothing", "nowhere", "oughtnt", "shant", "shouldnt", "wasnt", "werent", "without",
              "wont", "wouldnt", "rarely", "seldom", "despite", "uh-uh" },
            { "absolutely", "amazingly", "awfully", "completely", "considerably", "decidedly", "deeply", "effing",
              "enormously", "entirely", "especially", "exceptionally", "extremely", "fabulously", "flipping",
              "fully", "greatly", "hella", "highly", "hugely", "incredibly", "intensely", "majorly", "more", "most",
              "particularly", "purely", "quite", "really", "remarkably", "so", "substantially", "thoroughly",
              "totally", "tremendously", "uber", "unbelievably", "unusually", "utterly", "very" },
            { "almost", "barely", "hardly", "less", "little", "marginally", "occasionally", "partly", "scarcely",
              "slightly", "somewhat", "kinda", "kindof", "sorta", "sortof", "least" },
        };
        return words;
    }

    /// Lower-case `word` is a negation (listed, or a "n't" contraction).
    [[nodiscard]] bool is_negation(std::string_view lower) const {
        if (negations.find(lower) != negations.end()) {
            return true;
        }
        return lower.size() > 3 && lower.substr(lower.size() - 3) == "n't";
    }

    [[nodiscard]] bool is_degree(std::string_view lower) const {
        return boosters.find(lower) != boosters.end() || dampeners.find(lower) != dampeners.end();
    }
};

/// Maps a raw valence sum into (-1, 1) as raw / sqrt(raw^2 + alpha).
[[nodiscard]] inline double normalize_compound(double raw_sum, double alpha = 15.0) {
    if (!std::isfinite(raw_sum) || !std::isfinite(alpha)) {
        throw data_error("normalize_compound: non-finite input");
    }
    if (alpha <= 0.0) {
        throw data_error("normalize_compound: alpha must be > 0");
    }
    const double v = raw_sum / std::sqrt(raw_sum * raw_sum + alpha);
    return std::clamp(v, -1.0, 1.0);
}

/// Per-token adjusted valences in input order; 0 for tokens that carry no
/// sentiment. Exposed for diagnostics and tests.
[[nodiscard]] inline std::vector<double> token_valences(const tokenized_text &tt, const lexicon &lex, const heuristic_config &cfg,
                                                        const modifier_words &mods = modifier_words::english()) {
    const std::size_t n = tt.tokens.size();
    std::vector<std::string> lower(n);
    std::size_t caps_count = 0;
    std::size_t alpha_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = text::to_lower(tt.tokens[i].text);
        const bool has_alpha = std::any_of(lower[i].begin(), lower[i].end(), [](char c) { return text::is_alpha(c); });
        alpha_count += has_alpha ? 1 : 0;
        caps_count += tt.tokens[i].all_caps ? 1 : 0;
    }
    const bool mixed_case = caps_count > 0 && caps_count < alpha_count;

    std::vector<double> valences(n, 0.0);
    const auto window = static_cast<std::size_t>(cfg.negation_window);
    for (std::size_t i = 0; i < n; ++i) {
        if (mods.is_degree(lower[i])) {
            continue;
        }
        const auto it = lex.entries().find(lower[i]);
        if (it == lex.entries().end() || it->second == 0.0) {
            continue;
        }
        double v = it->second;

        // degree modifiers, decaying with distance
        for (std::size_t d = 1; d <= window && d <= i; ++d) {
            const std::string &prev = lower[i - d];
            double scalar = 0.0;
            if (mods.boosters.find(prev) != mods.boosters.end()) {
                scalar = cfg.degree_increment;
            } else if (mods.dampeners.find(prev) != mods.dampeners.end()) {
                scalar = -cfg.degree_increment;
            } else {
                continue;
            }
            if (v < 0.0) {
                scalar = -scalar;
            }
            const double decay = d == 1 ? 1.0 : (d == 2 ? 0.95 : 0.9);
            v += scalar * decay;
        }

        if (mixed_case && tt.tokens[i].all_caps) {
            v += v > 0.0 ? cfg.caps_increment : (v < 0.0 ? -cfg.caps_increment : 0.0);
        }

        for (std::size_t d = 1; d <= window && d <= i; ++d) {
            if (mods.is_negation(lower[i - d])) {
                v *= cfg.negation_scalar;
            }
        }
        valences[i] = v;
    }

    const auto but = std::find(lower.begin(), lower.end(), "but");
    if (but != lower.end()) {
        const auto b = static_cast<std::size_t>(but - lower.begin());
        for (std::size_t i = 0; i < n; ++i) {
            if (i < b) {
                valences[i] *= cfg.but_pre_weight;
            } else if (i > b) {
                valences[i] *= cfg.but_post_weight;
            }
        }
    }
    return valences;
}

/// Scores `input` against `lex`.
///
/// Heuristics run in this order for every sentiment-bearing token: degree
/// modifiers in the look-back window, ALL-CAPS emphasis (only when the text
/// mixes cases), negations in the look-back window, then the "but" clause
/// weighting. Trailing '!' (up to the cap) push the summed valence further
/// from zero before normalization.
///
/// pos/neu/neg split the token mass: a positive token weighs valence + 1, a
/// negative one |valence| + 1, a neutral one 1; the exclamation emphasis is
/// credited to the dominant side.
[[nodiscard]] inline sentiment_score score(std::string_view input, const lexicon &lex, const heuristic_config &cfg = {},
                                           const modifier_words &mods = modifier_words::english()) {
    const tokenized_text tt = tokenize(input, &lex);
    if (tt.empty()) {
        return {};
    }
    const std::vector<double> valences = token_valences(tt, lex, cfg, mods);

    double sum = 0.0;
    double pos_mass = 0.0;
    double neg_mass = 0.0;
    double neu_mass = 0.0;
    for (const double v : valences) {
        sum += v;
        if (v > 0.0) {
            pos_mass += v + 1.0;
        } else if (v < 0.0) {
            neg_mass += -v + 1.0;
        } else {
            neu_mass += 1.0;
        }
    }

    const double emphasis = std::min(tt.exclamations, cfg.exclamation_cap) * cfg.exclamation_increment;
    if (sum > 0.0) {
        sum += emphasis;
    } else if (sum < 0.0) {
        sum -= emphasis;
    }
    if (pos_mass > neg_mass) {
        pos_mass += emphasis;
    } else if (pos_mass < neg_mass) {
        neg_mass += emphasis;
    }

    const double total = pos_mass + neg_mass + neu_mass;
    return { pos_mass / total, neu_mass / total, neg_mass / total, normalize_compound(sum, cfg.alpha) };
}

/// A lexicon, modifier lists and constants bundled together; cheap to share
/// across threads since every member is immutable after construction.
class analyzer {
  public:
    analyzer(lexicon lex, heuristic_config cfg = {}, modifier_words mods = modifier_words::english()) :
        lex_{ std::move(lex) },
        cfg_{ cfg },
        mods_{ std::move(mods) } {
        cfg_.validate();
    }

    [[nodiscard]] sentiment_score score(std::string_view input) const { return sentikit::score(input, lex_, cfg_, mods_); }

    [[nodiscard]] const lexicon &lexicon_ref() const noexcept { return lex_; }
    [[nodiscard]] const heuristic_config &config() const noexcept { return cfg_; }
    [[nodiscard]] const modifier_words &modifiers() const noexcept { return mods_; }

  private:
    lexicon lex_;
    heuristic_config cfg_;
    modifier_words mods_;
};

}  // namespace sentikit
