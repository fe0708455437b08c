#pragma once

// Classic Porter suffix-stripping stemmer, following the original published
// rule set (e.g. ABLI -> ABLE in step 2, no LOGI rule).

#include <array>
#include <string>
#include <string_view>
#include <utility>

namespace sentikit {

namespace detail {

class porter_word {
  public:
    explicit porter_word(std::string w) :
        w_{ std::move(w) } {}

    std::string take() && { return std::move(w_); }

    void run() {
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
    }

  private:
    std::string w_;

    [[nodiscard]] bool consonant(std::size_t i) const {
        switch (w_[i]) {
            case 'a':
            case 'e':
            case 'i':
            case 'o':
            case 'u':
                return false;
            case 'y':
                return i == 0 || !consonant(i - 1);
            default:
                return true;
        }
    }

    /// Number of VC sequences in w_[0, len).
    [[nodiscard]] int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) {
            ++i;
        }
        while (i < len) {
            while (i < len && !consonant(i)) {
                ++i;
            }
            if (i >= len) {
                break;
            }
            while (i < len && consonant(i)) {
                ++i;
            }
            ++m;
        }
        return m;
    }

    [[nodiscard]] bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!consonant(i)) {
                return true;
            }
        }
        return false;
    }

    [[nodiscard]] bool double_consonant(std::size_t len) const {
        return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
    }

    /// *o: stem ends consonant-vowel-consonant, last consonant not w, x, y.
    [[nodiscard]] bool cvc(std::size_t len) const {
        if (len < 3 || !consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) {
            return false;
        }
        const char c = w_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    [[nodiscard]] bool ends(std::string_view suffix) const {
        return w_.size() >= suffix.size() && std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
    }

    [[nodiscard]] std::size_t stem_len(std::string_view suffix) const { return w_.size() - suffix.size(); }

    void replace(std::string_view suffix, std::string_view with) {
        w_.resize(stem_len(suffix));
        w_.append(with);
    }

    struct rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    /// Applies the first rule whose suffix matches, provided the remaining
    /// stem has measure > min_measure. Returns true when a suffix matched.
    template <std::size_t N>
    bool apply_longest(const std::array<rule, N> &rules, int min_measure) {
        for (const rule &r : rules) {
            if (ends(r.suffix)) {
                if (measure(stem_len(r.suffix)) > min_measure) {
                    replace(r.suffix, r.replacement);
                }
                return true;
            }
        }
        return false;
    }

    void step1a() {
        if (ends("sses")) {
            replace("sses", "ss");
        } else if (ends("ies")) {
            replace("ies", "i");
        } else if (ends("ss")) {
            // unchanged
        } else if (ends("s")) {
            replace("s", "");
        }
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) {
                replace("eed", "ee");
            }
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(stem_len("ed"))) {
            replace("ed", "");
            stripped = true;
        } else if (ends("ing") && has_vowel(stem_len("ing"))) {
            replace("ing", "");
            stripped = true;
        }
        if (!stripped) {
            return;
        }
        if (ends("at")) {
            replace("at", "ate");
        } else if (ends("bl")) {
            replace("bl", "ble");
        } else if (ends("iz")) {
            replace("iz", "ize");
        } else if (double_consonant(w_.size())) {
            const char c = w_.back();
            if (c != 'l' && c != 's' && c != 'z') {
                w_.pop_back();
            }
        } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
            w_.push_back('e');
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(stem_len("y"))) {
            w_.back() = 'i';
        }
    }

    void step2() {
        // longest match first among overlapping suffixes
        static constexpr std::array<rule, 20> ordered{ {
            { "ational", "ate" }, { "ization", "ize" }, { "iveness", "ive" }, { "fulness", "ful" }, { "ousness", "ous" },
            { "tional", "tion" }, { "biliti", "ble" },  { "entli", "ent" },   { "ousli", "ous" },   { "alism", "al" },
            { "aliti", "al" },    { "iviti", "ive" },   { "ation", "ate" },   { "enci", "ence" },   { "anci", "ance" },
            { "izer", "ize" },    { "abli", "able" },   { "alli", "al" },     { "ator", "ate" },    { "eli", "e" },
        } };
        apply_longest(ordered, 0);
    }

    void step3() {
        static constexpr std::array<rule, 7> rules{ {
            { "icate", "ic" },
            { "ative", "" },
            { "alize", "al" },
            { "iciti", "ic" },
            { "ical", "ic" },
            { "ness", "" },
            { "ful", "" },
        } };
        apply_longest(rules, 0);
    }

    void step4() {
        static constexpr std::array<std::string_view, 19> suffixes{
            "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate",
            "iti",   "ous",  "ive",  "ize",  "ion",  "al",   "er",  "ic",  "ou",
        };
        for (const std::string_view s : suffixes) {
            if (!ends(s)) {
                continue;
            }
            const std::size_t len = stem_len(s);
            if (measure(len) > 1) {
                if (s == "ion" && !(len > 0 && (w_[len - 1] == 's' || w_[len - 1] == 't'))) {
                    return;
                }
                w_.resize(len);
            }
            return;
        }
    }

    void step5a() {
        if (!ends("e")) {
            return;
        }
        const std::size_t len = stem_len("e");
        const int m = measure(len);
        if (m > 1 || (m == 1 && !cvc(len))) {
            w_.pop_back();
        }
    }

    void step5b() {
        if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') {
            w_.pop_back();
        }
    }
};

}  // namespace detail

/// Stems a lower-case ASCII word. Words containing any byte outside a-z are
/// returned unchanged.
[[nodiscard]] inline std::string porter_stem(std::string_view word) {
    if (word.empty()) {
        return {};
    }
    for (const char c : word) {
        if (c < 'a' || c > 'z') {
            return std::string(word);
        }
    }
    detail::porter_word w{ std::string(word) };
    w.run();
    return std::move(w).take();
}

}  // namespace sentikit
