#pragma once

// Minimal RFC 4180 reader/writer: comma separator, '"' quoting with doubled
// quotes, quoted fields may span lines. Accepts LF or CRLF row endings.

#include "sentikit/error.hpp"

#include <cstddef>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sentikit::csv {

using row = std::vector<std::string>;

class reader {
  public:
    explicit reader(std::istream &in) :
        in_{ in } {}

    /// Next row, or nullopt at end of input. Rows are counted from 1.
    std::optional<row> next() {
        if (in_.peek() == std::char_traits<char>::eof()) {
            return std::nullopt;
        }
        ++row_no_;
        row fields;
        std::string field;
        bool quoted = false;
        bool after_quote = false;
        for (;;) {
            const int ch = in_.get();
            if (ch == std::char_traits<char>::eof()) {
                if (quoted) {
                    throw parse_error("unterminated quoted field", row_no_);
                }
                fields.push_back(std::move(field));
                return fields;
            }
            const char c = static_cast<char>(ch);
            if (quoted) {
                if (c == '"') {
                    if (in_.peek() == '"') {
                        in_.get();
                        field.push_back('"');
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    field.push_back(c);
                }
                continue;
            }
            if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
            } else if (c == '\n' || (c == '\r' && in_.peek() == '\n')) {
                if (c == '\r') {
                    in_.get();
                }
                fields.push_back(std::move(field));
                return fields;
            } else if (c == '"') {
                if (!field.empty() || after_quote) {
                    throw parse_error("unexpected quote inside unquoted field", row_no_);
                }
                quoted = true;
            } else {
                if (after_quote) {
                    throw parse_error("characters after closing quote", row_no_);
                }
                field.push_back(c);
            }
        }
    }

    [[nodiscard]] std::size_t row_number() const noexcept { return row_no_; }

  private:
    std::istream &in_;
    std::size_t row_no_{ 0 };
};

[[nodiscard]] inline bool needs_quotes(std::string_view field) noexcept {
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_field(std::ostream &out, std::string_view field) {
    if (!needs_quotes(field)) {
        out << field;
        return;
    }
    out << '"';
    for (const char c : field) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

/// Writes one row terminated by CRLF.
inline void write_row(std::ostream &out, const row &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        write_field(out, fields[i]);
    }
    out << "\r\n";
}

}  // namespace sentikit::csv
