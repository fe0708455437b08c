#pragma once

#include "sentikit/csv.hpp"
#include "sentikit/error.hpp"
#include "sentikit/io.hpp"
#include "sentikit/record.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sentikit {

inline constexpr std::array<std::string_view, 7> dataset_columns{ "id", "source", "section", "created_utc", "text", "engagement", "listing" };

namespace detail {

inline bool parse_int64(std::string_view s, std::int64_t &out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Reads the dataset CSV. Row numbers in errors count the header as row 1.
[[nodiscard]] inline std::vector<content_record> read_dataset(std::istream &in) {
    csv::reader reader{ in };
    const auto header = reader.next();
    if (!header) {
        throw parse_error("dataset is missing its header row");
    }
    if (header->size() != dataset_columns.size()) {
        throw parse_error("header has " + std::to_string(header->size()) + " columns, expected 7", 1);
    }
    for (std::size_t i = 0; i < dataset_columns.size(); ++i) {
        if ((*header)[i] != dataset_columns[i]) {
            throw parse_error("unexpected header column '" + (*header)[i] + "', expected '" + std::string(dataset_columns[i]) + "'", 1);
        }
    }

    std::vector<content_record> records;
    while (auto row = reader.next()) {
        const std::size_t row_no = reader.row_number();
        if (row->size() != dataset_columns.size()) {
            throw parse_error("expected 7 fields, found " + std::to_string(row->size()), row_no);
        }
        content_record r;
        try {
            r.id = (*row)[0];
            r.source = parse_source((*row)[1]);
            r.section = (*row)[2];
            if (!detail::parse_int64((*row)[3], r.created_utc)) {
                throw data_error("malformed created_utc '" + (*row)[3] + "'");
            }
            r.text = (*row)[4];
            if (!detail::parse_int64((*row)[5], r.engagement)) {
                throw data_error("malformed engagement '" + (*row)[5] + "'");
            }
            if (!(*row)[6].empty()) {
                r.listing = parse_listing((*row)[6]);
            }
            validate(r);
        } catch (const data_error &e) {
            throw parse_error(e.what(), row_no);
        }
        records.push_back(std::move(r));
    }
    return records;
}

[[nodiscard]] inline std::vector<content_record> read_dataset(const std::filesystem::path &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw io_error("cannot open dataset: " + path.string());
    }
    try {
        return read_dataset(in);
    } catch (const parse_error &e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

inline void write_dataset(std::ostream &out, const std::vector<content_record> &records) {
    csv::write_row(out, csv::row(dataset_columns.begin(), dataset_columns.end()));
    for (const content_record &r : records) {
        validate(r);
        csv::write_row(out, { r.id, std::string(to_string(r.source)), r.section, std::to_string(r.created_utc), r.text,
                              std::to_string(r.engagement), r.listing ? std::string(to_string(*r.listing)) : std::string{} });
    }
}

/// Validates every record before anything touches the disk.
inline void write_dataset(const std::vector<content_record> &records, const std::filesystem::path &path) {
    std::ostringstream out;
    write_dataset(out, records);
    io::write_file_atomic(path, out.str());
}

}  // namespace sentikit
