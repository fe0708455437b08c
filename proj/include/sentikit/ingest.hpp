#pragma once

#include "sentikit/dataset.hpp"
#include "sentikit/error.hpp"
#include "sentikit/record.hpp"
#include "sentikit/text.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentikit {

struct rejection {
    std::string id;
    std::string reason;
};

struct filter_result {
    std::vector<content_record> kept;
    std::vector<rejection> rejected;  ///< records that broke an invariant
    std::size_t excluded{ 0 };        ///< valid records that failed a criterion
};

/// Whether a valid record meets the collection criteria: tweets need at least
/// one like, Reddit posts must come from the top or hot listing, and the
/// timestamp must fall inside `window`.
[[nodiscard]] inline bool meets_criteria(const content_record &r, const collection_window &window) {
    if (!window.contains(r.created_utc)) {
        return false;
    }
    if (r.source == source_kind::twitter) {
        return r.engagement > 0;
    }
    return r.listing == listing_kind::top || r.listing == listing_kind::hot;
}

/// Order-preserving subset of `records` meeting the criteria. Invalid or
/// duplicate-id records are rejected individually with a reason.
[[nodiscard]] inline filter_result filter_records(const std::vector<content_record> &records, const collection_window &window) {
    window.validate();
    filter_result out;
    std::set<std::string, std::less<>> ids;
    for (const content_record &r : records) {
        try {
            validate(r);
        } catch (const data_error &e) {
            out.rejected.push_back({ r.id, e.what() });
            continue;
        }
        if (!ids.insert(r.id).second) {
            out.rejected.push_back({ r.id, "duplicate record id" });
            continue;
        }
        if (meets_criteria(r, window)) {
            out.kept.push_back(r);
        } else {
            ++out.excluded;
        }
    }
    return out;
}

/// Failure while collecting from a source.
class fetch_error : public io_error {
  public:
    enum class kind { connectivity, auth, rate_limit, server, protocol };

    fetch_error(kind k, const std::string &what) :
        io_error(what),
        kind_{ k } {}

    [[nodiscard]] kind error_kind() const noexcept { return kind_; }

    /// Rate limits and transient server errors may succeed on retry.
    [[nodiscard]] bool retryable() const noexcept { return kind_ == kind::rate_limit || kind_ == kind::server; }

  private:
    kind kind_;
};

struct fetch_result {
    std::vector<content_record> records;
    bool truncated{ false };
    std::vector<std::string> warnings;
};

/// A place records come from. Implementations return raw, unfiltered records
/// for one section and throw fetch_error on failure.
class source_adapter {
  public:
    virtual ~source_adapter() = default;

    [[nodiscard]] virtual source_kind source() const = 0;
    [[nodiscard]] virtual std::vector<content_record> fetch_section(const std::string &section, const collection_window &window) = 0;
};

/// Serves records from `<dir>/<source>.csv`. The window is not applied;
/// filtering is filter_records' job.
class file_adapter final : public source_adapter {
  public:
    file_adapter(std::filesystem::path dir, source_kind source) :
        dir_{ std::move(dir) },
        source_{ source } {}

    [[nodiscard]] source_kind source() const override { return source_; }

    [[nodiscard]] std::filesystem::path dataset_path() const { return dir_ / (std::string(to_string(source_)) + ".csv"); }

    /// Every record of this source; an empty `section` matches all.
    [[nodiscard]] std::vector<content_record> fetch_section(const std::string &section, const collection_window & /*window*/) override {
        load();
        std::vector<content_record> out;
        const std::string wanted = text::to_lower(section);
        for (const content_record &r : cache_) {
            if (r.source == source_ && (wanted.empty() || text::to_lower(r.section) == wanted)) {
                out.push_back(r);
            }
        }
        return out;
    }

  private:
    std::filesystem::path dir_;
    source_kind source_;
    std::vector<content_record> cache_;
    bool loaded_{ false };

    void load() {
        if (loaded_) {
            return;
        }
        const std::filesystem::path path = dataset_path();
        if (!std::filesystem::exists(path)) {
            throw fetch_error(fetch_error::kind::connectivity, "fixture file not found: " + path.string());
        }
        cache_ = read_dataset(path);
        loaded_ = true;
    }
};

/// Collects every section in `sections` (all records when empty). A
/// retryable failure stops collection and returns what was gathered with
/// `truncated` set; any other failure propagates.
[[nodiscard]] inline fetch_result fetch(source_adapter &adapter, const std::vector<std::string> &sections, const collection_window &window) {
    fetch_result out;
    const std::vector<std::string> queries = sections.empty() ? std::vector<std::string>{ "" } : sections;
    for (const std::string &section : queries) {
        try {
            std::vector<content_record> got = adapter.fetch_section(section, window);
            out.records.insert(out.records.end(), std::make_move_iterator(got.begin()), std::make_move_iterator(got.end()));
        } catch (const fetch_error &e) {
            if (!e.retryable()) {
                throw;
            }
            out.truncated = true;
            out.warnings.push_back("section '" + section + "': " + e.what());
            break;
        }
    }
    return out;
}

}  // namespace sentikit
