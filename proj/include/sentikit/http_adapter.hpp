#pragma once

// HTTP source adapter. Expects a collection service that answers
//   GET <base>/<source>/<section>?start=<epoch>&end=<epoch>
// with a dataset CSV body. A bearer token is read from the environment
// variable SENTIKIT_TWITTER_TOKEN or SENTIKIT_REDDIT_TOKEN; credentials are
// never taken from config files.

#include "sentikit/dataset.hpp"
#include "sentikit/ingest.hpp"

#include "httplib.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sentikit {

class http_adapter final : public source_adapter {
  public:
    /// `base_url` is scheme://host[:port][/prefix].
    http_adapter(std::string base_url, source_kind source, time_t timeout_seconds = 10) :
        base_url_{ std::move(base_url) },
        source_{ source },
        timeout_{ timeout_seconds } {
        const std::size_t scheme = base_url_.find("://");
        const std::size_t path_at = base_url_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
        if (path_at != std::string::npos) {
            prefix_ = base_url_.substr(path_at);
            base_url_.resize(path_at);
        }
        while (!prefix_.empty() && prefix_.back() == '/') {
            prefix_.pop_back();
        }
    }

    [[nodiscard]] source_kind source() const override { return source_; }

    [[nodiscard]] static const char *token_variable(source_kind s) noexcept {
        return s == source_kind::twitter ? "SENTIKIT_TWITTER_TOKEN" : "SENTIKIT_REDDIT_TOKEN";
    }

    [[nodiscard]] std::vector<content_record> fetch_section(const std::string &section, const collection_window &window) override {
        httplib::Client client{ base_url_ };
        client.set_connection_timeout(timeout_, 0);
        client.set_read_timeout(timeout_, 0);
        httplib::Headers headers;
        if (const char *token = std::getenv(token_variable(source_))) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
        const std::string path = prefix_ + "/" + std::string(to_string(source_)) + "/" + section + "?start=" + std::to_string(window.start) +
                                 "&end=" + std::to_string(window.end);
        const httplib::Result res = client.Get(path, headers);
        if (!res) {
            throw fetch_error(fetch_error::kind::connectivity, "cannot reach " + base_url_ + ": " + httplib::to_string(res.error()));
        }
        if (res->status == 401 || res->status == 403) {
            throw fetch_error(fetch_error::kind::auth, "authentication rejected by " + base_url_ + " (HTTP " + std::to_string(res->status) + ")");
        }
        if (res->status == 429) {
            throw fetch_error(fetch_error::kind::rate_limit, "rate limited by " + base_url_);
        }
        if (res->status >= 500) {
            throw fetch_error(fetch_error::kind::server, "server error from " + base_url_ + " (HTTP " + std::to_string(res->status) + ")");
        }
        if (res->status != 200) {
            throw fetch_error(fetch_error::kind::protocol, "unexpected HTTP " + std::to_string(res->status) + " from " + base_url_);
        }
        std::istringstream body{ res->body };
        std::vector<content_record> records;
        try {
            records = read_dataset(body);
        } catch (const parse_error &e) {
            throw fetch_error(fetch_error::kind::protocol, std::string("malformed response: ") + e.what());
        }
        for (content_record &r : records) {
            r.source = source_;
            r.section = section;
        }
        return records;
    }

  private:
    std::string base_url_;
    std::string prefix_;
    source_kind source_;
    time_t timeout_;
};

}  // namespace sentikit
