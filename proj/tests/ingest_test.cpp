#include "sentikit/dataset.hpp"
#include "sentikit/http_adapter.hpp"
#include "sentikit/ingest.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace sentikit;

namespace {

constexpr collection_window window{ 1635292800, 1635984000 };

std::vector<content_record> fixture(const std::string &name) { return read_dataset(testkit::test_dir() / "fixtures" / name); }

std::vector<std::string> ids_of(const std::vector<content_record> &records) {
    std::vector<std::string> ids;
    for (const content_record &r : records) {
        ids.push_back(r.id);
    }
    return ids;
}

content_record tweet(std::string id, std::int64_t t, std::int64_t likes) {
    content_record r;
    r.id = std::move(id);
    r.section = "cybersecurity";
    r.created_utc = t;
    r.text = "text";
    r.engagement = likes;
    return r;
}

}  // namespace

TEST(Filter, TwentyRecordFixtureKeepsFourteen) {
    const std::vector<content_record> records = fixture("filter20.csv");
    ASSERT_EQ(records.size(), 20U);
    const filter_result out = filter_records(records, window);
    EXPECT_EQ(out.kept.size(), 14U);
    EXPECT_EQ(out.excluded, 6U);
    EXPECT_TRUE(out.rejected.empty());
    EXPECT_EQ(ids_of(out.kept), (std::vector<std::string>{ "t01", "t02", "t03", "t04", "t05", "t06", "t07", "t08", "r01", "r02", "r03", "r04",
                                                           "r05", "r06" }));
}

TEST(Filter, ZeroLikeTweetExcludedAndEmptyInput) {
    EXPECT_TRUE(filter_records({ tweet("a", 1635300000, 0) }, window).kept.empty());
    EXPECT_EQ(filter_records({ tweet("a", 1635300000, 1) }, window).kept.size(), 1U);
    const filter_result empty = filter_records({}, window);
    EXPECT_TRUE(empty.kept.empty());
    EXPECT_TRUE(empty.rejected.empty());
    EXPECT_THROW((void) filter_records({}, collection_window{ 5, 5 }), data_error);
}

TEST(Filter, InvalidRecordsAreRejectedIndividually) {
    content_record negative = tweet("neg", 1635300000, -3);
    content_record with_listing = tweet("lst", 1635300000, 3);
    with_listing.listing = listing_kind::top;
    content_record reddit_without = tweet("rdt", 1635300000, 3);
    reddit_without.source = source_kind::reddit;
    const filter_result out =
        filter_records({ tweet("ok", 1635300000, 2), negative, with_listing, reddit_without, tweet("ok", 1635300001, 9), tweet("", 1635300000, 1) }, window);
    EXPECT_EQ(ids_of(out.kept), std::vector<std::string>{ "ok" });
    ASSERT_EQ(out.rejected.size(), 5U);
    EXPECT_EQ(out.rejected[0].id, "neg");
    EXPECT_NE(out.rejected[0].reason.find("engagement"), std::string::npos);
    EXPECT_EQ(out.rejected[3].reason, "duplicate record id");
}

TEST(FilterProperty, SubsetOrderPreservingIdempotentAndInWindow) {
    std::mt19937_64 rng{ 21 };
    for (int i = 0; i < 1000; ++i) {
        std::vector<content_record> records;
        const int n = std::uniform_int_distribution<int>(0, 25)(rng);
        for (int k = 0; k < n; ++k) {
            content_record r = testkit::random_record(rng, static_cast<std::size_t>(k));
            r.created_utc = std::uniform_int_distribution<std::int64_t>(window.start - 5000, window.end + 5000)(rng);
            records.push_back(r);
        }
        const filter_result out = filter_records(records, window);
        ASSERT_LE(out.kept.size(), records.size());
        ASSERT_EQ(out.kept.size() + out.excluded + out.rejected.size(), records.size());
        ASSERT_EQ(filter_records(out.kept, window).kept, out.kept);
        std::size_t j = 0;
        for (const content_record &r : records) {
            if (j < out.kept.size() && r == out.kept[j]) {
                ++j;
            }
        }
        ASSERT_EQ(j, out.kept.size());
        for (const content_record &r : out.kept) {
            ASSERT_TRUE(window.contains(r.created_utc));
        }
    }
}

TEST(Dataset, HeaderOnlyIsEmpty) {
    std::istringstream in{ "id,source,section,created_utc,text,engagement,listing\r\n" };
    EXPECT_TRUE(read_dataset(in).empty());
}

TEST(Dataset, NegativeEngagementFailsAtItsRow) {
    std::istringstream in{ "id,source,section,created_utc,text,engagement,listing\n"
                           "a,twitter,x,1,hello,2,\n"
                           "b,twitter,x,1,hello,-1,\n" };
    try {
        (void) read_dataset(in);
        FAIL() << "expected a parse error";
    } catch (const parse_error &e) {
        EXPECT_EQ(e.line(), 3U);
    }
}

TEST(Dataset, SchemaErrors) {
    const auto fails = [](const std::string &body) {
        std::istringstream in{ body };
        EXPECT_THROW((void) read_dataset(in), parse_error) << body;
    };
    fails("");
    fails("id,source,text\n");
    fails("id,source,section,created_utc,text,engagement,listing\na,mastodon,x,1,t,1,\n");
    fails("id,source,section,created_utc,text,engagement,listing\na,reddit,x,1,t,1,best\n");
    fails("id,source,section,created_utc,text,engagement,listing\na,twitter,x,yesterday,t,1,\n");
    fails("id,source,section,created_utc,text,engagement,listing\na,twitter,x,1,\"unterminated,1,\n");
    fails("id,source,section,created_utc,text,engagement,listing\na,twitter,x,1,t\n");
}

TEST(Dataset, PathErrorsNameTheFile) {
    const auto dir = testkit::scratch_dir("dataset_errors");
    EXPECT_THROW((void) read_dataset(dir / "missing.csv"), io_error);
}

TEST(DatasetProperty, RoundTripIsLossless) {
    std::mt19937_64 rng{ 22 };
    const auto dir = testkit::scratch_dir("dataset_roundtrip");
    for (int i = 0; i < 1000; ++i) {
        std::vector<content_record> records;
        const int n = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int k = 0; k < n; ++k) {
            records.push_back(testkit::random_record(rng, static_cast<std::size_t>(k)));
        }
        if (i % 50 == 0) {
            write_dataset(records, dir / "round.csv");
            ASSERT_EQ(read_dataset(dir / "round.csv"), records);
        } else {
            std::stringstream buffer;
            write_dataset(buffer, records);
            ASSERT_EQ(read_dataset(buffer), records);
        }
    }
}

TEST(FileAdapter, ReturnsEveryRecordOfTheSource) {
    file_adapter twitter{ testkit::test_dir() / "fixtures" / "adapter", source_kind::twitter };
    const fetch_result all = fetch(twitter, {}, window);
    EXPECT_FALSE(all.truncated);
    EXPECT_EQ(all.records.size(), 3U);
}

TEST(FileAdapter, SubredditQueriesAreTaggedWithTheirSection) {
    file_adapter reddit{ testkit::test_dir() / "fixtures" / "adapter", source_kind::reddit };
    const std::vector<std::string> subs{ "cybersecurity", "computersecurity", "privacy" };
    const fetch_result out = fetch(reddit, subs, window);
    EXPECT_EQ(out.records.size(), 5U);
    for (const content_record &r : out.records) {
        EXPECT_NE(std::find(subs.begin(), subs.end(), text::to_lower(r.section)), subs.end()) << r.section;
        EXPECT_EQ(r.source, source_kind::reddit);
    }
}

TEST(FileAdapter, MissingDirectoryIsFatal) {
    file_adapter missing{ testkit::test_dir() / "fixtures" / "nowhere", source_kind::twitter };
    try {
        (void) fetch(missing, {}, window);
        FAIL() << "expected fetch_error";
    } catch (const fetch_error &e) {
        EXPECT_FALSE(e.retryable());
    }
}

namespace {

/// Adapter that fails with `failure` on the `fail_at`-th section.
class flaky_adapter final : public source_adapter {
  public:
    flaky_adapter(std::size_t fail_at, fetch_error::kind failure) :
        fail_at_{ fail_at },
        failure_{ failure } {}

    [[nodiscard]] source_kind source() const override { return source_kind::twitter; }

    [[nodiscard]] std::vector<content_record> fetch_section(const std::string &section, const collection_window &) override {
        if (calls_++ == fail_at_) {
            throw fetch_error(failure_, "simulated");
        }
        return { tweet(section, 1635300000, 1) };
    }

  private:
    std::size_t fail_at_;
    fetch_error::kind failure_;
    std::size_t calls_{ 0 };
};

}  // namespace

TEST(Fetch, RetryableFailureReturnsTruncatedPartialResult) {
    flaky_adapter rate_limited{ 2, fetch_error::kind::rate_limit };
    const fetch_result out = fetch(rate_limited, { "a", "b", "c", "d" }, window);
    EXPECT_TRUE(out.truncated);
    EXPECT_EQ(ids_of(out.records), (std::vector<std::string>{ "a", "b" }));
    ASSERT_EQ(out.warnings.size(), 1U);

    flaky_adapter auth{ 1, fetch_error::kind::auth };
    EXPECT_THROW((void) fetch(auth, { "a", "b" }, window), fetch_error);
}

TEST(HttpAdapter, UnreachableEndpointIsFatalConnectivityError) {
    http_adapter adapter{ "http://127.0.0.1:1", source_kind::twitter, 2 };
    try {
        (void) fetch(adapter, { "cybersecurity" }, window);
        FAIL() << "expected fetch_error";
    } catch (const fetch_error &e) {
        EXPECT_EQ(e.error_kind(), fetch_error::kind::connectivity);
        EXPECT_FALSE(e.retryable());
    }
}

TEST(HttpAdapter, TalksToACollectionService) {
    httplib::Server server;
    std::string seen_auth;
    std::string seen_query;
    server.Get(R"(/api/(twitter|reddit)/([A-Za-z]+))", [&](const httplib::Request &req, httplib::Response &res) {
        const std::string section = req.matches[2];
        if (section == "limited") {
            res.status = 429;
            return;
        }
        if (section == "secret") {
            res.status = 401;
            return;
        }
        if (section == "broken") {
            res.set_content("not,a,dataset\n", "text/csv");
            return;
        }
        seen_auth = req.get_header_value("Authorization");
        seen_query = req.get_param_value("start") + "-" + req.get_param_value("end");
        res.set_content("id,source,section,created_utc,text,engagement,listing\n"
                        "x" + section + ",twitter,ignored,1635300000,hello,3,\n",
                        "text/csv");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread worker{ [&] { server.listen_after_bind(); } };
    server.wait_until_ready();

    ::setenv("SENTIKIT_TWITTER_TOKEN", "t0ken", 1);
    http_adapter adapter{ "http://127.0.0.1:" + std::to_string(port) + "/api/", source_kind::twitter, 5 };

    const fetch_result ok = fetch(adapter, { "infosec", "cybersecurity" }, window);
    EXPECT_FALSE(ok.truncated);
    EXPECT_EQ(ids_of(ok.records), (std::vector<std::string>{ "xinfosec", "xcybersecurity" }));
    EXPECT_EQ(ok.records[0].section, "infosec");
    EXPECT_EQ(seen_auth, "Bearer t0ken");
    EXPECT_EQ(seen_query, "1635292800-1635984000");

    const fetch_result partial = fetch(adapter, { "infosec", "limited", "cybersecurity" }, window);
    EXPECT_TRUE(partial.truncated);
    EXPECT_EQ(ids_of(partial.records), std::vector<std::string>{ "xinfosec" });

    try {
        (void) fetch(adapter, { "secret" }, window);
        ADD_FAILURE() << "expected an auth failure";
    } catch (const fetch_error &e) {
        EXPECT_EQ(e.error_kind(), fetch_error::kind::auth);
    }
    try {
        (void) fetch(adapter, { "broken" }, window);
        ADD_FAILURE() << "expected a protocol failure";
    } catch (const fetch_error &e) {
        EXPECT_EQ(e.error_kind(), fetch_error::kind::protocol);
    }
    ::unsetenv("SENTIKIT_TWITTER_TOKEN");

    server.stop();
    worker.join();
}
