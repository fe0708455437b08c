#include "sentikit/dataset.hpp"
#include "sentikit/eval.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace sentikit;

namespace {

constexpr polarity_label neg = polarity_label::negative;
constexpr polarity_label neu = polarity_label::neutral;
constexpr polarity_label pos = polarity_label::positive;

using testkit::round2;

std::vector<annotation_record> votes(const std::string &item, std::size_t p, std::size_t u, std::size_t n) {
    std::vector<annotation_record> out;
    std::size_t a = 0;
    for (const auto &[label, count] : { std::pair{ pos, p }, std::pair{ neu, u }, std::pair{ neg, n } }) {
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back({ item, "ann" + std::to_string(++a), label });
        }
    }
    return out;
}

std::vector<std::string> ids_of(const std::vector<content_record> &records) {
    std::vector<std::string> ids;
    for (const content_record &r : records) {
        ids.push_back(r.id);
    }
    return ids;
}

// Nine items humans call positive, one neutral.
confusion_matrix mixed_truth() { return confusion_matrix::from_cells({ neg, neu, pos }, { { pos, neg, 1 }, { pos, neu, 2 }, { pos, pos, 6 }, { neu, pos, 1 } }); }

// Ten positive items, seven predicted positive.
confusion_matrix all_positive_truth() { return confusion_matrix::from_cells({ neg, pos }, { { pos, pos, 7 }, { pos, neg, 3 } }); }

}  // namespace

TEST(Sample, DeterministicAndComplete) {
    std::vector<int> items(37);
    for (int i = 0; i < 37; ++i) {
        items[static_cast<std::size_t>(i)] = i;
    }
    EXPECT_EQ(sample_items(items, 10, 7), sample_items(items, 10, 7));
    EXPECT_NE(sample_items(items, 10, 7), sample_items(items, 10, 8));
    std::vector<int> all = sample_items(items, items.size(), 3);
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, items);
    EXPECT_TRUE(sample_items(items, 0, 3).empty());
    EXPECT_THROW((void) sample_items(items, 38, 3), data_error);
}

TEST(Sample, DistinctDrawsRoughlyUniform) {
    std::vector<int> items{ 0, 1, 2, 3, 4 };
    std::array<int, 5> hits{};
    for (std::uint64_t seed = 0; seed < 5000; ++seed) {
        const auto s = sample_items(items, 2, seed);
        ASSERT_NE(s[0], s[1]);
        ++hits[static_cast<std::size_t>(s[0])];
        ++hits[static_cast<std::size_t>(s[1])];
    }
    for (const int h : hits) {
        EXPECT_NEAR(h, 2000, 200);
    }
}

TEST(Sample, GoldenSeed42FromFixtureCorpus) {
    const auto records = read_dataset(testkit::demo_dir() / "raw" / "twitter.csv");
    EXPECT_EQ(ids_of(sample_items(records, 10, 42)), (std::vector<std::string>{ "t0007", "t0033", "t0065", "t0010", "t0042", "t0029", "t0089", "t0073", "t0111", "t0053" }));
}

TEST(SampleExport, RoundTripsAndRejectsBadInput) {
    const std::vector<sample_item> items{ { "t1", source_kind::twitter, "quote \" and\nnewline" }, { "r9", source_kind::reddit, "caf\xc3\xa9" } };
    EXPECT_EQ(parse_sample_export(format_sample_export(items)), items);
    EXPECT_TRUE(parse_sample_export(format_sample_export({})).empty());
    EXPECT_THROW((void) parse_sample_export("{"), parse_error);
    EXPECT_THROW((void) parse_sample_export(R"({"items":[{"id":"a","source":"mastodon","text":""}]})"), parse_error);
    EXPECT_THROW((void) parse_sample_export(R"({"items":[{"id":1,"source":"twitter","text":""}]})"), parse_error);
}

TEST(Majority, Examples) {
    const majority_label strict = majority_vote(votes("a", 14, 4, 2));
    EXPECT_EQ(strict.label, pos);
    EXPECT_FALSE(strict.tied);
    EXPECT_EQ(strict.vote_counts.at(pos), 14U);

    EXPECT_EQ(majority_vote(votes("b", 1, 0, 0)).label, pos);

    const majority_label tie = majority_vote(votes("c", 5, 0, 5));
    EXPECT_EQ(tie.label, neu);
    EXPECT_TRUE(tie.tied);

    EXPECT_THROW((void) majority_vote({}), data_error);
}

TEST(MajorityProperty, InvariantUnderReordering) {
    std::mt19937_64 rng{ 41 };
    for (int i = 0; i < 1000; ++i) {
        auto v = votes("x", std::uniform_int_distribution<std::size_t>(0, 6)(rng), std::uniform_int_distribution<std::size_t>(0, 6)(rng),
                       std::uniform_int_distribution<std::size_t>(1, 6)(rng));
        const majority_label a = majority_vote(v);
        std::shuffle(v.begin(), v.end(), rng);
        const majority_label b = majority_vote(v);
        ASSERT_EQ(a.label, b.label);
        ASSERT_EQ(a.tied, b.tied);
        ASSERT_EQ(a.vote_counts, b.vote_counts);
        std::size_t best = 0;
        for (const auto &[l, c] : a.vote_counts) {
            best = std::max(best, c);
        }
        if (!a.tied) {
            ASSERT_EQ(a.vote_counts.at(a.label), best);
        }
    }
}

TEST(Annotations, ParseAndReject) {
    std::istringstream good{ "item_id,annotator_id,label\r\nt1,a1,pos\r\nt1,a2,neg\r\nt2,a1,neu\r\n" };
    const auto records = read_annotations(good);
    ASSERT_EQ(records.size(), 3U);
    EXPECT_EQ(records[1], (annotation_record{ "t1", "a2", neg }));
    std::ostringstream out;
    write_annotations(out, records);
    std::istringstream again{ out.str() };
    EXPECT_EQ(read_annotations(again), records);

    const auto fails_at = [](const std::string &body, std::size_t line) {
        std::istringstream in{ body };
        try {
            (void) read_annotations(in);
            ADD_FAILURE() << "accepted: " << body;
        } catch (const parse_error &e) {
            EXPECT_EQ(e.line(), line) << body;
        }
    };
    fails_at("item_id,annotator_id,label\nt1,a1,positive\n", 2);
    fails_at("item_id,annotator_id,label\nt1,a1,pos\nt1,a1,neg\n", 3);
    fails_at("item_id,annotator_id,label\nt1,a1\n", 2);
    fails_at("item,annotator,label\n", 1);
}

TEST(Confusion, Examples) {
    const std::map<std::string, polarity_label> same{ { "a", pos }, { "b", neg }, { "c", pos } };
    const confusion_matrix diag = confusion(same, same);
    EXPECT_EQ(diag.classes, (std::vector<polarity_label>{ neg, pos }));
    EXPECT_EQ(diag.counts, (std::vector<std::vector<std::size_t>>{ { 1, 0 }, { 0, 2 } }));

    std::map<std::string, polarity_label> truth;
    std::map<std::string, polarity_label> predicted;
    const std::vector<polarity_label> preds{ pos, pos, pos, pos, pos, pos, neg, neu, neu };
    for (std::size_t i = 0; i < preds.size(); ++i) {
        truth["p" + std::to_string(i)] = pos;
        predicted["p" + std::to_string(i)] = preds[i];
    }
    truth["u"] = neu;
    predicted["u"] = pos;
    const confusion_matrix m = confusion(truth, predicted);
    EXPECT_EQ(m.classes, (std::vector<polarity_label>{ neg, neu, pos }));
    EXPECT_EQ(m.at(pos, pos), 6U);
    EXPECT_EQ(m.at(pos, neu), 2U);
    EXPECT_EQ(m.at(pos, neg), 1U);
    EXPECT_EQ(m.at(neu, pos), 1U);
    EXPECT_EQ(m.counts, mixed_truth().counts);

    try {
        (void) confusion({ { "a", pos } }, { { "b", pos } });
        FAIL() << "expected data_error";
    } catch (const data_error &e) {
        EXPECT_NE(std::string(e.what()).find("a (no prediction)"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("b (no true label)"), std::string::npos);
    }
}

TEST(Metrics, MixedTruthScenario) {
    const evaluation_report r = metrics(mixed_truth());
    EXPECT_EQ(round2(r.of(pos).precision), 0.86);
    EXPECT_EQ(round2(r.of(pos).recall), 0.67);
    EXPECT_EQ(round2(r.of(pos).f1), 0.75);
    EXPECT_EQ(r.of(pos).support, 9U);
    EXPECT_EQ(r.of(neu).precision, 0.0);
    EXPECT_EQ(r.of(neg).f1, 0.0);
    EXPECT_EQ(round2(r.accuracy), 0.60);
    EXPECT_EQ(round2(r.macro_avg.precision), 0.29);
    EXPECT_EQ(round2(r.macro_avg.recall), 0.22);
    EXPECT_EQ(round2(r.macro_avg.f1), 0.25);
    EXPECT_EQ(round2(r.weighted_avg.precision), 0.77);
    EXPECT_EQ(round2(r.weighted_avg.recall), 0.60);
    EXPECT_EQ(round2(r.weighted_avg.f1), 0.68);
    EXPECT_EQ(r.total, 10U);
}

TEST(Metrics, AllPositiveTruthScenario) {
    const evaluation_report r = metrics(all_positive_truth());
    EXPECT_EQ(round2(r.of(pos).precision), 1.00);
    EXPECT_EQ(round2(r.of(pos).recall), 0.70);
    EXPECT_EQ(round2(r.of(pos).f1), 0.82);
    EXPECT_EQ(round2(r.accuracy), 0.70);
    EXPECT_EQ(round2(r.macro_avg.precision), 0.50);
    EXPECT_EQ(round2(r.macro_avg.recall), 0.35);
    EXPECT_EQ(round2(r.macro_avg.f1), 0.41);
    EXPECT_EQ(round2(r.weighted_avg.precision), 1.00);
    EXPECT_EQ(round2(r.weighted_avg.recall), 0.70);
    EXPECT_EQ(round2(r.weighted_avg.f1), 0.82);
}

TEST(Metrics, PerfectDiagonalAndEmpty) {
    const evaluation_report r = metrics(confusion_matrix::from_cells({ neg, neu, pos }, { { neg, neg, 3 }, { neu, neu, 1 }, { pos, pos, 5 } }));
    EXPECT_EQ(r.accuracy, 1.0);
    for (const class_metrics &c : r.per_class) {
        EXPECT_EQ(c.precision, 1.0);
        EXPECT_EQ(c.recall, 1.0);
        EXPECT_EQ(c.f1, 1.0);
    }
    EXPECT_EQ(r.macro_avg.f1, 1.0);
    EXPECT_EQ(r.weighted_avg.precision, 1.0);
    EXPECT_THROW((void) metrics(confusion_matrix::from_cells({ pos }, {})), data_error);
}

TEST(MetricsProperty, MatchesBruteForceOracle) {
    std::mt19937_64 rng{ 42 };
    for (int i = 0; i < 3000; ++i) {
        const int classes = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<polarity_label> pool(all_labels.begin(), all_labels.end());
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(classes));
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        std::vector<polarity_label> truth;
        std::vector<polarity_label> pred;
        std::map<std::string, polarity_label> truth_map;
        std::map<std::string, polarity_label> pred_map;
        for (std::size_t k = 0; k < n; ++k) {
            truth.push_back(testkit::pick(rng, pool));
            pred.push_back(testkit::pick(rng, pool));
            truth_map["i" + std::to_string(k)] = truth.back();
            pred_map["i" + std::to_string(k)] = pred.back();
        }
        const evaluation_report got = metrics(confusion(truth_map, pred_map));
        const testkit::oracle_report want = testkit::brute_force_metrics(truth, pred);
        ASSERT_EQ(got.per_class.size(), want.per_class.size());
        std::size_t supports = 0;
        for (const class_metrics &c : got.per_class) {
            const testkit::oracle_class &o = want.per_class.at(c.label);
            ASSERT_NEAR(c.precision, o.precision, 1e-12);
            ASSERT_NEAR(c.recall, o.recall, 1e-12);
            ASSERT_NEAR(c.f1, o.f1, 1e-12);
            ASSERT_EQ(c.support, o.support);
            supports += c.support;
            for (const double v : { c.precision, c.recall, c.f1 }) {
                ASSERT_GE(v, 0.0);
                ASSERT_LE(v, 1.0);
            }
            if (c.precision > 0 && c.recall > 0) {
                ASSERT_LE(std::min(c.precision, c.recall), c.f1 + 1e-12);
                ASSERT_LE(c.f1, std::max(c.precision, c.recall) + 1e-12);
            }
        }
        ASSERT_EQ(supports, n);
        ASSERT_NEAR(got.accuracy, want.accuracy, 1e-12);
        ASSERT_NEAR(got.macro_avg.precision, want.macro[0], 1e-12);
        ASSERT_NEAR(got.macro_avg.recall, want.macro[1], 1e-12);
        ASSERT_NEAR(got.macro_avg.f1, want.macro[2], 1e-12);
        ASSERT_NEAR(got.weighted_avg.precision, want.weighted[0], 1e-12);
        ASSERT_NEAR(got.weighted_avg.recall, want.weighted[1], 1e-12);
        ASSERT_NEAR(got.weighted_avg.f1, want.weighted[2], 1e-12);
        ASSERT_NEAR(got.weighted_avg.recall, got.accuracy, 1e-9);
    }
}

TEST(MetricsProperty, ClassRelabelingPermutesMetrics) {
    std::mt19937_64 rng{ 43 };
    for (int i = 0; i < 1000; ++i) {
        std::array<polarity_label, 3> perm{ neg, neu, pos };
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto relabel = [&](polarity_label l) { return perm[static_cast<std::size_t>(l)]; };
        std::map<std::string, polarity_label> t;
        std::map<std::string, polarity_label> p;
        std::map<std::string, polarity_label> t2;
        std::map<std::string, polarity_label> p2;
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        for (std::size_t k = 0; k < n; ++k) {
            const std::string id = std::to_string(k);
            t[id] = testkit::pick(rng, std::vector<polarity_label>(all_labels.begin(), all_labels.end()));
            p[id] = testkit::pick(rng, std::vector<polarity_label>(all_labels.begin(), all_labels.end()));
            t2[id] = relabel(t[id]);
            p2[id] = relabel(p[id]);
        }
        const evaluation_report a = metrics(confusion(t, p));
        const evaluation_report b = metrics(confusion(t2, p2));
        ASSERT_NEAR(a.accuracy, b.accuracy, 1e-12);
        ASSERT_NEAR(a.macro_avg.f1, b.macro_avg.f1, 1e-12);
        ASSERT_NEAR(a.weighted_avg.precision, b.weighted_avg.precision, 1e-12);
        for (const class_metrics &c : a.per_class) {
            const class_metrics &d = b.of(relabel(c.label));
            ASSERT_NEAR(c.precision, d.precision, 1e-12);
            ASSERT_NEAR(c.recall, d.recall, 1e-12);
            ASSERT_EQ(c.support, d.support);
        }
    }
}
