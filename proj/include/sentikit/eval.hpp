#pragma once

#include "sentikit/csv.hpp"
#include "sentikit/error.hpp"
#include "sentikit/io.hpp"
#include "sentikit/polarity.hpp"
#include "sentikit/record.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace sentikit {

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

namespace detail {

/// Uniform integer in [0, bound) from raw mt19937_64 output by rejection, so
/// the sequence does not depend on the standard library's distributions.
inline std::uint64_t bounded(std::mt19937_64 &rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) {
            return x % bound;
        }
    }
}

}  // namespace detail

/// `n` records drawn uniformly without replacement (partial Fisher-Yates on
/// a seeded mt19937_64). Identical for identical inputs and seed on every
/// platform.
template <typename T>
[[nodiscard]] std::vector<T> sample_items(const std::vector<T> &items, std::size_t n, std::uint64_t seed) {
    if (n > items.size()) {
        throw data_error("cannot sample " + std::to_string(n) + " items from " + std::to_string(items.size()));
    }
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::mt19937_64 rng{ seed };
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(detail::bounded(rng, order.size() - i));
        std::swap(order[i], order[j]);
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(items[order[i]]);
    }
    return out;
}

/// Item handed to human annotators.
struct sample_item {
    std::string id;
    source_kind source{ source_kind::twitter };
    std::string text;

    friend bool operator==(const sample_item &, const sample_item &) = default;
};

/// JSON export: {"items": [{"id", "source", "text"}, ...]}.
[[nodiscard]] inline std::string format_sample_export(const std::vector<sample_item> &items) {
    nlohmann::ordered_json doc;
    doc["items"] = nlohmann::ordered_json::array();
    for (const sample_item &item : items) {
        doc["items"].push_back({ { "id", item.id }, { "source", to_string(item.source) }, { "text", item.text } });
    }
    return doc.dump(2) + "\n";
}

[[nodiscard]] inline std::vector<sample_item> parse_sample_export(std::string_view content) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception &e) {
        throw parse_error(std::string("sample export is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_array()) {
        throw parse_error("sample export needs an \"items\" array");
    }
    std::vector<sample_item> items;
    std::size_t index = 0;
    for (const auto &entry : doc["items"]) {
        ++index;
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("source") || !entry.contains("text") || !entry["id"].is_string() ||
            !entry["source"].is_string() || !entry["text"].is_string()) {
            throw parse_error("sample item " + std::to_string(index) + " needs string fields id, source and text");
        }
        try {
            items.push_back({ entry["id"].get<std::string>(), parse_source(entry["source"].get<std::string>()), entry["text"].get<std::string>() });
        } catch (const data_error &e) {
            throw parse_error("sample item " + std::to_string(index) + ": " + e.what());
        }
    }
    return items;
}

// ---------------------------------------------------------------------------
// annotations and majority vote
// ---------------------------------------------------------------------------

struct annotation_record {
    std::string item_id;
    std::string annotator_id;
    polarity_label label{ polarity_label::neutral };

    friend bool operator==(const annotation_record &, const annotation_record &) = default;
};

/// Reads `item_id,annotator_id,label`. Rejects unknown labels, short rows,
/// and a second label from the same annotator for the same item.
[[nodiscard]] inline std::vector<annotation_record> read_annotations(std::istream &in) {
    csv::reader reader{ in };
    const auto header = reader.next();
    if (!header || *header != csv::row{ "item_id", "annotator_id", "label" }) {
        throw parse_error("annotation file must start with the header item_id,annotator_id,label", 1);
    }
    std::vector<annotation_record> out;
    std::set<std::pair<std::string, std::string>> seen;
    while (auto row = reader.next()) {
        const std::size_t row_no = reader.row_number();
        if (row->size() != 3) {
            throw parse_error("expected 3 fields, found " + std::to_string(row->size()), row_no);
        }
        if ((*row)[0].empty() || (*row)[1].empty()) {
            throw parse_error("item_id and annotator_id must not be empty", row_no);
        }
        annotation_record rec;
        rec.item_id = (*row)[0];
        rec.annotator_id = (*row)[1];
        try {
            rec.label = parse_label((*row)[2]);
        } catch (const data_error &e) {
            throw parse_error(e.what(), row_no);
        }
        if (!seen.emplace(rec.item_id, rec.annotator_id).second) {
            throw parse_error("annotator " + rec.annotator_id + " labelled item " + rec.item_id + " twice", row_no);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

[[nodiscard]] inline std::vector<annotation_record> read_annotations(const std::filesystem::path &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw io_error("cannot open annotation file: " + path.string());
    }
    try {
        return read_annotations(in);
    } catch (const parse_error &e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

inline void write_annotations(std::ostream &out, const std::vector<annotation_record> &records) {
    csv::write_row(out, { "item_id", "annotator_id", "label" });
    for (const annotation_record &r : records) {
        csv::write_row(out, { r.item_id, r.annotator_id, std::string(to_string(r.label)) });
    }
}

struct majority_label {
    std::string item_id;
    polarity_label label{ polarity_label::neutral };
    std::map<polarity_label, std::size_t> vote_counts;
    bool tied{ false };
};

/// Majority vote over the labels one item received. A shared maximum yields
/// neutral with `tied` set.
[[nodiscard]] inline majority_label majority_vote(const std::vector<annotation_record> &annotations) {
    if (annotations.empty()) {
        throw data_error("majority vote needs at least one annotation");
    }
    majority_label out;
    out.item_id = annotations.front().item_id;
    for (const polarity_label l : all_labels) {
        out.vote_counts[l] = 0;
    }
    for (const annotation_record &a : annotations) {
        if (a.item_id != out.item_id) {
            throw data_error("majority vote mixes items " + out.item_id + " and " + a.item_id);
        }
        ++out.vote_counts[a.label];
    }
    std::size_t best = 0;
    std::size_t holders = 0;
    for (const auto &[l, votes] : out.vote_counts) {
        if (votes > best) {
            best = votes;
            holders = 1;
            out.label = l;
        } else if (votes == best) {
            ++holders;
        }
    }
    if (holders > 1) {
        out.tied = true;
        out.label = polarity_label::neutral;
    }
    return out;
}

/// Groups annotations by item and votes on each.
[[nodiscard]] inline std::map<std::string, majority_label> majority_labels(const std::vector<annotation_record> &annotations) {
    std::map<std::string, std::vector<annotation_record>> by_item;
    for (const annotation_record &a : annotations) {
        by_item[a.item_id].push_back(a);
    }
    std::map<std::string, majority_label> out;
    for (const auto &[id, group] : by_item) {
        out.emplace(id, majority_vote(group));
    }
    return out;
}

// ---------------------------------------------------------------------------
// confusion matrix and metrics
// ---------------------------------------------------------------------------

/// Rows are true (human) labels, columns predicted (algorithm) labels.
struct confusion_matrix {
    std::vector<polarity_label> classes;  ///< ordered neg, neu, pos
    std::vector<std::vector<std::size_t>> counts;

    [[nodiscard]] std::size_t index_of(polarity_label l) const {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (classes[i] == l) {
                return i;
            }
        }
        throw data_error("label " + std::string(to_string(l)) + " is not a class of this matrix");
    }

    [[nodiscard]] std::size_t at(polarity_label truth, polarity_label predicted) const { return counts[index_of(truth)][index_of(predicted)]; }

    [[nodiscard]] std::size_t total() const noexcept {
        std::size_t t = 0;
        for (const auto &row : counts) {
            for (const std::size_t c : row) {
                t += c;
            }
        }
        return t;
    }

    /// Builds a matrix over exactly `classes` (sorted neg, neu, pos) from
    /// (truth, predicted, count) cells.
    [[nodiscard]] static confusion_matrix from_cells(std::vector<polarity_label> classes,
                                                     const std::vector<std::tuple<polarity_label, polarity_label, std::size_t>> &cells) {
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        confusion_matrix m{ classes, std::vector<std::vector<std::size_t>>(classes.size(), std::vector<std::size_t>(classes.size(), 0)) };
        for (const auto &[t, p, n] : cells) {
            m.counts[m.index_of(t)][m.index_of(p)] += n;
        }
        return m;
    }
};

/// counts[t][p] = number of items whose true label is t and predicted label
/// is p. Both maps must cover the same item ids.
[[nodiscard]] inline confusion_matrix confusion(const std::map<std::string, polarity_label> &truth, const std::map<std::string, polarity_label> &predicted) {
    std::vector<std::string> missing;
    for (const auto &[id, l] : truth) {
        if (predicted.find(id) == predicted.end()) {
            missing.push_back(id + " (no prediction)");
        }
    }
    for (const auto &[id, l] : predicted) {
        if (truth.find(id) == truth.end()) {
            missing.push_back(id + " (no true label)");
        }
    }
    if (!missing.empty()) {
        std::string msg = "label maps cover different items:";
        for (const std::string &m : missing) {
            msg += " " + m;
        }
        throw data_error(msg);
    }
    std::vector<polarity_label> present;
    std::vector<std::tuple<polarity_label, polarity_label, std::size_t>> cells;
    for (const auto &[id, t] : truth) {
        const polarity_label p = predicted.at(id);
        present.push_back(t);
        present.push_back(p);
        cells.emplace_back(t, p, 1);
    }
    return confusion_matrix::from_cells(std::move(present), cells);
}

struct class_metrics {
    polarity_label label{ polarity_label::neutral };
    double precision{ 0.0 };
    double recall{ 0.0 };
    double f1{ 0.0 };
    std::size_t support{ 0 };
};

struct averaged_metrics {
    double precision{ 0.0 };
    double recall{ 0.0 };
    double f1{ 0.0 };
};

struct evaluation_report {
    std::vector<class_metrics> per_class;  ///< in matrix class order
    double accuracy{ 0.0 };
    averaged_metrics macro_avg;
    averaged_metrics weighted_avg;
    std::size_t total{ 0 };

    [[nodiscard]] const class_metrics &of(polarity_label l) const {
        for (const class_metrics &c : per_class) {
            if (c.label == l) {
                return c;
            }
        }
        throw data_error("no metrics for label " + std::string(to_string(l)));
    }
};

namespace detail {

inline double safe_ratio(double num, double den) noexcept { return den == 0.0 ? 0.0 : num / den; }

}  // namespace detail

/// One-vs-rest precision, recall and F1 per class (0 when a denominator is
/// 0), accuracy = trace / total, macro = plain mean over the matrix classes,
/// weighted = support-weighted mean.
[[nodiscard]] inline evaluation_report metrics(const confusion_matrix &m) {
    const std::size_t total = m.total();
    if (total == 0) {
        throw data_error("cannot compute metrics of an empty confusion matrix");
    }
    const std::size_t k = m.classes.size();
    evaluation_report r;
    r.total = total;
    std::size_t trace = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t predicted = 0;
        std::size_t actual = 0;
        for (std::size_t o = 0; o < k; ++o) {
            predicted += m.counts[o][c];
            actual += m.counts[c][o];
        }
        const auto tp = static_cast<double>(m.counts[c][c]);
        trace += m.counts[c][c];
        class_metrics cm;
        cm.label = m.classes[c];
        cm.support = actual;
        cm.precision = detail::safe_ratio(tp, static_cast<double>(predicted));
        cm.recall = detail::safe_ratio(tp, static_cast<double>(actual));
        cm.f1 = detail::safe_ratio(2.0 * cm.precision * cm.recall, cm.precision + cm.recall);
        r.per_class.push_back(cm);
    }
    r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
    for (const class_metrics &cm : r.per_class) {
        r.macro_avg.precision += cm.precision / static_cast<double>(k);
        r.macro_avg.recall += cm.recall / static_cast<double>(k);
        r.macro_avg.f1 += cm.f1 / static_cast<double>(k);
        const double w = static_cast<double>(cm.support) / static_cast<double>(total);
        r.weighted_avg.precision += cm.precision * w;
        r.weighted_avg.recall += cm.recall * w;
        r.weighted_avg.f1 += cm.f1 * w;
    }
    return r;
}

}  // namespace sentikit
