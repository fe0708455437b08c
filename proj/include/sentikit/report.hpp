#pragma once

#include "sentikit/entities.hpp"
#include "sentikit/eval.hpp"
#include "sentikit/polarity.hpp"
#include "sentikit/record.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sentikit {

/// Label counts for one source under one scheme.
struct distribution {
    source_kind source{ source_kind::twitter };
    scheme_name scheme{ scheme_name::base };
    std::size_t observations{ 0 };
    std::array<std::size_t, 3> counts{};  ///< indexed by polarity_label

    [[nodiscard]] std::size_t count(polarity_label l) const { return counts[static_cast<std::size_t>(l)]; }

    /// Exact percentage; 0 when there are no observations.
    [[nodiscard]] double percent(polarity_label l) const {
        return observations == 0 ? 0.0 : 100.0 * static_cast<double>(count(l)) / static_cast<double>(observations);
    }
};

/// Header lines ("# key: value") written above every report.
using provenance = std::vector<std::pair<std::string, std::string>>;

[[nodiscard]] inline std::string format_provenance(const std::string &title, const provenance &prov) {
    std::string out = "# " + title + "\n";
    for (const auto &[k, v] : prov) {
        out += "# " + k + ": " + v + "\n";
    }
    return out;
}

/// Distribution table, percentages at one decimal.
[[nodiscard]] inline std::string format_distribution_table(const std::vector<distribution> &rows) {
    std::string out = fmt::format("{:<8} {:<9} {:>6} {:>6} {:>6} {:>6}\n", "source", "scheme", "obs", "pos%", "neu%", "neg%");
    for (const distribution &d : rows) {
        if (d.observations == 0) {
            out += fmt::format("{:<8} {:<9} {:>6} {:>6} {:>6} {:>6}  (no observations)\n", to_string(d.source), to_string(d.scheme), 0, "-", "-", "-");
            continue;
        }
        out += fmt::format("{:<8} {:<9} {:>6} {:>6.1f} {:>6.1f} {:>6.1f}\n", to_string(d.source), to_string(d.scheme), d.observations,
                           d.percent(polarity_label::positive), d.percent(polarity_label::neutral), d.percent(polarity_label::negative));
    }
    return out;
}

[[nodiscard]] inline nlohmann::ordered_json distribution_json(const std::vector<distribution> &rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const distribution &d : rows) {
        nlohmann::ordered_json row;
        row["source"] = to_string(d.source);
        row["scheme"] = to_string(d.scheme);
        row["observations"] = d.observations;
        row["counts"] = { { "pos", d.count(polarity_label::positive) }, { "neu", d.count(polarity_label::neutral) }, { "neg", d.count(polarity_label::negative) } };
        if (d.observations == 0) {
            row["percent"] = nullptr;
        } else {
            row["percent"] = { { "pos", std::stod(fmt::format("{:.1f}", d.percent(polarity_label::positive))) },
                               { "neu", std::stod(fmt::format("{:.1f}", d.percent(polarity_label::neutral))) },
                               { "neg", std::stod(fmt::format("{:.1f}", d.percent(polarity_label::negative))) } };
        }
        arr.push_back(std::move(row));
    }
    return arr;
}

/// Classification report table: per-class rows, accuracy, macro and
/// weighted averages, two decimals.
[[nodiscard]] inline std::string format_evaluation_table(const evaluation_report &r) {
    std::string out = fmt::format("{:<14}{:>10}{:>8}{:>10}{:>9}\n", "", "precision", "recall", "f1-score", "support");
    for (const class_metrics &c : r.per_class) {
        out += fmt::format("{:<14}{:>10.2f}{:>8.2f}{:>10.2f}{:>9}\n", to_string(c.label), c.precision, c.recall, c.f1, c.support);
    }
    out += "\n";
    out += fmt::format("{:<14}{:>10}{:>8}{:>10.2f}{:>9}\n", "accuracy", "", "", r.accuracy, r.total);
    out += fmt::format("{:<14}{:>10.2f}{:>8.2f}{:>10.2f}{:>9}\n", "macro avg", r.macro_avg.precision, r.macro_avg.recall, r.macro_avg.f1, r.total);
    out += fmt::format("{:<14}{:>10.2f}{:>8.2f}{:>10.2f}{:>9}\n", "weighted avg", r.weighted_avg.precision, r.weighted_avg.recall, r.weighted_avg.f1,
                       r.total);
    return out;
}

[[nodiscard]] inline std::string format_confusion_table(const confusion_matrix &m) {
    std::string out = fmt::format("{:<14}", "true \\ pred");
    for (const polarity_label l : m.classes) {
        out += fmt::format("{:>6}", to_string(l));
    }
    out += "\n";
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        out += fmt::format("{:<14}", to_string(m.classes[i]));
        for (const std::size_t c : m.counts[i]) {
            out += fmt::format("{:>6}", c);
        }
        out += "\n";
    }
    return out;
}

[[nodiscard]] inline nlohmann::ordered_json evaluation_json(const evaluation_report &r, const confusion_matrix &m) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json classes = nlohmann::ordered_json::array();
    for (const polarity_label l : m.classes) {
        classes.push_back(to_string(l));
    }
    j["classes"] = classes;
    j["confusion"] = m.counts;
    nlohmann::ordered_json per_class;
    for (const class_metrics &c : r.per_class) {
        per_class[std::string(to_string(c.label))] = { { "precision", c.precision }, { "recall", c.recall }, { "f1", c.f1 }, { "support", c.support } };
    }
    j["per_class"] = per_class;
    j["accuracy"] = r.accuracy;
    j["macro_avg"] = { { "precision", r.macro_avg.precision }, { "recall", r.macro_avg.recall }, { "f1", r.macro_avg.f1 } };
    j["weighted_avg"] = { { "precision", r.weighted_avg.precision }, { "recall", r.weighted_avg.recall }, { "f1", r.weighted_avg.f1 } };
    j["total"] = r.total;
    return j;
}

[[nodiscard]] inline std::string format_entities_csv(const std::vector<entity_count> &entities) {
    std::ostringstream out;
    csv::write_row(out, { "term", "count", "rank" });
    for (const entity_count &e : entities) {
        csv::write_row(out, { e.term, std::to_string(e.count), std::to_string(e.rank) });
    }
    return out.str();
}

/// Horizontal bar chart scaled so the top term gets `width` marks.
[[nodiscard]] inline std::string format_entities_chart(const std::vector<entity_count> &entities, std::size_t width = 40) {
    if (entities.empty()) {
        return "(no entities)\n";
    }
    std::size_t term_width = 4;
    for (const entity_count &e : entities) {
        term_width = std::max(term_width, e.term.size());
    }
    const std::size_t top = entities.front().count;
    std::string out;
    for (const entity_count &e : entities) {
        const std::size_t bar = std::max<std::size_t>(1, (e.count * width + top / 2) / top);
        out += fmt::format("{:>2}. {:<{}} {} {}\n", e.rank, e.term, term_width, std::string(bar, '#'), e.count);
    }
    return out;
}

}  // namespace sentikit
