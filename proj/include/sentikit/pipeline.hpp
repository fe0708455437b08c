#pragma once

// End-to-end orchestration behind the command-line tool: configuration,
// the two preprocessing profiles, parallel scoring and report writing.

#include "sentikit/dataset.hpp"
#include "sentikit/entities.hpp"
#include "sentikit/error.hpp"
#include "sentikit/eval.hpp"
#include "sentikit/http_adapter.hpp"
#include "sentikit/ingest.hpp"
#include "sentikit/io.hpp"
#include "sentikit/lexicon.hpp"
#include "sentikit/polarity.hpp"
#include "sentikit/preprocess.hpp"
#include "sentikit/report.hpp"
#include "sentikit/scorer.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace sentikit {

/// ro1 runs the cleaning pipeline before scoring; ro1_1 scores raw text and
/// only removes duplicates.
enum class profile { ro1, ro1_1 };

[[nodiscard]] constexpr std::string_view to_string(profile p) noexcept { return p == profile::ro1 ? "ro1" : "ro1.1"; }

[[nodiscard]] inline profile parse_profile(std::string_view s) {
    if (s == "ro1") {
        return profile::ro1;
    }
    if (s == "ro1.1") {
        return profile::ro1_1;
    }
    throw data_error("unknown profile '" + std::string(s) + "' (expected ro1 or ro1.1)");
}

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

using config_map = std::map<std::string, std::string>;

inline const std::set<std::string, std::less<>> &known_config_keys() {
    static const std::set<std::string, std::less<>> keys{
        "dataset_dir", "raw_dir",    "http_base_url", "lexicon",     "negations",       "boosters",          "dampeners",
        "stopwords",   "entity_stoplist", "profile",  "preprocess_steps", "scheme",     "source",            "top_k",
        "sample_n",    "seed",       "window_start",  "window_end",  "twitter_sections", "reddit_sections",  "out_dir",
        "workers",     "min_entity_length", "eval_scheme", "sample_file", "annotations",
    };
    return keys;
}

/// Keys that do not influence report contents and are left out of the
/// provenance hash.
inline bool is_volatile_key(std::string_view key) { return key == "out_dir" || key == "workers"; }

/// Parses `key = value` lines; '#' starts a comment line.
[[nodiscard]] inline config_map parse_config(std::istream &in) {
    config_map out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = text::trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        const std::size_t eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error("expected key = value", line_no);
        }
        const std::string key(text::trim(view.substr(0, eq)));
        if (known_config_keys().count(key) == 0) {
            throw parse_error("unknown config key '" + key + "'", line_no);
        }
        out[key] = std::string(text::trim(view.substr(eq + 1)));
    }
    return out;
}

[[nodiscard]] inline std::string config_fingerprint(const config_map &cfg) {
    std::string canonical;
    for (const auto &[k, v] : cfg) {
        if (!is_volatile_key(k)) {
            canonical += k + "=" + v + "\n";
        }
    }
    return io::hex64(io::fnv1a(canonical));
}

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string_view item = text::trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) {
            out.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline std::uint64_t parse_unsigned(const std::string &key, const std::string &value) {
    std::int64_t v = 0;
    if (!parse_int64(value, v) || v < 0) {
        throw data_error("config key " + key + " needs a non-negative integer, got '" + value + "'");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace detail

/// Epoch seconds from an integer, "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM:SSZ" (UTC).
[[nodiscard]] inline std::int64_t parse_timestamp(std::string_view s) {
    std::int64_t epoch = 0;
    if (detail::parse_int64(s, epoch)) {
        return epoch;
    }
    int y = 0;
    unsigned mo = 0;
    unsigned d = 0;
    int hh = 0;
    int mm = 0;
    int ss = 0;
    const std::string str(s);
    char tail = 0;
    bool ok = false;
    if (str.size() == 10) {
        ok = std::sscanf(str.c_str(), "%4d-%2u-%2u%c", &y, &mo, &d, &tail) == 3;
    } else if (str.size() == 20) {
        ok = std::sscanf(str.c_str(), "%4d-%2u-%2uT%2d:%2d:%2d%c", &y, &mo, &d, &hh, &mm, &ss, &tail) == 7 && tail == 'Z';
    }
    using namespace std::chrono;
    const year_month_day ymd{ year{ y }, month{ mo }, day{ d } };
    if (!ok || !ymd.ok() || hh > 23 || mm > 59 || ss > 60) {
        throw data_error("malformed timestamp '" + str + "' (use epoch seconds, YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ)");
    }
    const auto days = sys_days{ ymd }.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + hh * 3600 + mm * 60 + ss;
}

struct run_config {
    std::filesystem::path dataset_dir;
    std::filesystem::path raw_dir;
    std::string http_base_url;
    std::filesystem::path lexicon_path;
    std::filesystem::path negations_path;
    std::filesystem::path boosters_path;
    std::filesystem::path dampeners_path;
    std::filesystem::path stopwords_path;
    std::filesystem::path entity_stoplist_path;
    std::vector<profile> profiles{ profile::ro1, profile::ro1_1 };
    std::vector<preprocess_step> preprocess_steps{ all_preprocess_steps.begin(), all_preprocess_steps.end() };
    std::vector<scheme_name> schemes{ all_schemes.begin(), all_schemes.end() };
    std::vector<source_kind> sources{ source_kind::twitter, source_kind::reddit };
    std::size_t top_k{ 10 };
    std::size_t sample_n{ 10 };
    std::uint64_t seed{ 42 };
    collection_window window{ std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max() };
    std::vector<std::string> twitter_sections;
    std::vector<std::string> reddit_sections;
    std::filesystem::path out_dir{ "out" };
    unsigned workers{ 1 };
    std::size_t min_entity_length{ 3 };
    scheme_name eval_scheme{ scheme_name::base };
    std::filesystem::path sample_file;
    std::vector<std::filesystem::path> annotations;
    std::string fingerprint;

    [[nodiscard]] const std::vector<std::string> &sections(source_kind s) const { return s == source_kind::twitter ? twitter_sections : reddit_sections; }
};

/// Builds a run_config from merged config values. Relative paths resolve
/// against `base_dir`; unset asset paths fall back to files in `data_dir`.
[[nodiscard]] inline run_config make_run_config(const config_map &values, const std::filesystem::path &base_dir, const std::filesystem::path &data_dir) {
    run_config cfg;
    cfg.fingerprint = config_fingerprint(values);
    const auto get = [&](const std::string &key) -> const std::string * {
        const auto it = values.find(key);
        return it == values.end() || it->second.empty() ? nullptr : &it->second;
    };
    const auto path_or = [&](const std::string &key, const std::filesystem::path &fallback) {
        const std::string *v = get(key);
        if (v == nullptr) {
            return fallback;
        }
        const std::filesystem::path p{ *v };
        return p.is_absolute() ? p : base_dir / p;
    };

    cfg.dataset_dir = path_or("dataset_dir", base_dir);
    cfg.raw_dir = path_or("raw_dir", base_dir);
    if (const std::string *v = get("http_base_url")) {
        cfg.http_base_url = *v;
    }
    cfg.lexicon_path = path_or("lexicon", data_dir / "lexicon.tsv");
    cfg.negations_path = path_or("negations", data_dir / "negations.txt");
    cfg.boosters_path = path_or("boosters", data_dir / "boosters.txt");
    cfg.dampeners_path = path_or("dampeners", data_dir / "dampeners.txt");
    cfg.stopwords_path = path_or("stopwords", data_dir / "stopwords.txt");
    cfg.entity_stoplist_path = path_or("entity_stoplist", cfg.stopwords_path);
    cfg.out_dir = path_or("out_dir", base_dir / "out");

    if (const std::string *v = get("profile")) {
        cfg.profiles.clear();
        if (*v == "both") {
            cfg.profiles = { profile::ro1, profile::ro1_1 };
        } else {
            for (const std::string &p : detail::split_list(*v)) {
                cfg.profiles.push_back(parse_profile(p));
            }
        }
    }
    if (const std::string *v = get("preprocess_steps")) {
        cfg.preprocess_steps.clear();
        if (*v != "none") {
            for (const std::string &s : detail::split_list(*v)) {
                cfg.preprocess_steps.push_back(parse_preprocess_step(s));
            }
        }
    }
    if (const std::string *v = get("scheme")) {
        cfg.schemes.clear();
        if (*v == "all") {
            cfg.schemes.assign(all_schemes.begin(), all_schemes.end());
        } else {
            for (const std::string &s : detail::split_list(*v)) {
                cfg.schemes.push_back(parse_scheme(s));
            }
        }
    }
    if (const std::string *v = get("source")) {
        cfg.sources.clear();
        if (*v == "all") {
            cfg.sources = { source_kind::twitter, source_kind::reddit };
        } else {
            for (const std::string &s : detail::split_list(*v)) {
                cfg.sources.push_back(parse_source(s));
            }
        }
    }
    if (const std::string *v = get("top_k")) {
        cfg.top_k = detail::parse_unsigned("top_k", *v);
    }
    if (const std::string *v = get("sample_n")) {
        cfg.sample_n = detail::parse_unsigned("sample_n", *v);
    }
    if (const std::string *v = get("seed")) {
        cfg.seed = detail::parse_unsigned("seed", *v);
    }
    if (const std::string *v = get("workers")) {
        cfg.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, detail::parse_unsigned("workers", *v)));
    }
    if (const std::string *v = get("min_entity_length")) {
        cfg.min_entity_length = detail::parse_unsigned("min_entity_length", *v);
    }
    if (const std::string *v = get("window_start")) {
        cfg.window.start = parse_timestamp(*v);
    }
    if (const std::string *v = get("window_end")) {
        cfg.window.end = parse_timestamp(*v);
    }
    if (const std::string *v = get("twitter_sections")) {
        cfg.twitter_sections = detail::split_list(*v);
    }
    if (const std::string *v = get("reddit_sections")) {
        cfg.reddit_sections = detail::split_list(*v);
    }
    if (const std::string *v = get("eval_scheme")) {
        cfg.eval_scheme = parse_scheme(*v);
    }
    cfg.sample_file = path_or("sample_file", cfg.out_dir / "sample.json");
    if (const std::string *v = get("annotations")) {
        for (const std::string &p : detail::split_list(*v)) {
            const std::filesystem::path path{ p };
            cfg.annotations.push_back(path.is_absolute() ? path : base_dir / path);
        }
    }

    if (cfg.top_k < 1) {
        throw data_error("top_k must be at least 1");
    }
    if (cfg.sample_n < 1) {
        throw data_error("sample_n must be at least 1");
    }
    if (cfg.sources.empty() || cfg.schemes.empty() || cfg.profiles.empty()) {
        throw data_error("source, scheme and profile must each name at least one value");
    }
    cfg.window.validate();
    return cfg;
}

// ---------------------------------------------------------------------------
// assets and scoring
// ---------------------------------------------------------------------------

struct pipeline_assets {
    std::shared_ptr<const analyzer> scorer;
    preprocess_config cleaning;
    word_set entity_stoplist;
    std::string lexicon_fingerprint;
};

/// Loads the lexicon and word lists named by `cfg`. A missing file is an
/// io_error naming the path.
[[nodiscard]] inline pipeline_assets load_assets(const run_config &cfg) {
    pipeline_assets assets;
    const std::string lexicon_bytes = io::read_file(cfg.lexicon_path);
    assets.lexicon_fingerprint = io::hex64(io::fnv1a(lexicon_bytes));
    modifier_words mods{ load_word_list(cfg.negations_path), load_word_list(cfg.boosters_path), load_word_list(cfg.dampeners_path) };
    assets.scorer = std::make_shared<const analyzer>(load_lexicon(cfg.lexicon_path), heuristic_config{}, std::move(mods));
    word_set stopwords = load_word_list(cfg.stopwords_path);
    assets.cleaning = preprocess_config{ cfg.preprocess_steps, std::move(stopwords) };
    assets.cleaning.validate();
    assets.entity_stoplist = load_word_list(cfg.entity_stoplist_path);
    return assets;
}

/// Compound scores for `texts`, computed on up to `workers` threads. Each
/// result lands at its input index, so the output never depends on the
/// worker count.
[[nodiscard]] inline std::vector<double> score_compounds(const analyzer &scorer, const std::vector<std::string> &texts, unsigned workers) {
    std::vector<double> out(texts.size(), 0.0);
    const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, texts.size()));
    if (n_workers == 1) {
        for (std::size_t i = 0; i < texts.size(); ++i) {
            out[i] = scorer.score(texts[i]).compound;
        }
        return out;
    }
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t i = w; i < texts.size(); i += n_workers) {
                out[i] = scorer.score(texts[i]).compound;
            }
        });
    }
    for (std::thread &t : threads) {
        t.join();
    }
    return out;
}

/// Text that reaches the scorer under `p`.
[[nodiscard]] inline std::string prepare_text(std::string_view raw, profile p, const preprocess_config &cleaning) {
    return p == profile::ro1 ? preprocess_text(raw, cleaning) : std::string(raw);
}

struct profile_analysis {
    profile which{ profile::ro1 };
    std::vector<distribution> rows;  ///< source-major, then scheme
    std::map<source_kind, std::size_t> input_counts;
    std::map<source_kind, std::size_t> scored_counts;
};

/// Deduplicates, prepares and scores every record, then tallies labels per
/// source and scheme.
[[nodiscard]] inline profile_analysis analyze_records(const std::map<source_kind, std::vector<content_record>> &by_source, const pipeline_assets &assets,
                                                      profile p, const std::vector<scheme_name> &schemes, unsigned workers) {
    profile_analysis out;
    out.which = p;
    for (const auto &[source, records] : by_source) {
        const std::vector<content_record> unique = dedup(records);
        std::vector<std::string> texts;
        texts.reserve(unique.size());
        for (const content_record &r : unique) {
            texts.push_back(prepare_text(r.text, p, assets.cleaning));
        }
        const std::vector<double> compounds = score_compounds(*assets.scorer, texts, workers);
        out.input_counts[source] = records.size();
        out.scored_counts[source] = unique.size();
        for (const scheme_name s : schemes) {
            distribution d;
            d.source = source;
            d.scheme = s;
            d.observations = compounds.size();
            for (const double c : compounds) {
                ++d.counts[static_cast<std::size_t>(label(c, classification_scheme::named(s)))];
            }
            out.rows.push_back(d);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

/// Runs `fn`, prefixing any library error with the stage name while keeping
/// its category.
template <typename Fn>
decltype(auto) run_stage(std::string_view stage, Fn &&fn) {
    const std::string prefix = std::string(stage) + ": ";
    try {
        return fn();
    } catch (const parse_error &e) {
        throw parse_error(prefix + e.what());
    } catch (const data_error &e) {
        throw data_error(prefix + e.what());
    } catch (const io_error &e) {
        throw io_error(prefix + e.what());
    }
}

[[nodiscard]] inline std::filesystem::path dataset_file(const std::filesystem::path &dir, source_kind s) {
    return dir / (std::string(to_string(s)) + ".csv");
}

[[nodiscard]] inline std::map<source_kind, std::vector<content_record>> load_datasets(const run_config &cfg) {
    std::map<source_kind, std::vector<content_record>> out;
    for (const source_kind s : cfg.sources) {
        out[s] = read_dataset(dataset_file(cfg.dataset_dir, s));
    }
    return out;
}

struct ingest_summary {
    std::map<source_kind, std::size_t> fetched;
    std::map<source_kind, std::size_t> kept;
    std::map<source_kind, std::size_t> excluded;
    std::vector<rejection> rejected;
    std::vector<std::string> warnings;
    std::filesystem::path output_dir;
};

/// Collects every configured source, filters it, and only then writes
/// `<out_dir>/dataset/<source>.csv`; a fatal fetch error leaves no files.
inline ingest_summary run_ingest(const run_config &cfg) {
    return run_stage("ingest", [&] {
        ingest_summary summary;
        summary.output_dir = cfg.out_dir / "dataset";
        std::map<source_kind, std::vector<content_record>> kept;
        for (const source_kind s : cfg.sources) {
            std::unique_ptr<source_adapter> adapter;
            if (cfg.http_base_url.empty()) {
                adapter = std::make_unique<file_adapter>(cfg.raw_dir, s);
            } else {
                adapter = std::make_unique<http_adapter>(cfg.http_base_url, s);
            }
            fetch_result fetched = fetch(*adapter, cfg.sections(s), cfg.window);
            if (fetched.truncated) {
                summary.warnings.push_back(std::string(to_string(s)) + ": collection truncated");
            }
            summary.warnings.insert(summary.warnings.end(), fetched.warnings.begin(), fetched.warnings.end());
            summary.fetched[s] = fetched.records.size();
            filter_result filtered = filter_records(fetched.records, cfg.window);
            summary.kept[s] = filtered.kept.size();
            summary.excluded[s] = filtered.excluded;
            summary.rejected.insert(summary.rejected.end(), filtered.rejected.begin(), filtered.rejected.end());
            kept[s] = std::move(filtered.kept);
        }
        for (const auto &[s, records] : kept) {
            write_dataset(records, dataset_file(summary.output_dir, s));
        }
        std::string log;
        for (const source_kind s : cfg.sources) {
            log += std::string(to_string(s)) + ": fetched " + std::to_string(summary.fetched[s]) + ", kept " + std::to_string(summary.kept[s]) +
                   ", excluded " + std::to_string(summary.excluded[s]) + "\n";
        }
        for (const rejection &r : summary.rejected) {
            log += "rejected " + r.id + ": " + r.reason + "\n";
        }
        for (const std::string &w : summary.warnings) {
            log += "warning: " + w + "\n";
        }
        io::write_file_atomic(summary.output_dir / "ingest_log.txt", log);
        return summary;
    });
}

[[nodiscard]] inline provenance base_provenance(const run_config &cfg, const pipeline_assets &assets) {
    return { { "config", cfg.fingerprint }, { "lexicon", assets.lexicon_fingerprint + " (" + std::to_string(assets.scorer->lexicon_ref().size()) + " entries)" } };
}

[[nodiscard]] inline std::string describe_steps(const std::vector<preprocess_step> &steps) {
    if (steps.empty()) {
        return "none";
    }
    std::string out;
    for (const preprocess_step s : all_preprocess_steps) {
        if (std::find(steps.begin(), steps.end(), s) != steps.end()) {
            out += (out.empty() ? "" : ",") + std::string(to_string(s));
        }
    }
    return out;
}

struct analyze_output {
    std::vector<profile_analysis> profiles;
    std::vector<std::filesystem::path> files;
};

/// Writes distribution_<profile>.txt and .json into the output directory for
/// every configured profile.
inline analyze_output run_analyze(const run_config &cfg) {
    return run_stage("analyze", [&] {
        const pipeline_assets assets = load_assets(cfg);
        const auto datasets = load_datasets(cfg);
        analyze_output out;
        for (const profile p : cfg.profiles) {
            profile_analysis analysis = analyze_records(datasets, assets, p, cfg.schemes, cfg.workers);
            provenance prov = base_provenance(cfg, assets);
            prov.emplace_back("profile", std::string(to_string(p)));
            prov.emplace_back("preprocessing", p == profile::ro1 ? describe_steps(cfg.preprocess_steps) : "duplicates removed only");
            const bool lowered = p == profile::ro1 && assets.cleaning.enabled(preprocess_step::lowercase);
            prov.emplace_back("caps emphasis", lowered ? "off (text is lowercased before scoring)" : "on");
            std::string counts;
            for (const auto &[s, n] : analysis.input_counts) {
                counts += (counts.empty() ? "" : " ") + std::string(to_string(s)) + "=" + std::to_string(n) + " (scored " +
                          std::to_string(analysis.scored_counts[s]) + ")";
            }
            prov.emplace_back("records", counts);

            const std::string stem = "distribution_" + std::string(to_string(p));
            const std::string txt = format_provenance("polarity distribution", prov) + "\n" + format_distribution_table(analysis.rows);
            nlohmann::ordered_json j;
            nlohmann::ordered_json pj;
            for (const auto &[k, v] : prov) {
                pj[k] = v;
            }
            j["provenance"] = pj;
            j["distributions"] = distribution_json(analysis.rows);
            io::write_file_atomic(cfg.out_dir / (stem + ".txt"), txt);
            io::write_file_atomic(cfg.out_dir / (stem + ".json"), j.dump(2) + "\n");
            out.files.push_back(cfg.out_dir / (stem + ".txt"));
            out.files.push_back(cfg.out_dir / (stem + ".json"));
            out.profiles.push_back(std::move(analysis));
        }
        return out;
    });
}

/// Writes entities_<source>.csv (term,count,rank) and a bar chart per source.
inline std::map<source_kind, std::vector<entity_count>> run_entities(const run_config &cfg) {
    return run_stage("entities", [&] {
        const word_set stoplist = load_word_list(cfg.entity_stoplist_path);
        const auto datasets = load_datasets(cfg);
        std::map<source_kind, std::vector<entity_count>> out;
        for (const auto &[s, records] : datasets) {
            std::vector<entity_count> top = top_entities(records, stoplist, cfg.top_k, entity_options{ cfg.min_entity_length });
            const std::string stem = "entities_" + std::string(to_string(s));
            io::write_file_atomic(cfg.out_dir / (stem + ".csv"), format_entities_csv(top));
            io::write_file_atomic(cfg.out_dir / (stem + ".txt"),
                                  "# most mentioned terms: " + std::string(to_string(s)) + " (" + std::to_string(records.size()) + " records)\n" +
                                      format_entities_chart(top));
            out[s] = std::move(top);
        }
        return out;
    });
}

/// Draws sample_n deduplicated records per source (seeded) and writes the
/// annotation export to the configured sample file.
inline std::vector<sample_item> run_sample(const run_config &cfg) {
    return run_stage("sample", [&] {
        const auto datasets = load_datasets(cfg);
        std::vector<sample_item> items;
        for (const auto &[s, records] : datasets) {
            const std::vector<content_record> unique = dedup(records);
            for (const content_record &r : sample_items(unique, cfg.sample_n, cfg.seed)) {
                items.push_back({ r.id, r.source, r.text });
            }
        }
        io::write_file_atomic(cfg.sample_file, format_sample_export(items));
        return items;
    });
}

/// Annotation CSV files named directly or found (sorted) inside directories.
[[nodiscard]] inline std::vector<std::filesystem::path> expand_annotation_paths(const std::vector<std::filesystem::path> &paths) {
    std::vector<std::filesystem::path> out;
    for (const std::filesystem::path &p : paths) {
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> found;
            for (const auto &entry : std::filesystem::directory_iterator(p)) {
                if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                    found.push_back(entry.path());
                }
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

struct source_evaluation {
    std::string scope;  ///< "twitter", "reddit" or "all"
    confusion_matrix matrix;
    evaluation_report report;
};

struct evaluate_output {
    std::vector<source_evaluation> evaluations;
    std::map<std::string, majority_label> majorities;
    std::vector<std::string> tied_items;
};

/// Majority-votes the annotation files, scores the sampled items with the
/// first configured profile and eval scheme, and writes evaluation.txt/.json.
inline evaluate_output run_evaluate(const run_config &cfg) {
    return run_stage("evaluate", [&] {
        const pipeline_assets assets = load_assets(cfg);
        const std::vector<sample_item> items = parse_sample_export(io::read_file(cfg.sample_file));
        if (items.empty()) {
            throw data_error("sample file has no items: " + cfg.sample_file.string());
        }
        const std::vector<std::filesystem::path> files = expand_annotation_paths(cfg.annotations);
        if (files.empty()) {
            throw data_error("no annotation files given");
        }
        std::vector<annotation_record> annotations;
        std::set<std::pair<std::string, std::string>> seen;
        for (const std::filesystem::path &f : files) {
            for (annotation_record &a : read_annotations(f)) {
                if (!seen.emplace(a.item_id, a.annotator_id).second) {
                    throw data_error(f.string() + ": annotator " + a.annotator_id + " labelled item " + a.item_id + " more than once");
                }
                annotations.push_back(std::move(a));
            }
        }

        std::map<std::string, const sample_item *> by_id;
        for (const sample_item &item : items) {
            by_id[item.id] = &item;
        }
        for (const annotation_record &a : annotations) {
            if (by_id.find(a.item_id) == by_id.end()) {
                throw data_error("annotation for unknown item " + a.item_id);
            }
        }

        evaluate_output out;
        out.majorities = majority_labels(annotations);
        const profile p = cfg.profiles.front();
        const classification_scheme scheme = classification_scheme::named(cfg.eval_scheme);

        std::map<std::string, std::map<std::string, polarity_label>> truth;
        std::map<std::string, std::map<std::string, polarity_label>> predicted;
        for (const sample_item &item : items) {
            const auto m = out.majorities.find(item.id);
            if (m == out.majorities.end()) {
                throw data_error("sampled item " + item.id + " has no annotations");
            }
            if (m->second.tied) {
                out.tied_items.push_back(item.id);
            }
            const polarity_label algo = label(assets.scorer->score(prepare_text(item.text, p, assets.cleaning)).compound, scheme);
            for (const std::string &scope : { std::string(to_string(item.source)), std::string("all") }) {
                truth[scope][item.id] = m->second.label;
                predicted[scope][item.id] = algo;
            }
        }

        provenance prov = base_provenance(cfg, assets);
        prov.emplace_back("profile", std::string(to_string(p)));
        prov.emplace_back("scheme", std::string(to_string(cfg.eval_scheme)));
        prov.emplace_back("annotation files", std::to_string(files.size()));
        prov.emplace_back("annotations", std::to_string(annotations.size()));
        std::string tied = "none";
        if (!out.tied_items.empty()) {
            tied.clear();
            for (const std::string &id : out.tied_items) {
                tied += (tied.empty() ? "" : " ") + id;
            }
        }
        prov.emplace_back("tied items (labelled neu)", tied);

        std::string txt = format_provenance("evaluation against majority human labels", prov);
        nlohmann::ordered_json j;
        nlohmann::ordered_json pj;
        for (const auto &[k, v] : prov) {
            pj[k] = v;
        }
        j["provenance"] = pj;
        for (const char *scope_name : { "twitter", "reddit", "all" }) {
            const std::string scope{ scope_name };
            if (truth.find(scope) == truth.end()) {
                continue;
            }
            source_evaluation ev{ scope, confusion(truth[scope], predicted[scope]), {} };
            ev.report = metrics(ev.matrix);
            txt += "\n== " + scope + " ==\n" + format_evaluation_table(ev.report) + "\nconfusion (rows human, columns algorithm)\n" +
                   format_confusion_table(ev.matrix);
            j["evaluations"][scope] = evaluation_json(ev.report, ev.matrix);
            out.evaluations.push_back(std::move(ev));
        }
        nlohmann::ordered_json votes;
        for (const auto &[id, m] : out.majorities) {
            votes[id] = { { "label", to_string(m.label) },
                          { "tied", m.tied },
                          { "votes",
                            { { "pos", m.vote_counts.at(polarity_label::positive) },
                              { "neu", m.vote_counts.at(polarity_label::neutral) },
                              { "neg", m.vote_counts.at(polarity_label::negative) } } } };
        }
        j["majority"] = votes;
        io::write_file_atomic(cfg.out_dir / "evaluation.txt", txt);
        io::write_file_atomic(cfg.out_dir / "evaluation.json", j.dump(2) + "\n");
        return out;
    });
}

/// ingest -> analyze -> entities -> sample, with the freshly ingested
/// dataset feeding the later stages.
inline void run_report(const run_config &cfg) {
    const ingest_summary ingested = run_ingest(cfg);
    run_config next = cfg;
    next.dataset_dir = ingested.output_dir;
    (void) run_analyze(next);
    (void) run_entities(next);
    (void) run_sample(next);
}

}  // namespace sentikit
