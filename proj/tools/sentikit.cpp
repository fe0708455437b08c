// sentikit command-line tool: ingest, analyze, entities, sample, evaluate,
// report. Exit codes: 0 success, 1 usage, 2 data error, 3 I/O error.

#include "sentikit/pipeline.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum exit_code : int { ok = 0, usage = 1, data = 2, io = 3 };

struct cli_options {
    std::string config;
    std::string data_dir;
    std::optional<std::string> source;
    std::optional<std::string> profile;
    std::optional<std::string> scheme;
    std::optional<std::size_t> top_k;
    std::optional<std::size_t> sample_n;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<unsigned> workers;
    std::optional<std::string> dataset_dir;
    std::optional<std::string> raw_dir;
    std::optional<std::string> input_url;
    std::optional<std::string> lexicon;
    std::optional<std::string> sample_file;
    std::vector<std::string> annotations;
};

std::string absolute_string(const std::string &p) { return fs::absolute(fs::path{ p }).lexically_normal().string(); }

sentikit::run_config build_config(const cli_options &opts) {
    sentikit::config_map values;
    fs::path base_dir = fs::current_path();
    if (!opts.config.empty()) {
        std::ifstream in{ opts.config };
        if (!in) {
            throw sentikit::io_error("cannot open config file: " + opts.config);
        }
        try {
            values = sentikit::parse_config(in);
        } catch (const sentikit::parse_error &e) {
            throw sentikit::parse_error(opts.config + ": " + e.what());
        }
        base_dir = fs::absolute(fs::path{ opts.config }).parent_path();
    }
    const auto set = [&](const char *key, const auto &value) {
        if (value) {
            values[key] = fmt::format("{}", *value);
        }
    };
    const auto set_path = [&](const char *key, const std::optional<std::string> &value) {
        if (value) {
            values[key] = absolute_string(*value);
        }
    };
    set("source", opts.source);
    set("profile", opts.profile);
    set("scheme", opts.scheme);
    set("top_k", opts.top_k);
    set("sample_n", opts.sample_n);
    set("seed", opts.seed);
    set("workers", opts.workers);
    set("http_base_url", opts.input_url);
    set_path("out_dir", opts.out_dir);
    set_path("dataset_dir", opts.dataset_dir);
    set_path("raw_dir", opts.raw_dir);
    set_path("lexicon", opts.lexicon);
    set_path("sample_file", opts.sample_file);
    if (!opts.annotations.empty()) {
        std::string joined;
        for (const std::string &a : opts.annotations) {
            joined += (joined.empty() ? "" : ",") + absolute_string(a);
        }
        values["annotations"] = joined;
    }

    fs::path data_dir = SENTIKIT_DATA_DIR;
    if (const char *env = std::getenv("SENTIKIT_DATA_DIR")) {
        data_dir = env;
    }
    if (!opts.data_dir.empty()) {
        data_dir = opts.data_dir;
    }
    return sentikit::make_run_config(values, base_dir, data_dir);
}

void print_analysis(const sentikit::analyze_output &out) {
    for (const sentikit::profile_analysis &p : out.profiles) {
        std::cout << "profile " << sentikit::to_string(p.which) << "\n" << sentikit::format_distribution_table(p.rows) << "\n";
    }
    for (const fs::path &f : out.files) {
        std::cout << "wrote " << f.string() << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{ "sentikit: lexicon-based sentiment analysis pipeline for social-media posts" };
    app.require_subcommand(1);
    app.fallthrough();

    cli_options opts;
    app.add_option("--config", opts.config, "Key-value config file")->check(CLI::ExistingFile);
    app.add_option("--data-dir", opts.data_dir, "Directory with the bundled lexicon and word lists");
    app.add_option("--source", opts.source, "twitter, reddit or all")->check(CLI::IsMember({ "twitter", "reddit", "all" }));
    app.add_option("--profile", opts.profile, "ro1 (full preprocessing), ro1.1 (duplicates only) or both")
        ->check(CLI::IsMember({ "ro1", "ro1.1", "both" }));
    app.add_option("--scheme", opts.scheme, "base, moderate, extreme or all")->check(CLI::IsMember({ "base", "moderate", "extreme", "all" }));
    app.add_option("--top-k", opts.top_k, "Number of entities to report")->check(CLI::PositiveNumber);
    app.add_option("--sample-n", opts.sample_n, "Items sampled per source")->check(CLI::PositiveNumber);
    app.add_option("--seed", opts.seed, "Sampling seed");
    app.add_option("--out-dir", opts.out_dir, "Output directory");
    app.add_option("--workers", opts.workers, "Scoring threads")->check(CLI::PositiveNumber);
    app.add_option("--dataset-dir", opts.dataset_dir, "Directory holding twitter.csv and reddit.csv");
    app.add_option("--lexicon", opts.lexicon, "Lexicon file (token<TAB>valence)");

    CLI::App *ingest = app.add_subcommand("ingest", "Collect records, apply the collection criteria, write the dataset");
    ingest->add_option("--raw-dir", opts.raw_dir, "Fixture directory read by the file adapter");
    ingest->add_option("--input-url", opts.input_url, "Base URL of an HTTP collection service (instead of --raw-dir)");
    app.add_subcommand("analyze", "Polarity distribution per source and scheme");
    app.add_subcommand("entities", "Most mentioned terms per source");
    CLI::App *sample = app.add_subcommand("sample", "Seeded sample of items for human annotation");
    sample->add_option("--sample-file", opts.sample_file, "Where to write the sample export (default <out-dir>/sample.json)");
    CLI::App *evaluate = app.add_subcommand("evaluate", "Compare algorithm labels with majority human labels");
    evaluate->add_option("--sample-file", opts.sample_file, "Sample export the annotations refer to");
    evaluate->add_option("--annotations", opts.annotations, "Annotation CSV files or directories of them");
    CLI::App *report = app.add_subcommand("report", "Run ingest, analyze, entities and sample end to end");
    report->add_option("--raw-dir", opts.raw_dir, "Fixture directory read by the file adapter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        const sentikit::run_config cfg = build_config(opts);
        const std::string command = app.get_subcommands().front()->get_name();
        if (command == "ingest") {
            const sentikit::ingest_summary s = sentikit::run_ingest(cfg);
            for (const auto &[src, n] : s.kept) {
                std::cout << sentikit::to_string(src) << ": fetched " << s.fetched.at(src) << ", kept " << n << "\n";
            }
            for (const std::string &w : s.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            std::cout << "wrote " << s.output_dir.string() << "\n";
        } else if (command == "analyze") {
            print_analysis(sentikit::run_analyze(cfg));
        } else if (command == "entities") {
            for (const auto &[src, top] : sentikit::run_entities(cfg)) {
                std::cout << sentikit::to_string(src) << "\n" << sentikit::format_entities_chart(top) << "\n";
            }
        } else if (command == "sample") {
            const auto items = sentikit::run_sample(cfg);
            std::cout << "sampled " << items.size() << " items into " << cfg.sample_file.string() << "\n";
        } else if (command == "evaluate") {
            const sentikit::evaluate_output out = sentikit::run_evaluate(cfg);
            for (const sentikit::source_evaluation &ev : out.evaluations) {
                std::cout << "== " << ev.scope << " ==\n" << sentikit::format_evaluation_table(ev.report) << "\n";
            }
            if (!out.tied_items.empty()) {
                std::cerr << "warning: " << out.tied_items.size() << " item(s) had tied votes and were labelled neu\n";
            }
        } else if (command == "report") {
            sentikit::run_report(cfg);
            std::cout << "wrote reports to " << cfg.out_dir.string() << "\n";
        }
    } catch (const sentikit::parse_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const sentikit::data_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::data;
    } catch (const sentikit::io_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::io;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code::io;
    }
    return exit_code::ok;
}
