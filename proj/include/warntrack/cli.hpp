// cli.hpp - the warntrack command line: track, eval, diff, gen-corpus.
#pragma once

#include <warntrack/corpus.hpp>
#include <warntrack/diff_engine.hpp>
#include <warntrack/evaluation.hpp>
#include <warntrack/ingest.hpp>
#include <warntrack/report_io.hpp>
#include <warntrack/tracker.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

namespace warntrack::cli {

enum ExitCode : int { kOk = 0, kInternalError = 1, kInputError = 2 };

struct Style {
    bool enabled = false;
    std::string bold(const std::string& s) const { return enabled ? "\033[1m" + s + "\033[0m" : s; }
};

inline Style detect_style()
{
    return Style{std::getenv("WARNTRACK_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) == 1};
}

struct TrackArgs {
    std::string approach = "improved";
    std::string pre_root, post_root;
    std::string pre_warnings, post_warnings;
    std::string format = "generic";
    std::string refactorings;
    std::string out;
    std::string config;
    std::string pre_commit, post_commit;
    std::string project;
    std::string source_prefix;
    std::string manifest;
    std::string out_dir;
    int jobs = 1;
};

inline WarningSet load_warnings(const std::string& path, const std::string& format, Side side,
                                const ParseOptions& opts)
{
    auto bytes = read_file(path);
    if (format == "pmd") return parse_pmd_report(bytes, side, opts);
    if (format == "spotbugs") return parse_spotbugs_report(bytes, side, opts);
    if (format == "generic") return parse_generic_warnings(bytes, side);
    throw SchemaViolation("unknown --format '" + format + "'");
}

struct PairJob {
    std::string name;
    std::filesystem::path pre_root, post_root, pre_warnings, post_warnings, refactorings;
    std::string format = "generic";
};

/// Runs one commit pair and returns the serialized report.
inline std::string track_pair(const PairJob& job, const std::string& approach, const TrackOptions& opts,
                              const ParseOptions& parse_opts, std::vector<std::string>& notes)
{
    CommitPair pair{opts.pre_commit_id, opts.post_commit_id, job.pre_root, job.post_root};
    validate(pair);
    auto pre = load_warnings(job.pre_warnings.string(), job.format, Side::Pre, parse_opts);
    auto post = load_warnings(job.post_warnings.string(), job.format, Side::Post, parse_opts);
    SourceTree pre_src(pair.pre_root), post_src(pair.post_root);
    TrackingReport report;
    if (approach == "soa") {
        if (!job.refactorings.empty())
            notes.push_back("note: --approach soa ignores refactoring records (" + job.refactorings.string() + ")");
        report = track_soa(pre, post, pre_src, post_src, opts);
    } else {
        std::vector<RefactoringRecord> records;
        if (!job.refactorings.empty()) records = parse_refactorings(read_file(job.refactorings));
        report = track_improved(pre, post, pre_src, post_src, records, opts);
    }
    return serialize_report(report, &pre, &post);
}

inline std::vector<PairJob> load_manifest(const std::filesystem::path& manifest)
{
    auto doc = detail::parse_json(read_file(manifest), "manifest");
    auto base = manifest.parent_path();
    std::vector<PairJob> jobs;
    try {
        for (const auto& p : doc.at("pairs")) {
            PairJob j;
            j.name = p.at("name").get<std::string>();
            j.pre_root = base / p.at("pre_root").get<std::string>();
            j.post_root = base / p.at("post_root").get<std::string>();
            j.pre_warnings = base / p.at("pre_warnings").get<std::string>();
            j.post_warnings = base / p.at("post_warnings").get<std::string>();
            j.format = p.value("format", "generic");
            if (auto r = p.value("refactorings", std::string()); !r.empty()) j.refactorings = base / r;
            jobs.push_back(std::move(j));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaViolation(std::string("manifest: ") + e.what());
    }
    return jobs;
}

inline int cmd_track(const TrackArgs& a, std::ostream& out, std::ostream& err)
{
    if (a.approach != "soa" && a.approach != "improved")
        throw SchemaViolation("--approach must be 'soa' or 'improved'");
    TrackOptions opts;
    if (!a.config.empty()) opts.config = parse_config(read_file(a.config));
    opts.pre_commit_id = a.pre_commit;
    opts.post_commit_id = a.post_commit;
    ParseOptions parse_opts{a.project, a.source_prefix};

    if (!a.manifest.empty()) {
        if (a.out_dir.empty()) throw SchemaViolation("--manifest requires --out-dir");
        auto jobs = load_manifest(a.manifest);
        std::filesystem::create_directories(a.out_dir);
        std::atomic<std::size_t> next{0};
        std::vector<std::vector<std::string>> notes(jobs.size());
        std::vector<std::string> failures(jobs.size());
        auto worker = [&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                try {
                    auto text = track_pair(jobs[i], a.approach, opts, parse_opts, notes[i]);
                    write_text(std::filesystem::path(a.out_dir) / (jobs[i].name + "." + a.approach + ".json"), text);
                } catch (const std::exception& e) {
                    failures[i] = jobs[i].name + ": " + e.what();
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            for (int t = 0; t < std::max(1, a.jobs); ++t) pool.emplace_back(worker);
        }
        std::size_t ignored = 0, failed = 0;
        for (const auto& n : notes) ignored += n.empty() ? 0 : 1;
        if (ignored) err << "note: --approach soa ignores refactoring records (" << ignored << " pairs)\n";
        for (const auto& f : failures)
            if (!f.empty()) {
                err << "error: " << f << "\n";
                ++failed;
            }
        out << "tracked " << (jobs.size() - failed) << "/" << jobs.size() << " pairs\n";
        return failed == 0 ? kOk : kInputError;
    }

    if (a.pre_root.empty() || a.post_root.empty() || a.pre_warnings.empty() || a.post_warnings.empty())
        throw SchemaViolation("track requires --pre-root, --post-root, --pre-warnings and --post-warnings");
    PairJob job{"", a.pre_root, a.post_root, a.pre_warnings, a.post_warnings, a.refactorings, a.format};
    std::vector<std::string> notes;
    auto text = track_pair(job, a.approach, opts, parse_opts, notes);
    for (const auto& n : notes) err << n << "\n";
    if (a.out.empty() || a.out == "-")
        out << text;
    else
        write_text(a.out, text);
    return kOk;
}

struct EvalArgs {
    std::vector<std::string> reports;
    std::string labels;
    std::string manifest;
    std::string reports_dir;
};

inline void print_metrics_table(std::ostream& out, const Style& style,
                                const std::vector<std::pair<std::string, MetricsReport>>& columns)
{
    const int w = 22;
    out << style.bold("Resolved") << "\n";
    out << std::left << std::setw(w) << "";
    for (const auto& [name, m] : columns) out << std::setw(w) << ("FP (" + name + ")");
    out << "\n" << std::setw(w) << "  fp rate";
    for (const auto& [name, m] : columns) out << std::setw(w) << format_rate(m.resolved);
    out << "\n" << style.bold("Newly-Introduced") << "\n" << std::setw(w) << "";
    for (const auto& [name, m] : columns) out << std::setw(w) << ("FP (" + name + ")");
    out << "\n" << std::setw(w) << "  fp rate";
    for (const auto& [name, m] : columns) out << std::setw(w) << format_rate(m.newly_introduced);
    out << "\n" << style.bold("Combined") << "\n" << std::setw(w) << "  fp rate";
    for (const auto& [name, m] : columns)
        out << std::setw(w)
            << (format_percent(m.combined_fp_rate()) + " (" + std::to_string(m.fp_total()) + "/" +
                std::to_string(m.decisions_total()) + ")");
    out << "\n" << std::setw(w) << "  precision";
    for (const auto& [name, m] : columns) out << std::setw(w) << format_percent(m.precision());
    out << "\n";
    if (columns.size() == 2) {
        auto c = compare_approaches(columns[0].second, columns[1].second);
        out << style.bold("Delta") << " (" << columns[1].first << " - " << columns[0].first << ")\n"
            << "  resolved fp rate   " << std::showpos << std::fixed << std::setprecision(1)
            << c.resolved_rate_delta() * 100.0 << " pts\n"
            << "  new fp rate        " << c.new_rate_delta() * 100.0 << " pts\n"
            << "  false positives    " << c.fp_delta() << "\n"
            << "  precision          " << c.precision_delta() * 100.0 << " pts\n"
            << std::noshowpos;
    }
}

inline int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err, const Style& style)
{
    std::vector<std::pair<std::string, MetricsReport>> columns;
    if (!a.manifest.empty()) {
        if (a.reports_dir.empty()) throw SchemaViolation("--manifest requires --reports-dir");
        auto base = std::filesystem::path(a.manifest).parent_path();
        auto doc = detail::parse_json(read_file(a.manifest), "manifest");
        for (const char* approach : {"soa", "improved"}) {
            std::vector<MetricsReport> rows;
            for (const auto& p : doc.at("pairs")) {
                auto name = p.at("name").get<std::string>();
                auto report_path = std::filesystem::path(a.reports_dir) / (name + "." + approach + ".json");
                if (!std::filesystem::exists(report_path)) continue;
                auto report = parse_report(read_file(report_path));
                auto labels = parse_labels(read_file(base / p.at("labels").get<std::string>()));
                rows.push_back(compute_metrics(report, labels));
            }
            if (!rows.empty()) columns.emplace_back(approach == std::string("soa") ? "SOA" : "IMPROVED", aggregate(rows));
        }
        if (columns.empty()) throw FileMissing("no reports found in '" + a.reports_dir + "'");
    } else {
        if (a.reports.empty() || a.reports.size() > 2) throw SchemaViolation("eval takes one or two --report files");
        if (a.labels.empty()) throw SchemaViolation("eval requires --labels");
        auto labels = parse_labels(read_file(a.labels));
        for (const auto& path : a.reports) {
            auto report = parse_report(read_file(path));
            try {
                columns.emplace_back(std::string(to_string(report.approach)), compute_metrics(report, labels));
            } catch (const UnknownWarningId& e) {
                err << "error: label references unknown warning id " << e.what() << " (" << path << ")\n";
                return kInputError;
            }
        }
        if (columns.size() == 2 && columns[0].first == columns[1].first) {
            columns[0].first += " #1";
            columns[1].first += " #2";
        }
    }
    print_metrics_table(out, style, columns);
    return kOk;
}

inline int cmd_diff(const std::string& pre_path, const std::string& post_path, std::ostream& out)
{
    auto pre = split_lines(read_file(pre_path));
    auto post = split_lines(read_file(post_path));
    auto script = compute_diff(pre, post);
    out << "--- " << pre_path << "\n+++ " << post_path << "\n";
    for (const auto& h : script.hunks) {
        out << "@@ -" << h.pre.first << "," << h.pre.count << " +" << h.post.first << "," << h.post.count
            << " @@ " << to_string(h.kind) << "\n";
        if (h.kind == HunkKind::Equal) continue;
        for (int i = 0; i < h.pre.count; ++i) out << "-" << pre[static_cast<std::size_t>(h.pre.first - 1 + i)] << "\n";
        for (int i = 0; i < h.post.count; ++i) out << "+" << post[static_cast<std::size_t>(h.post.first - 1 + i)] << "\n";
    }
    auto mapping = build_line_mapping(script);
    out << "# line mapping (pre -> post)\n";
    for (int line = 1; line <= mapping.size(); ++line) {
        const auto& img = mapping.image(line);
        out << line << " -> ";
        switch (img.kind) {
        case LineImage::Kind::Exact: out << img.first; break;
        case LineImage::Kind::Interval: out << "[" << img.first << "," << img.last << "]"; break;
        case LineImage::Kind::Absent: out << "ABSENT"; break;
        }
        out << "\n";
    }
    return kOk;
}

/// "method_rename=16,file_move=12" -> mix. Unlisted scenarios get zero.
inline ScenarioMix parse_mix(const std::string& text)
{
    ScenarioMix mix;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw SchemaViolation("--mix entries look like scenario=count");
        int count = 0;
        try {
            count = std::stoi(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw SchemaViolation("--mix count for '" + item.substr(0, eq) + "' is not a number");
        }
        if (count < 0) throw SchemaViolation("--mix counts must be non-negative");
        mix[parse_scenario(item.substr(0, eq))] = count;
    }
    return mix;
}

inline int cmd_gen_corpus(std::uint64_t seed, const std::string& mix_text, const std::string& dir,
                          std::ostream& out)
{
    auto mix = mix_text.empty() ? default_mix() : parse_mix(mix_text);
    auto corpus = generate_corpus(seed, mix);
    write_corpus(corpus, dir);
    std::size_t warnings = 0, affected = 0;
    for (const auto& p : corpus.pairs) {
        warnings += p.pre.size();
        affected += p.refactoring_affected.size();
    }
    out << "wrote " << corpus.pairs.size() << " commit pairs to " << dir << " (" << warnings
        << " pre warnings, " << affected << " refactoring-affected)\n";
    return kOk;
}

/// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               Style style = detect_style())
{
    CLI::App app{"Track static-analysis warnings between two revisions", "warntrack"};
    app.require_subcommand(1);

    TrackArgs track;
    auto* t = app.add_subcommand("track", "Classify warnings as persistent, resolved or newly introduced");
    t->add_option("--approach", track.approach, "soa or improved")->capture_default_str();
    t->add_option("--pre-root", track.pre_root, "pre-commit source tree");
    t->add_option("--post-root", track.post_root, "post-commit source tree");
    t->add_option("--pre-warnings", track.pre_warnings, "pre-commit warning report");
    t->add_option("--post-warnings", track.post_warnings, "post-commit warning report");
    t->add_option("--format", track.format, "pmd, spotbugs or generic")->capture_default_str();
    t->add_option("--refactorings", track.refactorings, "refactoring records (improved approach)");
    t->add_option("--out", track.out, "report path (default: stdout)");
    t->add_option("--config", track.config, "strategy constants (JSON)");
    t->add_option("--pre-commit", track.pre_commit, "pre commit id");
    t->add_option("--post-commit", track.post_commit, "post commit id");
    t->add_option("--project", track.project, "project name for PMD/SpotBugs warnings");
    t->add_option("--source-prefix", track.source_prefix, "path prefix stripped from report paths");
    t->add_option("--manifest", track.manifest, "track every pair listed in a manifest");
    t->add_option("--out-dir", track.out_dir, "report directory for --manifest");
    t->add_option("--jobs", track.jobs, "concurrent pairs for --manifest")->check(CLI::PositiveNumber);

    EvalArgs eval;
    auto* e = app.add_subcommand("eval", "False-positive rates and precision against labels");
    e->add_option("--report", eval.reports, "tracking report (give two to compare)");
    e->add_option("--labels", eval.labels, "labels file (warning_id,true_status)");
    e->add_option("--manifest", eval.manifest, "aggregate over a corpus manifest");
    e->add_option("--reports-dir", eval.reports_dir, "reports written by track --manifest");

    std::string diff_pre, diff_post;
    auto* d = app.add_subcommand("diff", "Print hunks and line mapping for one file pair");
    d->add_option("--pre", diff_pre, "pre-commit file")->required();
    d->add_option("--post", diff_post, "post-commit file")->required();

    std::uint64_t seed = 42;
    std::string mix;
    std::string corpus_dir;
    auto* g = app.add_subcommand("gen-corpus", "Write a seeded synthetic corpus with ground truth");
    g->add_option("--seed", seed, "RNG seed")->capture_default_str();
    g->add_option("--mix", mix, "scenario=count list, e.g. method_rename=16,file_move=12");
    g->add_option("--out", corpus_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    }

    try {
        if (t->parsed()) return cmd_track(track, out, err);
        if (e->parsed()) return cmd_eval(eval, out, err, style);
        if (d->parsed()) return cmd_diff(diff_pre, diff_post, out);
        if (g->parsed()) return cmd_gen_corpus(seed, mix, corpus_dir, out);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << "\n";
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace warntrack::cli
