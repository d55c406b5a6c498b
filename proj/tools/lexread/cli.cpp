#include "cli.hpp"

#include <ctime>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lexread/corpus.hpp"
#include "lexread/csv.hpp"
#include "lexread/error.hpp"
#include "lexread/fetcher.hpp"
#include "results_io.hpp"

namespace lexread::cli {

namespace {

struct Options {
    std::string manifest;
    std::string texts;
    std::string cache;
    std::string results;
    std::string out;
    std::string format = "csv";
    std::string linsear_mode = "windowed";
    std::string boilerplate;
    std::size_t jobs = 1;

    std::string base_url = std::string(kDefaultBaseUrl);
    std::string user_agent = std::string(kDefaultUserAgent);
    long long delay_ms = 1000;
    std::size_t concurrency = 1;
    std::size_t retries = 3;
    long long backoff_ms = 500;
};

Format parse_format(const std::string& s) {
    return s == "json" ? Format::Json : Format::Csv;
}

std::string iso_utc(std::chrono::system_clock::time_point t) {
    if (t == std::chrono::system_clock::time_point{}) {
        return {};
    }
    const std::time_t secs = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(const Options& opt, const std::string& content, std::ostream& out) {
    if (opt.out.empty() || opt.out == "-") {
        out << content;
        out.flush();
        return;
    }
    write_file_atomic(opt.out, content);
}

int cmd_fetch(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto records = load_manifest(opt.manifest);
    std::vector<std::string> ids;
    for (const auto& rec : records) {
        if (rec.source.kind == DocumentSource::Kind::Identifier) {
            ids.push_back(rec.source.value);
        } else {
            err << "lexread: " << rec.id << ": local source " << rec.source.value << ", not fetched\n";
        }
    }

    PolitenessConfig config;
    config.base_url = opt.base_url;
    config.user_agent = opt.user_agent;
    config.min_delay = std::chrono::milliseconds(opt.delay_ms);
    config.concurrency = opt.concurrency;
    config.max_retries = opt.retries;
    config.backoff_base = std::chrono::milliseconds(opt.backoff_ms);
    const auto results = fetch_all(ids, opt.cache, config);

    std::size_t failed = 0;
    std::string content;
    if (parse_format(opt.format) == Format::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            arr.push_back({{"id", r.id},
                           {"status", to_string(r.status)},
                           {"attempts", r.attempts},
                           {"retrieved_at", iso_utc(r.retrieved_at)},
                           {"message", r.message}});
        }
        content = arr.dump(2) + "\n";
    } else {
        content = "id,status,attempts,retrieved_at,message\n";
        for (const auto& r : results) {
            content += csv::join({r.id, std::string(to_string(r.status)), std::to_string(r.attempts),
                                  iso_utc(r.retrieved_at), r.message}) +
                       "\n";
        }
    }
    for (const auto& r : results) {
        if (r.status == FetchStatus::NotFound || r.status == FetchStatus::TransportError) {
            ++failed;
            err << "lexread: " << r.id << ": " << to_string(r.status)
                << (r.message.empty() ? "" : " (" + r.message + ")") << "\n";
        }
    }
    emit(opt, content, out);
    if (failed > 0) {
        err << "lexread: " << failed << " of " << results.size() << " documents not fetched\n";
        return kExitDocumentFailures;
    }
    return kExitOk;
}

int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto records = load_manifest(opt.manifest);
    AnalyzeOptions options;
    options.mode = opt.linsear_mode == "compat" ? LinsearMode::FirstSampleCompat : LinsearMode::Windowed;
    options.jobs = opt.jobs;
    if (!opt.boilerplate.empty()) {
        for (const auto& p : BoilerplateFilter::read_pattern_file(opt.boilerplate)) {
            options.filter.add(p);
        }
    }
    CorpusReport report;
    try {
        report = analyze_corpus(records, make_directory_resolver(opt.texts), options);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        err << "lexread: " << e.what() << "\n";
        return kExitDocumentFailures;
    }
    emit(opt, write_results(to_results_table(report), parse_format(opt.format)), out);
    for (const auto& f : report.failures) {
        err << "lexread: " << f.id << ": " << f.reason << "\n";
    }
    if (!report.failures.empty()) {
        err << "lexread: " << report.failures.size() << " of " << records.size()
            << " documents failed and are excluded\n";
        return kExitDocumentFailures;
    }
    return kExitOk;
}

ResultsTable load_results(const Options& opt) {
    try {
        return read_results(read_file(opt.results));
    } catch (const ParseError& e) {
        throw ParseError(opt.results + ": " + e.what());
    }
}

int cmd_stats(const Options& opt, std::ostream& out, std::ostream&) {
    const auto table = load_results(opt);
    emit(opt, write_stats(compute_stats(table), parse_format(opt.format)), out);
    return kExitOk;
}

int cmd_report(const Options& opt, std::ostream& out, std::ostream&) {
    const auto table = load_results(opt);
    emit(opt, write_year_report(compute_year_report(table), parse_format(opt.format)), out);
    return kExitOk;
}

void add_output_options(CLI::App* sub, Options& opt) {
    sub->add_option("--out,-o", opt.out, "Output file (default: stdout)");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Readability analysis of a legislative text corpus", "lexread"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto* fetch = app.add_subcommand("fetch", "Download the documents of a manifest into a cache directory");
    fetch->add_option("--manifest,-m", opt.manifest, "Manifest (.csv or .json)")->required();
    fetch->add_option("--cache", opt.cache, "Cache directory")->required();
    fetch->add_option("--base-url", opt.base_url, "Repository base URL")
        ->envname("LEXREAD_BASE_URL")
        ->capture_default_str();
    fetch->add_option("--user-agent", opt.user_agent, "User-Agent header")->envname("LEXREAD_USER_AGENT");
    fetch->add_option("--delay-ms", opt.delay_ms, "Minimum gap between request starts")
        ->envname("LEXREAD_DELAY_MS")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fetch->add_option("--concurrency", opt.concurrency, "Requests in flight at once")
        ->envname("LEXREAD_CONCURRENCY")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    fetch->add_option("--retries", opt.retries, "Retries for 429, 5xx and connection failures")
        ->envname("LEXREAD_RETRIES")
        ->check(CLI::Range(0, 10))
        ->capture_default_str();
    fetch->add_option("--backoff-ms", opt.backoff_ms, "First retry delay, doubled per retry")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_output_options(fetch, opt);

    auto* analyze = app.add_subcommand("analyze", "Compute metrics and grades for every manifest document");
    analyze->add_option("--manifest,-m", opt.manifest, "Manifest (.csv or .json)")->required();
    analyze->add_option("--texts,--cache", opt.texts, "Directory of <id>.txt files or a fetch cache");
    analyze->add_option("--linsear-mode", opt.linsear_mode, "Linsear Write sampling")
        ->check(CLI::IsMember({"windowed", "compat"}))
        ->capture_default_str();
    analyze->add_option("--boilerplate", opt.boilerplate, "Extra boilerplate patterns, one regex per line");
    analyze->add_option("--jobs,-j", opt.jobs, "Worker threads (0: all cores)")->capture_default_str();
    add_output_options(analyze, opt);

    auto* stats = app.add_subcommand("stats", "Summary, correlations and Cronbach's alpha of a results file");
    stats->add_option("--results,-r", opt.results, "Results file from analyze")->required();
    add_output_options(stats, opt);

    auto* report = app.add_subcommand("report", "Per-year mean and median of the sum variable");
    report->add_option("--results,-r", opt.results, "Results file from analyze")->required();
    add_output_options(report, opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fetch->parsed()) {
            return cmd_fetch(opt, out, err);
        }
        if (analyze->parsed()) {
            return cmd_analyze(opt, out, err);
        }
        if (stats->parsed()) {
            return cmd_stats(opt, out, err);
        }
        return cmd_report(opt, out, err);
    } catch (const ParseError& e) {
        err << "lexread: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "lexread: " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace lexread::cli
