#include "results_io.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "lexread/csv.hpp"
#include "lexread/error.hpp"

namespace lexread::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::string_view kResultsBanner = "# lexread results";

const std::vector<std::string> kResultsColumns = {
    "id",
    "doc_type",
    "year",
    "domain",
    "sentence_count",
    "word_count",
    "syllable_count",
    "polysyllable_count",
    "character_count",
    "letter_count",
    "easy_word_count",
    "hard_word_count",
    "g1_flesch_kincaid",
    "g2_smog",
    "g3_ari",
    "g4_coleman_liau",
    "g5_linsear",
    "sum_variable",
};

LinsearMode parse_mode(std::string_view s, std::size_t line) {
    if (s == "windowed") {
        return LinsearMode::Windowed;
    }
    if (s == "compat") {
        return LinsearMode::FirstSampleCompat;
    }
    throw ParseError("unknown linsear_mode \"" + std::string(s) + "\"", line);
}

template <typename Int>
Int parse_int(std::string_view s, std::string_view column, std::size_t line) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("column " + std::string(column) + ": expected an integer, got \"" + std::string(s) + "\"",
                         line);
    }
    return value;
}

double parse_double(std::string_view s, std::string_view column, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError("column " + std::string(column) + ": expected a number, got \"" + std::string(s) + "\"",
                         line);
    }
    return value;
}

/// Field accessor over either a CSV row or a JSON object, as strings.
using FieldMap = std::map<std::string, std::string>;

ResultRow build_row(const FieldMap& f, std::size_t line) {
    ResultRow row;
    row.id = f.at("id");
    if (row.id.empty()) {
        throw ParseError("empty id", line);
    }
    row.doc_type = f.at("doc_type");
    row.domain = f.at("domain");
    row.year = parse_int<int>(f.at("year"), "year", line);
    if (!is_valid_year(row.year)) {
        throw ParseError("column year: expected a 4-digit year, got \"" + f.at("year") + "\"", line);
    }
    auto count = [&](const char* name) { return parse_int<std::size_t>(f.at(name), name, line); };
    auto& m = row.metrics;
    m.sentence_count = count("sentence_count");
    m.word_count = count("word_count");
    m.syllable_count = count("syllable_count");
    m.polysyllable_count = count("polysyllable_count");
    m.character_count = count("character_count");
    m.letter_count = count("letter_count");
    m.easy_word_count = count("easy_word_count");
    m.hard_word_count = count("hard_word_count");
    auto grade = [&](const char* name) { return parse_int<int>(f.at(name), name, line); };
    auto& g = row.grades;
    g.flesch_kincaid = grade("g1_flesch_kincaid");
    g.smog = grade("g2_smog");
    g.ari = grade("g3_ari");
    g.coleman_liau = grade("g4_coleman_liau");
    g.linsear = grade("g5_linsear");
    g.sum_variable = parse_double(f.at("sum_variable"), "sum_variable", line);
    if (std::fabs(g.sum_variable - sum_variable(g)) > 1e-9) {
        throw ParseError("sum_variable does not equal the mean of g1, g2, g3", line);
    }
    g.sum_variable = sum_variable(g);
    return row;
}

std::vector<std::string> row_fields(const ResultRow& r) {
    const auto& m = r.metrics;
    const auto& g = r.grades;
    return {
        r.id,
        r.doc_type,
        std::to_string(r.year),
        r.domain,
        std::to_string(m.sentence_count),
        std::to_string(m.word_count),
        std::to_string(m.syllable_count),
        std::to_string(m.polysyllable_count),
        std::to_string(m.character_count),
        std::to_string(m.letter_count),
        std::to_string(m.easy_word_count),
        std::to_string(m.hard_word_count),
        std::to_string(g.flesch_kincaid),
        std::to_string(g.smog),
        std::to_string(g.ari),
        std::to_string(g.coleman_liau),
        std::to_string(g.linsear),
        format_number(g.sum_variable),
    };
}

ResultsTable read_csv_results(std::string_view content) {
    ResultsTable table;
    const std::size_t eol = content.find('\n');
    const std::string_view first = content.substr(0, eol);
    const std::string prefix = std::string(kResultsBanner) + "; linsear_mode=";
    if (first.substr(0, prefix.size()) != prefix) {
        throw ParseError("missing results banner \"" + prefix + "...\"", 1);
    }
    std::string_view mode = first.substr(prefix.size());
    while (!mode.empty() && (mode.back() == '\r' || mode.back() == ' ')) {
        mode.remove_suffix(1);
    }
    table.linsear_mode = parse_mode(mode, 1);

    const auto rows = csv::parse(content);
    if (rows.empty()) {
        throw ParseError("missing header row", 2);
    }
    if (rows.front().fields != kResultsColumns) {
        throw ParseError("unexpected header; expected " + csv::join(kResultsColumns), rows.front().line);
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != kResultsColumns.size()) {
            throw ParseError("expected " + std::to_string(kResultsColumns.size()) + " fields, found " +
                                 std::to_string(row.fields.size()) + " (truncated row?)",
                             row.line);
        }
        FieldMap f;
        for (std::size_t c = 0; c < kResultsColumns.size(); ++c) {
            f[kResultsColumns[c]] = row.fields[c];
        }
        table.rows.push_back(build_row(f, row.line));
    }
    return table;
}

ResultsTable read_json_results(std::string_view content) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(content);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("results file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("documents") || !doc.at("documents").is_array()) {
        throw ParseError("JSON results must be an object with a \"documents\" array");
    }
    ResultsTable table;
    table.linsear_mode = parse_mode(doc.value("linsear_mode", std::string{}), 0);
    std::size_t index = 0;
    for (const auto& item : doc.at("documents")) {
        ++index;
        if (!item.is_object()) {
            throw ParseError("document entry is not an object", index);
        }
        FieldMap f;
        for (const auto& col : kResultsColumns) {
            if (!item.contains(col)) {
                throw ParseError("document entry lacks \"" + col + "\"", index);
            }
            const auto& v = item.at(col);
            if (v.is_string()) {
                f[col] = v.get<std::string>();
            } else if (v.is_number_float()) {
                f[col] = format_number(v.get<double>());
            } else {
                f[col] = v.dump();
            }
        }
        table.rows.push_back(build_row(f, index));
    }
    return table;
}

ordered_json summary_json(const SummaryStats& s) {
    return {{"n", s.n},           {"mean", s.mean}, {"sd", s.standard_deviation},
            {"median", s.median}, {"q1", s.q1},     {"q3", s.q3},
            {"min", s.min},       {"max", s.max}};
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

const std::vector<std::string>& results_columns() {
    return kResultsColumns;
}

ResultsTable to_results_table(const CorpusReport& report) {
    ResultsTable table;
    table.linsear_mode = report.linsear_mode;
    for (const auto& row : report.rows) {
        table.rows.push_back({row.record.id, std::string(to_string(row.record.doc_type)), row.record.year,
                              std::string(to_string(row.record.domain)), row.metrics, row.grades});
    }
    return table;
}

std::string write_results(const ResultsTable& table, Format format) {
    if (format == Format::Csv) {
        std::string out = std::string(kResultsBanner) + "; linsear_mode=" +
                          std::string(to_string(table.linsear_mode)) + "\n";
        out += csv::join(kResultsColumns) + "\n";
        for (const auto& row : table.rows) {
            out += csv::join(row_fields(row)) + "\n";
        }
        return out;
    }
    ordered_json docs = ordered_json::array();
    for (const auto& row : table.rows) {
        const auto& m = row.metrics;
        const auto& g = row.grades;
        docs.push_back({
            {"id", row.id},
            {"doc_type", row.doc_type},
            {"year", row.year},
            {"domain", row.domain},
            {"sentence_count", m.sentence_count},
            {"word_count", m.word_count},
            {"syllable_count", m.syllable_count},
            {"polysyllable_count", m.polysyllable_count},
            {"character_count", m.character_count},
            {"letter_count", m.letter_count},
            {"easy_word_count", m.easy_word_count},
            {"hard_word_count", m.hard_word_count},
            {"g1_flesch_kincaid", g.flesch_kincaid},
            {"g2_smog", g.smog},
            {"g3_ari", g.ari},
            {"g4_coleman_liau", g.coleman_liau},
            {"g5_linsear", g.linsear},
            {"sum_variable", g.sum_variable},
        });
    }
    const ordered_json doc = {
        {"tool", "lexread"},
        {"version", kToolVersion},
        {"linsear_mode", to_string(table.linsear_mode)},
        {"documents", docs},
    };
    return doc.dump(2) + "\n";
}

ResultsTable read_results(std::string_view content) {
    const std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (content[first] == '{' || content[first] == '[')) {
        return read_json_results(content);
    }
    return read_csv_results(content);
}

StatsReport compute_stats(const ResultsTable& table) {
    StatsReport stats;
    stats.linsear_mode = table.linsear_mode;
    stats.documents = table.rows.size();
    if (table.rows.empty()) {
        stats.correlations.reason = "no documents";
        stats.alpha.reason = "no documents";
        return stats;
    }
    // Reuse the corpus assembly so the CLI and library agree by construction.
    CorpusReport report;
    report.linsear_mode = table.linsear_mode;
    for (const auto& row : table.rows) {
        ReportRow r;
        r.record.id = row.id;
        r.record.year = row.year;
        r.metrics = row.metrics;
        r.grades = row.grades;
        report.rows.push_back(std::move(r));
    }
    assemble_statistics(report);
    for (std::size_t i = 0; i < 5; ++i) {
        stats.summary.emplace_back(std::string(kIndexNames[i]), report.summary.columns[i]);
    }
    stats.summary.emplace_back(std::string(kSumVariableName), report.summary.columns[5]);
    stats.correlations = report.correlations;
    stats.alpha = report.alpha;
    return stats;
}

std::string write_stats(const StatsReport& stats, Format format) {
    const std::string alpha_columns = "flesch_kincaid+smog+ari";
    if (format == Format::Json) {
        ordered_json doc = {
            {"tool", "lexread"},
            {"tool_version", kToolVersion},
            {"linsear_mode", to_string(stats.linsear_mode)},
            {"quantile_convention", kQuantileConvention},
            {"documents", stats.documents},
        };
        ordered_json summary = ordered_json::object();
        for (const auto& [name, s] : stats.summary) {
            summary[name] = summary_json(s);
        }
        doc["summary"] = summary;
        if (stats.correlations.value) {
            const auto& cm = *stats.correlations.value;
            ordered_json values = ordered_json::array();
            for (const auto& row : cm.values) {
                values.push_back(row);
            }
            doc["correlations"] = {{"labels", cm.labels}, {"values", values}};
        } else {
            doc["correlations"] = {{"notice", stats.correlations.reason}};
        }
        if (stats.alpha.value) {
            doc["cronbach_alpha"] = {{"columns", {"flesch_kincaid", "smog", "ari"}}, {"value", *stats.alpha.value}};
        } else {
            doc["cronbach_alpha"] = {{"notice", stats.alpha.reason}};
        }
        return doc.dump(2) + "\n";
    }

    std::string out = "# lexread statistics\n";
    out += csv::join({"tool_version", std::string(kToolVersion)}) + "\n";
    out += csv::join({"linsear_mode", std::string(to_string(stats.linsear_mode))}) + "\n";
    out += csv::join({"quantile_convention", std::string(kQuantileConvention)}) + "\n";
    out += csv::join({"documents", std::to_string(stats.documents)}) + "\n";

    out += "\n[summary]\n";
    out += "variable,n,mean,sd,median,q1,q3,min,max\n";
    for (const auto& [name, s] : stats.summary) {
        out += csv::join({name, std::to_string(s.n), format_number(s.mean), format_number(s.standard_deviation),
                          format_number(s.median), format_number(s.q1), format_number(s.q3),
                          format_number(s.min), format_number(s.max)}) +
               "\n";
    }

    out += "\n[correlations]\n";
    if (stats.correlations.value) {
        const auto& cm = *stats.correlations.value;
        std::vector<std::string> header = {"index"};
        for (const auto& l : cm.labels) {
            header.emplace_back(l);
        }
        out += csv::join(header) + "\n";
        for (std::size_t i = 0; i < 5; ++i) {
            std::vector<std::string> fields = {std::string(cm.labels[i])};
            for (std::size_t j = 0; j < 5; ++j) {
                fields.push_back(format_number(cm.values[i][j]));
            }
            out += csv::join(fields) + "\n";
        }
    } else {
        out += csv::join({"notice", stats.correlations.reason}) + "\n";
    }

    out += "\n[cronbach_alpha]\n";
    if (stats.alpha.value) {
        out += "columns,alpha\n";
        out += csv::join({alpha_columns, format_number(*stats.alpha.value)}) + "\n";
    } else {
        out += csv::join({"notice", stats.alpha.reason}) + "\n";
    }
    return out;
}

std::vector<YearAggregate> compute_year_report(const ResultsTable& table) {
    std::vector<YearValue> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        values.push_back({row.year, row.grades.sum_variable});
    }
    return per_year_aggregate(values);
}

std::string write_year_report(const std::vector<YearAggregate>& rows, Format format) {
    if (format == Format::Json) {
        ordered_json data = ordered_json::array();
        for (const auto& r : rows) {
            data.push_back({{"year", r.year}, {"count", r.count}, {"mean", r.mean}, {"median", r.median}});
        }
        const ordered_json doc = {
            {"tool", "lexread"},
            {"tool_version", kToolVersion},
            {"series", "sum_variable"},
            {"rows", data},
        };
        return doc.dump(2) + "\n";
    }
    std::string out = "# lexread per-year sum variable\n";
    out += "year,count,mean,median\n";
    for (const auto& r : rows) {
        out += csv::join({std::to_string(r.year), std::to_string(r.count), format_number(r.mean),
                          format_number(r.median)}) +
               "\n";
    }
    return out;
}

}  // namespace lexread::cli
