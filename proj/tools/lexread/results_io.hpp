#pragma once

// Serialization of the per-document results file, the statistics file and the
// per-year report, in CSV and JSON. Both formats carry the same fields.

#include <string>
#include <string_view>
#include <vector>

#include "lexread/corpus.hpp"
#include "lexread/indices.hpp"
#include "lexread/segmenter.hpp"
#include "lexread/stats.hpp"

namespace lexread::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { Csv, Json };

/// One line of the results file.
struct ResultRow {
    std::string id;
    std::string doc_type;
    int year = 0;
    std::string domain;
    TextMetrics metrics;
    GradeVector grades;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultsTable {
    LinsearMode linsear_mode = LinsearMode::Windowed;
    std::vector<ResultRow> rows;

    friend bool operator==(const ResultsTable&, const ResultsTable&) = default;
};

/// Column names of the CSV results file, also the keys of each JSON document.
const std::vector<std::string>& results_columns();

ResultsTable to_results_table(const CorpusReport& report);

std::string write_results(const ResultsTable& table, Format format);

/// Detects the format from the first non-blank character. Throws ParseError
/// (with the offending line or row) on any structural or value problem.
ResultsTable read_results(std::string_view content);

/// Statistics recomputed from a results table.
struct StatsReport {
    LinsearMode linsear_mode = LinsearMode::Windowed;
    std::size_t documents = 0;
    /// Empty when there are no rows.
    std::vector<std::pair<std::string, SummaryStats>> summary;
    Optional<CorrelationMatrix> correlations;
    Optional<double> alpha;
};

StatsReport compute_stats(const ResultsTable& table);
std::string write_stats(const StatsReport& stats, Format format);

std::vector<YearAggregate> compute_year_report(const ResultsTable& table);
std::string write_year_report(const std::vector<YearAggregate>& rows, Format format);

/// Shortest decimal form that round-trips.
std::string format_number(double value);

}  // namespace lexread::cli
