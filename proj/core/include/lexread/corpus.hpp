#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "lexread/indices.hpp"
#include "lexread/segmenter.hpp"
#include "lexread/stats.hpp"

namespace lexread {

/// Document types admitted to the corpus. Treaties, corrigenda and court
/// cases are not representable.
enum class DocType { Directive, Regulation, Decision, COM, SWD, Recommendation, JOIN };

/// The five Digital Single Market policy domains.
enum class Domain {
    GeneralRules,
    ElectronicCommunications,
    PersonalDataPrivacy,
    CopyrightAudiovisual,
    DataEconomyProtection,
};

std::string_view to_string(DocType t);
std::string_view to_string(Domain d);
/// Case-insensitive. Throws ParseError listing the allowed values.
DocType parse_doc_type(std::string_view s);
/// Accepts the enum names and their spelled-out forms, ignoring case,
/// spaces, hyphens and underscores.
Domain parse_domain(std::string_view s);

/// Comma-separated list of allowed doc_type spellings.
std::string allowed_doc_types();

struct DocumentSource {
    enum class Kind { LocalPath, Identifier };
    Kind kind = Kind::Identifier;
    /// Absolute or manifest-relative path, or a CELEX identifier.
    std::string value;

    friend bool operator==(const DocumentSource&, const DocumentSource&) = default;
};

struct DocumentRecord {
    std::string id;
    DocType doc_type = DocType::Directive;
    int year = 0;
    std::string title;
    Domain domain = Domain::GeneralRules;
    DocumentSource source;

    friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

/// Manifest columns, in the order written by tools.
inline constexpr std::array<std::string_view, 6> kManifestColumns = {
    "id", "doc_type", "year", "title", "domain", "source",
};

/// Parses a CSV manifest (header row with kManifestColumns in any order) or a
/// JSON manifest (array of objects with the same keys, optionally wrapped in
/// {"documents": [...]}). Relative local paths resolve against `base_dir`.
std::vector<DocumentRecord> parse_manifest(std::string_view content, bool json,
                                           const std::filesystem::path& base_dir = {});

/// Reads a manifest from disk; ".json" selects the JSON schema.
std::vector<DocumentRecord> load_manifest(const std::filesystem::path& path);

/// Line filter for page headers, mastheads and similar layout noise.
class BoilerplateFilter {
public:
    /// The built-in Official Journal patterns.
    BoilerplateFilter();
    explicit BoilerplateFilter(std::vector<std::string> patterns);

    static std::vector<std::string> default_patterns();
    /// One ECMAScript regex per line; blank lines and '#' comments ignored.
    static std::vector<std::string> read_pattern_file(const std::filesystem::path& path);

    void add(const std::string& pattern);
    /// True when the whitespace-trimmed line matches any pattern.
    bool matches(std::string_view line) const;
    const std::vector<std::string>& patterns() const { return sources_; }

private:
    std::vector<std::string> sources_;
    std::vector<std::regex> compiled_;
};

/// Strips control characters, drops boilerplate lines, collapses whitespace
/// runs to one space and keeps paragraph breaks as a single blank line.
std::string clean_text(std::string_view raw, const BoilerplateFilter& filter = BoilerplateFilter());

struct DocumentAnalysis {
    TextMetrics metrics;
    GradeVector grades;
};

/// clean_text, compute_metrics, grade_all. Throws DegenerateTextError carrying rec.id.
DocumentAnalysis analyze_document(const DocumentRecord& rec, std::string_view text, LinsearMode mode,
                                  const BoilerplateFilter& filter = BoilerplateFilter());

/// Returns the raw text of a document or throws.
using TextResolver = std::function<std::string(const DocumentRecord&)>;

/// Looks up <dir>/<source id>.txt, then <dir>/<id>.txt. Records whose source
/// is a local path read that file directly. Works for both a plain texts
/// directory and a fetcher cache.
TextResolver make_directory_resolver(std::filesystem::path dir);

std::string read_file(const std::filesystem::path& path);

struct ReportRow {
    DocumentRecord record;
    TextMetrics metrics;
    GradeVector grades;
};

struct Failure {
    std::string id;
    std::string reason;
};

/// A statistic that may be unavailable, with the reason when it is.
template <typename T>
struct Optional {
    std::optional<T> value;
    std::string reason;
};

struct CorpusSummary {
    /// Five index columns in kIndexNames order, then the sum variable.
    std::array<SummaryStats, 6> columns{};
};

inline constexpr std::string_view kSumVariableName = "sum_variable";

struct CorpusReport {
    LinsearMode linsear_mode = LinsearMode::Windowed;
    std::vector<ReportRow> rows;
    std::vector<Failure> failures;
    CorpusSummary summary;
    Optional<CorrelationMatrix> correlations;
    /// Over Flesch-Kincaid, SMOG and ARI.
    Optional<double> alpha;
    std::vector<YearAggregate> by_year;
};

struct AnalyzeOptions {
    LinsearMode mode = LinsearMode::Windowed;
    BoilerplateFilter filter;
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t jobs = 1;
};

/// Summary, correlations, alpha and per-year rows for already graded rows.
/// `rows` must be non-empty.
void assemble_statistics(CorpusReport& report);

/// Analyzes every record; rows keep manifest order whatever the scheduling.
/// Throws Error only when no document succeeds.
CorpusReport analyze_corpus(const std::vector<DocumentRecord>& records, const TextResolver& resolve,
                            const AnalyzeOptions& options = {});

}  // namespace lexread
