#include "lexread/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

#include <nlohmann/json.hpp>

#include "lexread/csv.hpp"
#include "lexread/error.hpp"
#include "lexread/fetcher.hpp"
#include "unicode.hpp"

namespace lexread {

namespace {

constexpr std::array<std::pair<DocType, std::string_view>, 7> kDocTypes = {{
    {DocType::Directive, "Directive"},
    {DocType::Regulation, "Regulation"},
    {DocType::Decision, "Decision"},
    {DocType::COM, "COM"},
    {DocType::SWD, "SWD"},
    {DocType::Recommendation, "Recommendation"},
    {DocType::JOIN, "JOIN"},
}};

struct DomainSpelling {
    Domain domain;
    std::string_view name;
    std::string_view spelled_out;
};

constexpr std::array<DomainSpelling, 5> kDomains = {{
    {Domain::GeneralRules, "GeneralRules", "general rules"},
    {Domain::ElectronicCommunications, "ElectronicCommunications", "electronic communication networks"},
    {Domain::PersonalDataPrivacy, "PersonalDataPrivacy", "personal data and privacy"},
    {Domain::CopyrightAudiovisual, "CopyrightAudiovisual", "copyright and audiovisual material"},
    {Domain::DataEconomyProtection, "DataEconomyProtection", "data economy and data protection"},
}};

std::string fold(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            out += static_cast<char>(std::tolower(c));
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

int parse_year(std::string_view s, std::size_t line) {
    const std::string t = trim(s);
    int year = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.size() != 4 || !is_valid_year(year)) {
        throw ParseError("year must be a 4-digit integer, got \"" + t + "\"", line);
    }
    return year;
}

using RawRecord = std::map<std::string, std::string>;

DocumentRecord build_record(const RawRecord& raw, std::size_t line,
                            const std::filesystem::path& base_dir) {
    DocumentRecord rec;
    rec.id = trim(raw.at("id"));
    if (rec.id.empty()) {
        throw ParseError("empty id", line);
    }
    try {
        rec.doc_type = parse_doc_type(trim(raw.at("doc_type")));
        rec.domain = parse_domain(trim(raw.at("domain")));
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " (document " + rec.id + ")", line);
    }
    rec.year = parse_year(raw.at("year"), line);
    rec.title = trim(raw.at("title"));

    const std::string source = trim(raw.at("source"));
    if (source.empty() || is_celex_id(source)) {
        rec.source = {DocumentSource::Kind::Identifier, source.empty() ? rec.id : source};
    } else {
        std::filesystem::path p(source);
        if (p.is_relative() && !base_dir.empty()) {
            p = base_dir / p;
        }
        rec.source = {DocumentSource::Kind::LocalPath, p.lexically_normal().string()};
    }
    return rec;
}

std::vector<DocumentRecord> validate_unique(std::vector<std::pair<DocumentRecord, std::size_t>> recs) {
    std::set<std::string> seen;
    std::vector<DocumentRecord> out;
    out.reserve(recs.size());
    for (auto& [rec, line] : recs) {
        if (!seen.insert(rec.id).second) {
            throw ParseError("duplicate id \"" + rec.id + "\"", line);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<DocumentRecord> parse_csv_manifest(std::string_view content,
                                               const std::filesystem::path& base_dir) {
    const auto rows = csv::parse(content);
    if (rows.empty()) {
        throw ParseError("manifest is empty (expected a header row)");
    }
    const auto& header = rows.front();
    std::vector<std::string> names;
    for (const auto& h : header.fields) {
        names.push_back(trim(h));
    }
    for (const auto& col : kManifestColumns) {
        if (std::find(names.begin(), names.end(), col) == names.end()) {
            throw ParseError("manifest header lacks column \"" + std::string(col) + "\"", header.line);
        }
    }
    for (const auto& name : names) {
        if (std::find(kManifestColumns.begin(), kManifestColumns.end(), name) == kManifestColumns.end()) {
            throw ParseError("unknown manifest column \"" + name + "\"", header.line);
        }
    }
    std::vector<std::pair<DocumentRecord, std::size_t>> recs;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != names.size()) {
            throw ParseError("expected " + std::to_string(names.size()) + " fields, found " +
                                 std::to_string(row.fields.size()),
                             row.line);
        }
        RawRecord raw;
        for (std::size_t c = 0; c < names.size(); ++c) {
            raw[names[c]] = row.fields[c];
        }
        recs.emplace_back(build_record(raw, row.line, base_dir), row.line);
    }
    return validate_unique(std::move(recs));
}

std::vector<DocumentRecord> parse_json_manifest(std::string_view content,
                                                const std::filesystem::path& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("documents")) {
        doc = doc.at("documents");
    }
    if (!doc.is_array()) {
        throw ParseError("JSON manifest must be an array of document objects");
    }
    std::vector<std::pair<DocumentRecord, std::size_t>> recs;
    std::size_t row = 0;
    for (const auto& item : doc) {
        ++row;
        if (!item.is_object()) {
            throw ParseError("manifest entry is not an object", row);
        }
        RawRecord raw;
        for (const auto& col : kManifestColumns) {
            const std::string key(col);
            if (!item.contains(key)) {
                throw ParseError("manifest entry lacks \"" + key + "\"", row);
            }
            const auto& v = item.at(key);
            raw[key] = v.is_string() ? v.get<std::string>() : v.dump();
        }
        for (const auto& [key, _] : item.items()) {
            if (std::find(kManifestColumns.begin(), kManifestColumns.end(), key) == kManifestColumns.end()) {
                throw ParseError("unknown manifest key \"" + key + "\"", row);
            }
        }
        recs.emplace_back(build_record(raw, row, base_dir), row);
    }
    return validate_unique(std::move(recs));
}

std::string collapse_whitespace(std::string_view line) {
    std::string out;
    std::size_t pos = 0;
    bool pending_space = false;
    while (pos < line.size()) {
        const std::size_t start = pos;
        const char32_t cp = detail::next_code_point(line, pos);
        if (detail::is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out.append(line.substr(start, pos - start));
    }
    return out;
}

std::string strip_controls(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = detail::next_code_point(text, pos);
        if (cp == U'\r') {
            // Lone CR is a line break; CRLF collapses to the LF that follows.
            if (pos >= text.size() || text[pos] != '\n') {
                out += '\n';
            }
            continue;
        }
        if (detail::is_control(cp)) {
            continue;
        }
        out.append(text.substr(start, pos - start));
    }
    return out;
}

}  // namespace

std::string_view to_string(DocType t) {
    for (const auto& [type, name] : kDocTypes) {
        if (type == t) {
            return name;
        }
    }
    return "?";
}

std::string_view to_string(Domain d) {
    for (const auto& spelling : kDomains) {
        if (spelling.domain == d) {
            return spelling.name;
        }
    }
    return "?";
}

std::string allowed_doc_types() {
    std::string out;
    for (const auto& [_, name] : kDocTypes) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

DocType parse_doc_type(std::string_view s) {
    const std::string key = lower(s);
    for (const auto& [type, name] : kDocTypes) {
        if (lower(name) == key) {
            return type;
        }
    }
    throw ParseError("unknown doc_type \"" + std::string(s) +
                     "\"; the corpus admits directives, regulations, communications (COM), staff "
                     "working documents (SWD), recommendations, decisions and joint declarations "
                     "(JOIN): " + allowed_doc_types());
}

Domain parse_domain(std::string_view s) {
    const std::string key = fold(s);
    for (const auto& spelling : kDomains) {
        if (fold(spelling.name) == key || fold(spelling.spelled_out) == key) {
            return spelling.domain;
        }
    }
    std::string allowed;
    for (const auto& spelling : kDomains) {
        allowed += allowed.empty() ? "" : ", ";
        allowed += spelling.name;
    }
    throw ParseError("unknown domain \"" + std::string(s) + "\"; allowed: " + allowed);
}

std::vector<DocumentRecord> parse_manifest(std::string_view content, bool json,
                                           const std::filesystem::path& base_dir) {
    return json ? parse_json_manifest(content, base_dir) : parse_csv_manifest(content, base_dir);
}

std::vector<DocumentRecord> load_manifest(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    const bool json = lower(path.extension().string()) == ".json";
    try {
        return parse_manifest(content, json, path.parent_path());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error("error reading " + path.string());
    }
    return ss.str();
}

BoilerplateFilter::BoilerplateFilter() : BoilerplateFilter(default_patterns()) {}

BoilerplateFilter::BoilerplateFilter(std::vector<std::string> patterns) {
    for (const auto& p : patterns) {
        add(p);
    }
}

std::vector<std::string> BoilerplateFilter::default_patterns() {
    return {
        // Official Journal mastheads, with or without date, series/page and language tag.
        R"(^(\d{1,2}\.\d{1,2}\.\d{4}\s+)?([LC]\s?\d+/\d+\s+)?(EN\s+)?Official Journal of the European (Union|Communities)(\s+[LC]\s?\d+/\d+)?(\s+\d{1,2}\.\d{1,2}\.\d{4})?$)",
        // Running page headers such as "L 119/1" or "C 202/13".
        R"(^[LC]\s?\d+/\d+$)",
        R"(^\d{1,2}\.\d{1,2}\.\d{4}$)",
        R"(^EN$)",
        R"(^ELI:\s*\S+$)",
        R"(^Top$)",
    };
}

std::vector<std::string> BoilerplateFilter::read_pattern_file(const std::filesystem::path& path) {
    std::vector<std::string> patterns;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty() && t.front() != '#') {
            patterns.push_back(t);
        }
    }
    return patterns;
}

void BoilerplateFilter::add(const std::string& pattern) {
    try {
        compiled_.emplace_back(pattern, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    } catch (const std::regex_error& e) {
        throw ParseError("invalid boilerplate pattern \"" + pattern + "\": " + e.what());
    }
    sources_.push_back(pattern);
}

bool BoilerplateFilter::matches(std::string_view line) const {
    const std::string t = trim(line);
    return std::any_of(compiled_.begin(), compiled_.end(),
                       [&](const std::regex& re) { return std::regex_search(t, re); });
}

std::string clean_text(std::string_view raw, const BoilerplateFilter& filter) {
    const std::string text = strip_controls(raw);
    std::vector<std::string> paragraphs;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            paragraphs.push_back(std::move(current));
            current.clear();
        }
    };

    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        const std::string_view line(text.data() + start, end - start);
        const std::string collapsed = collapse_whitespace(line);
        if (collapsed.empty()) {
            flush();
        } else if (!filter.matches(collapsed)) {
            if (!current.empty()) {
                current += ' ';
            }
            current += collapsed;
        }
        start = end + 1;
    }
    flush();

    std::string out;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
        if (i > 0) {
            out += "\n\n";
        }
        out += paragraphs[i];
    }
    return out;
}

DocumentAnalysis analyze_document(const DocumentRecord& rec, std::string_view text, LinsearMode mode,
                                  const BoilerplateFilter& filter) {
    const std::string cleaned = clean_text(text, filter);
    DocumentAnalysis result;
    result.metrics = compute_metrics(cleaned);
    try {
        result.grades = grade_all(cleaned, result.metrics, mode);
    } catch (const DegenerateTextError& e) {
        throw DegenerateTextError(e.reason(), rec.id);
    }
    return result;
}

TextResolver make_directory_resolver(std::filesystem::path dir) {
    return [dir = std::move(dir)](const DocumentRecord& rec) -> std::string {
        if (rec.source.kind == DocumentSource::Kind::LocalPath) {
            return read_file(rec.source.value);
        }
        if (dir.empty()) {
            throw Error("no texts directory configured for " + rec.id);
        }
        for (const auto& name : {rec.source.value, rec.id}) {
            const auto candidate = dir / (name + ".txt");
            std::error_code ec;
            if (std::filesystem::is_regular_file(candidate, ec)) {
                return read_file(candidate);
            }
        }
        throw Error("no text file for " + rec.id + " in " + dir.string());
    };
}

void assemble_statistics(CorpusReport& report) {
    std::vector<GradeVector> grades;
    grades.reserve(report.rows.size());
    for (const auto& row : report.rows) {
        grades.push_back(row.grades);
    }

    for (std::size_t i = 0; i < 5; ++i) {
        report.summary.columns[i] = describe(grade_column(grades, i));
    }
    std::vector<double> sums;
    std::vector<YearValue> years;
    for (const auto& row : report.rows) {
        sums.push_back(row.grades.sum_variable);
        years.push_back({row.record.year, row.grades.sum_variable});
    }
    report.summary.columns[5] = describe(sums);

    report.correlations = {};
    report.alpha = {};
    if (grades.size() < 2) {
        report.correlations.reason = "n < 2";
        report.alpha.reason = "n < 2";
    } else {
        try {
            report.correlations.value = correlation_matrix(grades);
        } catch (const StatsError& e) {
            report.correlations.reason = e.what();
        }
        try {
            const std::vector<std::vector<double>> columns = {
                grade_column(grades, 0), grade_column(grades, 1), grade_column(grades, 2)};
            report.alpha.value = cronbach_alpha(columns);
        } catch (const StatsError& e) {
            report.alpha.reason = e.what();
        }
    }
    report.by_year = per_year_aggregate(years);
}

CorpusReport analyze_corpus(const std::vector<DocumentRecord>& records, const TextResolver& resolve,
                            const AnalyzeOptions& options) {
    using Outcome = std::variant<DocumentAnalysis, std::string>;
    std::vector<Outcome> outcomes(records.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                const std::string text = resolve(records[i]);
                outcomes[i] = analyze_document(records[i], text, options.mode, options.filter);
            } catch (const std::exception& e) {
                outcomes[i] = std::string(e.what());
            }
        }
    };

    std::size_t jobs = options.jobs == 0 ? std::thread::hardware_concurrency() : options.jobs;
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(records.size(), 1));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
    }

    CorpusReport report;
    report.linsear_mode = options.mode;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (auto* ok = std::get_if<DocumentAnalysis>(&outcomes[i])) {
            report.rows.push_back({records[i], ok->metrics, ok->grades});
        } else {
            report.failures.push_back({records[i].id, std::get<std::string>(outcomes[i])});
        }
    }
    if (report.rows.empty()) {
        std::string detail;
        for (const auto& f : report.failures) {
            detail += "\n  " + f.id + ": " + f.reason;
        }
        throw Error("no document could be analyzed (" + std::to_string(report.failures.size()) +
                    " failures)" + detail);
    }
    assemble_statistics(report);
    return report;
}

}  // namespace lexread
