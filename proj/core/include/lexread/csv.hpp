#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexread::csv {

struct Row {
    /// 1-based line number where the record starts.
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// RFC 4180 reader: comma separated, double-quote escaping, quoted fields may
/// span lines. Blank lines and lines starting with '#' are skipped.
/// Throws ParseError on an unterminated quote or stray characters after one.
std::vector<Row> parse(std::string_view text);

/// Quotes the field only when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace lexread::csv
