#include "lexread/csv.hpp"

#include "lexread/error.hpp"

namespace lexread::csv {

std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    while (i < n) {
        // Skip blank and comment lines at record start.
        if (text[i] == '\n' || text[i] == '\r') {
            if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') {
                ++i;
            }
            ++i;
            ++line;
            continue;
        }
        if (text[i] == '#') {
            while (i < n && text[i] != '\n') {
                ++i;
            }
            continue;
        }

        Row row;
        row.line = line;
        std::string field;
        bool done = false;
        while (!done) {
            field.clear();
            if (i < n && text[i] == '"') {
                const std::size_t quote_line = line;
                ++i;
                bool closed = false;
                while (i < n) {
                    if (text[i] == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        closed = true;
                        break;
                    }
                    if (text[i] == '\n') {
                        ++line;
                    }
                    field += text[i++];
                }
                if (!closed) {
                    throw ParseError("unterminated quoted field", quote_line);
                }
                if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    throw ParseError("unexpected character after closing quote", line);
                }
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    field += text[i++];
                }
            }
            row.fields.push_back(field);
            if (i < n && text[i] == ',') {
                ++i;
                continue;
            }
            done = true;
        }
        if (i < n && text[i] == '\r') {
            ++i;
        }
        if (i < n && text[i] == '\n') {
            ++i;
            ++line;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += escape(fields[i]);
    }
    return out;
}

}  // namespace lexread::csv
