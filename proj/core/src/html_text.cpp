#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lexread/fetcher.hpp"
#include "unicode.hpp"

namespace lexread {

namespace {

const std::unordered_map<std::string_view, char32_t>& named_entities() {
    static const std::unordered_map<std::string_view, char32_t> table = {
        {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},
        {"apos", U'\''},    {"nbsp", 0x00A0},   {"ensp", 0x2002},   {"emsp", 0x2003},
        {"thinsp", 0x2009}, {"ndash", 0x2013},  {"mdash", 0x2014},  {"lsquo", 0x2018},
        {"rsquo", 0x2019},  {"sbquo", 0x201A},  {"ldquo", 0x201C},  {"rdquo", 0x201D},
        {"bdquo", 0x201E},  {"hellip", 0x2026}, {"bull", 0x2022},   {"middot", 0x00B7},
        {"laquo", 0x00AB},  {"raquo", 0x00BB},  {"lsaquo", 0x2039}, {"rsaquo", 0x203A},
        {"euro", 0x20AC},   {"pound", 0x00A3},  {"cent", 0x00A2},   {"yen", 0x00A5},
        {"copy", 0x00A9},   {"reg", 0x00AE},    {"trade", 0x2122},  {"sect", 0x00A7},
        {"para", 0x00B6},   {"deg", 0x00B0},    {"plusmn", 0x00B1}, {"times", 0x00D7},
        {"divide", 0x00F7}, {"minus", 0x2212},  {"shy", 0x00AD},    {"ordm", 0x00BA},
        {"ordf", 0x00AA},   {"sup1", 0x00B9},   {"sup2", 0x00B2},   {"sup3", 0x00B3},
        {"frac12", 0x00BD}, {"frac14", 0x00BC}, {"frac34", 0x00BE}, {"iexcl", 0x00A1},
        {"iquest", 0x00BF}, {"dagger", 0x2020}, {"Dagger", 0x2021}, {"permil", 0x2030},
        {"Agrave", 0x00C0}, {"Aacute", 0x00C1}, {"Acirc", 0x00C2},  {"Atilde", 0x00C3},
        {"Auml", 0x00C4},   {"Aring", 0x00C5},  {"AElig", 0x00C6},  {"Ccedil", 0x00C7},
        {"Egrave", 0x00C8}, {"Eacute", 0x00C9}, {"Ecirc", 0x00CA},  {"Euml", 0x00CB},
        {"Igrave", 0x00CC}, {"Iacute", 0x00CD}, {"Icirc", 0x00CE},  {"Iuml", 0x00CF},
        {"Ntilde", 0x00D1}, {"Ograve", 0x00D2}, {"Oacute", 0x00D3}, {"Ocirc", 0x00D4},
        {"Otilde", 0x00D5}, {"Ouml", 0x00D6},   {"Oslash", 0x00D8}, {"Ugrave", 0x00D9},
        {"Uacute", 0x00DA}, {"Ucirc", 0x00DB},  {"Uuml", 0x00DC},   {"Yacute", 0x00DD},
        {"szlig", 0x00DF},  {"agrave", 0x00E0}, {"aacute", 0x00E1}, {"acirc", 0x00E2},
        {"atilde", 0x00E3}, {"auml", 0x00E4},   {"aring", 0x00E5},  {"aelig", 0x00E6},
        {"ccedil", 0x00E7}, {"egrave", 0x00E8}, {"eacute", 0x00E9}, {"ecirc", 0x00EA},
        {"euml", 0x00EB},   {"igrave", 0x00EC}, {"iacute", 0x00ED}, {"icirc", 0x00EE},
        {"iuml", 0x00EF},   {"ntilde", 0x00F1}, {"ograve", 0x00F2}, {"oacute", 0x00F3},
        {"ocirc", 0x00F4},  {"otilde", 0x00F5}, {"ouml", 0x00F6},   {"oslash", 0x00F8},
        {"ugrave", 0x00F9}, {"uacute", 0x00FA}, {"ucirc", 0x00FB},  {"uuml", 0x00FC},
        {"yacute", 0x00FD}, {"yuml", 0x00FF},   {"OElig", 0x0152},  {"oelig", 0x0153},
        {"Scaron", 0x0160}, {"scaron", 0x0161}, {"Zcaron", 0x017D}, {"zcaron", 0x017E},
    };
    return table;
}

// Subtrees dropped entirely.
const std::unordered_set<std::string_view> kSkippedElements = {
    "head", "script", "style", "noscript", "template", "nav", "header", "footer",
    "aside", "svg", "iframe", "object", "button", "select", "form",
};

// Content is raw text up to the matching close tag.
const std::unordered_set<std::string_view> kRawTextElements = {"script", "style", "textarea"};

const std::unordered_set<std::string_view> kBlockElements = {
    "p", "div", "br", "h1", "h2", "h3", "h4", "h5", "h6", "li", "ul", "ol", "dl", "dt", "dd",
    "table", "thead", "tbody", "tfoot", "tr", "caption", "section", "article", "main",
    "blockquote", "pre", "hr", "figure", "figcaption", "address", "title", "body", "html",
};

const std::unordered_set<std::string_view> kCellElements = {"td", "th"};

const std::unordered_set<std::string_view> kVoidElements = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "source", "track", "wbr",
};

const std::unordered_set<std::string_view> kSkippedRoles = {"navigation", "banner", "contentinfo", "search"};

struct Tag {
    std::string name;
    bool closing = false;
    bool self_closing = false;
    std::string role;
};

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

/// Parses the tag starting at html[pos] == '<'. Returns the index after '>'.
std::size_t parse_tag(std::string_view html, std::size_t pos, Tag& tag) {
    std::size_t i = pos + 1;
    if (i < html.size() && html[i] == '/') {
        tag.closing = true;
        ++i;
    }
    const std::size_t name_start = i;
    while (i < html.size() && (std::isalnum(static_cast<unsigned char>(html[i])) || html[i] == '-' ||
                               html[i] == ':')) {
        ++i;
    }
    tag.name = ascii_lower(html.substr(name_start, i - name_start));

    while (i < html.size() && html[i] != '>') {
        const unsigned char c = static_cast<unsigned char>(html[i]);
        if (std::isspace(c) || c == '/') {
            if (c == '/') {
                tag.self_closing = true;
            }
            ++i;
            continue;
        }
        tag.self_closing = false;
        const std::size_t attr_start = i;
        while (i < html.size() && html[i] != '=' && html[i] != '>' &&
               !std::isspace(static_cast<unsigned char>(html[i]))) {
            ++i;
        }
        const std::string attr = ascii_lower(html.substr(attr_start, i - attr_start));
        std::string value;
        while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) {
            ++i;
        }
        if (i < html.size() && html[i] == '=') {
            ++i;
            while (i < html.size() && std::isspace(static_cast<unsigned char>(html[i]))) {
                ++i;
            }
            if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
                const char quote = html[i++];
                const std::size_t v = i;
                while (i < html.size() && html[i] != quote) {
                    ++i;
                }
                value = std::string(html.substr(v, i - v));
                if (i < html.size()) {
                    ++i;
                }
            } else {
                const std::size_t v = i;
                while (i < html.size() && html[i] != '>' && !std::isspace(static_cast<unsigned char>(html[i]))) {
                    ++i;
                }
                value = std::string(html.substr(v, i - v));
            }
        }
        if (attr == "role") {
            tag.role = ascii_lower(value);
        }
    }
    return i < html.size() ? i + 1 : html.size();
}

class TextBuilder {
public:
    void text(std::string_view s) { current_ += s; }
    void space() { current_ += ' '; }
    void paragraph_break() {
        std::string collapsed;
        std::size_t pos = 0;
        bool pending = false;
        while (pos < current_.size()) {
            const std::size_t start = pos;
            const char32_t cp = detail::next_code_point(current_, pos);
            if (detail::is_space(cp) || cp == 0x00AD) {
                // Soft hyphens vanish; other spacing collapses.
                if (cp != 0x00AD) {
                    pending = !collapsed.empty();
                }
                continue;
            }
            if (pending) {
                collapsed += ' ';
                pending = false;
            }
            collapsed.append(current_, start, pos - start);
        }
        if (!collapsed.empty()) {
            paragraphs_.push_back(std::move(collapsed));
        }
        current_.clear();
    }
    std::string finish() {
        paragraph_break();
        std::string out;
        for (std::size_t i = 0; i < paragraphs_.size(); ++i) {
            if (i > 0) {
                out += "\n\n";
            }
            out += paragraphs_[i];
        }
        return out;
    }

private:
    std::string current_;
    std::vector<std::string> paragraphs_;
};

}  // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out += text[i++];
            continue;
        }
        const std::size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 33) {
            out += text[i++];
            continue;
        }
        const std::string_view body = text.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        bool ok = false;
        if (body.size() > 1 && body[0] == '#') {
            const bool hex = body[1] == 'x' || body[1] == 'X';
            const std::string_view digits = body.substr(hex ? 2 : 1);
            std::uint32_t value = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value,
                                                   hex ? 16 : 10);
            if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) {
                ok = true;
                const bool invalid = value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF);
                cp = invalid ? 0xFFFD : static_cast<char32_t>(value);
            }
        } else {
            const auto& table = named_entities();
            if (const auto it = table.find(body); it != table.end()) {
                ok = true;
                cp = it->second;
            }
        }
        if (!ok) {
            out += text[i++];
            continue;
        }
        detail::append_utf8(out, cp);
        i = semi + 1;
    }
    return out;
}

std::string extract_text_from_html(std::string_view html) {
    TextBuilder builder;
    std::size_t i = 0;

    while (i < html.size()) {
        if (html[i] != '<') {
            const std::size_t next = std::min(html.find('<', i), html.size());
            builder.text(decode_entities(html.substr(i, next - i)));
            i = next;
            continue;
        }
        if (html.substr(i, 4) == "<!--") {
            const std::size_t end = html.find("-->", i + 4);
            i = end == std::string_view::npos ? html.size() : end + 3;
            continue;
        }
        if (i + 1 < html.size() && (html[i + 1] == '!' || html[i + 1] == '?')) {
            const std::size_t end = html.find('>', i);
            i = end == std::string_view::npos ? html.size() : end + 1;
            continue;
        }
        const bool looks_like_tag =
            i + 1 < html.size() && (std::isalpha(static_cast<unsigned char>(html[i + 1])) || html[i + 1] == '/');
        if (!looks_like_tag) {
            builder.text("<");
            ++i;
            continue;
        }

        Tag tag;
        i = parse_tag(html, i, tag);
        if (tag.closing) {
            if (kBlockElements.contains(tag.name)) {
                builder.paragraph_break();
            } else if (kCellElements.contains(tag.name)) {
                builder.space();
            }
            continue;
        }

        const bool skip = kSkippedElements.contains(tag.name) || kSkippedRoles.contains(tag.role);
        if (kRawTextElements.contains(tag.name)) {
            const std::string close = "</" + tag.name;
            std::size_t end = i;
            while (true) {
                end = html.find('<', end);
                if (end == std::string_view::npos || ascii_lower(html.substr(end, close.size())) == close) {
                    break;
                }
                ++end;
            }
            if (!skip && end != std::string_view::npos) {
                builder.text(decode_entities(html.substr(i, end - i)));
            }
            if (end == std::string_view::npos) {
                i = html.size();
            } else {
                Tag close_tag;
                i = parse_tag(html, end, close_tag);
            }
            continue;
        }
        if (skip && !tag.self_closing && !kVoidElements.contains(tag.name)) {
            // Drop everything up to the balancing close tag of the same name.
            std::size_t depth = 1;
            while (i < html.size() && depth > 0) {
                const std::size_t lt = html.find('<', i);
                if (lt == std::string_view::npos) {
                    i = html.size();
                    break;
                }
                if (html.substr(lt, 4) == "<!--") {
                    const std::size_t end = html.find("-->", lt + 4);
                    i = end == std::string_view::npos ? html.size() : end + 3;
                    continue;
                }
                Tag inner;
                i = parse_tag(html, lt, inner);
                if (inner.name == tag.name && !inner.self_closing) {
                    if (!inner.closing) {
                        ++depth;
                    } else if (--depth == 0) {
                        break;
                    }
                }
            }
            builder.paragraph_break();
            continue;
        }
        if (kBlockElements.contains(tag.name)) {
            builder.paragraph_break();
        } else if (kCellElements.contains(tag.name)) {
            builder.space();
        }
    }
    return builder.finish();
}

}  // namespace lexread
