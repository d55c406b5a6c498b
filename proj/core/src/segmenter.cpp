#include "lexread/segmenter.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "segmenter_internal.hpp"
#include "unicode.hpp"

namespace lexread {

namespace {

constexpr std::array<std::u32string_view, 9> kAbbreviations = {
    U"art.", U"no.", U"e.g.", U"i.e.", U"cf.", U"p.", U"mr.", U"mrs.", U"dr.",
};

bool is_closer(char32_t cp) {
    switch (cp) {
        case U'"': case U'\'': case U')': case U']': case U'}':
        case U'»': case U'”': case U'’': case U'›':
            return true;
        default:
            return false;
    }
}

bool is_opener(char32_t cp) {
    switch (cp) {
        case U'"': case U'\'': case U'(': case U'[': case U'{':
        case U'«': case U'“': case U'‘': case U'‹':
            return true;
        default:
            return false;
    }
}

bool is_terminator(char32_t cp) {
    return cp == U'.' || cp == U'!' || cp == U'?';
}

bool is_hyphen(char32_t cp) {
    return cp == U'-' || cp == U'‐' || cp == U'‑';
}

bool is_vowel(char32_t cp) {
    switch (cp) {
        case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
            return true;
        default:
            return false;
    }
}

std::u32string decode(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        out.push_back(detail::next_code_point(text, pos));
    }
    return out;
}

bool is_abbreviation_cps(std::u32string_view token) {
    while (!token.empty() && is_opener(token.front())) {
        token.remove_prefix(1);
    }
    std::u32string lowered(token);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), detail::to_lower);
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), lowered) != kAbbreviations.end();
}

bool ends_sentence(std::u32string_view token) {
    while (!token.empty() && is_closer(token.back())) {
        token.remove_suffix(1);
    }
    if (token.empty() || !is_terminator(token.back())) {
        return false;
    }
    return !is_abbreviation_cps(token);
}

/// Syllables of one hyphen-free part; 0 when it has no letters.
std::size_t part_syllables(std::u32string_view part) {
    std::u32string letters;
    for (char32_t cp : part) {
        if (detail::is_alpha(cp)) {
            letters.push_back(detail::to_lower(cp));
        }
    }
    if (letters.empty()) {
        return 0;
    }
    std::size_t groups = 0;
    bool in_group = false;
    for (char32_t cp : letters) {
        const bool vowel = is_vowel(cp);
        if (vowel && !in_group) {
            ++groups;
        }
        in_group = vowel;
    }
    const std::size_t n = letters.size();
    if (letters.back() == U'e' && groups > 1) {
        const bool consonant_le = n >= 3 && letters[n - 2] == U'l' && !is_vowel(letters[n - 3]);
        if (!consonant_le) {
            --groups;
        }
    }
    return std::max<std::size_t>(groups, 1);
}

std::size_t syllables_of(std::u32string_view word) {
    std::size_t total = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= word.size(); ++i) {
        if (i == word.size() || is_hyphen(word[i])) {
            total += part_syllables(word.substr(start, i - start));
            start = i + 1;
        }
    }
    return std::max<std::size_t>(total, 1);
}

}  // namespace

namespace detail {

std::vector<Run> scan_runs(std::string_view text) {
    std::vector<Run> runs;
    std::size_t pos = 0;
    bool in_run = false;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = next_code_point(text, pos);
        if (is_space(cp)) {
            in_run = false;
            continue;
        }
        if (!in_run) {
            runs.push_back(Run{start, pos, {}, false});
            in_run = true;
        }
        Run& run = runs.back();
        run.end = pos;
        run.cps.push_back(cp);
        run.is_word = run.is_word || is_alnum(cp);
    }
    return runs;
}

std::vector<SentenceSpan> group_sentences(const std::vector<Run>& runs) {
    std::vector<SentenceSpan> sentences;
    std::size_t first = 0;
    bool has_word = false;
    bool open = false;

    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!open) {
            first = i;
            open = true;
            has_word = false;
        }
        has_word = has_word || runs[i].is_word;
        if (!ends_sentence(runs[i].cps)) {
            continue;
        }
        if (has_word) {
            sentences.push_back({first, i});
            open = false;
        } else if (!sentences.empty()) {
            sentences.back().last = i;
            open = false;
        }
    }
    if (open) {
        if (has_word) {
            sentences.push_back({first, runs.size() - 1});
        } else if (!sentences.empty()) {
            sentences.back().last = runs.size() - 1;
        }
    }
    return sentences;
}

}  // namespace detail

TextMetrics& TextMetrics::operator+=(const TextMetrics& other) {
    sentence_count += other.sentence_count;
    word_count += other.word_count;
    syllable_count += other.syllable_count;
    polysyllable_count += other.polysyllable_count;
    character_count += other.character_count;
    letter_count += other.letter_count;
    easy_word_count += other.easy_word_count;
    hard_word_count += other.hard_word_count;
    return *this;
}

bool is_abbreviation(std::string_view token) {
    return is_abbreviation_cps(decode(token));
}

std::vector<std::string> segment_sentences(std::string_view text) {
    const std::string normalized = normalize_nfc(text);
    const auto runs = detail::scan_runs(normalized);
    std::vector<std::string> out;
    for (const auto& span : detail::group_sentences(runs)) {
        const std::size_t begin = runs[span.first].begin;
        const std::size_t end = runs[span.last].end;
        out.emplace_back(normalized.substr(begin, end - begin));
    }
    return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
    const std::string normalized = normalize_nfc(text);
    std::vector<std::string> out;
    for (const auto& run : detail::scan_runs(normalized)) {
        if (run.is_word) {
            out.emplace_back(normalized.substr(run.begin, run.end - run.begin));
        }
    }
    return out;
}

std::size_t count_syllables(std::string_view word) {
    return syllables_of(decode(normalize_nfc(word)));
}

std::size_t detail::count_syllables_cps(std::u32string_view word) {
    return syllables_of(word);
}

TextMetrics compute_metrics(std::string_view text) {
    const std::string normalized = normalize_nfc(text);
    const auto runs = detail::scan_runs(normalized);

    TextMetrics m;
    for (const auto& run : runs) {
        if (!run.is_word) {
            continue;
        }
        ++m.word_count;
        const std::size_t syllables = syllables_of(run.cps);
        m.syllable_count += syllables;
        if (syllables >= 3) {
            ++m.hard_word_count;
        } else {
            ++m.easy_word_count;
        }
        for (char32_t cp : run.cps) {
            if (detail::is_alnum(cp)) {
                ++m.character_count;
            }
            if (detail::is_alpha(cp)) {
                ++m.letter_count;
            }
        }
    }
    m.polysyllable_count = m.hard_word_count;
    m.sentence_count = detail::group_sentences(runs).size();
    return m;
}

}  // namespace lexread
