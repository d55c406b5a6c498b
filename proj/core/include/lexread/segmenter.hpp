#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexread {

/// Raw surface counts for one text. Every index formula consumes these.
struct TextMetrics {
    std::size_t sentence_count = 0;
    std::size_t word_count = 0;
    std::size_t syllable_count = 0;
    /// Words with three or more syllables.
    std::size_t polysyllable_count = 0;
    /// Alphanumeric code points inside word tokens.
    std::size_t character_count = 0;
    /// Alphabetic code points inside word tokens.
    std::size_t letter_count = 0;
    /// Words with at most two syllables.
    std::size_t easy_word_count = 0;
    std::size_t hard_word_count = 0;

    friend bool operator==(const TextMetrics&, const TextMetrics&) = default;

    TextMetrics& operator+=(const TextMetrics& other);
};

/// Canonical composed (NFC) form of UTF-8 text. Invalid sequences become U+FFFD.
std::string normalize_nfc(std::string_view text);

/// Splits text into sentences.
///
/// A sentence ends at a token whose last character before any closing
/// quotes/brackets is '.', '!' or '?', unless the token is one of the known
/// abbreviations ("Art.", "No.", "e.g.", ...). Splits only happen at
/// whitespace, so "1.5" never splits. Punctuation-only pieces are attached to
/// a neighbouring sentence so every returned sentence holds a word token.
/// Returned sentences are contiguous slices of the NFC-normalized input.
std::vector<std::string> segment_sentences(std::string_view text);

/// Whitespace-delimited runs that contain at least one alphanumeric code point.
std::vector<std::string> tokenize_words(std::string_view text);

/// Vowel-group syllable estimate for one word token; always >= 1.
std::size_t count_syllables(std::string_view word);

TextMetrics compute_metrics(std::string_view text);

/// True for the fixed abbreviation list, compared case-insensitively.
bool is_abbreviation(std::string_view token);

}  // namespace lexread
