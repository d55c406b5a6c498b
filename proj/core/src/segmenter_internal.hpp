#pragma once

// Shared by the segmenter and the Linsear windowing in indices.cpp.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexread::detail {

/// A maximal run of non-whitespace code points.
struct Run {
    std::size_t begin;  // byte offsets into the scanned text
    std::size_t end;
    std::u32string cps;
    bool is_word;  // holds at least one alphanumeric code point
};

/// Inclusive run-index range of one sentence.
struct SentenceSpan {
    std::size_t first;
    std::size_t last;
};

/// Expects NFC-normalized text.
std::vector<Run> scan_runs(std::string_view text);
std::vector<SentenceSpan> group_sentences(const std::vector<Run>& runs);
std::size_t count_syllables_cps(std::u32string_view word);

}  // namespace lexread::detail
