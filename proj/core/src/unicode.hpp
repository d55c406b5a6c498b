#pragma once

// Internal code-point helpers backed by ICU. Not installed.

#include <cstddef>
#include <string>
#include <string_view>

namespace lexread::detail {

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Ill-formed sequences decode to U+FFFD and consume one byte.
char32_t next_code_point(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_alpha(char32_t cp);
bool is_alnum(char32_t cp);
/// Cc/Cf code points other than tab and newline.
bool is_control(char32_t cp);
char32_t to_lower(char32_t cp);

}  // namespace lexread::detail
