#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// UTF-8 helpers backed by ICU. Malformed sequences decode to U+FFFD.
namespace fakenews::unicode {

std::string normalize_nfc(std::string_view utf8);

/// Decodes the code point starting at `pos` and advances `pos` past it.
char32_t next_codepoint(std::string_view utf8, std::size_t& pos) noexcept;

/// Pictographs plus the joiners, selectors, modifiers and tag characters
/// that glue multi-code-point emoji sequences together.
bool is_emoji_part(char32_t cp) noexcept;

/// Letters, digits, combining marks and '_'.
bool is_word_char(char32_t cp) noexcept;

std::string to_lower(std::string_view utf8);

}  // namespace fakenews::unicode
