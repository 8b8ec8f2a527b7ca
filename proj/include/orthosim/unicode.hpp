#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace orthosim::unicode {

// Thin layer over ICU character properties. All text inside the toolkit is
// UTF-8 in std::string; code points are char32_t.

/// Validates UTF-8 strictly (no overlongs, surrogates or values past
/// U+10FFFF). Throws DecodeError naming `source` and the byte offset of the
/// first ill-formed sequence.
void validate_utf8(std::string_view bytes, const std::string& source);

/// Converts `bytes` in `encoding` (any ICU converter name; "utf-8" is
/// validated without conversion) to UTF-8. A leading byte-order mark is
/// dropped. Unmappable input throws DecodeError.
std::string to_utf8(std::string_view bytes, std::string_view encoding,
                    const std::string& source);

/// Decodes one scalar at `pos` of a valid UTF-8 string and advances `pos`.
char32_t next(std::string_view utf8, std::size_t& pos);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

/// Number of Unicode scalar values. Input must be valid UTF-8.
std::size_t scalar_count(std::string_view utf8);

bool is_whitespace(char32_t cp);
/// General category P* (Pc, Pd, Ps, Pe, Pi, Pf, Po).
bool is_punctuation(char32_t cp);
/// General category Nd.
bool is_decimal_digit(char32_t cp);
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view utf8);

}  // namespace orthosim::unicode
