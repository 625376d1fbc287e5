#ifndef RADEX_TEXT_UTIL_HPP
#define RADEX_TEXT_UTIL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared across the library. All spans and offsets in
// radex are Unicode scalar-value (code point) indices, never bytes.

namespace radex {

// Number of code points in a UTF-8 string. Invalid bytes count as one
// code point each so offsets stay monotone on malformed input.
std::size_t cp_length(std::string_view text);

// Substring by code-point range [start, end). Clamped to the text length.
std::string cp_slice(std::string_view text, std::size_t start, std::size_t end);

// A whitespace-delimited token with its code-point span in the source.
struct TextToken {
  std::string text;
  std::size_t start = 0;  // inclusive, code points
  std::size_t end = 0;    // exclusive, code points
};

std::vector<TextToken> whitespace_tokens(std::string_view text);

// Trims ASCII whitespace at both ends and collapses internal runs to a
// single space.
std::string collapse_whitespace(std::string_view text);

std::string to_lower_ascii(std::string_view text);

// Normalized view of a string: lowercased, punctuation replaced by
// whitespace, whitespace collapsed. cp_index[i] gives the code-point
// offset in the original string for byte i of `text`.
struct NormalizedText {
  std::string text;
  std::vector<std::size_t> cp_index;
};

NormalizedText normalize_with_map(std::string_view text);

// normalize_with_map(...).text without the offset map.
std::string normalize_text(std::string_view text);

}  // namespace radex

#endif  // RADEX_TEXT_UTIL_HPP
