#include "radex/text_util.hpp"

#include <cctype>

namespace radex {

namespace {

inline bool is_utf8_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

inline bool is_space_byte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::size_t cp_length(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if (!is_utf8_continuation(c)) ++n;
  }
  return n;
}

std::string cp_slice(std::string_view text, std::size_t start, std::size_t end) {
  if (start >= end) return {};
  std::string out;
  std::size_t cp = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (!is_utf8_continuation(c)) {
      if (cp >= end) break;
      ++cp;
    }
    // cp is now the 1-based index of the code point this byte belongs to.
    if (cp > start && cp <= end) out.push_back(static_cast<char>(c));
  }
  return out;
}

std::vector<TextToken> whitespace_tokens(std::string_view text) {
  std::vector<TextToken> tokens;
  std::size_t cp = 0;
  TextToken current;
  bool in_token = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    bool new_cp = !is_utf8_continuation(c);
    bool space = c < 0x80 && is_space_byte(c);
    if (space) {
      if (in_token) {
        current.end = cp;
        tokens.push_back(current);
        in_token = false;
      }
    } else {
      if (!in_token) {
        current = TextToken{};
        current.start = cp;
        in_token = true;
      }
      current.text.push_back(static_cast<char>(c));
    }
    if (new_cp) ++cp;
  }
  if (in_token) {
    current.end = cp;
    tokens.push_back(current);
  }
  return tokens;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (c < 0x80 && is_space_byte(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) {
        out.push_back(' ');
        pending_space = false;
      }
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

NormalizedText normalize_with_map(std::string_view text) {
  NormalizedText norm;
  std::size_t cp = 0;
  bool pending_space = false;
  std::size_t pending_space_cp = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    bool new_cp = !is_utf8_continuation(c);
    std::size_t this_cp = cp;
    if (new_cp) ++cp;

    if (c < 0x80) {
      if (std::isalnum(c)) {
        if (pending_space && !norm.text.empty()) {
          norm.text.push_back(' ');
          norm.cp_index.push_back(pending_space_cp);
        }
        pending_space = false;
        norm.text.push_back(static_cast<char>(std::tolower(c)));
        norm.cp_index.push_back(this_cp);
      } else {
        // Whitespace and punctuation both act as separators.
        if (!pending_space) pending_space_cp = this_cp;
        pending_space = true;
      }
    } else {
      // Non-ASCII code points are kept verbatim.
      if (pending_space && !norm.text.empty()) {
        norm.text.push_back(' ');
        norm.cp_index.push_back(pending_space_cp);
      }
      pending_space = false;
      norm.text.push_back(static_cast<char>(c));
      norm.cp_index.push_back(this_cp);
    }
  }
  return norm;
}

std::string normalize_text(std::string_view text) {
  return normalize_with_map(text).text;
}

}  // namespace radex
