#include "radex/align.hpp"

#include <algorithm>
#include <cmath>

#include "radex/text_util.hpp"

namespace radex {

namespace {

bool has_alnum(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](unsigned char c) {
    return c >= 0x80 || std::isalnum(c);
  });
}

// Snaps a code-point range outward to whitespace-token boundaries.
std::optional<Span> snap_to_tokens(const std::vector<TextToken>& tokens, std::size_t start,
                                   std::size_t end) {
  std::optional<Span> snapped;
  for (const auto& token : tokens) {
    if (token.start < end && start < token.end) {
      if (!snapped) {
        snapped = Span{token.start, token.end};
      } else {
        snapped->end = token.end;
      }
    }
  }
  return snapped;
}

std::optional<Span> pick_candidate(std::vector<Span> candidates,
                                   const std::optional<Span>& anchor) {
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (!anchor) return candidates.front();
  double anchor_mid = anchor->midpoint();
  const Span* best = &candidates.front();
  double best_distance = std::abs(best->midpoint() - anchor_mid);
  for (const auto& candidate : candidates) {
    double distance = std::abs(candidate.midpoint() - anchor_mid);
    if (distance < best_distance) {
      best = &candidate;
      best_distance = distance;
    }
  }
  return *best;
}

}  // namespace

std::optional<Span> align_term(const std::string& sentence, const std::string& term,
                               const std::optional<Span>& anchor) {
  const std::string norm_term = normalize_text(term);
  if (norm_term.empty()) return std::nullopt;
  const auto tokens = whitespace_tokens(sentence);
  if (tokens.empty()) return std::nullopt;

  const bool single_token = norm_term.find(' ') == std::string::npos;
  if (single_token) {
    std::vector<Span> candidates;
    for (const auto& token : tokens) {
      if (normalize_text(token.text) == norm_term) {
        candidates.push_back(Span{token.start, token.end});
      }
    }
    return pick_candidate(std::move(candidates), anchor);
  }

  // Longest common substring over normalized text.
  const NormalizedText norm = normalize_with_map(sentence);
  const std::string& hay = norm.text;
  if (hay.empty()) return std::nullopt;

  const std::size_t n = hay.size();
  const std::size_t m = norm_term.size();
  std::vector<std::size_t> previous(m + 1, 0);
  std::vector<std::size_t> current(m + 1, 0);
  std::size_t best_len = 0;
  std::vector<std::size_t> best_ends;  // exclusive byte offsets into hay
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (hay[i - 1] == norm_term[j - 1]) {
        current[j] = previous[j - 1] + 1;
        if (current[j] > best_len) {
          best_len = current[j];
          best_ends.clear();
          best_ends.push_back(i);
        } else if (current[j] == best_len) {
          best_ends.push_back(i);
        }
      } else {
        current[j] = 0;
      }
    }
    std::swap(previous, current);
  }
  if (best_len == 0) return std::nullopt;

  std::vector<Span> candidates;
  for (std::size_t end : best_ends) {
    std::size_t begin = end - best_len;
    if (!has_alnum(std::string_view(hay).substr(begin, best_len))) continue;
    std::size_t cp_start = norm.cp_index[begin];
    std::size_t cp_end = norm.cp_index[end - 1] + 1;
    if (auto span = snap_to_tokens(tokens, cp_start, cp_end)) candidates.push_back(*span);
  }
  return pick_candidate(std::move(candidates), anchor);
}

std::vector<Event> attach_spans(const std::string& sentence, std::vector<Event> events) {
  for (auto& event : events) {
    if (!event.trigger.span) {
      event.trigger.span = align_term(sentence, event.trigger.text);
    }
    for (auto& anatomy : event.anatomies) {
      if (!anatomy.span) {
        anatomy.span = align_term(sentence, anatomy.text, event.trigger.span);
      }
    }
  }
  return events;
}

}  // namespace radex
