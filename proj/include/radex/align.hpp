#ifndef RADEX_ALIGN_HPP
#define RADEX_ALIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "radex/core.hpp"

namespace radex {

// Maps predicted surface strings back to character spans in the input
// sentence. Single-token terms match whole tokens whose normalized form
// equals the normalized term. Multi-token terms match the sentence region
// with the longest common normalized substring, snapped outward to token
// boundaries. Ties go to the leftmost candidate, or to the candidate
// closest to the anchor midpoint when an anchor is given.
//
// Returns nullopt (not an error) when the term shares nothing with the
// sentence.
std::optional<Span> align_term(const std::string& sentence, const std::string& term,
                               const std::optional<Span>& anchor = std::nullopt);

// Aligns trigger spans (no anchor) and anatomy spans (trigger span as
// anchor). Entities that already carry spans are left untouched;
// unalignable entities keep span = nullopt and are retained.
std::vector<Event> attach_spans(const std::string& sentence, std::vector<Event> events);

}  // namespace radex

#endif  // RADEX_ALIGN_HPP
