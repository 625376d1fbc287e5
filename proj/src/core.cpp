#include "radex/core.hpp"

#include "radex/text_util.hpp"

namespace radex {

bool overlaps(const Span& a, const Span& b) {
  return a.start < b.end && b.start < a.end;
}

const Document* Corpus::find(const std::string& doc_id) const {
  for (const auto& doc : documents) {
    if (doc.id == doc_id) return &doc;
  }
  return nullptr;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.sentences.size();
  return n;
}

namespace {

void check_span_text(const std::string& sentence, std::size_t sentence_len,
                     const std::optional<Span>& span, const std::string& text,
                     const std::string& what, std::vector<Violation>& out) {
  if (!span) return;
  if (span->start >= span->end) {
    out.push_back({ViolationKind::InvalidSpan, what + ": span start must precede end"});
    return;
  }
  if (span->end > sentence_len) {
    out.push_back({ViolationKind::OutOfBounds, what + ": span exceeds sentence length"});
    return;
  }
  if (cp_slice(sentence, span->start, span->end) != text) {
    out.push_back({ViolationKind::TextMismatch,
                   what + ": sentence slice does not equal \"" + text + "\""});
  }
}

}  // namespace

std::vector<Violation> validate_event(const std::string& sentence, const Event& event) {
  std::vector<Violation> violations;
  std::size_t len = cp_length(sentence);
  check_span_text(sentence, len, event.trigger.span, event.trigger.text, "trigger", violations);
  for (std::size_t i = 0; i < event.anatomies.size(); ++i) {
    check_span_text(sentence, len, event.anatomies[i].span, event.anatomies[i].text,
                    "anatomy[" + std::to_string(i) + "]", violations);
  }
  return violations;
}

}  // namespace radex
