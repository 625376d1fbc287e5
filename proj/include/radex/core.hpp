#ifndef RADEX_CORE_HPP
#define RADEX_CORE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "radex/ontology.hpp"

namespace radex {

// Half-open character range [start, end) in code-point offsets.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
  double midpoint() const { return (static_cast<double>(start) + static_cast<double>(end)) / 2.0; }
};

// Touching spans do not overlap.
bool overlaps(const Span& a, const Span& b);

struct Trigger {
  std::string text;
  std::optional<Span> span;
  TriggerType type = TriggerType::Lesion;

  bool operator==(const Trigger&) const = default;
};

struct AnatomyEntity {
  std::string text;
  std::optional<Span> span;
  std::optional<AnatomyLabel> label;

  bool operator==(const AnatomyEntity&) const = default;
};

// One trigger with its anatomy entities; anatomy order is emission order.
struct Event {
  Trigger trigger;
  std::vector<AnatomyEntity> anatomies;

  bool operator==(const Event&) const = default;
};

struct SentenceKey {
  std::string doc_id;
  std::size_t index = 0;

  bool operator==(const SentenceKey&) const = default;
  bool operator<(const SentenceKey& other) const {
    if (doc_id != other.doc_id) return doc_id < other.doc_id;
    return index < other.index;
  }
};

struct Document {
  std::string id;
  std::string exam_type;
  std::vector<std::string> sentences;
};

struct Corpus {
  std::vector<Document> documents;

  const Document* find(const std::string& doc_id) const;
  std::size_t sentence_count() const;
};

enum class ViolationKind { InvalidSpan, OutOfBounds, TextMismatch };

struct Violation {
  ViolationKind kind;
  std::string message;
};

// Checks span validity and span/text agreement for a candidate event.
std::vector<Violation> validate_event(const std::string& sentence, const Event& event);

}  // namespace radex

#endif  // RADEX_CORE_HPP
