#ifndef RADEX_CONTEXT_HPP
#define RADEX_CONTEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "radex/core.hpp"

namespace radex {

// Context sentences around a prompt. Prepended entries go before the
// input sentence (exam type, section header, prior sentences, in that
// order); appended entries go between the input sentence and the task
// ontology (following sentences, then retrieved sentences).
struct ContextBundle {
  std::vector<std::string> prepended;
  std::vector<std::string> appended;

  bool empty() const { return prepended.empty() && appended.empty(); }
};

enum class ContextKind { AdjacentSentences, MetadataAndHeader, BM25Retrieval, AllCombined };

std::optional<ContextKind> context_kind_from_string(std::string_view text);
std::string to_string(ContextKind kind);

// Read-only sentence retriever; implementations must tolerate concurrent
// calls.
class Retriever {
 public:
  virtual ~Retriever() = default;
  virtual std::vector<std::string> retrieve(const std::string& query, std::size_t top_k) const = 0;
};

// Section header per the colon rule: the beginning of the closest
// preceding sentence that contains ':', up to and including the colon.
std::optional<std::string> extract_section_header(const Document& document,
                                                  std::size_t sentence_index);

class RetrieverMissing : public std::runtime_error {
 public:
  RetrieverMissing() : std::runtime_error("context kind requires a retriever") {}
};

ContextBundle gather_context(const Document& document, std::size_t sentence_index,
                             ContextKind kind, const Retriever* retriever = nullptr);

}  // namespace radex

#endif  // RADEX_CONTEXT_HPP
