#include "radex/context.hpp"

#include "radex/text_util.hpp"

namespace radex {

std::optional<ContextKind> context_kind_from_string(std::string_view text) {
  std::string t(text);
  if (t == "adjacent") return ContextKind::AdjacentSentences;
  if (t == "metadata") return ContextKind::MetadataAndHeader;
  if (t == "bm25") return ContextKind::BM25Retrieval;
  if (t == "all") return ContextKind::AllCombined;
  return std::nullopt;
}

std::string to_string(ContextKind kind) {
  switch (kind) {
    case ContextKind::AdjacentSentences: return "adjacent";
    case ContextKind::MetadataAndHeader: return "metadata";
    case ContextKind::BM25Retrieval: return "bm25";
    case ContextKind::AllCombined: return "all";
  }
  return {};
}

std::optional<std::string> extract_section_header(const Document& document,
                                                  std::size_t sentence_index) {
  if (sentence_index == 0 || sentence_index > document.sentences.size()) return std::nullopt;
  for (std::size_t i = sentence_index; i-- > 0;) {
    const std::string& sentence = document.sentences[i];
    std::size_t colon = sentence.find(':');
    if (colon != std::string::npos) {
      return sentence.substr(0, colon + 1);
    }
  }
  return std::nullopt;
}

ContextBundle gather_context(const Document& document, std::size_t sentence_index,
                             ContextKind kind, const Retriever* retriever) {
  const bool adjacent = kind == ContextKind::AdjacentSentences || kind == ContextKind::AllCombined;
  const bool metadata = kind == ContextKind::MetadataAndHeader || kind == ContextKind::AllCombined;
  const bool retrieved = kind == ContextKind::BM25Retrieval || kind == ContextKind::AllCombined;
  if (retrieved && retriever == nullptr) throw RetrieverMissing();

  ContextBundle bundle;
  // Prepended order: exam type, section header, prior sentences.
  if (metadata) {
    if (!document.exam_type.empty()) bundle.prepended.push_back(document.exam_type);
    if (auto header = extract_section_header(document, sentence_index)) {
      bundle.prepended.push_back(*header);
    }
  }
  if (adjacent && sentence_index > 0) {
    bundle.prepended.push_back(document.sentences[sentence_index - 1]);
  }
  // Appended order: following sentences, then retrieved sentences.
  if (adjacent && sentence_index + 1 < document.sentences.size()) {
    bundle.appended.push_back(document.sentences[sentence_index + 1]);
  }
  if (retrieved) {
    const std::string& query = document.sentences.at(sentence_index);
    for (auto& hit : retriever->retrieve(query, 1)) {
      if (!hit.empty()) bundle.appended.push_back(std::move(hit));
    }
  }
  return bundle;
}

}  // namespace radex
