#ifndef RADEX_RETRIEVAL_HPP
#define RADEX_RETRIEVAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "radex/context.hpp"
#include "radex/ontology.hpp"

namespace radex {

struct RetrievalConfig {
  double k1 = 1.5;
  double b = 0.75;
  double epsilon = 0.25;  // floor for negative IDF, as a fraction of mean positive IDF
  std::size_t top_k = 1;
  std::size_t min_tokens = 3;
};

// Lowercases, strips punctuation, splits on whitespace.
std::vector<std::string> normalize_query(const std::string& text);

// Keeps sentences with at least min_tokens tokens that contain at least
// one term as a case-insensitive whole-word match.
std::vector<std::string> filter_corpus(const std::vector<std::string>& sentences,
                                       const TermList& terms, std::size_t min_tokens = 3);

struct ScoredSentence {
  std::size_t id = 0;
  double score = 0.0;
};

class EmptyIndex : public std::runtime_error {
 public:
  EmptyIndex() : std::runtime_error("search index is empty") {}
};

class UnknownSentenceId : public std::runtime_error {
 public:
  explicit UnknownSentenceId(std::size_t id)
      : std::runtime_error("unknown sentence id: " + std::to_string(id)) {}
};

// Okapi BM25 over normalized sentence tokens. Immutable after build;
// concurrent queries are safe.
class SearchIndex {
 public:
  SearchIndex(std::vector<std::string> sentences, RetrievalConfig config = {});

  std::size_t size() const { return sentences_.size(); }
  const std::string& sentence(std::size_t id) const;
  const RetrievalConfig& config() const { return config_; }

  double idf(const std::string& token) const;
  double score(const std::vector<std::string>& query_tokens, std::size_t sentence_id) const;

  // Top-k by descending score, ties in corpus order; sentences whose
  // normalized text equals the normalized query are excluded.
  std::vector<ScoredSentence> retrieve(const std::string& query, std::size_t top_k) const;

  // Versioned binary snapshot.
  void save(const std::string& path) const;
  static SearchIndex load(const std::string& path);

 private:
  void build();

  std::vector<std::string> sentences_;
  RetrievalConfig config_;
  std::vector<std::vector<std::string>> tokens_;
  std::vector<std::unordered_map<std::string, std::size_t>> term_counts_;
  std::unordered_map<std::string, std::size_t> doc_freq_;
  std::unordered_map<std::string, double> idf_;
  std::vector<std::size_t> lengths_;
  double avg_length_ = 0.0;
};

// Adapts a SearchIndex to the context-gathering Retriever interface.
class Bm25Retriever : public Retriever {
 public:
  explicit Bm25Retriever(const SearchIndex& index) : index_(index) {}

  std::vector<std::string> retrieve(const std::string& query, std::size_t top_k) const override;

 private:
  const SearchIndex& index_;
};

}  // namespace radex

#endif  // RADEX_RETRIEVAL_HPP
