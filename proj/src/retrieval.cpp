#include "radex/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "radex/text_util.hpp"

namespace radex {

std::vector<std::string> normalize_query(const std::string& text) {
  std::vector<std::string> tokens;
  const std::string norm = normalize_text(text);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t space = norm.find(' ', start);
    if (space == std::string::npos) space = norm.size();
    if (space > start) tokens.push_back(norm.substr(start, space - start));
    start = space + 1;
  }
  return tokens;
}

namespace {

// Whole-word, case-insensitive containment of a possibly multi-word term.
bool contains_term(const std::vector<std::string>& tokens,
                   const std::vector<std::string>& term_tokens) {
  if (term_tokens.empty() || tokens.size() < term_tokens.size()) return false;
  for (std::size_t i = 0; i + term_tokens.size() <= tokens.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < term_tokens.size(); ++j) {
      if (tokens[i + j] != term_tokens[j]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> filter_corpus(const std::vector<std::string>& sentences,
                                       const TermList& terms, std::size_t min_tokens) {
  std::vector<std::vector<std::string>> term_tokens;
  term_tokens.reserve(terms.terms().size());
  for (const auto& term : terms.terms()) term_tokens.push_back(normalize_query(term));

  std::vector<std::string> kept;
  for (const auto& sentence : sentences) {
    const auto tokens = normalize_query(sentence);
    if (tokens.size() < min_tokens) continue;
    for (const auto& term : term_tokens) {
      if (contains_term(tokens, term)) {
        kept.push_back(sentence);
        break;
      }
    }
  }
  return kept;
}

SearchIndex::SearchIndex(std::vector<std::string> sentences, RetrievalConfig config)
    : sentences_(std::move(sentences)), config_(config) {
  if (config_.k1 <= 0.0) throw std::invalid_argument("k1 must be positive");
  if (config_.b < 0.0 || config_.b > 1.0) throw std::invalid_argument("b must be in [0, 1]");
  build();
}

void SearchIndex::build() {
  tokens_.clear();
  term_counts_.clear();
  doc_freq_.clear();
  idf_.clear();
  lengths_.clear();

  for (const auto& sentence : sentences_) {
    auto tokens = normalize_query(sentence);
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& token : tokens) ++counts[token];
    for (const auto& [token, count] : counts) ++doc_freq_[token];
    lengths_.push_back(tokens.size());
    tokens_.push_back(std::move(tokens));
    term_counts_.push_back(std::move(counts));
  }

  std::size_t total = 0;
  for (std::size_t len : lengths_) total += len;
  avg_length_ = sentences_.empty() ? 0.0 : static_cast<double>(total) / sentences_.size();

  const double n = static_cast<double>(sentences_.size());
  double positive_sum = 0.0;
  std::size_t positive_count = 0;
  for (const auto& [token, df] : doc_freq_) {
    double value = std::log((n - static_cast<double>(df) + 0.5) / (static_cast<double>(df) + 0.5));
    idf_[token] = value;
    if (value > 0.0) {
      positive_sum += value;
      ++positive_count;
    }
  }
  const double floor =
      config_.epsilon * (positive_count > 0 ? positive_sum / positive_count : 0.0);
  for (auto& [token, value] : idf_) {
    if (value < 0.0) value = floor;
  }
}

const std::string& SearchIndex::sentence(std::size_t id) const {
  if (id >= sentences_.size()) throw UnknownSentenceId(id);
  return sentences_[id];
}

double SearchIndex::idf(const std::string& token) const {
  auto it = idf_.find(token);
  return it == idf_.end() ? 0.0 : it->second;
}

double SearchIndex::score(const std::vector<std::string>& query_tokens,
                          std::size_t sentence_id) const {
  if (sentence_id >= sentences_.size()) throw UnknownSentenceId(sentence_id);
  const auto& counts = term_counts_[sentence_id];
  const double dl = static_cast<double>(lengths_[sentence_id]);
  double total = 0.0;
  for (const auto& token : query_tokens) {
    auto it = counts.find(token);
    if (it == counts.end()) continue;
    const double f = static_cast<double>(it->second);
    const double denom = f + config_.k1 * (1.0 - config_.b + config_.b * dl / avg_length_);
    total += idf(token) * f * (config_.k1 + 1.0) / denom;
  }
  return total;
}

std::vector<ScoredSentence> SearchIndex::retrieve(const std::string& query,
                                                  std::size_t top_k) const {
  if (sentences_.empty()) throw EmptyIndex();
  const auto query_tokens = normalize_query(query);
  const std::string query_norm = normalize_text(query);

  std::vector<ScoredSentence> scored;
  scored.reserve(sentences_.size());
  for (std::size_t id = 0; id < sentences_.size(); ++id) {
    if (normalize_text(sentences_[id]) == query_norm) continue;  // self-exclusion
    scored.push_back({id, score(query_tokens, id)});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredSentence& a, const ScoredSentence& b) {
                     return a.score > b.score;
                   });
  if (scored.size() > top_k) scored.resize(top_k);
  return scored;
}

namespace {

constexpr char kIndexMagic[8] = {'R', 'A', 'D', 'E', 'X', 'I', 'D', 'X'};
constexpr std::uint32_t kIndexVersion = 1;

void write_u32(std::ostream& out, std::uint32_t value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

void write_u64(std::ostream& out, std::uint64_t value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

void write_f64(std::ostream& out, double value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t value = 0;
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  return value;
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t value = 0;
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  return value;
}

double read_f64(std::istream& in) {
  double value = 0.0;
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  return value;
}

}  // namespace

void SearchIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index file: " + path);
  out.write(kIndexMagic, sizeof(kIndexMagic));
  write_u32(out, kIndexVersion);
  write_f64(out, config_.k1);
  write_f64(out, config_.b);
  write_f64(out, config_.epsilon);
  write_u64(out, config_.top_k);
  write_u64(out, config_.min_tokens);
  write_u64(out, sentences_.size());
  for (const auto& sentence : sentences_) {
    write_u64(out, sentence.size());
    out.write(sentence.data(), static_cast<std::streamsize>(sentence.size()));
  }
  if (!out) throw std::runtime_error("error writing index file: " + path);
}

SearchIndex SearchIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(std::begin(magic), std::end(magic), std::begin(kIndexMagic))) {
    throw std::runtime_error("not a radex index file: " + path);
  }
  std::uint32_t version = read_u32(in);
  if (version != kIndexVersion) {
    throw std::runtime_error("unsupported index version " + std::to_string(version));
  }
  RetrievalConfig config;
  config.k1 = read_f64(in);
  config.b = read_f64(in);
  config.epsilon = read_f64(in);
  config.top_k = read_u64(in);
  config.min_tokens = read_u64(in);
  std::uint64_t count = read_u64(in);
  std::vector<std::string> sentences;
  sentences.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t size = read_u64(in);
    std::string sentence(size, '\0');
    in.read(sentence.data(), static_cast<std::streamsize>(size));
    sentences.push_back(std::move(sentence));
  }
  if (!in) throw std::runtime_error("truncated index file: " + path);
  return SearchIndex(std::move(sentences), config);
}

std::vector<std::string> Bm25Retriever::retrieve(const std::string& query,
                                                 std::size_t top_k) const {
  std::vector<std::string> out;
  if (index_.size() == 0) return out;
  for (const auto& hit : index_.retrieve(query, top_k)) {
    out.push_back(index_.sentence(hit.id));
  }
  return out;
}

}  // namespace radex
