#ifndef RADEX_PIPELINE_HPP
#define RADEX_PIPELINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radex/backend.hpp"
#include "radex/context.hpp"
#include "radex/core.hpp"
#include "radex/textio.hpp"

namespace radex {

enum class PipelineKind {
  ThreeStepVanilla,
  TwoStepVanilla,
  OneStepVanilla,
  OneStepBlocks,
  OneStepBlocksContextNorm,  // one-step blocks + context-augmented normalization pass
};

std::optional<PipelineKind> pipeline_kind_from_string(std::string_view text);
std::string to_string(PipelineKind kind);

using Tokenizer = std::function<std::size_t(const std::string&)>;

// Default tokenizer; absolute counts differ from an LLM tokenizer, so
// cost comparisons are ordinal, not absolute.
std::size_t whitespace_token_count(const std::string& text);

struct PipelineConfig {
  PipelineKind kind = PipelineKind::OneStepBlocks;
  ContextKind context_kind = ContextKind::AllCombined;
  std::size_t parallelism = 1;
  int max_output_tokens = 512;
};

// Per-sentence decoding-pass and token accounting.
struct PassLog {
  SentenceKey key;
  std::size_t passes = 0;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  std::vector<StepKind> steps;
  std::vector<std::string> errors;
};

struct SentencePrediction {
  SentenceKey key;
  std::vector<Event> events;
  std::vector<std::string> warnings;
};

struct PipelineResult {
  std::vector<SentencePrediction> predictions;  // corpus order
  std::vector<PassLog> logs;                    // corpus order, parallel to predictions
};

// Runs the selected flow over every sentence. Backend failures degrade
// per sentence (empty prediction, error recorded in the log); a missing
// retriever for a context-dependent kind throws RetrieverMissing.
PipelineResult run_pipeline(const PipelineConfig& config, const Corpus& corpus,
                            ModelBackend& backend, const Ontology& ontology,
                            const Tokenizer& tokenizer = whitespace_token_count,
                            const Retriever* retriever = nullptr);

struct CostReport {
  double passes_per_sample = 0.0;
  double tokens_per_sample = 0.0;
  std::size_t sentence_count = 0;
  bool empty = true;
};

CostReport cost_report(const std::vector<PassLog>& logs);

}  // namespace radex

#endif  // RADEX_PIPELINE_HPP
