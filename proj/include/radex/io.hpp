#ifndef RADEX_IO_HPP
#define RADEX_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "radex/eval.hpp"
#include "radex/pipeline.hpp"
#include "radex/textio.hpp"

namespace radex {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corpus file: JSON Lines, one document per line:
//   {"id": "...", "exam_type": "...", "sentences": ["...", ...]}
Corpus load_corpus_jsonl(const std::string& path);
void save_corpus_jsonl(const std::string& path, const Corpus& corpus);

// Annotation file: JSON Lines, one sentence per line:
//   {"doc_id": "...", "sent": 0, "events": [{"trigger": {...}, "anatomies": [...]}]}
// Spans are optional; labels validate against the ontology and offsets
// against the corpus when one is supplied.
EventMap load_annotations_jsonl(const std::string& path, const Ontology* ontology = nullptr,
                                const Corpus* corpus = nullptr);
void save_annotations_jsonl(const std::string& path, const EventMap& annotations);

// One sentence per line, UTF-8.
std::vector<std::string> load_sentence_lines(const std::string& path);
void save_sentence_lines(const std::string& path, const std::vector<std::string>& sentences);

// Training-pair export:
//   {"prompt": ..., "target": ..., "task": ..., "doc_id": ..., "sent": ...}
void save_training_records(const std::string& path, const std::vector<TrainingRecord>& records);

// temp-file + rename
void write_text_atomic(const std::string& path, const std::string& content);

nlohmann::json prf_to_json(const PRF& prf);
nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json cost_report_to_json(const CostReport& report);

EventMap predictions_to_map(const PipelineResult& result);

}  // namespace radex

#endif  // RADEX_IO_HPP
