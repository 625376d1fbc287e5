#ifndef RADEX_TEXTIO_HPP
#define RADEX_TEXTIO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radex/context.hpp"
#include "radex/core.hpp"
#include "radex/ontology.hpp"

namespace radex {

enum class StepKind {
  TriggerStep,
  AnatomyStep,
  NormalizeStep,
  OneStepVanilla,
  OneStepBlocks,
  AuxTriggerClassify,
  AuxAnatomySpan,
};

std::string to_string(StepKind step);

enum class OutputFormat { Vanilla, Blocks };

// The entity a focused question asks about: the queried trigger or
// anatomy term, its ±3-token window, and its span when known.
struct Focus {
  std::string term;
  std::string window;
  std::optional<Span> span;
};

struct PromptRecord {
  StepKind step = StepKind::TriggerStep;
  SentenceKey key;
  std::string prompt;
  std::optional<Focus> focus;
  bool has_context = false;
  // Length limits recorded for downstream runners; not enforced here.
  int max_input_tokens = 768;
  int max_output_tokens = 512;
};

class MissingFocus : public std::runtime_error {
 public:
  explicit MissingFocus(StepKind step)
      : std::runtime_error("step " + to_string(step) + " requires a focus term") {}
};

// Question template for a step, with the focus interpolated where the
// template asks for one.
std::string step_question(StepKind step, const std::optional<Focus>& focus);

// Which ontology rendering each step's prompt carries.
OntologyKind step_ontology_kind(StepKind step);

// Whitespace tokens of the term plus up to 3 tokens on each side, joined
// by single spaces. term_span is in code-point offsets.
std::string focus_window(const std::string& sentence, const Span& term_span);

// "<contexts?> <sentence> <question> structured knowledge: <contexts?> <ontology>"
PromptRecord build_prompt(StepKind step, const SentenceKey& key, const std::string& sentence,
                          const std::string& ontology_text,
                          const ContextBundle* contexts = nullptr,
                          const std::optional<Focus>& focus = std::nullopt);

// ---- Vanilla output format ----------------------------------------------

std::string emit_vanilla_triggers(const std::vector<Event>& events);
std::string emit_vanilla_anatomies(const std::vector<AnatomyEntity>& anatomies, bool with_labels);
std::string emit_vanilla_one_step(const std::vector<Event>& events);

struct ParsedTriggers {
  std::vector<Trigger> triggers;
  std::vector<std::string> warnings;
};

struct ParsedAnatomies {
  std::vector<AnatomyEntity> anatomies;
  std::vector<std::string> warnings;
};

struct ParsedEvents {
  std::vector<Event> events;
  std::vector<std::string> warnings;
};

// Parsers recover rather than fail: any input yields (possibly empty)
// entities plus warnings for skipped fragments.
ParsedTriggers parse_vanilla_triggers(const std::string& text, const Ontology& ontology);
ParsedAnatomies parse_vanilla_anatomies(const std::string& text, const Ontology& ontology);
ParsedEvents parse_vanilla_one_step(const std::string& text, const Ontology& ontology);

// ---- Building-block output format ---------------------------------------

extern const char kStateTriggerDetection[];
extern const char kStateTriggerClassification[];
extern const char kStateSpanDetection[];
extern const char kStateClassification[];

std::string block_trigger_detection(const std::vector<Event>& events);
std::string block_trigger_classification(const Trigger& trigger);
std::string block_span_detection(const std::vector<AnatomyEntity>& anatomies);
std::string block_classification(const AnatomyEntity& anatomy);

std::string emit_blocks(const std::vector<Event>& events);
ParsedEvents parse_blocks(const std::string& text, const Ontology& ontology);

// ---- Training-pair export -----------------------------------------------

struct AnnotatedCorpus {
  Corpus corpus;
  std::map<SentenceKey, std::vector<Event>> annotations;

  const std::vector<Event>* events_for(const SentenceKey& key) const;
  std::optional<std::string> sentence_text(const SentenceKey& key) const;
};

struct TrainingRecord {
  std::string prompt;
  std::string target;
  std::string task;
  SentenceKey key;
};

struct TrainingOptions {
  OutputFormat format = OutputFormat::Blocks;
  bool include_aux = false;
  // Extra anatomy span detection auxiliary task, used for harder
  // source-domain transfers.
  bool include_anatomy_span_aux = false;
};

std::vector<TrainingRecord> emit_training_pairs(const AnnotatedCorpus& corpus,
                                                const TrainingOptions& options,
                                                const Ontology& ontology);

}  // namespace radex

#endif  // RADEX_TEXTIO_HPP
