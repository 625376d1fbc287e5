#include "radex/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "radex/align.hpp"
#include "radex/text_util.hpp"

namespace radex {

std::optional<PipelineKind> pipeline_kind_from_string(std::string_view text) {
  std::string t(text);
  if (t == "three-step") return PipelineKind::ThreeStepVanilla;
  if (t == "two-step") return PipelineKind::TwoStepVanilla;
  if (t == "one-step-vanilla") return PipelineKind::OneStepVanilla;
  if (t == "one-step-blocks") return PipelineKind::OneStepBlocks;
  if (t == "one-step-blocks-context") return PipelineKind::OneStepBlocksContextNorm;
  return std::nullopt;
}

std::string to_string(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::ThreeStepVanilla: return "three-step";
    case PipelineKind::TwoStepVanilla: return "two-step";
    case PipelineKind::OneStepVanilla: return "one-step-vanilla";
    case PipelineKind::OneStepBlocks: return "one-step-blocks";
    case PipelineKind::OneStepBlocksContextNorm: return "one-step-blocks-context";
  }
  return {};
}

std::size_t whitespace_token_count(const std::string& text) {
  return whitespace_tokens(text).size();
}

namespace {

bool context_needs_retriever(ContextKind kind) {
  return kind == ContextKind::BM25Retrieval || kind == ContextKind::AllCombined;
}

// All state for one sentence's sequential passes.
class SentenceRun {
 public:
  SentenceRun(const PipelineConfig& config, const Document& document, std::size_t index,
              ModelBackend& backend, const Ontology& ontology, const Tokenizer& tokenizer,
              const Retriever* retriever)
      : config_(config),
        document_(document),
        index_(index),
        backend_(backend),
        ontology_(ontology),
        tokenizer_(tokenizer),
        retriever_(retriever),
        key_{document.id, index},
        sentence_(document.sentences[index]) {
    log_.key = key_;
    prediction_.key = key_;
  }

  void execute() {
    switch (config_.kind) {
      case PipelineKind::ThreeStepVanilla:
        run_multi_step(/*normalize_separately=*/true);
        break;
      case PipelineKind::TwoStepVanilla:
        run_multi_step(/*normalize_separately=*/false);
        break;
      case PipelineKind::OneStepVanilla:
        run_one_step(StepKind::OneStepVanilla);
        break;
      case PipelineKind::OneStepBlocks:
        run_one_step(StepKind::OneStepBlocks);
        break;
      case PipelineKind::OneStepBlocksContextNorm:
        run_one_step(StepKind::OneStepBlocks);
        run_context_normalization();
        break;
    }
    prediction_.events = attach_spans(sentence_, std::move(prediction_.events));
  }

  SentencePrediction take_prediction() { return std::move(prediction_); }
  PassLog take_log() { return std::move(log_); }

 private:
  std::optional<std::string> pass(StepKind step, const std::optional<Focus>& focus = std::nullopt,
                                  const ContextBundle* contexts = nullptr) {
    PromptRecord record =
        build_prompt(step, key_, sentence_, ontology_.render(step_ontology_kind(step)), contexts,
                     focus);
    record.max_output_tokens = config_.max_output_tokens;
    ++log_.passes;
    log_.steps.push_back(step);
    log_.input_tokens += tokenizer_(record.prompt);
    try {
      std::string output = backend_.generate(record, config_.max_output_tokens);
      log_.output_tokens += tokenizer_(output);
      return output;
    } catch (const BackendError& error) {
      log_.errors.push_back(to_string(step) + ": " + error.what());
      return std::nullopt;
    }
  }

  Focus focus_for(const std::string& term, const std::optional<Span>& span) const {
    Focus focus;
    focus.term = term;
    focus.span = span;
    focus.window = span ? focus_window(sentence_, *span) : term;
    if (focus.window.empty()) focus.window = term;
    return focus;
  }

  void merge_warnings(const std::vector<std::string>& warnings) {
    prediction_.warnings.insert(prediction_.warnings.end(), warnings.begin(), warnings.end());
  }

  // Steps 1..2(..3) of the vanilla pipelines. The second step's labels
  // are kept for the two-step flow and re-derived per anatomy for the
  // three-step flow.
  void run_multi_step(bool normalize_separately) {
    auto trigger_output = pass(StepKind::TriggerStep);
    if (!trigger_output) return;
    ParsedTriggers triggers = parse_vanilla_triggers(*trigger_output, ontology_);
    merge_warnings(triggers.warnings);
    for (auto& trigger : triggers.triggers) {
      Event event;
      event.trigger = std::move(trigger);
      event.trigger.span = align_term(sentence_, event.trigger.text);
      prediction_.events.push_back(std::move(event));
    }
    if (prediction_.events.empty()) return;

    for (auto& event : prediction_.events) {
      Focus focus = focus_for(event.trigger.text, event.trigger.span);
      auto anatomy_output = pass(StepKind::AnatomyStep, focus);
      if (!anatomy_output) continue;
      ParsedAnatomies anatomies = parse_vanilla_anatomies(*anatomy_output, ontology_);
      merge_warnings(anatomies.warnings);
      event.anatomies = std::move(anatomies.anatomies);
      for (auto& anatomy : event.anatomies) {
        anatomy.span = align_term(sentence_, anatomy.text, event.trigger.span);
        if (normalize_separately) anatomy.label.reset();
      }
    }
    if (!normalize_separately) return;

    for (auto& event : prediction_.events) {
      for (auto& anatomy : event.anatomies) {
        Focus focus = focus_for(anatomy.text, anatomy.span);
        auto output = pass(StepKind::NormalizeStep, focus);
        if (!output) continue;
        ParsedAnatomies parsed = parse_vanilla_anatomies(*output, ontology_);
        merge_warnings(parsed.warnings);
        if (!parsed.anatomies.empty() && parsed.anatomies.front().label) {
          anatomy.label = parsed.anatomies.front().label;
        }
      }
    }
  }

  void run_one_step(StepKind step) {
    auto output = pass(step);
    if (!output) return;
    ParsedEvents parsed = step == StepKind::OneStepBlocks
                              ? parse_blocks(*output, ontology_)
                              : parse_vanilla_one_step(*output, ontology_);
    merge_warnings(parsed.warnings);
    prediction_.events = std::move(parsed.events);
    prediction_.events = attach_spans(sentence_, std::move(prediction_.events));
  }

  // Extra normalization pass per detected anatomy, with target-domain
  // contexts in the prompt; replaces the first-pass label only when the
  // new pass parses successfully.
  void run_context_normalization() {
    ContextBundle contexts = gather_context(document_, index_, config_.context_kind, retriever_);
    for (auto& event : prediction_.events) {
      for (auto& anatomy : event.anatomies) {
        Focus focus = focus_for(anatomy.text, anatomy.span);
        auto output = pass(StepKind::NormalizeStep, focus, &contexts);
        if (!output) continue;
        ParsedAnatomies parsed = parse_vanilla_anatomies(*output, ontology_);
        merge_warnings(parsed.warnings);
        if (!parsed.anatomies.empty() && parsed.anatomies.front().label) {
          anatomy.label = parsed.anatomies.front().label;
        }
      }
    }
  }

  const PipelineConfig& config_;
  const Document& document_;
  std::size_t index_;
  ModelBackend& backend_;
  const Ontology& ontology_;
  const Tokenizer& tokenizer_;
  const Retriever* retriever_;
  SentenceKey key_;
  const std::string& sentence_;
  SentencePrediction prediction_;
  PassLog log_;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const Corpus& corpus,
                            ModelBackend& backend, const Ontology& ontology,
                            const Tokenizer& tokenizer, const Retriever* retriever) {
  if (config.kind == PipelineKind::OneStepBlocksContextNorm &&
      context_needs_retriever(config.context_kind) && retriever == nullptr) {
    throw RetrieverMissing();
  }

  struct WorkItem {
    const Document* document;
    std::size_t index;
  };
  std::vector<WorkItem> work;
  for (const auto& doc : corpus.documents) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) work.push_back({&doc, i});
  }

  PipelineResult result;
  result.predictions.resize(work.size());
  result.logs.resize(work.size());

  std::size_t workers = std::max<std::size_t>(1, config.parallelism);
  workers = std::min(workers, std::max<std::size_t>(1, work.size()));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      try {
        SentenceRun run(config, *work[i].document, work[i].index, backend, ontology, tokenizer,
                        retriever);
        run.execute();
        result.predictions[i] = run.take_prediction();
        result.logs[i] = run.take_log();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return result;
}

CostReport cost_report(const std::vector<PassLog>& logs) {
  CostReport report;
  report.sentence_count = logs.size();
  if (logs.empty()) return report;
  report.empty = false;
  double passes = 0.0;
  double tokens = 0.0;
  for (const auto& log : logs) {
    passes += static_cast<double>(log.passes);
    tokens += static_cast<double>(log.input_tokens + log.output_tokens);
  }
  report.passes_per_sample = passes / static_cast<double>(logs.size());
  report.tokens_per_sample = tokens / static_cast<double>(logs.size());
  return report;
}

}  // namespace radex
