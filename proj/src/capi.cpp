#include "radex.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "radex/align.hpp"
#include "radex/backend.hpp"
#include "radex/eval.hpp"
#include "radex/io.hpp"
#include "radex/ontology.hpp"
#include "radex/pipeline.hpp"
#include "radex/retrieval.hpp"
#include "radex/textio.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

radex_status fail(radex_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps C++ exceptions onto status codes at the API boundary.
template <typename Fn>
radex_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const radex::SchemaError& e) {
    return fail(RADEX_ERR_SCHEMA, e.what());
  } catch (const radex::LabelError& e) {
    return fail(RADEX_ERR_SCHEMA, e.what());
  } catch (const radex::BackendError& e) {
    return fail(RADEX_ERR_BACKEND, e.what());
  } catch (const radex::RetrieverMissing& e) {
    return fail(RADEX_ERR_USAGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(RADEX_ERR_USAGE, e.what());
  } catch (const json::exception& e) {
    return fail(RADEX_ERR_USAGE, std::string("invalid options JSON: ") + e.what());
  } catch (const std::exception& e) {
    return fail(RADEX_ERR_IO, e.what());
  }
}

radex::Ontology load_ontology_or_default(const std::string& path) {
  if (path.empty()) return radex::Ontology::builtin();
  return radex::Ontology::from_json_file(path);
}

std::unique_ptr<radex::ModelBackend> make_backend(const json& options,
                                                  const radex::Corpus& corpus,
                                                  std::shared_ptr<const radex::Ontology> ontology) {
  const std::string kind = options.value("kind", "");
  if (kind == "gold-replay" || kind == "noisy-replay") {
    const std::string annotations_path = options.value("annotations", "");
    if (annotations_path.empty()) {
      throw std::invalid_argument("replay backend requires \"annotations\"");
    }
    radex::AnnotatedCorpus annotated;
    annotated.corpus = corpus;
    annotated.annotations =
        radex::load_annotations_jsonl(annotations_path, ontology.get(), &corpus);
    auto gold = std::make_shared<radex::GoldReplayBackend>(std::move(annotated), ontology);
    if (kind == "gold-replay") {
      return std::make_unique<radex::GoldReplayBackend>(*gold);
    }
    return std::make_unique<radex::NoisyReplayBackend>(
        gold, ontology, options.value("seed", 0ULL), options.value("drop_prob", 0.0),
        options.value("flip_prob", 0.0));
  }
  if (kind == "http") {
    radex::RemoteBackendConfig config;
    config.endpoint = options.value("endpoint", "");
    if (config.endpoint.empty()) {
      const char* env = std::getenv("RADEX_ENDPOINT");
      if (env != nullptr) config.endpoint = env;
    }
    if (config.endpoint.empty()) throw std::invalid_argument("http backend requires \"endpoint\"");
    config.timeout_seconds = options.value("timeout", 30);
    config.retries = options.value("retries", 3);
    const char* token = std::getenv("RADEX_ENDPOINT_TOKEN");
    if (token != nullptr) config.bearer_token = token;
    return std::make_unique<radex::RemoteBackend>(std::move(config));
  }
  throw std::invalid_argument("unknown backend kind: \"" + kind + "\"");
}

}  // namespace

struct radex_ontology {
  radex::Ontology impl;
};

struct radex_index {
  radex::SearchIndex impl;
};

extern "C" {

const char* radex_last_error(void) { return g_last_error.c_str(); }

void radex_string_free(char* text) { std::free(text); }

radex_ontology* radex_ontology_create_default(void) {
  return new radex_ontology{radex::Ontology::builtin()};
}

radex_status radex_ontology_load_json(const char* path, radex_ontology** out) {
  return guarded([&]() {
    if (path == nullptr || out == nullptr) {
      return fail(RADEX_ERR_USAGE, "path and out must be non-null");
    }
    *out = new radex_ontology{radex::Ontology::from_json_file(path)};
    return RADEX_OK;
  });
}

void radex_ontology_free(radex_ontology* ontology) { delete ontology; }

radex_status radex_ontology_render(const radex_ontology* ontology, const char* kind,
                                   char** out_text) {
  return guarded([&]() {
    if (ontology == nullptr || kind == nullptr || out_text == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    std::string k(kind);
    radex::OntologyKind ontology_kind;
    if (k == "trigger") {
      ontology_kind = radex::OntologyKind::Trigger;
    } else if (k == "anatomy") {
      ontology_kind = radex::OntologyKind::Anatomy;
    } else if (k == "joint") {
      ontology_kind = radex::OntologyKind::Joint;
    } else {
      return fail(RADEX_ERR_USAGE, "kind must be trigger, anatomy, or joint");
    }
    *out_text = copy_string(ontology->impl.render(ontology_kind));
    return RADEX_OK;
  });
}

radex_status radex_ontology_parse_label(const radex_ontology* ontology, const char* text,
                                        char** out_parent, char** out_child) {
  return guarded([&]() {
    if (ontology == nullptr || text == nullptr || out_parent == nullptr ||
        out_child == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    radex::AnatomyLabel label = ontology->impl.parse_label(text);
    *out_parent = copy_string(label.parent);
    *out_child = copy_string(label.child);
    return RADEX_OK;
  });
}

radex_status radex_index_build(const char* sentences_path, double k1, double b, double epsilon,
                               radex_index** out) {
  return guarded([&]() {
    if (sentences_path == nullptr || out == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    radex::RetrievalConfig config;
    if (k1 > 0.0) config.k1 = k1;
    if (b >= 0.0) config.b = b;
    if (epsilon >= 0.0) config.epsilon = epsilon;
    auto sentences = radex::load_sentence_lines(sentences_path);
    *out = new radex_index{radex::SearchIndex(std::move(sentences), config)};
    return RADEX_OK;
  });
}

radex_status radex_index_save(const radex_index* index, const char* path) {
  return guarded([&]() {
    if (index == nullptr || path == nullptr) return fail(RADEX_ERR_USAGE, "null argument");
    index->impl.save(path);
    return RADEX_OK;
  });
}

radex_status radex_index_load(const char* path, radex_index** out) {
  return guarded([&]() {
    if (path == nullptr || out == nullptr) return fail(RADEX_ERR_USAGE, "null argument");
    *out = new radex_index{radex::SearchIndex::load(path)};
    return RADEX_OK;
  });
}

void radex_index_free(radex_index* index) { delete index; }

radex_status radex_index_retrieve(const radex_index* index, const char* query, size_t top_k,
                                  char** out_json) {
  return guarded([&]() {
    if (index == nullptr || query == nullptr || out_json == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    json hits = json::array();
    for (const auto& hit : index->impl.retrieve(query, top_k)) {
      hits.push_back({{"id", hit.id},
                      {"score", hit.score},
                      {"sentence", index->impl.sentence(hit.id)}});
    }
    *out_json = copy_string(hits.dump());
    return RADEX_OK;
  });
}

radex_status radex_filter_corpus(const char* sentences_path, const char* terms_path_or_null,
                                 size_t min_tokens, const char* out_path, size_t* out_retained,
                                 size_t* out_total) {
  return guarded([&]() {
    if (sentences_path == nullptr || out_path == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    auto sentences = radex::load_sentence_lines(sentences_path);
    radex::TermList terms =
        terms_path_or_null == nullptr
            ? radex::default_term_list()
            : radex::TermList(radex::load_sentence_lines(terms_path_or_null));
    auto kept = radex::filter_corpus(sentences, terms, min_tokens);
    radex::save_sentence_lines(out_path, kept);
    if (out_retained != nullptr) *out_retained = kept.size();
    if (out_total != nullptr) *out_total = sentences.size();
    return RADEX_OK;
  });
}

radex_status radex_extract(const char* options_json, char** out_cost_report_json) {
  return guarded([&]() {
    if (options_json == nullptr) return fail(RADEX_ERR_USAGE, "null options");
    json options = json::parse(options_json);

    auto ontology = std::make_shared<const radex::Ontology>(
        load_ontology_or_default(options.value("ontology", "")));
    radex::Corpus corpus = radex::load_corpus_jsonl(options.at("corpus").get<std::string>());

    radex::PipelineConfig config;
    auto kind = radex::pipeline_kind_from_string(options.value("pipeline", "one-step-blocks"));
    if (!kind) return fail(RADEX_ERR_USAGE, "unknown pipeline kind");
    config.kind = *kind;
    if (options.contains("context")) {
      auto context = radex::context_kind_from_string(options["context"].get<std::string>());
      if (!context) return fail(RADEX_ERR_USAGE, "unknown context kind");
      config.context_kind = *context;
    }
    config.parallelism = options.value("parallelism", 1);

    std::unique_ptr<radex::SearchIndex> index;
    std::unique_ptr<radex::Bm25Retriever> retriever;
    if (options.contains("index")) {
      index = std::make_unique<radex::SearchIndex>(
          radex::SearchIndex::load(options["index"].get<std::string>()));
      retriever = std::make_unique<radex::Bm25Retriever>(*index);
    }

    auto backend = make_backend(options.at("backend"), corpus, ontology);
    radex::PipelineResult result =
        radex::run_pipeline(config, corpus, *backend, *ontology,
                            radex::whitespace_token_count, retriever.get());

    radex::save_annotations_jsonl(options.at("out").get<std::string>(),
                                  radex::predictions_to_map(result));

    radex::CostReport cost = radex::cost_report(result.logs);
    json cost_json = radex::cost_report_to_json(cost);
    if (options.contains("cost_report")) {
      radex::write_text_atomic(options["cost_report"].get<std::string>(),
                               cost_json.dump(2) + "\n");
    }
    if (out_cost_report_json != nullptr) *out_cost_report_json = copy_string(cost_json.dump());
    return RADEX_OK;
  });
}

radex_status radex_evaluate(const char* corpus_path_or_null, const char* gold_path,
                            const char* pred_path, const char* ontology_path_or_null,
                            char** out_report_json) {
  return guarded([&]() {
    if (gold_path == nullptr || pred_path == nullptr || out_report_json == nullptr) {
      return fail(RADEX_ERR_USAGE, "null argument");
    }
    radex::Ontology ontology = load_ontology_or_default(
        ontology_path_or_null == nullptr ? "" : ontology_path_or_null);
    std::unique_ptr<radex::Corpus> corpus;
    if (corpus_path_or_null != nullptr && corpus_path_or_null[0] != '\0') {
      corpus = std::make_unique<radex::Corpus>(radex::load_corpus_jsonl(corpus_path_or_null));
    }
    radex::EventMap gold = radex::load_annotations_jsonl(gold_path, &ontology, corpus.get());
    radex::EventMap pred = radex::load_annotations_jsonl(pred_path, &ontology, corpus.get());

    json report = radex::report_to_json(radex::evaluate(gold, pred));
    json macro = json::object();
    for (const auto& [doc_id, doc_report] : radex::evaluate_per_document(gold, pred)) {
      macro[doc_id] = radex::report_to_json(doc_report);
    }
    json out = {{"micro", std::move(report)},
                {"per_document", std::move(macro)},
                {"config", {{"matching", "maximum one-to-one, span-ordered"},
                            {"averaging", "micro"}}}};
    *out_report_json = copy_string(out.dump(2));
    return RADEX_OK;
  });
}

radex_status radex_emit_training(const char* options_json, size_t* out_record_count) {
  return guarded([&]() {
    if (options_json == nullptr) return fail(RADEX_ERR_USAGE, "null options");
    json options = json::parse(options_json);

    radex::Ontology ontology = load_ontology_or_default(options.value("ontology", ""));
    radex::AnnotatedCorpus corpus;
    corpus.corpus = radex::load_corpus_jsonl(options.at("corpus").get<std::string>());
    corpus.annotations = radex::load_annotations_jsonl(
        options.at("annotations").get<std::string>(), &ontology, &corpus.corpus);

    radex::TrainingOptions training;
    const std::string format = options.value("format", "blocks");
    if (format == "vanilla") {
      training.format = radex::OutputFormat::Vanilla;
    } else if (format == "blocks") {
      training.format = radex::OutputFormat::Blocks;
    } else {
      return fail(RADEX_ERR_USAGE, "format must be vanilla or blocks");
    }
    training.include_aux = options.value("aux", false);
    training.include_anatomy_span_aux = options.value("anatomy_span_aux", false);

    auto records = radex::emit_training_pairs(corpus, training, ontology);
    radex::save_training_records(options.at("out").get<std::string>(), records);
    if (out_record_count != nullptr) *out_record_count = records.size();
    return RADEX_OK;
  });
}

}  // extern "C"
