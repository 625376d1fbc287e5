// radex command-line tool. Talks to the core library exclusively through
// the C API so it doubles as a smoke test of the shared-library surface.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "radex.h"

using nlohmann::json;

namespace {

int report_failure(radex_status status) {
  std::cerr << "error: " << radex_last_error() << "\n";
  switch (status) {
    case RADEX_OK: return 0;
    case RADEX_ERR_USAGE: return 1;
    case RADEX_ERR_SCHEMA: return 2;
    case RADEX_ERR_BACKEND: return 3;
    default: return 2;
  }
}

struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { radex_string_free(value); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radex - generative radiology event extraction toolkit"};
  app.require_subcommand(1);

  // extract
  std::string corpus_path, pipeline = "one-step-blocks", context, backend_kind = "gold-replay";
  std::string annotations_path, endpoint, index_path, ontology_path, out_path, cost_report_path;
  unsigned long long seed = 0;
  double drop_prob = 0.0, flip_prob = 0.0;
  int timeout = 30, retries = 3;
  std::size_t parallelism = 1;

  auto* extract = app.add_subcommand("extract", "Run an extraction pipeline over a corpus");
  extract->add_option("--corpus", corpus_path, "Corpus JSONL file")->required();
  extract->add_option("--pipeline", pipeline,
                      "three-step | two-step | one-step-vanilla | one-step-blocks | "
                      "one-step-blocks-context");
  extract->add_option("--context", context, "adjacent | metadata | bm25 | all");
  extract->add_option("--backend", backend_kind, "gold-replay | noisy-replay | http");
  extract->add_option("--annotations", annotations_path, "Gold annotations for replay backends");
  extract->add_option("--endpoint", endpoint, "HTTP backend endpoint (or RADEX_ENDPOINT)");
  extract->add_option("--timeout", timeout, "HTTP timeout seconds");
  extract->add_option("--retries", retries, "HTTP retry budget");
  extract->add_option("--seed", seed, "Noisy replay seed");
  extract->add_option("--drop-prob", drop_prob, "Noisy replay entity drop probability");
  extract->add_option("--flip-prob", flip_prob, "Noisy replay label flip probability");
  extract->add_option("--index", index_path, "BM25 index snapshot for retrieval contexts");
  extract->add_option("--ontology", ontology_path, "Ontology JSON (default: built-in)");
  extract->add_option("--parallelism", parallelism, "Concurrent sentences");
  extract->add_option("--out", out_path, "Predictions JSONL output")->required();
  extract->add_option("--cost-report", cost_report_path, "Cost report JSON output");

  // evaluate
  std::string eval_gold, eval_pred, eval_corpus, eval_ontology;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold annotations");
  evaluate->add_option("--gold", eval_gold, "Gold annotations JSONL")->required();
  evaluate->add_option("--pred", eval_pred, "Predicted annotations JSONL")->required();
  evaluate->add_option("--corpus", eval_corpus, "Corpus JSONL for span validation");
  evaluate->add_option("--ontology", eval_ontology, "Ontology JSON (default: built-in)");

  // filter-corpus
  std::string filter_in, filter_terms, filter_out;
  std::size_t filter_min_tokens = 3;
  auto* filter = app.add_subcommand("filter-corpus",
                                    "Keep sentences containing anatomy terms");
  filter->add_option("--sentences", filter_in, "Sentence-per-line input")->required();
  filter->add_option("--terms", filter_terms, "Term list file (default: built-in)");
  filter->add_option("--min-tokens", filter_min_tokens, "Minimum token count");
  filter->add_option("--out", filter_out, "Filtered output")->required();

  // build-index
  std::string build_in, build_out;
  double k1 = 1.5, b = 0.75, epsilon = 0.25;
  auto* build = app.add_subcommand("build-index", "Build a BM25 index snapshot");
  build->add_option("--sentences", build_in, "Sentence-per-line input")->required();
  build->add_option("--out", build_out, "Index snapshot output")->required();
  build->add_option("--k1", k1, "BM25 k1");
  build->add_option("--b", b, "BM25 b");
  build->add_option("--epsilon", epsilon, "Negative-IDF floor fraction");

  // retrieve
  std::string retrieve_index, retrieve_query;
  std::size_t top_k = 1;
  auto* retrieve = app.add_subcommand("retrieve", "Query a BM25 index snapshot");
  retrieve->add_option("--index", retrieve_index, "Index snapshot")->required();
  retrieve->add_option("--query", retrieve_query, "Query sentence")->required();
  retrieve->add_option("--top-k", top_k, "Number of hits");

  // emit-training
  std::string train_corpus, train_annotations, train_format = "blocks", train_out,
              train_ontology;
  bool train_aux = false, train_anatomy_span_aux = false;
  auto* train = app.add_subcommand("emit-training", "Export prompt/target training pairs");
  train->add_option("--corpus", train_corpus, "Corpus JSONL")->required();
  train->add_option("--annotations", train_annotations, "Gold annotations JSONL")->required();
  train->add_option("--format", train_format, "vanilla | blocks");
  train->add_flag("--aux", train_aux, "Include auxiliary subtask records");
  train->add_flag("--anatomy-span-aux", train_anatomy_span_aux,
                  "Include the extra anatomy span detection task");
  train->add_option("--ontology", train_ontology, "Ontology JSON (default: built-in)");
  train->add_option("--out", train_out, "Training pairs JSONL output")->required();

  CLI11_PARSE(app, argc, argv);

  if (extract->parsed()) {
    json backend = {{"kind", backend_kind}};
    if (!annotations_path.empty()) backend["annotations"] = annotations_path;
    if (!endpoint.empty()) backend["endpoint"] = endpoint;
    backend["timeout"] = timeout;
    backend["retries"] = retries;
    backend["seed"] = seed;
    backend["drop_prob"] = drop_prob;
    backend["flip_prob"] = flip_prob;

    json options = {{"corpus", corpus_path},
                    {"pipeline", pipeline},
                    {"backend", std::move(backend)},
                    {"parallelism", parallelism},
                    {"out", out_path}};
    if (!context.empty()) options["context"] = context;
    if (!index_path.empty()) options["index"] = index_path;
    if (!ontology_path.empty()) options["ontology"] = ontology_path;
    if (!cost_report_path.empty()) options["cost_report"] = cost_report_path;

    OwnedString cost;
    radex_status status = radex_extract(options.dump().c_str(), &cost.value);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << cost.value << "\n";
    return 0;
  }

  if (evaluate->parsed()) {
    OwnedString report;
    radex_status status = radex_evaluate(eval_corpus.empty() ? nullptr : eval_corpus.c_str(),
                                         eval_gold.c_str(), eval_pred.c_str(),
                                         eval_ontology.empty() ? nullptr : eval_ontology.c_str(),
                                         &report.value);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << report.value << "\n";
    return 0;
  }

  if (filter->parsed()) {
    size_t retained = 0, total = 0;
    radex_status status =
        radex_filter_corpus(filter_in.c_str(), filter_terms.empty() ? nullptr : filter_terms.c_str(),
                            filter_min_tokens, filter_out.c_str(), &retained, &total);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << retained << "/" << total << " retained\n";
    return 0;
  }

  if (build->parsed()) {
    radex_index* index = nullptr;
    radex_status status = radex_index_build(build_in.c_str(), k1, b, epsilon, &index);
    if (status != RADEX_OK) return report_failure(status);
    status = radex_index_save(index, build_out.c_str());
    radex_index_free(index);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << "index written to " << build_out << "\n";
    return 0;
  }

  if (retrieve->parsed()) {
    radex_index* index = nullptr;
    radex_status status = radex_index_load(retrieve_index.c_str(), &index);
    if (status != RADEX_OK) return report_failure(status);
    OwnedString hits;
    status = radex_index_retrieve(index, retrieve_query.c_str(), top_k, &hits.value);
    radex_index_free(index);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << hits.value << "\n";
    return 0;
  }

  if (train->parsed()) {
    json options = {{"corpus", train_corpus},
                    {"annotations", train_annotations},
                    {"format", train_format},
                    {"aux", train_aux},
                    {"anatomy_span_aux", train_anatomy_span_aux},
                    {"out", train_out}};
    if (!train_ontology.empty()) options["ontology"] = train_ontology;
    size_t count = 0;
    radex_status status = radex_emit_training(options.dump().c_str(), &count);
    if (status != RADEX_OK) return report_failure(status);
    std::cout << count << " records written\n";
    return 0;
  }

  return 1;
}
