/* radex - radiology event extraction toolkit, C API.
 *
 * All functions return a radex_status unless noted. On failure the
 * thread-local message from radex_last_error() describes the problem.
 * Strings returned through char** are heap-allocated; release them with
 * radex_string_free(). Handles are opaque; release them with their
 * _free() function.
 */

#ifndef RADEX_H
#define RADEX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum radex_status {
  RADEX_OK = 0,
  RADEX_ERR_USAGE = 1,   /* bad arguments or configuration */
  RADEX_ERR_SCHEMA = 2,  /* input file violates its schema */
  RADEX_ERR_BACKEND = 3, /* model backend unreachable or failing */
  RADEX_ERR_IO = 4,      /* file system failure */
} radex_status;

const char* radex_last_error(void);
void radex_string_free(char* text);

/* ---- Ontology ---------------------------------------------------------- */

typedef struct radex_ontology radex_ontology;

radex_ontology* radex_ontology_create_default(void);
radex_status radex_ontology_load_json(const char* path, radex_ontology** out);
void radex_ontology_free(radex_ontology* ontology);

/* kind: "trigger", "anatomy", or "joint". */
radex_status radex_ontology_render(const radex_ontology* ontology, const char* kind,
                                   char** out_text);
radex_status radex_ontology_parse_label(const radex_ontology* ontology, const char* text,
                                        char** out_parent, char** out_child);

/* ---- Retrieval --------------------------------------------------------- */

typedef struct radex_index radex_index;

/* sentences_path: one sentence per line, UTF-8. */
radex_status radex_index_build(const char* sentences_path, double k1, double b, double epsilon,
                               radex_index** out);
radex_status radex_index_save(const radex_index* index, const char* path);
radex_status radex_index_load(const char* path, radex_index** out);
void radex_index_free(radex_index* index);

/* Result is a JSON array of {"sentence", "score", "id"}. */
radex_status radex_index_retrieve(const radex_index* index, const char* query, size_t top_k,
                                  char** out_json);

/* Prints "retained/total" semantics: retained count via out params. */
radex_status radex_filter_corpus(const char* sentences_path, const char* terms_path_or_null,
                                 size_t min_tokens, const char* out_path, size_t* out_retained,
                                 size_t* out_total);

/* ---- Batch operations --------------------------------------------------
 * Options are a JSON object; see the CLI for the flag-level description.
 *
 * extract options:
 *   {"corpus": path, "pipeline": "three-step|two-step|one-step-vanilla|
 *    one-step-blocks|one-step-blocks-context", "context": "adjacent|
 *    metadata|bm25|all", "backend": {"kind": "gold-replay|noisy-replay",
 *    "annotations": path, "seed": n, "drop_prob": x, "flip_prob": x} |
 *    {"kind": "http", "endpoint": url, "timeout": s, "retries": n},
 *    "index": path?, "ontology": path?, "parallelism": n,
 *    "out": path, "cost_report": path?}
 */
radex_status radex_extract(const char* options_json, char** out_cost_report_json);

/* Evaluation report as JSON (per-level tp/fp/fn/p/r/f1 plus config echo). */
radex_status radex_evaluate(const char* corpus_path_or_null, const char* gold_path,
                            const char* pred_path, const char* ontology_path_or_null,
                            char** out_report_json);

/* options: {"corpus": path, "annotations": path, "format": "vanilla|blocks",
 *           "aux": bool, "anatomy_span_aux": bool, "ontology": path?,
 *           "out": path}  */
radex_status radex_emit_training(const char* options_json, size_t* out_record_count);

#ifdef __cplusplus
}
#endif

#endif /* RADEX_H */
