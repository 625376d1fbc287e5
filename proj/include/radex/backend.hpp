#ifndef RADEX_BACKEND_HPP
#define RADEX_BACKEND_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "radex/textio.hpp"

namespace radex {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownPrompt : public BackendError {
 public:
  using BackendError::BackendError;
};

class MalformedResponse : public BackendError {
 public:
  using BackendError::BackendError;
};

class BackendTimeout : public BackendError {
 public:
  using BackendError::BackendError;
};

class RetriesExhausted : public BackendError {
 public:
  using BackendError::BackendError;
};

// Pluggable text-to-text model. Implementations must tolerate concurrent
// generate calls; deterministic backends return identical text for
// identical prompts.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual std::string generate(const PromptRecord& prompt, int max_output_tokens) = 0;
};

// Emits the exact training target for each prompt, keyed on the prompt
// record's sentence key, step, and focus. Enables end-to-end pipeline
// testing without a neural model.
class GoldReplayBackend : public ModelBackend {
 public:
  GoldReplayBackend(AnnotatedCorpus corpus, std::shared_ptr<const Ontology> ontology);

  std::string generate(const PromptRecord& prompt, int max_output_tokens) override;

 private:
  AnnotatedCorpus corpus_;
  std::shared_ptr<const Ontology> ontology_;
};

// Wraps another backend and deterministically (seeded) drops entities
// and flips labels before re-emission, for metric sensitivity tests.
class NoisyReplayBackend : public ModelBackend {
 public:
  NoisyReplayBackend(std::shared_ptr<ModelBackend> inner,
                     std::shared_ptr<const Ontology> ontology, std::uint64_t seed,
                     double drop_prob, double flip_prob);

  std::string generate(const PromptRecord& prompt, int max_output_tokens) override;

 private:
  std::shared_ptr<ModelBackend> inner_;
  std::shared_ptr<const Ontology> ontology_;
  std::uint64_t seed_;
  double drop_prob_;
  double flip_prob_;
};

struct RemoteBackendConfig {
  std::string endpoint;  // e.g. "http://localhost:8080/generate"
  int timeout_seconds = 30;
  int retries = 3;
  int backoff_initial_ms = 100;
  std::string bearer_token;  // optional; sent as Authorization header
};

// POSTs {"prompt", "max_tokens"} as JSON and expects {"text"}; retries
// transient failures with exponential backoff.
class RemoteBackend : public ModelBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  std::string generate(const PromptRecord& prompt, int max_output_tokens) override;

 private:
  RemoteBackendConfig config_;
  std::string host_;
  std::string path_;
};

}  // namespace radex

#endif  // RADEX_BACKEND_HPP
