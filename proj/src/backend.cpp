#include "radex/backend.hpp"

#include <chrono>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "radex/core.hpp"

namespace radex {

namespace {

// Gold events matching a focused query, preferring span overlap over
// text equality when spans are known.
const Event* find_event_for_trigger(const std::vector<Event>& events, const Focus& focus) {
  const Event* by_text = nullptr;
  for (const auto& event : events) {
    if (event.trigger.text != focus.term) continue;
    if (focus.span && event.trigger.span && overlaps(*focus.span, *event.trigger.span)) {
      return &event;
    }
    if (by_text == nullptr) by_text = &event;
  }
  return by_text;
}

const AnatomyEntity* find_anatomy(const std::vector<Event>& events, const Focus& focus) {
  const AnatomyEntity* by_text = nullptr;
  for (const auto& event : events) {
    for (const auto& anatomy : event.anatomies) {
      if (anatomy.text != focus.term) continue;
      if (focus.span && anatomy.span && overlaps(*focus.span, *anatomy.span)) {
        return &anatomy;
      }
      if (by_text == nullptr) by_text = &anatomy;
    }
  }
  return by_text;
}

}  // namespace

GoldReplayBackend::GoldReplayBackend(AnnotatedCorpus corpus,
                                     std::shared_ptr<const Ontology> ontology)
    : corpus_(std::move(corpus)), ontology_(std::move(ontology)) {}

std::string GoldReplayBackend::generate(const PromptRecord& prompt, int) {
  if (!corpus_.sentence_text(prompt.key)) {
    throw UnknownPrompt("no such sentence: " + prompt.key.doc_id + "/" +
                        std::to_string(prompt.key.index));
  }
  static const std::vector<Event> kNoEvents;
  const std::vector<Event>* found = corpus_.events_for(prompt.key);
  const std::vector<Event>& events = found != nullptr ? *found : kNoEvents;

  switch (prompt.step) {
    case StepKind::TriggerStep:
      return emit_vanilla_triggers(events);
    case StepKind::AnatomyStep: {
      if (!prompt.focus) throw UnknownPrompt("anatomy prompt without focus");
      const Event* event = find_event_for_trigger(events, *prompt.focus);
      return emit_vanilla_anatomies(event != nullptr ? event->anatomies
                                                     : std::vector<AnatomyEntity>{},
                                    /*with_labels=*/true);
    }
    case StepKind::NormalizeStep: {
      if (!prompt.focus) throw UnknownPrompt("normalization prompt without focus");
      const AnatomyEntity* anatomy = find_anatomy(events, *prompt.focus);
      if (anatomy == nullptr) return emit_vanilla_anatomies({}, true);
      return emit_vanilla_anatomies({*anatomy}, /*with_labels=*/true);
    }
    case StepKind::OneStepVanilla:
      return emit_vanilla_one_step(events);
    case StepKind::OneStepBlocks:
      return emit_blocks(events);
    case StepKind::AuxTriggerClassify: {
      if (!prompt.focus) throw UnknownPrompt("trigger classification prompt without focus");
      const Event* event = find_event_for_trigger(events, *prompt.focus);
      if (event == nullptr) return "state: trigger classification answer: none";
      return block_trigger_classification(event->trigger);
    }
    case StepKind::AuxAnatomySpan: {
      if (!prompt.focus) throw UnknownPrompt("anatomy span prompt without focus");
      const Event* event = find_event_for_trigger(events, *prompt.focus);
      return block_span_detection(event != nullptr ? event->anatomies
                                                   : std::vector<AnatomyEntity>{});
    }
  }
  throw UnknownPrompt("unhandled step kind");
}

NoisyReplayBackend::NoisyReplayBackend(std::shared_ptr<ModelBackend> inner,
                                       std::shared_ptr<const Ontology> ontology,
                                       std::uint64_t seed, double drop_prob, double flip_prob)
    : inner_(std::move(inner)),
      ontology_(std::move(ontology)),
      seed_(seed),
      drop_prob_(drop_prob),
      flip_prob_(flip_prob) {
  if (drop_prob_ < 0.0 || drop_prob_ > 1.0 || flip_prob_ < 0.0 || flip_prob_ > 1.0) {
    throw std::invalid_argument("probabilities must be in [0, 1]");
  }
}

std::string NoisyReplayBackend::generate(const PromptRecord& prompt, int max_output_tokens) {
  const std::string gold = inner_->generate(prompt, max_output_tokens);
  if (drop_prob_ == 0.0 && flip_prob_ == 0.0) return gold;

  // Seed per prompt so concurrency and sentence order cannot change the
  // noise pattern.
  std::uint64_t h = seed_;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) h = h * 1099511628211ULL + c;
  };
  mix(prompt.key.doc_id);
  h = h * 1099511628211ULL + prompt.key.index;
  h = h * 1099511628211ULL + static_cast<std::uint64_t>(prompt.step);
  if (prompt.focus) mix(prompt.focus->term);
  std::mt19937_64 rng(h);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  auto drop = [&]() { return uniform(rng) < drop_prob_; };
  auto flip = [&]() { return uniform(rng) < flip_prob_; };
  auto flip_type = [&](TriggerType type) {
    static const TriggerType kTypes[] = {TriggerType::Indication, TriggerType::Lesion,
                                         TriggerType::MedicalProblem};
    std::uniform_int_distribution<int> pick(0, 1);
    int offset = pick(rng) + 1;
    int current = static_cast<int>(type);
    return kTypes[(current + offset) % 3];
  };
  auto flip_label = [&](const AnatomyLabel& label) {
    auto labels = ontology_->all_labels();
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    for (int attempts = 0; attempts < 16; ++attempts) {
      AnatomyLabel candidate = labels[pick(rng)];
      if (!(candidate == label)) return candidate;
    }
    return label;
  };

  auto mutate_events = [&](std::vector<Event> events) {
    std::vector<Event> kept;
    for (auto& event : events) {
      if (drop()) continue;
      if (flip()) event.trigger.type = flip_type(event.trigger.type);
      std::vector<AnatomyEntity> anatomies;
      for (auto& anatomy : event.anatomies) {
        if (drop()) continue;
        if (anatomy.label && flip()) anatomy.label = flip_label(*anatomy.label);
        anatomies.push_back(std::move(anatomy));
      }
      event.anatomies = std::move(anatomies);
      kept.push_back(std::move(event));
    }
    return kept;
  };

  switch (prompt.step) {
    case StepKind::TriggerStep: {
      auto parsed = parse_vanilla_triggers(gold, *ontology_);
      std::vector<Event> events;
      for (auto& trigger : parsed.triggers) events.push_back({std::move(trigger), {}});
      return emit_vanilla_triggers(mutate_events(std::move(events)));
    }
    case StepKind::AnatomyStep:
    case StepKind::NormalizeStep: {
      auto parsed = parse_vanilla_anatomies(gold, *ontology_);
      std::vector<AnatomyEntity> kept;
      for (auto& anatomy : parsed.anatomies) {
        if (drop()) continue;
        if (anatomy.label && flip()) anatomy.label = flip_label(*anatomy.label);
        kept.push_back(std::move(anatomy));
      }
      return emit_vanilla_anatomies(kept, /*with_labels=*/true);
    }
    case StepKind::OneStepVanilla: {
      auto parsed = parse_vanilla_one_step(gold, *ontology_);
      return emit_vanilla_one_step(mutate_events(std::move(parsed.events)));
    }
    case StepKind::OneStepBlocks: {
      auto parsed = parse_blocks(gold, *ontology_);
      return emit_blocks(mutate_events(std::move(parsed.events)));
    }
    default:
      return gold;
  }
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  // Split "<scheme>://<host>[:port]/<path>" into client base and path.
  const std::string& endpoint = config_.endpoint;
  std::size_t scheme = endpoint.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  std::size_t slash = endpoint.find('/', host_start);
  if (slash == std::string::npos) {
    host_ = endpoint;
    path_ = "/generate";
  } else {
    host_ = endpoint.substr(0, slash);
    path_ = endpoint.substr(slash);
  }
}

std::string RemoteBackend::generate(const PromptRecord& prompt, int max_output_tokens) {
  nlohmann::json request = {{"prompt", prompt.prompt}, {"max_tokens", max_output_tokens}};
  const std::string body = request.dump();

  int backoff_ms = config_.backoff_initial_ms;
  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
    httplib::Client client(host_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    if (!config_.bearer_token.empty()) {
      client.set_default_headers({{"Authorization", "Bearer " + config_.bearer_token}});
    }
    auto response = client.Post(path_, body, "application/json");
    if (!response) {
      auto err = httplib::to_string(response.error());
      if (response.error() == httplib::Error::ConnectionTimeout ||
          response.error() == httplib::Error::Read) {
        last_error = "timeout: " + err;
      } else {
        last_error = "transport error: " + err;
      }
      continue;
    }
    if (response->status >= 500) {
      last_error = "server error: HTTP " + std::to_string(response->status);
      continue;
    }
    if (response->status != 200) {
      throw MalformedResponse("unexpected HTTP status " + std::to_string(response->status));
    }
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(response->body);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedResponse(std::string("response is not JSON: ") + e.what());
    }
    if (!parsed.is_object() || !parsed.contains("text") || !parsed["text"].is_string()) {
      throw MalformedResponse("response missing string field \"text\"");
    }
    return parsed["text"].get<std::string>();
  }
  throw RetriesExhausted("backend failed after " + std::to_string(config_.retries + 1) +
                         " attempts; last error: " + last_error);
}

}  // namespace radex
