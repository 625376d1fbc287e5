#include "radex/textio.hpp"

#include <algorithm>

#include "radex/text_util.hpp"

namespace radex {

namespace {

constexpr const char* kNoneSentinel = "none";

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string piece = trim(text.substr(start, comma - start));
    if (!piece.empty()) parts.push_back(std::move(piece));
    start = comma + 1;
  }
  return parts;
}

// "some text [ inner ]" -> (some text, inner); no brackets -> (text, nullopt)
struct Fragment {
  std::string text;
  std::optional<std::string> bracketed;
};

Fragment split_fragment(std::string_view piece) {
  Fragment fragment;
  std::size_t open = piece.find('[');
  std::size_t close = piece.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    fragment.text = trim(piece);
    return fragment;
  }
  fragment.text = trim(piece.substr(0, open));
  fragment.bracketed = trim(piece.substr(open + 1, close - open - 1));
  return fragment;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& part : parts) {
    if (part.empty()) continue;
    if (!out.empty()) out += sep;
    out += part;
  }
  return out;
}

std::string labeled(const std::string& text, const std::string& bracket_body) {
  return text + " [ " + bracket_body + " ]";
}

std::string anatomy_fragment(const AnatomyEntity& anatomy, bool with_labels) {
  if (with_labels && anatomy.label) {
    return labeled(anatomy.text, anatomy.label->parent + " | " + anatomy.label->child);
  }
  return anatomy.text;
}

}  // namespace

std::string to_string(StepKind step) {
  switch (step) {
    case StepKind::TriggerStep: return "trigger";
    case StepKind::AnatomyStep: return "anatomy";
    case StepKind::NormalizeStep: return "normalize";
    case StepKind::OneStepVanilla: return "one-step-vanilla";
    case StepKind::OneStepBlocks: return "one-step-blocks";
    case StepKind::AuxTriggerClassify: return "aux-trigger-classify";
    case StepKind::AuxAnatomySpan: return "aux-anatomy-span";
  }
  return {};
}

std::string step_question(StepKind step, const std::optional<Focus>& focus) {
  auto need_focus = [&]() -> const Focus& {
    if (!focus) throw MissingFocus(step);
    return *focus;
  };
  switch (step) {
    case StepKind::TriggerStep:
      return "Question: What are medical findings in this sentence?";
    case StepKind::AnatomyStep: {
      const Focus& f = need_focus();
      return "Consider the medical finding \"" + f.term + "\" in the span \"" + f.window +
             "\", Question: What anatomy it occurs in? Where is it located?";
    }
    case StepKind::NormalizeStep: {
      const Focus& f = need_focus();
      return "Consider the anatomy \"" + f.term + "\" in the span \"" + f.window +
             "\", which anatomy category it belongs to among listed options?";
    }
    case StepKind::OneStepVanilla:
    case StepKind::OneStepBlocks:
      return "Question: What are medical findings in this sentence? What anatomy they occur "
             "in? which anatomy category they belong to among listed options?";
    case StepKind::AuxTriggerClassify: {
      const Focus& f = need_focus();
      return "Consider the medical finding \"" + f.term +
             "\", Question: What is the type of this medical finding?";
    }
    case StepKind::AuxAnatomySpan: {
      const Focus& f = need_focus();
      return "Consider the medical finding \"" + f.term + "\" in the span \"" + f.window +
             "\", Question: Please identify terms that describe the finding's anatomy "
             "locations.";
    }
  }
  return {};
}

OntologyKind step_ontology_kind(StepKind step) {
  switch (step) {
    case StepKind::TriggerStep:
    case StepKind::AuxTriggerClassify:
      return OntologyKind::Trigger;
    case StepKind::AnatomyStep:
    case StepKind::NormalizeStep:
    case StepKind::AuxAnatomySpan:
      return OntologyKind::Anatomy;
    case StepKind::OneStepVanilla:
    case StepKind::OneStepBlocks:
      return OntologyKind::Joint;
  }
  return OntologyKind::Joint;
}

std::string focus_window(const std::string& sentence, const Span& term_span) {
  const auto tokens = whitespace_tokens(sentence);
  std::size_t lo = tokens.size();
  std::size_t hi = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].start < term_span.end && term_span.start < tokens[i].end) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo == tokens.size()) return {};
  std::size_t from = lo >= 3 ? lo - 3 : 0;
  std::size_t to = std::min(hi + 3, tokens.size() - 1);
  std::string window;
  for (std::size_t i = from; i <= to; ++i) {
    if (!window.empty()) window += " ";
    window += tokens[i].text;
  }
  return window;
}

PromptRecord build_prompt(StepKind step, const SentenceKey& key, const std::string& sentence,
                          const std::string& ontology_text, const ContextBundle* contexts,
                          const std::optional<Focus>& focus) {
  PromptRecord record;
  record.step = step;
  record.key = key;
  record.focus = focus;
  record.has_context = contexts != nullptr && !contexts->empty();

  std::vector<std::string> parts;
  if (contexts != nullptr) {
    parts.insert(parts.end(), contexts->prepended.begin(), contexts->prepended.end());
  }
  parts.push_back(sentence);
  parts.push_back(step_question(step, focus));
  parts.push_back("structured knowledge:");
  if (contexts != nullptr) {
    parts.insert(parts.end(), contexts->appended.begin(), contexts->appended.end());
  }
  parts.push_back(ontology_text);
  record.prompt = join(parts, " ");
  return record;
}

// ---- Vanilla format ------------------------------------------------------

std::string emit_vanilla_triggers(const std::vector<Event>& events) {
  if (events.empty()) return std::string("trigger: ") + kNoneSentinel;
  std::vector<std::string> parts;
  for (const auto& event : events) {
    parts.push_back(labeled(event.trigger.text, to_string(event.trigger.type)));
  }
  return "trigger: " + join(parts, ", ");
}

std::string emit_vanilla_anatomies(const std::vector<AnatomyEntity>& anatomies,
                                   bool with_labels) {
  if (anatomies.empty()) return std::string("anatomies: ") + kNoneSentinel;
  std::vector<std::string> parts;
  for (const auto& anatomy : anatomies) parts.push_back(anatomy_fragment(anatomy, with_labels));
  return "anatomies: " + join(parts, ", ");
}

std::string emit_vanilla_one_step(const std::vector<Event>& events) {
  if (events.empty()) return std::string("trigger: ") + kNoneSentinel;
  std::vector<std::string> groups;
  for (const auto& event : events) {
    std::string group = "trigger: " + labeled(event.trigger.text, to_string(event.trigger.type));
    if (!event.anatomies.empty()) {
      group += " " + emit_vanilla_anatomies(event.anatomies, /*with_labels=*/true);
    }
    groups.push_back(std::move(group));
  }
  return join(groups, " ");
}

namespace {

std::optional<Trigger> parse_trigger_fragment(std::string_view piece,
                                              std::vector<std::string>& warnings) {
  Fragment fragment = split_fragment(piece);
  if (fragment.text.empty()) return std::nullopt;
  if (!fragment.bracketed) {
    warnings.push_back("trigger fragment without type: \"" + fragment.text + "\"");
    return std::nullopt;
  }
  auto type = trigger_type_from_string(*fragment.bracketed);
  if (!type) {
    warnings.push_back("unknown trigger type: \"" + *fragment.bracketed + "\"");
    return std::nullopt;
  }
  Trigger trigger;
  trigger.text = fragment.text;
  trigger.type = *type;
  return trigger;
}

AnatomyEntity parse_anatomy_fragment(std::string_view piece, const Ontology& ontology,
                                     std::vector<std::string>& warnings) {
  Fragment fragment = split_fragment(piece);
  AnatomyEntity anatomy;
  anatomy.text = fragment.text;
  if (fragment.bracketed) {
    try {
      anatomy.label = ontology.parse_label(*fragment.bracketed);
    } catch (const LabelError& error) {
      warnings.push_back(std::string("unparseable label: ") + error.what());
    }
  }
  return anatomy;
}

// Strips "<prefix>:" if present; empty or "none" payloads become empty.
std::optional<std::string> payload_after(std::string_view text, const std::string& prefix,
                                         std::vector<std::string>& warnings) {
  std::string flat = trim(text);
  if (flat.empty()) {
    warnings.push_back("empty model output");
    return std::nullopt;
  }
  std::string marker = prefix + ":";
  std::size_t at = flat.find(marker);
  std::string payload;
  if (at == std::string::npos) {
    warnings.push_back("missing \"" + marker + "\" prefix");
    payload = flat;
  } else {
    payload = trim(flat.substr(at + marker.size()));
  }
  if (payload == kNoneSentinel || payload.empty()) return std::nullopt;
  return payload;
}

}  // namespace

ParsedTriggers parse_vanilla_triggers(const std::string& text, const Ontology&) {
  ParsedTriggers result;
  auto payload = payload_after(text, "trigger", result.warnings);
  if (!payload) return result;
  for (const auto& piece : split_commas(*payload)) {
    if (auto trigger = parse_trigger_fragment(piece, result.warnings)) {
      result.triggers.push_back(std::move(*trigger));
    }
  }
  return result;
}

ParsedAnatomies parse_vanilla_anatomies(const std::string& text, const Ontology& ontology) {
  ParsedAnatomies result;
  auto payload = payload_after(text, "anatomies", result.warnings);
  if (!payload) return result;
  for (const auto& piece : split_commas(*payload)) {
    result.anatomies.push_back(parse_anatomy_fragment(piece, ontology, result.warnings));
  }
  return result;
}

ParsedEvents parse_vanilla_one_step(const std::string& text, const Ontology& ontology) {
  ParsedEvents result;
  std::string flat = trim(text);
  if (flat.empty()) {
    result.warnings.push_back("empty model output");
    return result;
  }
  // Split into per-trigger groups at each "trigger:" marker.
  std::vector<std::string> groups;
  std::size_t at = flat.find("trigger:");
  if (at == std::string::npos) {
    result.warnings.push_back("no \"trigger:\" marker in one-step output");
    return result;
  }
  if (trim(flat.substr(0, at)) != "") {
    result.warnings.push_back("stray text before first trigger group");
  }
  while (at != std::string::npos) {
    std::size_t next = flat.find("trigger:", at + 8);
    groups.push_back(flat.substr(at + 8, (next == std::string::npos ? flat.size() : next) -
                                             (at + 8)));
    at = next;
  }
  for (const auto& group : groups) {
    std::string trigger_part = group;
    std::string anatomy_part;
    std::size_t anat = group.find("anatomies:");
    if (anat != std::string::npos) {
      trigger_part = group.substr(0, anat);
      anatomy_part = group.substr(anat);
    }
    std::string trigger_payload = trim(trigger_part);
    if (trigger_payload == kNoneSentinel || trigger_payload.empty()) continue;
    Event event;
    bool have_trigger = false;
    for (const auto& piece : split_commas(trigger_payload)) {
      if (auto trigger = parse_trigger_fragment(piece, result.warnings)) {
        if (have_trigger) {
          // Extra triggers in a group become their own events.
          result.events.push_back(event);
          event = Event{};
        }
        event.trigger = std::move(*trigger);
        have_trigger = true;
      }
    }
    if (!have_trigger) continue;
    if (!anatomy_part.empty()) {
      ParsedAnatomies anatomies = parse_vanilla_anatomies(anatomy_part, ontology);
      event.anatomies = std::move(anatomies.anatomies);
      result.warnings.insert(result.warnings.end(), anatomies.warnings.begin(),
                             anatomies.warnings.end());
    }
    result.events.push_back(std::move(event));
  }
  return result;
}

// ---- Building-block format ----------------------------------------------

const char kStateTriggerDetection[] = "trigger detection";
const char kStateTriggerClassification[] = "trigger classification";
const char kStateSpanDetection[] = "span detection";
const char kStateClassification[] = "classification";

namespace {

std::string block(const std::string& state, const std::string& answer) {
  return "state: " + state + " answer: " + (answer.empty() ? kNoneSentinel : answer);
}

}  // namespace

std::string block_trigger_detection(const std::vector<Event>& events) {
  std::vector<std::string> texts;
  for (const auto& event : events) texts.push_back(event.trigger.text);
  return block(kStateTriggerDetection, join(texts, ", "));
}

std::string block_trigger_classification(const Trigger& trigger) {
  return block(kStateTriggerClassification, labeled(trigger.text, to_string(trigger.type)));
}

std::string block_span_detection(const std::vector<AnatomyEntity>& anatomies) {
  std::vector<std::string> texts;
  for (const auto& anatomy : anatomies) texts.push_back(anatomy.text);
  return block(kStateSpanDetection, join(texts, ", "));
}

std::string block_classification(const AnatomyEntity& anatomy) {
  std::string body = anatomy.text;
  if (anatomy.label) body = labeled(anatomy.text, anatomy.label->parent + " | " + anatomy.label->child);
  return block(kStateClassification, body);
}

std::string emit_blocks(const std::vector<Event>& events) {
  std::vector<std::string> blocks;
  blocks.push_back(block_trigger_detection(events));
  for (const auto& event : events) blocks.push_back(block_trigger_classification(event.trigger));
  for (const auto& event : events) blocks.push_back(block_span_detection(event.anatomies));
  for (const auto& event : events) {
    for (const auto& anatomy : event.anatomies) blocks.push_back(block_classification(anatomy));
  }
  return join(blocks, " ");
}

ParsedEvents parse_blocks(const std::string& text, const Ontology& ontology) {
  ParsedEvents result;

  struct PendingEvent {
    Event event;
    bool classified = false;
  };
  std::vector<PendingEvent> pending;
  std::size_t span_blocks_seen = 0;

  std::vector<std::pair<std::string, std::string>> blocks;  // (state, payload)
  std::size_t at = text.find("state:");
  if (at == std::string::npos) {
    result.warnings.push_back("no blocks found in output");
    return result;
  }
  while (at != std::string::npos) {
    std::size_t next = text.find("state:", at + 6);
    std::string body =
        text.substr(at + 6, (next == std::string::npos ? text.size() : next) - (at + 6));
    std::size_t ans = body.find("answer:");
    if (ans == std::string::npos) {
      result.warnings.push_back("block without \"answer:\": \"" + trim(body) + "\"");
    } else {
      blocks.emplace_back(trim(body.substr(0, ans)), trim(body.substr(ans + 7)));
    }
    at = next;
  }

  auto is_none = [](const std::string& payload) {
    return payload.empty() || payload == kNoneSentinel;
  };

  for (const auto& [state, payload] : blocks) {
    if (state == kStateTriggerDetection) {
      if (is_none(payload)) continue;
      for (const auto& piece : split_commas(payload)) {
        PendingEvent entry;
        entry.event.trigger.text = piece;
        pending.push_back(std::move(entry));
      }
    } else if (state == kStateTriggerClassification) {
      if (is_none(payload)) continue;
      auto trigger = parse_trigger_fragment(payload, result.warnings);
      if (!trigger) continue;
      auto it = std::find_if(pending.begin(), pending.end(), [&](const PendingEvent& entry) {
        return !entry.classified && entry.event.trigger.text == trigger->text;
      });
      if (it != pending.end()) {
        it->event.trigger.type = trigger->type;
        it->classified = true;
      } else {
        // Standalone classification (auxiliary-task target) introduces
        // the trigger itself.
        PendingEvent entry;
        entry.event.trigger = std::move(*trigger);
        entry.classified = true;
        pending.push_back(std::move(entry));
      }
    } else if (state == kStateSpanDetection) {
      std::size_t index = span_blocks_seen++;
      if (index >= pending.size()) {
        if (pending.empty() && blocks.size() == 1) {
          // A lone span-detection block (auxiliary-task target) has no
          // trigger to attach to; surface the texts on a placeholder.
          PendingEvent entry;
          entry.classified = true;
          pending.push_back(std::move(entry));
          index = 0;
        } else {
          result.warnings.push_back("span detection block without matching trigger");
          continue;
        }
      }
      if (is_none(payload)) continue;
      for (const auto& piece : split_commas(payload)) {
        AnatomyEntity anatomy;
        anatomy.text = piece;
        pending[index].event.anatomies.push_back(std::move(anatomy));
      }
    } else if (state == kStateClassification) {
      if (is_none(payload)) continue;
      Fragment fragment = split_fragment(payload);
      if (!fragment.bracketed) {
        result.warnings.push_back("classification block without label: \"" + payload + "\"");
        continue;
      }
      std::optional<AnatomyLabel> label;
      try {
        label = ontology.parse_label(*fragment.bracketed);
      } catch (const LabelError& error) {
        result.warnings.push_back(std::string("unparseable label: ") + error.what());
        continue;
      }
      bool attached = false;
      for (auto& entry : pending) {
        for (auto& anatomy : entry.event.anatomies) {
          if (!anatomy.label && anatomy.text == fragment.text) {
            anatomy.label = label;
            attached = true;
            break;
          }
        }
        if (attached) break;
      }
      if (!attached) {
        if (pending.empty()) {
          // Standalone normalization target.
          PendingEvent entry;
          entry.classified = true;
          AnatomyEntity anatomy;
          anatomy.text = fragment.text;
          anatomy.label = label;
          entry.event.anatomies.push_back(std::move(anatomy));
          pending.push_back(std::move(entry));
        } else {
          result.warnings.push_back("classification block without matching anatomy: \"" +
                                    fragment.text + "\"");
        }
      }
    } else {
      result.warnings.push_back("unknown state: \"" + state + "\"");
    }
  }

  for (auto& entry : pending) {
    if (!entry.classified && !entry.event.trigger.text.empty()) {
      result.warnings.push_back("trigger never classified: \"" + entry.event.trigger.text +
                                "\"");
      continue;
    }
    result.events.push_back(std::move(entry.event));
  }
  return result;
}

// ---- Training-pair export -----------------------------------------------

const std::vector<Event>* AnnotatedCorpus::events_for(const SentenceKey& key) const {
  auto it = annotations.find(key);
  return it == annotations.end() ? nullptr : &it->second;
}

std::optional<std::string> AnnotatedCorpus::sentence_text(const SentenceKey& key) const {
  const Document* doc = corpus.find(key.doc_id);
  if (doc == nullptr || key.index >= doc->sentences.size()) return std::nullopt;
  return doc->sentences[key.index];
}

namespace {

Focus make_focus(const std::string& sentence, const std::string& term,
                 const std::optional<Span>& span) {
  Focus focus;
  focus.term = term;
  focus.span = span;
  focus.window = span ? focus_window(sentence, *span) : term;
  if (focus.window.empty()) focus.window = term;
  return focus;
}

}  // namespace

std::vector<TrainingRecord> emit_training_pairs(const AnnotatedCorpus& corpus,
                                                const TrainingOptions& options,
                                                const Ontology& ontology) {
  std::vector<TrainingRecord> records;
  const std::string joint = ontology.render(OntologyKind::Joint);
  const std::string trigger_ontology = ontology.render(OntologyKind::Trigger);
  const std::string anatomy_ontology = ontology.render(OntologyKind::Anatomy);
  static const std::vector<Event> kNoEvents;

  auto add = [&](const SentenceKey& key, const PromptRecord& prompt, std::string target,
                 std::string task) {
    records.push_back({prompt.prompt, std::move(target), std::move(task), key});
  };

  for (const auto& doc : corpus.corpus.documents) {
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      SentenceKey key{doc.id, i};
      const std::string& sentence = doc.sentences[i];
      const std::vector<Event>* found = corpus.events_for(key);
      const std::vector<Event>& events = found != nullptr ? *found : kNoEvents;

      StepKind one_step = options.format == OutputFormat::Blocks ? StepKind::OneStepBlocks
                                                                 : StepKind::OneStepVanilla;
      std::string target = options.format == OutputFormat::Blocks
                               ? emit_blocks(events)
                               : emit_vanilla_one_step(events);
      add(key, build_prompt(one_step, key, sentence, joint), std::move(target), "one_step");

      if (!options.include_aux) continue;

      add(key, build_prompt(StepKind::TriggerStep, key, sentence, trigger_ontology),
          block_trigger_detection(events), "aux_trigger_detection");

      for (const auto& event : events) {
        Focus trigger_focus = make_focus(sentence, event.trigger.text, event.trigger.span);
        add(key,
            build_prompt(StepKind::AuxTriggerClassify, key, sentence, trigger_ontology, nullptr,
                         trigger_focus),
            block_trigger_classification(event.trigger), "aux_trigger_classification");

        std::string anatomy_target = block_span_detection(event.anatomies);
        for (const auto& anatomy : event.anatomies) {
          anatomy_target += " " + block_classification(anatomy);
        }
        add(key,
            build_prompt(StepKind::AnatomyStep, key, sentence, anatomy_ontology, nullptr,
                         trigger_focus),
            std::move(anatomy_target), "aux_anatomy");

        if (options.include_anatomy_span_aux) {
          add(key,
              build_prompt(StepKind::AuxAnatomySpan, key, sentence, anatomy_ontology, nullptr,
                           trigger_focus),
              block_span_detection(event.anatomies), "aux_anatomy_span");
        }

        for (const auto& anatomy : event.anatomies) {
          Focus anatomy_focus = make_focus(sentence, anatomy.text, anatomy.span);
          add(key,
              build_prompt(StepKind::NormalizeStep, key, sentence, anatomy_ontology, nullptr,
                           anatomy_focus),
              block_classification(anatomy), "aux_anatomy_normalization");
        }
      }
    }
  }
  return records;
}

}  // namespace radex
