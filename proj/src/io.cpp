#include "radex/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "radex/text_util.hpp"

namespace radex {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& path, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw SchemaError(path + ":" + std::to_string(line_no) + ": invalid JSON: " + e.what());
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::optional<Span> span_from_json(const json& object, const std::string& where) {
  if (!object.contains("start") || object["start"].is_null()) return std::nullopt;
  if (!object.contains("end") || object["end"].is_null()) {
    throw SchemaError(where + ": span has start but no end");
  }
  Span span;
  span.start = object["start"].get<std::size_t>();
  span.end = object["end"].get<std::size_t>();
  if (span.start >= span.end) throw SchemaError(where + ": span start must precede end");
  return span;
}

json span_to_json(const std::optional<Span>& span, json object) {
  if (span) {
    object["start"] = span->start;
    object["end"] = span->end;
  } else {
    object["start"] = nullptr;
    object["end"] = nullptr;
  }
  return object;
}

}  // namespace

Corpus load_corpus_jsonl(const std::string& path) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::set<std::string> ids;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    json doc = parse_line(line, path, line_no);
    if (!doc.is_object() || !doc.contains("id") || !doc.contains("sentences")) {
      throw SchemaError(path + ":" + std::to_string(line_no) +
                        ": document needs \"id\" and \"sentences\"");
    }
    Document document;
    document.id = doc["id"].get<std::string>();
    if (!ids.insert(document.id).second) {
      throw SchemaError(path + ":" + std::to_string(line_no) + ": duplicate document id \"" +
                        document.id + "\"");
    }
    if (doc.contains("exam_type") && !doc["exam_type"].is_null()) {
      document.exam_type = doc["exam_type"].get<std::string>();
    }
    for (const auto& sentence : doc["sentences"]) {
      std::string text = sentence.get<std::string>();
      if (text.empty()) {
        throw SchemaError(path + ":" + std::to_string(line_no) + ": empty sentence in \"" +
                          document.id + "\"");
      }
      document.sentences.push_back(std::move(text));
    }
    corpus.documents.push_back(std::move(document));
  }
  return corpus;
}

void save_corpus_jsonl(const std::string& path, const Corpus& corpus) {
  std::ostringstream out;
  for (const auto& document : corpus.documents) {
    json doc = {{"id", document.id},
                {"exam_type", document.exam_type},
                {"sentences", document.sentences}};
    out << doc.dump() << "\n";
  }
  write_text_atomic(path, out.str());
}

EventMap load_annotations_jsonl(const std::string& path, const Ontology* ontology,
                                const Corpus* corpus) {
  EventMap annotations;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    json record = parse_line(line, path, line_no);
    if (!record.is_object() || !record.contains("doc_id") || !record.contains("sent")) {
      throw SchemaError(where + ": record needs \"doc_id\" and \"sent\"");
    }
    SentenceKey key{record["doc_id"].get<std::string>(), record["sent"].get<std::size_t>()};

    const std::string* sentence = nullptr;
    if (corpus != nullptr) {
      const Document* doc = corpus->find(key.doc_id);
      if (doc == nullptr) throw SchemaError(where + ": unknown doc_id \"" + key.doc_id + "\"");
      if (key.index >= doc->sentences.size()) {
        throw SchemaError(where + ": sentence index out of range");
      }
      sentence = &doc->sentences[key.index];
    }

    std::vector<Event> events;
    for (const auto& event_json : record.value("events", json::array())) {
      Event event;
      const json& trigger = event_json.at("trigger");
      event.trigger.text = trigger.at("text").get<std::string>();
      event.trigger.span = span_from_json(trigger, where);
      auto type = trigger_type_from_string(trigger.at("type").get<std::string>());
      if (!type) {
        throw SchemaError(where + ": unknown trigger type \"" +
                          trigger.at("type").get<std::string>() + "\"");
      }
      event.trigger.type = *type;
      for (const auto& anatomy_json : event_json.value("anatomies", json::array())) {
        AnatomyEntity anatomy;
        anatomy.text = anatomy_json.at("text").get<std::string>();
        anatomy.span = span_from_json(anatomy_json, where);
        if (anatomy_json.contains("parent") && !anatomy_json["parent"].is_null()) {
          AnatomyLabel label;
          label.parent = anatomy_json["parent"].get<std::string>();
          label.child = anatomy_json.value("child", "Undetermined");
          if (ontology != nullptr && !ontology->has_child(label.parent, label.child)) {
            throw SchemaError(where + ": label not in ontology: \"" + label.parent + " | " +
                              label.child + "\"");
          }
          anatomy.label = std::move(label);
        }
        event.anatomies.push_back(std::move(anatomy));
      }
      if (sentence != nullptr) {
        for (const auto& violation : validate_event(*sentence, event)) {
          throw SchemaError(where + ": " + violation.message);
        }
      }
      events.push_back(std::move(event));
    }
    annotations[key] = std::move(events);
  }
  return annotations;
}

void save_annotations_jsonl(const std::string& path, const EventMap& annotations) {
  std::ostringstream out;
  for (const auto& [key, events] : annotations) {
    json events_json = json::array();
    for (const auto& event : events) {
      json trigger = span_to_json(event.trigger.span, {{"text", event.trigger.text},
                                                       {"type", to_string(event.trigger.type)}});
      json anatomies = json::array();
      for (const auto& anatomy : event.anatomies) {
        json entry = span_to_json(anatomy.span, {{"text", anatomy.text}});
        if (anatomy.label) {
          entry["parent"] = anatomy.label->parent;
          entry["child"] = anatomy.label->child;
        } else {
          entry["parent"] = nullptr;
          entry["child"] = nullptr;
        }
        anatomies.push_back(std::move(entry));
      }
      events_json.push_back({{"trigger", std::move(trigger)}, {"anatomies", std::move(anatomies)}});
    }
    json record = {{"doc_id", key.doc_id}, {"sent", key.index}, {"events", std::move(events_json)}};
    out << record.dump() << "\n";
  }
  write_text_atomic(path, out.str());
}

std::vector<std::string> load_sentence_lines(const std::string& path) {
  std::vector<std::string> sentences;
  for (auto& line : read_lines(path)) {
    if (!line.empty()) sentences.push_back(std::move(line));
  }
  return sentences;
}

void save_sentence_lines(const std::string& path, const std::vector<std::string>& sentences) {
  std::ostringstream out;
  for (const auto& sentence : sentences) out << sentence << "\n";
  write_text_atomic(path, out.str());
}

void save_training_records(const std::string& path, const std::vector<TrainingRecord>& records) {
  std::ostringstream out;
  for (const auto& record : records) {
    json entry = {{"prompt", record.prompt},
                  {"target", record.target},
                  {"task", record.task},
                  {"doc_id", record.key.doc_id},
                  {"sent", record.key.index}};
    out << entry.dump() << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("error writing file: " + temp.string());
  }
  fs::rename(temp, target);
}

nlohmann::json prf_to_json(const PRF& prf) {
  return {{"tp", prf.tp}, {"fp", prf.fp},          {"fn", prf.fn},
          {"p", prf.precision}, {"r", prf.recall}, {"f1", prf.f1}};
}

nlohmann::json report_to_json(const EvalReport& report) {
  return {{"trigger", prf_to_json(report.trigger)},
          {"anatomy_span", prf_to_json(report.anatomy_span)},
          {"anatomy_parent", prf_to_json(report.anatomy_parent)},
          {"anatomy_child", prf_to_json(report.anatomy_child)}};
}

nlohmann::json cost_report_to_json(const CostReport& report) {
  return {{"passes_per_sample", report.passes_per_sample},
          {"tokens_per_sample", report.tokens_per_sample},
          {"sentences", report.sentence_count},
          {"empty", report.empty}};
}

EventMap predictions_to_map(const PipelineResult& result) {
  EventMap map;
  for (const auto& prediction : result.predictions) {
    map[prediction.key] = prediction.events;
  }
  return map;
}

}  // namespace radex
