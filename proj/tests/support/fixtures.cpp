#include "fixtures.hpp"

#include <functional>

namespace radex::testing {

Event fixture_event() {
  Event event;
  event.trigger = {"density", std::nullopt, TriggerType::Lesion};
  event.anatomies = {
      {"soft tissue", std::nullopt, AnatomyLabel{"Hepato-Biliary", "Liver"}},
      {"left lobe of the liver", std::nullopt, AnatomyLabel{"Hepato-Biliary", "Liver"}},
      {"anterior abdominal wall", std::nullopt, AnatomyLabel{"Abdomen", "Abdominal Wall"}},
  };
  return event;
}

namespace {

const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> pool = {
      "nodule",  "mass",     "lesion",   "opacity", "effusion", "density", "cyst",
      "fracture", "stenosis", "thickening", "uptake", "collection", "edema", "plaque",
      "granuloma", "atelectasis", "hernia", "calcification", "infiltrate", "erosion",
  };
  return pool;
}

std::string random_term(std::mt19937_64& rng, std::set<std::string>& used) {
  const auto& pool = word_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> words(1, 3);
  for (;;) {
    int n = words(rng);
    std::string term;
    for (int i = 0; i < n; ++i) {
      if (!term.empty()) term += " ";
      term += pool[pick(rng)];
    }
    if (used.insert(term).second) return term;
  }
}

}  // namespace

std::vector<Event> random_events(std::mt19937_64& rng, const Ontology& ontology,
                                 std::size_t max_triggers, std::size_t max_anatomies) {
  std::vector<AnatomyLabel> labels = ontology.all_labels();
  std::uniform_int_distribution<std::size_t> trigger_count(0, max_triggers);
  std::uniform_int_distribution<std::size_t> anatomy_count(0, max_anatomies);
  std::uniform_int_distribution<std::size_t> label_pick(0, labels.size() - 1);
  std::uniform_int_distribution<int> type_pick(0, 2);

  std::set<std::string> used;  // distinct texts keep block joins unambiguous
  std::vector<Event> events;
  std::size_t triggers = trigger_count(rng);
  for (std::size_t t = 0; t < triggers; ++t) {
    Event event;
    event.trigger.text = random_term(rng, used);
    event.trigger.type = static_cast<TriggerType>(type_pick(rng));
    std::size_t anatomies = anatomy_count(rng);
    for (std::size_t a = 0; a < anatomies; ++a) {
      AnatomyEntity anatomy;
      anatomy.text = random_term(rng, used);
      anatomy.label = labels[label_pick(rng)];
      event.anatomies.push_back(std::move(anatomy));
    }
    events.push_back(std::move(event));
  }
  return events;
}

std::vector<Event> without_spans(std::vector<Event> events) {
  for (auto& event : events) {
    event.trigger.span.reset();
    for (auto& anatomy : event.anatomies) anatomy.span.reset();
  }
  return events;
}

std::size_t brute_force_max_matching(const std::vector<std::vector<bool>>& compatible) {
  std::size_t preds = compatible.size();
  std::size_t golds = preds == 0 ? 0 : compatible.front().size();
  std::size_t best = 0;
  // Each pred picks a gold index or "skip"; golds bitmask guards 1:1.
  std::vector<std::size_t> choice(preds, golds);  // golds == skip
  std::function<void(std::size_t, std::uint32_t, std::size_t)> walk =
      [&](std::size_t pred, std::uint32_t taken, std::size_t size) {
        if (pred == preds) {
          best = std::max(best, size);
          return;
        }
        walk(pred + 1, taken, size);
        for (std::size_t gold = 0; gold < golds; ++gold) {
          if (compatible[pred][gold] && !(taken & (1u << gold))) {
            walk(pred + 1, taken | (1u << gold), size + 1);
          }
        }
      };
  walk(0, 0, 0);
  return best;
}

double Bm25Oracle::idf(const std::string& term) const {
  auto raw = [&](const std::string& t) {
    std::size_t n = 0;
    for (const auto& doc : docs) {
      if (std::find(doc.begin(), doc.end(), t) != doc.end()) ++n;
    }
    double N = static_cast<double>(docs.size());
    return std::log((N - static_cast<double>(n) + 0.5) / (static_cast<double>(n) + 0.5));
  };
  double value = raw(term);
  if (value > 0) return value;
  // Negative IDF floored at epsilon times the mean positive IDF.
  std::set<std::string> vocab;
  for (const auto& doc : docs) vocab.insert(doc.begin(), doc.end());
  double sum = 0.0;
  std::size_t positives = 0;
  for (const auto& t : vocab) {
    double v = raw(t);
    if (v > 0) {
      sum += v;
      ++positives;
    }
  }
  return positives == 0 ? 0.0 : epsilon * (sum / static_cast<double>(positives));
}

double Bm25Oracle::score(const std::vector<std::string>& query, std::size_t doc) const {
  double total_len = 0.0;
  for (const auto& d : docs) total_len += static_cast<double>(d.size());
  double avgdl = docs.empty() ? 0.0 : total_len / static_cast<double>(docs.size());
  double dl = static_cast<double>(docs[doc].size());
  double score = 0.0;
  for (const auto& term : query) {
    double tf = static_cast<double>(std::count(docs[doc].begin(), docs[doc].end(), term));
    if (tf == 0.0) continue;
    score += idf(term) * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * dl / avgdl));
  }
  return score;
}

}  // namespace radex::testing
