#include "radex/eval.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace radex {

std::string to_string(EvalLevel level) {
  switch (level) {
    case EvalLevel::Trigger: return "trigger";
    case EvalLevel::AnatomySpan: return "anatomy_span";
    case EvalLevel::AnatomyParent: return "anatomy_parent";
    case EvalLevel::AnatomyChild: return "anatomy_child";
  }
  return {};
}

PRF make_prf(std::size_t tp, std::size_t fp, std::size_t fn) {
  PRF prf;
  prf.tp = tp;
  prf.fp = fp;
  prf.fn = fn;
  if (tp + fp > 0) {
    prf.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    prf.precision_defined = true;
  }
  if (tp + fn > 0) {
    prf.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    prf.recall_defined = true;
  }
  if (prf.precision + prf.recall > 0.0) {
    prf.f1 = 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
  }
  return prf;
}

namespace {

// Deterministic maximum one-to-one matching via augmenting paths, with
// both sides visited in left-to-right span order so ties resolve
// leftmost.
std::vector<std::pair<std::size_t, std::size_t>> maximum_matching(
    std::size_t n_left, std::size_t n_right,
    const std::function<bool(std::size_t, std::size_t)>& edge,
    const std::vector<std::size_t>& left_order, const std::vector<std::size_t>& right_order) {
  std::vector<std::ptrdiff_t> right_to_left(n_right, -1);

  std::function<bool(std::size_t, std::vector<bool>&)> try_assign =
      [&](std::size_t left, std::vector<bool>& visited) -> bool {
    for (std::size_t right : right_order) {
      if (visited[right] || !edge(left, right)) continue;
      visited[right] = true;
      if (right_to_left[right] < 0 ||
          try_assign(static_cast<std::size_t>(right_to_left[right]), visited)) {
        right_to_left[right] = static_cast<std::ptrdiff_t>(left);
        return true;
      }
    }
    return false;
  };

  for (std::size_t left : left_order) {
    std::vector<bool> visited(n_right, false);
    try_assign(left, visited);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t right = 0; right < n_right; ++right) {
    if (right_to_left[right] >= 0) {
      pairs.emplace_back(static_cast<std::size_t>(right_to_left[right]), right);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<std::size_t> span_order(std::size_t count,
                                    const std::function<std::optional<Span>(std::size_t)>& span_of) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto sa = span_of(a);
    auto sb = span_of(b);
    if (sa.has_value() != sb.has_value()) return sa.has_value();  // spanless last
    if (!sa) return false;
    if (sa->start != sb->start) return sa->start < sb->start;
    return sa->end < sb->end;
  });
  return order;
}

bool anatomy_edge(const AnatomyEntity& pred, const AnatomyEntity& gold, EvalLevel level) {
  switch (level) {
    case EvalLevel::AnatomySpan:
      return pred.span && gold.span && overlaps(*pred.span, *gold.span);
    case EvalLevel::AnatomyParent:
      return pred.label && gold.label && pred.label->parent == gold.label->parent;
    case EvalLevel::AnatomyChild:
      return pred.label && gold.label && *pred.label == *gold.label;
    default:
      return false;
  }
}

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

Counts count_sentence(const std::vector<Event>& gold, const std::vector<Event>& pred,
                      EvalLevel level) {
  Counts counts;
  const auto trigger_pairs = match_triggers(gold, pred);

  if (level == EvalLevel::Trigger) {
    counts.tp = trigger_pairs.size();
    counts.fp = pred.size() - trigger_pairs.size();
    counts.fn = gold.size() - trigger_pairs.size();
    return counts;
  }

  std::set<std::size_t> matched_pred;
  std::set<std::size_t> matched_gold;
  for (const auto& [pred_index, gold_index] : trigger_pairs) {
    matched_pred.insert(pred_index);
    matched_gold.insert(gold_index);
    const auto& pred_anatomies = pred[pred_index].anatomies;
    const auto& gold_anatomies = gold[gold_index].anatomies;
    auto edge = [&](std::size_t p, std::size_t g) {
      return anatomy_edge(pred_anatomies[p], gold_anatomies[g], level);
    };
    auto pred_order = span_order(pred_anatomies.size(),
                                 [&](std::size_t i) { return pred_anatomies[i].span; });
    auto gold_order = span_order(gold_anatomies.size(),
                                 [&](std::size_t i) { return gold_anatomies[i].span; });
    auto pairs =
        maximum_matching(pred_anatomies.size(), gold_anatomies.size(), edge, pred_order, gold_order);
    counts.tp += pairs.size();
    counts.fp += pred_anatomies.size() - pairs.size();
    counts.fn += gold_anatomies.size() - pairs.size();
  }
  // Anatomies under unmatched triggers are all misses.
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!matched_pred.count(i)) counts.fp += pred[i].anatomies.size();
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!matched_gold.count(i)) counts.fn += gold[i].anatomies.size();
  }
  return counts;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> match_triggers(const std::vector<Event>& gold,
                                                                const std::vector<Event>& pred) {
  auto edge = [&](std::size_t p, std::size_t g) {
    const Trigger& pt = pred[p].trigger;
    const Trigger& gt = gold[g].trigger;
    return pt.span && gt.span && pt.type == gt.type && overlaps(*pt.span, *gt.span);
  };
  auto pred_order =
      span_order(pred.size(), [&](std::size_t i) { return pred[i].trigger.span; });
  auto gold_order =
      span_order(gold.size(), [&](std::size_t i) { return gold[i].trigger.span; });
  return maximum_matching(pred.size(), gold.size(), edge, pred_order, gold_order);
}

PRF score(const EventMap& gold, const EventMap& pred, EvalLevel level) {
  static const std::vector<Event> kEmpty;
  std::set<SentenceKey> keys;
  for (const auto& [key, events] : gold) keys.insert(key);
  for (const auto& [key, events] : pred) keys.insert(key);

  Counts total;
  for (const auto& key : keys) {
    auto g = gold.find(key);
    auto p = pred.find(key);
    Counts counts = count_sentence(g != gold.end() ? g->second : kEmpty,
                                   p != pred.end() ? p->second : kEmpty, level);
    total.tp += counts.tp;
    total.fp += counts.fp;
    total.fn += counts.fn;
  }
  return make_prf(total.tp, total.fp, total.fn);
}

EvalReport evaluate(const EventMap& gold, const EventMap& pred) {
  EvalReport report;
  report.trigger = score(gold, pred, EvalLevel::Trigger);
  report.anatomy_span = score(gold, pred, EvalLevel::AnatomySpan);
  report.anatomy_parent = score(gold, pred, EvalLevel::AnatomyParent);
  report.anatomy_child = score(gold, pred, EvalLevel::AnatomyChild);
  return report;
}

std::map<std::string, EvalReport> evaluate_per_document(const EventMap& gold,
                                                        const EventMap& pred) {
  std::set<std::string> doc_ids;
  for (const auto& [key, events] : gold) doc_ids.insert(key.doc_id);
  for (const auto& [key, events] : pred) doc_ids.insert(key.doc_id);

  std::map<std::string, EvalReport> reports;
  for (const auto& doc_id : doc_ids) {
    EventMap doc_gold;
    EventMap doc_pred;
    for (const auto& [key, events] : gold) {
      if (key.doc_id == doc_id) doc_gold[key] = events;
    }
    for (const auto& [key, events] : pred) {
      if (key.doc_id == doc_id) doc_pred[key] = events;
    }
    reports[doc_id] = evaluate(doc_gold, doc_pred);
  }
  return reports;
}

}  // namespace radex
