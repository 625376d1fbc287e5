#ifndef RADEX_EVAL_HPP
#define RADEX_EVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "radex/core.hpp"

namespace radex {

enum class EvalLevel { Trigger, AnatomySpan, AnatomyParent, AnatomyChild };

std::string to_string(EvalLevel level);

struct PRF {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // False when the respective denominator is zero (value reported as 0).
  bool precision_defined = false;
  bool recall_defined = false;
};

PRF make_prf(std::size_t tp, std::size_t fp, std::size_t fn);

using EventMap = std::map<SentenceKey, std::vector<Event>>;

// One-to-one trigger matching: a pred trigger matches a gold trigger iff
// their spans overlap and types are equal; spanless predictions never
// match. Returns (pred index, gold index) pairs. Deterministic maximum
// matching, seeded left-to-right by span order.
std::vector<std::pair<std::size_t, std::size_t>> match_triggers(const std::vector<Event>& gold,
                                                                const std::vector<Event>& pred);

// Micro-averaged corpus score at one level. Anatomy entities count only
// under matched triggers; parent/child levels ignore spans.
PRF score(const EventMap& gold, const EventMap& pred, EvalLevel level);

struct EvalReport {
  PRF trigger;
  PRF anatomy_span;
  PRF anatomy_parent;
  PRF anatomy_child;
};

EvalReport evaluate(const EventMap& gold, const EventMap& pred);

// Per-document macro view (secondary report).
std::map<std::string, EvalReport> evaluate_per_document(const EventMap& gold,
                                                        const EventMap& pred);

}  // namespace radex

#endif  // RADEX_EVAL_HPP
