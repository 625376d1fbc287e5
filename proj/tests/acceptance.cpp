// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// These checks are property-based plus fixture-exact: they validate the
// template strings, format round-trips, end-to-end replay, metric and
// BM25 oracles, corpus filtering, cost accounting, noise sensitivity,
// and context placement.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "radex/align.hpp"
#include "radex/backend.hpp"
#include "radex/context.hpp"
#include "radex/eval.hpp"
#include "radex/io.hpp"
#include "radex/pipeline.hpp"
#include "radex/retrieval.hpp"
#include "radex/textio.hpp"
#include "support/fixtures.hpp"

using namespace radex;
using namespace radex::testing;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& message) { g_notes.push_back(message); }

void report(int number, const std::string& name, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << name << "\n";
  if (!ok) {
    ++g_failures;
    for (const auto& message : g_notes) std::cout << "      " << message << "\n";
  }
  g_notes.clear();
}

bool check(bool condition, const std::string& message) {
  if (!condition) note(message);
  return condition;
}

// ---- 1: fixture exactness ------------------------------------------------

bool criterion_fixtures() {
  bool ok = true;
  Ontology ontology = Ontology::builtin();

  PromptRecord trigger_prompt = build_prompt(StepKind::TriggerStep, {"fx", 0}, kFixtureSentence,
                                             ontology.render(OntologyKind::Trigger));
  ok &= check(trigger_prompt.prompt ==
                  kFixtureSentence +
                      " Question: What are medical findings in this sentence? structured "
                      "knowledge: Indication | Lesion | Medical_Problem",
              "trigger-step prompt differs from the template fixture");

  std::string density_window = focus_window(kFixtureSentence, Span{38, 45});
  ok &= check(density_window == "hypermetabolic soft tissue density insinuating between the",
              "focus window for the trigger term is wrong: " + density_window);
  std::string anatomy_question =
      step_question(StepKind::AnatomyStep, Focus{"density", density_window, Span{38, 45}});
  ok &= check(anatomy_question ==
                  "Consider the medical finding \"density\" in the span \"hypermetabolic soft "
                  "tissue density insinuating between the\", Question: What anatomy it occurs "
                  "in? Where is it located?",
              "anatomy-step question differs from the template fixture");

  std::string tissue_window = focus_window(kFixtureSentence, Span{26, 37});
  ok &= check(tissue_window == "17 mm hypermetabolic soft tissue density insinuating between",
              "focus window for the anatomy term is wrong: " + tissue_window);
  std::string normalize_question =
      step_question(StepKind::NormalizeStep, Focus{"soft tissue", tissue_window, Span{26, 37}});
  ok &= check(normalize_question ==
                  "Consider the anatomy \"soft tissue\" in the span \"17 mm hypermetabolic "
                  "soft tissue density insinuating between\", which anatomy category it "
                  "belongs to among listed options?",
              "normalization-step question differs from the template fixture");

  Event expected = fixture_event();
  ok &= check(emit_vanilla_triggers({expected}) == "trigger: density [ Lesion ]",
              "vanilla trigger emission differs");
  ok &= check(emit_vanilla_anatomies(expected.anatomies, true) == kFixtureAnatomies,
              "vanilla anatomy emission differs");
  ok &= check(emit_vanilla_one_step({expected}) == kFixtureOneStepVanilla,
              "vanilla one-step emission differs");
  ok &= check(emit_blocks({expected}) == kFixtureBlocks, "block emission differs");

  ParsedEvents vanilla = parse_vanilla_one_step(kFixtureOneStepVanilla, ontology);
  ParsedEvents blocks = parse_blocks(kFixtureBlocks, ontology);
  for (const ParsedEvents* parsed : {&vanilla, &blocks}) {
    ok &= check(parsed->warnings.empty() && parsed->events.size() == 1,
                "printed output did not parse cleanly into one event");
    if (parsed->events.size() == 1) {
      const Event& event = parsed->events[0];
      ok &= check(event.trigger.text == "density" && event.trigger.type == TriggerType::Lesion,
                  "parsed trigger is not density/Lesion");
      ok &= check(event.anatomies.size() == 3 &&
                      *event.anatomies[0].label == AnatomyLabel{"Hepato-Biliary", "Liver"} &&
                      *event.anatomies[1].label == AnatomyLabel{"Hepato-Biliary", "Liver"} &&
                      *event.anatomies[2].label == AnatomyLabel{"Abdomen", "Abdominal Wall"},
                  "parsed anatomies or labels differ from the printed output");
    }
  }
  return ok;
}

// ---- 2: format round-trip property ---------------------------------------

bool criterion_round_trip() {
  bool ok = true;
  Ontology ontology = Ontology::builtin();
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 1000 && ok; ++i) {
    std::vector<Event> events = random_events(rng, ontology);
    ParsedEvents vanilla = parse_vanilla_one_step(emit_vanilla_one_step(events), ontology);
    ok &= check(vanilla.events == events, "vanilla round-trip failed at iteration " +
                                              std::to_string(i));
    ParsedEvents blocks = parse_blocks(emit_blocks(events), ontology);
    ok &= check(blocks.events == events,
                "block round-trip failed at iteration " + std::to_string(i));
  }
  return ok;
}

// ---- synthetic corpora ----------------------------------------------------

// Annotated corpus with alignable entity texts. trigger_quota/anatomy_quota
// pin the exact totals (for cost-model checks); pass SIZE_MAX for random.
AnnotatedCorpus make_corpus(std::size_t sentence_count, std::uint64_t seed,
                            std::size_t trigger_quota = static_cast<std::size_t>(-1),
                            std::size_t anatomy_quota = static_cast<std::size_t>(-1)) {
  static const std::vector<std::pair<std::string, std::string>> sites = {
      {"liver", "Hepato-Biliary | Liver"},   {"lung", "Respiratory | Lung"},
      {"spleen", "Abdomen | Spleen"},        {"kidney", "Urinary | Kidney"},
      {"bladder", "Urinary | Urinary Bladder"}, {"pancreas", "Hepato-Biliary | Pancreas"},
      {"stomach", "Digestive | Stomach"},    {"thyroid", "Head Neck | Thyroid"},
  };
  static const std::vector<std::string> findings = {"nodule", "mass", "lesion", "opacity",
                                                    "cyst", "thickening"};
  Ontology ontology = Ontology::builtin();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> site_pick(0, sites.size() - 1);
  std::uniform_int_distribution<std::size_t> finding_pick(0, findings.size() - 1);

  const bool pinned = trigger_quota != static_cast<std::size_t>(-1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  AnnotatedCorpus annotated;
  Document doc;
  doc.id = "syn";
  doc.exam_type = "PET/CT";
  std::size_t triggers_left = trigger_quota;
  std::size_t anatomies_left = anatomy_quota;
  for (std::size_t i = 0; i < sentence_count; ++i) {
    bool with_trigger = pinned ? triggers_left > 0 : coin(rng) < 0.7;
    if (!with_trigger) {
      doc.sentences.push_back("No acute abnormality is identified .");
      annotated.annotations[{doc.id, i}] = {};
      continue;
    }
    if (pinned) --triggers_left;
    std::size_t anatomy_count;
    if (pinned) {
      // Spread the remaining anatomy quota: take 2 while ahead of pace.
      anatomy_count = std::min<std::size_t>(
          anatomies_left, anatomies_left > triggers_left && anatomies_left >= 2 ? 2 : 1);
    } else {
      anatomy_count = coin(rng) < 0.25 ? 2 : 1;
    }
    const auto& finding = findings[finding_pick(rng)];
    Event event;
    event.trigger.text = finding;
    event.trigger.type = TriggerType::Lesion;
    std::string sentence = "There is a " + finding + " in the";
    std::set<std::size_t> used_sites;
    for (std::size_t a = 0; a < anatomy_count; ++a) {
      std::size_t pick = site_pick(rng);
      while (used_sites.count(pick)) pick = (pick + 1) % sites.size();
      used_sites.insert(pick);
      const auto& [site, label_text] = sites[pick];
      sentence += (a == 0 ? " " : " and the ") + site;
      event.anatomies.push_back({site, std::nullopt, ontology.parse_label(label_text)});
      if (pinned) --anatomies_left;
    }
    sentence += " .";
    doc.sentences.push_back(sentence);
    annotated.annotations[{doc.id, i}] = {event};
  }
  annotated.corpus.documents.push_back(std::move(doc));
  return annotated;
}

EventMap gold_with_spans(const AnnotatedCorpus& annotated) {
  EventMap gold;
  for (const auto& [key, events] : annotated.annotations) {
    gold[key] = attach_spans(*annotated.sentence_text(key), events);
  }
  return gold;
}

// ---- 3: gold-replay end-to-end -------------------------------------------

bool criterion_gold_replay() {
  bool ok = true;
  AnnotatedCorpus annotated = make_corpus(250, 31);
  auto ontology = std::make_shared<const Ontology>(Ontology::builtin());
  EventMap gold = gold_with_spans(annotated);

  std::vector<std::string> flat = annotated.corpus.documents[0].sentences;
  SearchIndex index(flat);
  Bm25Retriever retriever(index);

  for (PipelineKind kind :
       {PipelineKind::ThreeStepVanilla, PipelineKind::TwoStepVanilla,
        PipelineKind::OneStepVanilla, PipelineKind::OneStepBlocks,
        PipelineKind::OneStepBlocksContextNorm}) {
    GoldReplayBackend backend(annotated, ontology);
    PipelineConfig config;
    config.kind = kind;
    config.parallelism = 4;
    PipelineResult result = run_pipeline(config, annotated.corpus, backend, *ontology,
                                         whitespace_token_count, &retriever);
    EvalReport report = evaluate(gold, predictions_to_map(result));
    for (const auto& [level, prf] :
         {std::pair<std::string, const PRF*>{"trigger", &report.trigger},
          {"anatomy_span", &report.anatomy_span},
          {"anatomy_parent", &report.anatomy_parent},
          {"anatomy_child", &report.anatomy_child}}) {
      ok &= check(std::abs(prf->f1 - 1.0) < 1e-12,
                  to_string(kind) + " " + level + " F1 = " + std::to_string(prf->f1));
    }
  }
  return ok;
}

// ---- 4: metric oracle equivalence ----------------------------------------

bool criterion_matching_oracle() {
  bool ok = true;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> count(0, 5);
  std::uniform_int_distribution<std::size_t> offset(0, 30);
  std::uniform_int_distribution<std::size_t> width(1, 8);
  std::uniform_int_distribution<int> type_pick(0, 1);
  for (int instance = 0; instance < 500 && ok; ++instance) {
    std::vector<Event> gold, pred;
    std::size_t gold_count = count(rng), pred_count = count(rng);
    for (std::size_t i = 0; i < gold_count; ++i) {
      std::size_t start = offset(rng);
      gold.push_back({{"g", Span{start, start + width(rng)},
                       static_cast<TriggerType>(type_pick(rng))}, {}});
    }
    for (std::size_t i = 0; i < pred_count; ++i) {
      std::size_t start = offset(rng);
      pred.push_back({{"p", Span{start, start + width(rng)},
                       static_cast<TriggerType>(type_pick(rng))}, {}});
    }
    std::vector<std::vector<bool>> compatible(pred.size(),
                                              std::vector<bool>(gold.size(), false));
    for (std::size_t p = 0; p < pred.size(); ++p) {
      for (std::size_t g = 0; g < gold.size(); ++g) {
        compatible[p][g] = pred[p].trigger.type == gold[g].trigger.type &&
                           overlaps(*pred[p].trigger.span, *gold[g].trigger.span);
      }
    }
    std::size_t expected = brute_force_max_matching(compatible);
    std::size_t actual = match_triggers(gold, pred).size();
    ok &= check(actual == expected,
                "matching size " + std::to_string(actual) + " != oracle " +
                    std::to_string(expected) + " at instance " + std::to_string(instance));

    // PRF values from the raw formulas.
    EventMap gold_map, pred_map;
    gold_map[{"d", 0}] = gold;
    pred_map[{"d", 0}] = pred;
    PRF prf = score(gold_map, pred_map, EvalLevel::Trigger);
    std::size_t tp = expected;
    std::size_t fp = pred.size() - tp;
    std::size_t fn = gold.size() - tp;
    double precision = pred.empty() ? 0.0 : double(tp) / double(tp + fp);
    double recall = gold.empty() ? 0.0 : double(tp) / double(tp + fn);
    double f1 = (precision + recall) == 0.0 ? 0.0
                                            : 2 * precision * recall / (precision + recall);
    ok &= check(prf.tp == tp && prf.fp == fp && prf.fn == fn, "PRF counts differ from oracle");
    ok &= check(std::abs(prf.precision - precision) < 1e-12 &&
                    std::abs(prf.recall - recall) < 1e-12 && std::abs(prf.f1 - f1) < 1e-12,
                "PRF values differ from the hand formulas");
  }
  return ok;
}

// ---- 5: BM25 oracle -------------------------------------------------------

bool criterion_bm25() {
  bool ok = true;
  std::vector<std::string> sentences = {
      "Small nodule in the right lung lobe.",
      "The liver is unremarkable.",
      "Hypermetabolic lymph node in the mediastinum.",
      "No acute fracture of the spine.",
      "Soft tissue density near the abdominal wall.",
      "The lung fields are clear bilaterally.",
      "Mild thickening of the bladder wall.",
      "Enlarged spleen with heterogeneous uptake.",
      "The pancreas and kidneys appear normal.",
      "Sclerotic lesion in the left femur.",
      "No pleural effusion or pneumothorax.",
      "Prominent uptake in the thyroid gland.",
      "The heart size is within normal limits.",
      "Degenerative changes of the lumbar spine.",
      "Cystic lesion in the right ovary.",
      "The bowel loops are unremarkable.",
      "Focal uptake in the sigmoid colon.",
      "Stable appearance of the brain parenchyma.",
      "Small hiatal hernia is noted.",
      "The adrenal glands are normal in size.",
  };
  SearchIndex index(sentences);
  Bm25Oracle oracle{index.config().k1, index.config().b, index.config().epsilon, {}};
  for (const auto& sentence : sentences) oracle.docs.push_back(normalize_query(sentence));

  std::vector<std::string> queries = {"nodule in the lung", "liver uptake", "spine fracture",
                                      "normal glands", sentences[4]};
  for (const std::string& query : queries) {
    auto tokens = normalize_query(query);
    for (std::size_t id = 0; id < sentences.size(); ++id) {
      double got = index.score(tokens, id);
      double want = oracle.score(tokens, id);
      ok &= check(std::abs(got - want) < 1e-9,
                  "score mismatch on \"" + query + "\" doc " + std::to_string(id) + ": " +
                      std::to_string(got) + " vs " + std::to_string(want));
    }
  }

  // Ranking with self-exclusion: query an exact corpus sentence.
  std::string query = sentences[4];
  auto tokens = normalize_query(query);
  std::vector<std::size_t> order;
  for (std::size_t id = 0; id < sentences.size(); ++id) {
    if (id != 4) order.push_back(id);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return oracle.score(tokens, a) > oracle.score(tokens, b);
  });
  auto hits = index.retrieve(query, sentences.size());
  ok &= check(hits.size() == order.size(), "self-exclusion did not drop exactly one sentence");
  for (std::size_t i = 0; i < hits.size() && i < order.size(); ++i) {
    ok &= check(hits[i].id == order[i], "ranking differs from oracle at position " +
                                            std::to_string(i));
    ok &= check(hits[i].id != 4, "query sentence leaked into its own results");
  }
  return ok;
}

// ---- 6: corpus filter property -------------------------------------------

bool criterion_filter() {
  bool ok = true;
  TermList terms = default_term_list();
  // 100 sentences, exactly 36 of them carrying a filter term.
  std::vector<std::string> sentences;
  std::vector<std::string> expected;
  const std::vector<std::string> term_sites = {"liver", "lung", "spleen", "kidney",
                                               "stomach", "pancreas"};
  for (std::size_t i = 0; i < 100; ++i) {
    if (i % 25 == 24) {
      // Term as substring only: must NOT be retained.
      sentences.push_back("Sentence " + std::to_string(i) + " mentions deliverables only .");
      continue;
    }
    if (i % 5 < 2 && expected.size() < 36) {
      const auto& site = term_sites[i % term_sites.size()];
      sentences.push_back("Sentence " + std::to_string(i) + " shows the " + site + " region .");
      expected.push_back(sentences.back());
    } else {
      sentences.push_back("Sentence " + std::to_string(i) + " is otherwise unremarkable .");
    }
  }
  ok &= check(expected.size() == 36, "corpus construction yielded " +
                                         std::to_string(expected.size()) + " term sentences");
  auto kept = filter_corpus(sentences, terms);
  ok &= check(kept == expected, "retained set is not exactly the 36 term-bearing sentences (" +
                                    std::to_string(kept.size()) + "/100 kept)");

  // Property: every retained sentence contains some term as a whole word.
  for (const auto& sentence : kept) {
    auto tokens = normalize_query(sentence);
    bool has_term = false;
    for (const auto& term : terms.terms()) {
      auto term_tokens = normalize_query(term);
      for (std::size_t i = 0; !has_term && i + term_tokens.size() <= tokens.size(); ++i) {
        has_term = std::equal(term_tokens.begin(), term_tokens.end(), tokens.begin() + i);
      }
    }
    ok &= check(has_term, "retained sentence lacks a whole-word term: " + sentence);
  }
  return ok;
}

// ---- 7: cost model --------------------------------------------------------

bool criterion_cost() {
  bool ok = true;
  // 100 sentences, 70 with one trigger, 80 anatomies total.
  AnnotatedCorpus annotated = make_corpus(100, 55, 70, 80);
  std::size_t triggers = 0, anatomies = 0;
  for (const auto& [key, events] : annotated.annotations) {
    triggers += events.size();
    for (const auto& event : events) anatomies += event.anatomies.size();
  }
  ok &= check(triggers == 70 && anatomies == 80,
              "pinned corpus has " + std::to_string(triggers) + " triggers / " +
                  std::to_string(anatomies) + " anatomies");

  auto ontology = std::make_shared<const Ontology>(Ontology::builtin());
  SearchIndex index(annotated.corpus.documents[0].sentences);
  Bm25Retriever retriever(index);

  auto run = [&](PipelineKind kind) {
    GoldReplayBackend backend(annotated, ontology);
    PipelineConfig config;
    config.kind = kind;
    PipelineResult result = run_pipeline(config, annotated.corpus, backend, *ontology,
                                         whitespace_token_count, &retriever);
    return cost_report(result.logs);
  };

  CostReport one_step = run(PipelineKind::OneStepBlocks);
  CostReport two_step = run(PipelineKind::TwoStepVanilla);
  CostReport three_step = run(PipelineKind::ThreeStepVanilla);
  CostReport with_context = run(PipelineKind::OneStepBlocksContextNorm);

  ok &= check(one_step.passes_per_sample == 1.0,
              "one-step passes/sample = " + std::to_string(one_step.passes_per_sample));
  ok &= check(std::abs(two_step.passes_per_sample - 1.7) <= 0.05,
              "two-step passes/sample = " + std::to_string(two_step.passes_per_sample));
  ok &= check(std::abs(three_step.passes_per_sample - 2.5) <= 0.05,
              "three-step passes/sample = " + std::to_string(three_step.passes_per_sample));

  ok &= check(two_step.tokens_per_sample < one_step.tokens_per_sample &&
                  one_step.tokens_per_sample < three_step.tokens_per_sample &&
                  three_step.tokens_per_sample < with_context.tokens_per_sample,
              "tokens/sample ordering violated: two-step " +
                  std::to_string(two_step.tokens_per_sample) + ", one-step blocks " +
                  std::to_string(one_step.tokens_per_sample) + ", three-step " +
                  std::to_string(three_step.tokens_per_sample) + ", with context " +
                  std::to_string(with_context.tokens_per_sample));
  return ok;
}

// ---- 8: noise sensitivity -------------------------------------------------

bool criterion_noise() {
  bool ok = true;
  AnnotatedCorpus annotated = make_corpus(200, 88);
  auto ontology = std::make_shared<const Ontology>(Ontology::builtin());
  EventMap gold = gold_with_spans(annotated);
  auto inner = std::make_shared<GoldReplayBackend>(annotated, ontology);
  NoisyReplayBackend backend(inner, ontology, 4242, /*drop_prob=*/0.2, /*flip_prob=*/0.0);
  PipelineConfig config;
  config.kind = PipelineKind::OneStepBlocks;
  PipelineResult result = run_pipeline(config, annotated.corpus, backend, *ontology);
  EvalReport report = evaluate(gold, predictions_to_map(result));
  for (const auto& [level, prf] :
       {std::pair<std::string, const PRF*>{"trigger", &report.trigger},
        {"anatomy_span", &report.anatomy_span},
        {"anatomy_parent", &report.anatomy_parent},
        {"anatomy_child", &report.anatomy_child}}) {
    ok &= check(prf->recall < 1.0, level + " recall did not drop below 1.0");
    ok &= check(std::abs(prf->precision - 1.0) < 1e-12,
                level + " survivor precision = " + std::to_string(prf->precision));
  }
  return ok;
}

// ---- 9: section header and context placement ------------------------------

bool criterion_context() {
  bool ok = true;
  Document doc;
  doc.id = "r1";
  doc.exam_type = "PET/CT";
  doc.sentences = {
      "CLINICAL HISTORY: lymphoma staging.",
      "FINDINGS:",
      "Hypermetabolic node in the mediastinum.",
      "The liver is unremarkable.",
      "IMPRESSION: stable disease.",
  };
  ok &= check(extract_section_header(doc, 3) == std::optional<std::string>("FINDINGS:"),
              "section header for sentence 3 is not FINDINGS:");
  ok &= check(extract_section_header(doc, 1) == std::optional<std::string>("CLINICAL HISTORY:"),
              "section header for sentence 1 is not CLINICAL HISTORY:");
  ok &= check(!extract_section_header(doc, 0).has_value(),
              "sentence 0 unexpectedly has a section header");

  class OneHit : public Retriever {
   public:
    std::vector<std::string> retrieve(const std::string&, std::size_t) const override {
      return {"Retrieved sentence."};
    }
  };
  OneHit retriever;
  ContextBundle bundle = gather_context(doc, 3, ContextKind::AllCombined, &retriever);
  ok &= check(bundle.prepended ==
                  std::vector<std::string>{"PET/CT", "FINDINGS:", doc.sentences[2]},
              "prepended context is not exam type, header, prior sentence");
  ok &= check(bundle.appended ==
                  std::vector<std::string>{doc.sentences[4], "Retrieved sentence."},
              "appended context is not following sentence then retrieved sentence");

  PromptRecord record = build_prompt(StepKind::OneStepBlocks, {doc.id, 3}, doc.sentences[3],
                                     "ONTOLOGY", &bundle);
  const std::string& prompt = record.prompt;
  std::size_t input_at = prompt.find(doc.sentences[3]);
  std::size_t knowledge_at = prompt.find("structured knowledge:");
  ok &= check(prompt.rfind("PET/CT FINDINGS: " + doc.sentences[2] + " " + doc.sentences[3], 0) ==
                  0,
              "prepended contexts do not precede the input sentence");
  ok &= check(input_at != std::string::npos && knowledge_at != std::string::npos &&
                  input_at < knowledge_at,
              "input sentence does not precede the knowledge section");
  std::size_t following_at = prompt.find(doc.sentences[4]);
  std::size_t retrieved_at = prompt.find("Retrieved sentence.");
  std::size_t ontology_at = prompt.rfind("ONTOLOGY");
  ok &= check(knowledge_at < following_at && following_at < retrieved_at &&
                  retrieved_at < ontology_at && ontology_at + 8 == prompt.size(),
              "appended contexts are not between the input and the final ontology");
  return ok;
}

}  // namespace

int main() {
  report(1, "template fixtures round-trip byte-exactly", criterion_fixtures());
  report(2, "1000 random event sets round-trip in both formats", criterion_round_trip());
  report(3, "gold replay reaches F1 = 1.0 for every pipeline kind", criterion_gold_replay());
  report(4, "trigger matching equals the brute-force oracle on 500 instances",
         criterion_matching_oracle());
  report(5, "BM25 scores and ranking match the direct-formula oracle", criterion_bm25());
  report(6, "corpus filter retains exactly the 36 term-bearing sentences", criterion_filter());
  report(7, "passes/sample reproduces 1.0 / 1.7 / 2.5 and the token ordering",
         criterion_cost());
  report(8, "dropped entities lower recall but never survivor precision", criterion_noise());
  report(9, "section headers and context placement follow the template rules",
         criterion_context());
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 9 criteria passed\n";
  return 0;
}
