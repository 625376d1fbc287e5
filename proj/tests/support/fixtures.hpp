#ifndef RADEX_TESTS_SUPPORT_FIXTURES_HPP
#define RADEX_TESTS_SUPPORT_FIXTURES_HPP

// Shared fixtures and independent oracles for the test suite. The
// oracles deliberately re-derive results from first principles (direct
// formulas, exhaustive enumeration) rather than calling library code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "radex/core.hpp"
#include "radex/ontology.hpp"

namespace radex::testing {

// PET/CT sentence used throughout the template fixtures.
inline const std::string kFixtureSentence =
    "18 x 17 mm hypermetabolic soft tissue density insinuating between the left lobe of "
    "the liver and anterior abdominal wall ( the R/112 ) with maximum SUV 14.4 .";

inline const std::string kFixtureAnatomies =
    "anatomies: soft tissue [ Hepato-Biliary | Liver ], left lobe of the liver "
    "[ Hepato-Biliary | Liver ], anterior abdominal wall [ Abdomen | Abdominal Wall ]";

inline const std::string kFixtureOneStepVanilla =
    "trigger: density [ Lesion ] " + kFixtureAnatomies;

inline const std::string kFixtureBlocks =
    "state: trigger detection answer: density "
    "state: trigger classification answer: density [ Lesion ] "
    "state: span detection answer: soft tissue, left lobe of the liver, anterior abdominal wall "
    "state: classification answer: soft tissue [ Hepato-Biliary | Liver ] "
    "state: classification answer: left lobe of the liver [ Hepato-Biliary | Liver ] "
    "state: classification answer: anterior abdominal wall [ Abdomen | Abdominal Wall ]";

// The gold events for the fixture sentence, spans omitted.
Event fixture_event();

// ---- Random event sets ---------------------------------------------------

// Events whose surface texts avoid the format's delimiter substrings and
// are unique within the set, so parse(emit(x)) == x is well defined.
std::vector<Event> random_events(std::mt19937_64& rng, const Ontology& ontology,
                                 std::size_t max_triggers = 4, std::size_t max_anatomies = 4);

// Strips spans so parse results can be compared with == against inputs.
std::vector<Event> without_spans(std::vector<Event> events);

// ---- Matching oracle ------------------------------------------------------

struct OracleEdge {
  std::size_t pred = 0;
  std::size_t gold = 0;
};

// Exhaustive maximum one-to-one matching size over an arbitrary
// compatibility matrix; O(2^pred * gold), fine for <=5 per side.
std::size_t brute_force_max_matching(const std::vector<std::vector<bool>>& compatible);

// ---- BM25 oracle ----------------------------------------------------------

struct Bm25Oracle {
  double k1 = 1.5;
  double b = 0.75;
  double epsilon = 0.25;

  std::vector<std::vector<std::string>> docs;  // pre-normalized tokens

  double idf(const std::string& term) const;
  double score(const std::vector<std::string>& query, std::size_t doc) const;
};

}  // namespace radex::testing

#endif  // RADEX_TESTS_SUPPORT_FIXTURES_HPP
