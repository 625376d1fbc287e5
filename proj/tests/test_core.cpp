#include <doctest.h>

#include "radex/core.hpp"
#include "radex/text_util.hpp"

using namespace radex;

TEST_CASE("span overlap is half-open") {
  CHECK(overlaps({0, 5}, {4, 9}));
  CHECK(overlaps({4, 9}, {0, 5}));
  CHECK_FALSE(overlaps({0, 5}, {5, 9}));  // touching spans do not overlap
  CHECK_FALSE(overlaps({5, 9}, {0, 5}));
  CHECK(overlaps({2, 3}, {0, 10}));
  CHECK_FALSE(overlaps({0, 0}, {0, 5}));  // empty span overlaps nothing
}

TEST_CASE("span midpoint") {
  CHECK(Span{2, 6}.midpoint() == doctest::Approx(4.0));
  CHECK(Span{3, 4}.midpoint() == doctest::Approx(3.5));
}

TEST_CASE("offsets are code points not bytes") {
  // "é" is two bytes but one code point.
  std::string text = "caf\xc3\xa9 au lait";
  CHECK(cp_length(text) == 12);
  CHECK(cp_slice(text, 0, 4) == "caf\xc3\xa9");
  CHECK(cp_slice(text, 5, 7) == "au");
  auto tokens = whitespace_tokens(text);
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].text == "caf\xc3\xa9");
  CHECK(tokens[0].end == 4);
  CHECK(tokens[1].start == 5);
}

TEST_CASE("sentence keys order by document then index") {
  CHECK(SentenceKey{"a", 2} < SentenceKey{"b", 0});
  CHECK(SentenceKey{"a", 1} < SentenceKey{"a", 2});
  CHECK(SentenceKey{"a", 1} == SentenceKey{"a", 1});
  CHECK_FALSE(SentenceKey{"b", 0} < SentenceKey{"a", 2});
}

TEST_CASE("corpus lookup and counting") {
  Corpus corpus;
  corpus.documents = {{"d1", "CT", {"one.", "two."}}, {"d2", "MRI", {"three."}}};
  CHECK(corpus.sentence_count() == 3);
  REQUIRE(corpus.find("d2") != nullptr);
  CHECK(corpus.find("d2")->exam_type == "MRI");
  CHECK(corpus.find("missing") == nullptr);
}

TEST_CASE("validate_event flags bad spans") {
  std::string sentence = "small nodule in the liver";
  Event event;
  event.trigger = {"nodule", Span{6, 12}, TriggerType::Lesion};
  event.anatomies = {{"liver", Span{20, 25}, std::nullopt}};
  CHECK(validate_event(sentence, event).empty());

  SUBCASE("inverted span") {
    event.trigger.span = Span{12, 6};
    auto violations = validate_event(sentence, event);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::InvalidSpan);
  }
  SUBCASE("span past sentence end") {
    event.anatomies[0].span = Span{20, 999};
    auto violations = validate_event(sentence, event);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::OutOfBounds);
  }
  SUBCASE("span text disagrees with surface text") {
    event.trigger.text = "mass";
    auto violations = validate_event(sentence, event);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == ViolationKind::TextMismatch);
  }
  SUBCASE("spanless entities are not checked") {
    event.trigger.span.reset();
    event.trigger.text = "anything";
    CHECK(validate_event(sentence, event).empty());
  }
}

TEST_CASE("normalization lowercases and strips punctuation") {
  CHECK(normalize_text("Soft-Tissue  Density!") == "soft tissue density");
  CHECK(normalize_text("( the R/112 )") == "the r 112");
  CHECK(collapse_whitespace("  a \t b\n") == "a b");
  NormalizedText norm = normalize_with_map("Left Lobe");
  CHECK(norm.text == "left lobe");
  // Byte 5 of "left lobe" is 'l' of "lobe", at code point 5 in the source.
  CHECK(norm.cp_index[5] == 5);
}
