#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "wsd/corpus.hpp"
#include "wsd/error.hpp"
#include "wsd/synth.hpp"

using namespace wsd;

namespace {

WordProblem parse(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

// Small deterministic problem: n_a part-A examples and n_b part-B
// examples, senses cycling with a period that decorrelates them from parts.
WordProblem toy_problem(int n_a, int n_b, int n_senses = 2) {
  WordProblem p;
  p.lemma = "bank";
  p.pos_class = PosClass::noun;
  for (int s = 0; s < n_senses; ++s)
    p.sense_inventory.push_back("s" + std::to_string(s));
  for (int i = 0; i < n_a + n_b; ++i) {
    Example ex;
    ex.id = i;
    ex.part = i < n_a ? Part::A : Part::B;
    ex.sense = p.sense_inventory[size_t(i % n_senses)];
    ex.tokens = {{"the", "DT"}, {"bank", "NN"}, {"w" + std::to_string(i), "NN"}};
    ex.target_index = 1;
    p.examples.push_back(ex);
  }
  return p;
}

}  // namespace

TEST_CASE("parse_corpus maps fields directly") {
  WordProblem p = parse(
      "#WSD bank noun\n"
      "A\ts1\t1\tthe/DT bank/NN\n"
      "B\ts2\t0\tbank/NN fees/NNS rose/VBD\n");
  CHECK(p.lemma == "bank");
  CHECK(p.pos_class == PosClass::noun);
  REQUIRE(p.examples.size() == 2);
  CHECK(p.examples[0].id == 0);
  CHECK(p.examples[0].part == Part::A);
  CHECK(p.examples[0].sense == "s1");
  CHECK(p.examples[0].target_index == 1);
  REQUIRE(p.examples[0].tokens.size() == 2);
  CHECK(p.examples[0].tokens[1].form == "bank");
  CHECK(p.examples[0].tokens[1].pos == "NN");
  CHECK(p.examples[1].part == Part::B);
  CHECK(p.sense_inventory == std::vector<std::string>{"s1", "s2"});
}

TEST_CASE("parse_corpus orders the inventory by first occurrence") {
  WordProblem p = parse(
      "#WSD bank noun\n"
      "A\ts2\t0\tbank/NN\n"
      "A\ts1\t0\tbank/NN\n"
      "A\ts2\t0\tbank/NN\n");
  CHECK(p.sense_inventory == std::vector<std::string>{"s2", "s1"});
  CHECK(p.sense_id("s1") == 1);
}

TEST_CASE("parse_corpus rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse(""), error);
  CHECK_THROWS_AS(parse("#WSD bank noun\n"), error);  // no examples
  // target index == token count
  try {
    parse("#WSD bank noun\nA\ts1\t2\tthe/DT bank/NN\n");
    FAIL("expected parse error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
  }
  // wrong field count
  CHECK_THROWS_AS(parse("#WSD bank noun\nA\ts1\tthe/DT\n"), parse_error);
  // missing POS separator
  CHECK_THROWS_AS(parse("#WSD bank noun\nA\ts1\t0\tbank\n"), parse_error);
  // bad part
  CHECK_THROWS_AS(parse("#WSD bank noun\nC\ts1\t0\tbank/NN\n"), parse_error);
  // bad header
  CHECK_THROWS_AS(parse("#WSD bank adjective\nA\ts1\t0\tbank/NN\n"),
                  parse_error);
}

TEST_CASE("forms may contain slashes; the last one separates the POS") {
  WordProblem p = parse("#WSD bank noun\nA\ts1\t0\tIBM/A\\S/NNP\n");
  CHECK(p.examples[0].tokens[0].form == "IBM/A\\S");
  CHECK(p.examples[0].tokens[0].pos == "NNP");
}

TEST_CASE("corpus round-trips through serialization") {
  WordProblem p = toy_problem(7, 5, 3);
  WordProblem back = parse(serialize_corpus(p));
  CHECK(back == p);

  SynthConfig cfg = synth_preset("shifted-domains");
  cfg.examples_per_part = 40;
  WordProblem synth = generate_synthetic(cfg, 17).problem;
  CHECK(parse(serialize_corpus(synth)) == synth);
}

TEST_CASE("comment lines after the header are ignored") {
  WordProblem p = parse(
      "#WSD bank noun\n"
      "# a comment\n"
      "A\ts1\t0\tbank/NN\n"
      "#another\n"
      "A\ts2\t0\tbank/NN\n");
  CHECK(p.examples.size() == 2);
}

TEST_CASE("disjoint-pool split uses whole parts") {
  WordProblem p = toy_problem(10, 5);
  SplitResult r = split(p, {Combination::A_B, 10, 1});
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].train.size() == 10);
  CHECK(r.pairs[0].test.size() == 5);
  for (const Example& ex : r.pairs[0].train) CHECK(ex.part == Part::A);
  for (const Example& ex : r.pairs[0].test) CHECK(ex.part == Part::B);

  SplitResult rev = split(p, {Combination::B_A, 10, 1});
  CHECK(rev.pairs[0].train.size() == 5);
  CHECK(rev.pairs[0].test.size() == 10);
}

TEST_CASE("cross-validation folds partition the pool") {
  WordProblem p = toy_problem(100, 0);
  SplitSpec spec{Combination::A_A, 10, 99};
  SplitResult r = split(p, spec);
  REQUIRE(r.pairs.size() == 10);
  std::set<int> seen;
  for (const TrainTestPair& pair : r.pairs) {
    CHECK(pair.test.size() == 10);
    CHECK(pair.train.size() == 90);
    std::set<int> train_ids;
    for (const Example& ex : pair.train) train_ids.insert(ex.id);
    for (const Example& ex : pair.test) {
      CHECK(!train_ids.count(ex.id));
      CHECK(seen.insert(ex.id).second);  // exactly one test fold
    }
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("cross-validation is stratified by sense") {
  WordProblem p = toy_problem(100, 0, 4);
  SplitResult r = split(p, {Combination::A_A, 10, 5});
  for (const TrainTestPair& pair : r.pairs) {
    std::map<std::string, int> per_sense;
    for (const Example& ex : pair.test) ++per_sense[ex.sense];
    // 25 examples per sense over 10 folds: 2 or 3 per fold.
    for (const auto& [sense, count] : per_sense) {
      CHECK(count >= 2);
      CHECK(count <= 3);
    }
  }
}

TEST_CASE("splits are deterministic in the seed") {
  WordProblem p = toy_problem(60, 40, 3);
  for (Combination combo : kAllCombinations) {
    SplitResult a = split(p, {combo, 10, 1234});
    SplitResult b = split(p, {combo, 10, 1234});
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (size_t f = 0; f < a.pairs.size(); ++f) {
      CHECK(a.pairs[f].train == b.pairs[f].train);
      CHECK(a.pairs[f].test == b.pairs[f].test);
    }
  }
  SplitResult a = split(p, {Combination::A_A, 10, 1});
  SplitResult b = split(p, {Combination::A_A, 10, 2});
  bool any_diff = false;
  for (size_t f = 0; f < a.pairs.size(); ++f)
    any_diff = any_diff || !(a.pairs[f].test == b.pairs[f].test);
  CHECK(any_diff);
}

TEST_CASE("part-filtered combinations test only the named part") {
  WordProblem p = toy_problem(40, 60);
  SplitResult r = split(p, {Combination::AB_A, 10, 7});
  std::set<int> tested;
  size_t total_test = 0;
  for (const TrainTestPair& pair : r.pairs) {
    CHECK(pair.train.size() + pair.test.size() <= 100);
    for (const Example& ex : pair.test) {
      CHECK(ex.part == Part::A);
      tested.insert(ex.id);
    }
    total_test += pair.test.size();
  }
  CHECK(tested.size() == 40);  // every A example tested exactly once
  CHECK(total_test == 40);
}

TEST_CASE("split flags senses smaller than the fold count") {
  WordProblem p = toy_problem(30, 0);
  p.examples[0].sense = "rare";
  p.sense_inventory.push_back("rare");
  SplitResult r = split(p, {Combination::A_A, 10, 3});
  REQUIRE(!r.warnings.empty());
  CHECK(r.warnings[0].find("rare") != std::string::npos);
}

TEST_CASE("split errors on an empty pool") {
  WordProblem p = toy_problem(10, 0);
  CHECK_THROWS_AS(split(p, {Combination::B_B, 10, 1}), error);
  CHECK_THROWS_AS(split(p, {Combination::A_B, 10, 1}), error);
  CHECK_THROWS_AS(split(p, {Combination::AB_B, 10, 1}), error);
}

TEST_CASE("tuning split covers the whole supply at fraction 0.5") {
  WordProblem p = toy_problem(0, 100);
  TuningSplit t = tuning_split(p, Part::B, 0.5, 11);
  CHECK(t.tuning.size() == 50);
  CHECK(t.test.size() == 50);
  std::set<int> tuning_ids, test_ids;
  for (const Example& ex : t.tuning) tuning_ids.insert(ex.id);
  for (const Example& ex : t.test) test_ids.insert(ex.id);
  for (int id : tuning_ids) CHECK(!test_ids.count(id));
}

TEST_CASE("tuning sets are nested and the test half is fixed") {
  WordProblem p = toy_problem(20, 100, 4);
  TuningSplit small = tuning_split(p, Part::B, 0.1, 42);
  TuningSplit large = tuning_split(p, Part::B, 0.3, 42);
  CHECK(small.tuning.size() == 10);
  CHECK(large.tuning.size() == 30);
  CHECK(small.test == large.test);
  for (size_t i = 0; i < small.tuning.size(); ++i)
    CHECK(small.tuning[i] == large.tuning[i]);  // prefix property
}

TEST_CASE("tuning split rejects fractions outside (0, 0.5]") {
  WordProblem p = toy_problem(0, 100);
  CHECK_THROWS_AS(tuning_split(p, Part::B, 0.6, 1), error);
  CHECK_THROWS_AS(tuning_split(p, Part::B, 0.0, 1), error);
  CHECK_THROWS_AS(tuning_split(p, Part::B, -0.1, 1), error);
  CHECK_THROWS_AS(tuning_split(p, Part::A, 0.5, 1), error);  // empty part
}
