#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "wsd/error.hpp"
#include "wsd/features.hpp"

using namespace wsd;

namespace {

Example make_example(std::vector<std::pair<std::string, std::string>> tokens,
                     int target) {
  Example ex;
  ex.id = 0;
  ex.sense = "s";
  ex.target_index = target;
  for (auto& [form, pos] : tokens) ex.tokens.push_back({form, pos});
  return ex;
}

bool has(const std::vector<std::string>& set, const std::string& f) {
  return std::find(set.begin(), set.end(), f) != set.end();
}

}  // namespace

TEST_CASE("window features cover the hand-worked example") {
  Example ex = make_example({{"the", "DT"}, {"bank", "NN"}, {"fees", "NNS"}}, 1);
  std::vector<std::string> fs = extract_features(ex, {});

  CHECK(has(fs, "W[-1]=the"));
  CHECK(has(fs, "W[0]=bank"));
  CHECK(has(fs, "W[+1]=fees"));
  CHECK(has(fs, "P[-1]=DT"));
  CHECK(has(fs, "P[0]=NN"));
  CHECK(has(fs, "P[+1]=NNS"));
  CHECK(has(fs, "C[-1,2]=the_bank"));
  CHECK(has(fs, "C[0,2]=bank_fees"));
  CHECK(has(fs, "C[-1,3]=the_bank_fees"));
  CHECK(has(fs, "T=the"));
  CHECK(has(fs, "T=fees"));
  CHECK(!has(fs, "T=bank"));  // the target occurrence itself is excluded
  CHECK(fs.size() == 11);
}

TEST_CASE("no boundary padding at the sentence start") {
  Example ex = make_example({{"Bank", "NN"}, {"of", "IN"}, {"England", "NNP"}},
                            0);
  for (const std::string& f : extract_features(ex, {}))
    CHECK(f.find("[-") == std::string::npos);
}

TEST_CASE("one-token sentence yields only the target word and tag") {
  Example ex = make_example({{"bank", "NN"}}, 0);
  std::vector<std::string> fs = extract_features(ex, {});
  REQUIRE(fs.size() == 2);
  CHECK(has(fs, "W[0]=bank"));
  CHECK(has(fs, "P[0]=NN"));
}

TEST_CASE("stopwords prune topical features only") {
  Example ex = make_example({{"The", "DT"}, {"bank", "NN"}, {"fees", "NNS"}}, 1);
  std::vector<std::string> fs = extract_features(ex, {"the"});
  CHECK(!has(fs, "T=the"));       // lower-cased before the stopword check
  CHECK(has(fs, "W[-1]=The"));    // local window keeps the surface form
  CHECK(has(fs, "T=fees"));
}

TEST_CASE("extraction is pure and repeated forms dedupe topically") {
  Example ex = make_example(
      {{"fees", "NNS"}, {"bank", "NN"}, {"fees", "NNS"}, {"Fees", "NNS"}}, 1);
  std::vector<std::string> a = extract_features(ex, {});
  std::vector<std::string> b = extract_features(ex, {});
  CHECK(a == b);
  CHECK(std::count(a.begin(), a.end(), "T=fees") == 1);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
}

TEST_CASE("emitted features parse back under the canonical grammar") {
  Example ex = make_example({{"per-share", "JJ"},
                             {"Loan/IOU", "NN"},
                             {"bank", "NN"},
                             {"rate", "NN"},
                             {"UP", "RB"},
                             {"2.5", "CD"},
                             {"pts", "NNS"}},
                            2);
  for (const std::string& f : extract_features(ex, default_stopwords())) {
    auto parsed = parse_feature(f);
    REQUIRE_MESSAGE(parsed.has_value(), f);
    switch (parsed->kind) {
      case FeatureKind::word_at:
      case FeatureKind::pos_at:
        CHECK(parsed->offset >= -3);
        CHECK(parsed->offset <= 3);
        break;
      case FeatureKind::colloc:
        CHECK((parsed->length == 2 || parsed->length == 3));
        CHECK(parsed->offset >= -3);
        CHECK(parsed->offset + parsed->length - 1 <= 3);
        break;
      case FeatureKind::topical:
        CHECK(parsed->payload ==
              std::string(f.begin() + 2, f.end()));
        break;
    }
  }
}

TEST_CASE("parse_feature rejects off-grammar strings") {
  CHECK(!parse_feature("W[4]=far"));
  CHECK(!parse_feature("W[1]=x"));   // positive offsets need the sign
  CHECK(!parse_feature("W[+0]=x"));
  CHECK(!parse_feature("C[0,4]=a_b_c_d"));
  CHECK(!parse_feature("C[+2,3]=a_b_c"));  // extends past the window
  CHECK(!parse_feature("T="));
  CHECK(!parse_feature("X[0]=x"));
  CHECK(!parse_feature("W[0]"));
  CHECK(parse_feature("W[+3]=x"));
  CHECK(parse_feature("C[+1,2]=a_b"));
}

TEST_CASE("index keeps features above min_count in lexicographic order") {
  std::vector<std::vector<std::string>> sets = {
      {"T=bank", "W[0]=bank"}, {"T=bank", "P[0]=NN"}};
  FeatureIndex idx1 = build_index(sets, 1);
  CHECK(idx1.size() == 3);
  CHECK(std::is_sorted(idx1.backward.begin(), idx1.backward.end()));
  CHECK(idx1.id_of("P[0]=NN") == 0);
  CHECK(idx1.id_of("T=bank") == 1);
  CHECK(idx1.id_of("W[0]=bank") == 2);

  FeatureIndex idx2 = build_index(sets, 2);
  CHECK(idx2.size() == 1);
  CHECK(idx2.id_of("T=bank") == 0);
  CHECK(idx2.id_of("W[0]=bank") == -1);

  FeatureIndex again = build_index(sets, 1);
  CHECK(again.backward == idx1.backward);
  CHECK_THROWS_AS(build_index(sets, 0), error);
}

TEST_CASE("vectorize maps known features to sorted ids") {
  FeatureIndex idx = build_index({{"a", "b", "c"}}, 1);
  CHECK(vectorize({"a", "b", "c"}, idx) == FeatureVector{0, 1, 2});
  CHECK(vectorize({"z", "q"}, idx).empty());
  CHECK(vectorize({"c", "z", "a"}, idx) == FeatureVector{0, 2});
}

TEST_CASE("vectorization is monotone in the raw set") {
  FeatureIndex idx = build_index({{"a", "b", "c", "d"}}, 1);
  std::vector<std::string> small = {"a", "c"};
  std::vector<std::string> large = {"a", "b", "c", "z"};
  FeatureVector vs = vectorize(small, idx);
  FeatureVector vl = vectorize(large, idx);
  for (int id : vs) CHECK(std::binary_search(vl.begin(), vl.end(), id));
}

TEST_CASE("stopword files are one lower-cased word per line") {
  std::istringstream in("the\nOf\n\n# comment\nand\n");
  Stopwords sw = load_stopwords(in);
  CHECK(sw.count("the"));
  CHECK(sw.count("of"));
  CHECK(sw.count("and"));
  CHECK(!sw.count("# comment"));
  CHECK(default_stopwords().size() >= 40);
  CHECK(default_stopwords().count("the"));
}
