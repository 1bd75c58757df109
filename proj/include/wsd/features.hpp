#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wsd/corpus.hpp"

namespace wsd {

// Canonical feature strings (the external contract, used verbatim in
// model files and rule dumps):
//   W[o]=form   word at signed window offset o in [-3,+3]
//   P[o]=tag    POS tag at offset o
//   C[o,n]=f1_f2(_f3)   n-gram of forms starting at offset o, n in {2,3}
//   T=lowerform         topical content word of the sentence
enum class FeatureKind { word_at, pos_at, colloc, topical };

struct ParsedFeature {
  FeatureKind kind;
  int offset = 0;  // W/P/C
  int length = 0;  // C only
  std::string payload;
};

// Recognizes a canonical feature string. Returns nullopt when the string
// does not follow the grammar (bad kind, offset out of [-3,+3], colloc
// length not 2 or 3, malformed brackets).
std::optional<ParsedFeature> parse_feature(const std::string& text);

using Stopwords = std::unordered_set<std::string>;

// ~50 common English function words, lower-cased.
const Stopwords& default_stopwords();
Stopwords load_stopwords(std::istream& in);

// Sorted, duplicate-free set of canonical feature strings for one example:
// word/POS window features, window n-gram collocations, and lower-cased
// topical words (stopwords and the target occurrence excluded).
std::vector<std::string> extract_features(const Example& example,
                                          const Stopwords& stopwords);

// String <-> dense id mapping, built from training data only. Ids follow
// the lexicographic order of the canonical strings.
struct FeatureIndex {
  std::unordered_map<std::string, int> forward;
  std::vector<std::string> backward;
  int min_count = 1;

  int size() const { return int(backward.size()); }
  int id_of(const std::string& text) const {
    auto it = forward.find(text);
    return it == forward.end() ? -1 : it->second;
  }
};

// Keeps features occurring in at least min_count of the given sets.
FeatureIndex build_index(const std::vector<std::vector<std::string>>& raw_sets,
                         int min_count);

// Sparse binary vector: strictly increasing feature ids. Unknown raw
// features are dropped.
using FeatureVector = std::vector<int>;

FeatureVector vectorize(const std::vector<std::string>& raw,
                        const FeatureIndex& index);

}  // namespace wsd
