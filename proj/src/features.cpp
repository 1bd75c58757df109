#include "wsd/features.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "wsd/error.hpp"

namespace wsd {

namespace {

constexpr int kWindow = 3;  // +/- 3 tokens around the target

std::string format_offset(int o) {
  if (o > 0) return "+" + std::to_string(o);
  return std::to_string(o);  // covers 0 and negatives
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return out;
}

// Parses a signed window offset like "-3", "0", "+2". Leading '+' is
// required for positives; plain digits only after the sign.
bool parse_offset(const std::string& text, int* out) {
  if (text.empty()) return false;
  size_t i = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
    if (text.size() == 1) return false;
    if (text == "+0" || text == "-0") return false;
  }
  int value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    value = value * 10 + (text[i] - '0');
  }
  if (!neg && value > 0 && text[0] != '+') return false;
  *out = neg ? -value : value;
  return true;
}

}  // namespace

std::optional<ParsedFeature> parse_feature(const std::string& text) {
  if (text.size() >= 2 && text.compare(0, 2, "T=") == 0) {
    if (text.size() == 2) return std::nullopt;
    return ParsedFeature{FeatureKind::topical, 0, 0, text.substr(2)};
  }

  if (text.size() >= 4 && (text[0] == 'W' || text[0] == 'P') &&
      text[1] == '[') {
    size_t close = text.find(']', 2);
    if (close == std::string::npos || close + 1 >= text.size() ||
        text[close + 1] != '=')
      return std::nullopt;
    int offset = 0;
    if (!parse_offset(text.substr(2, close - 2), &offset)) return std::nullopt;
    if (offset < -kWindow || offset > kWindow) return std::nullopt;
    std::string payload = text.substr(close + 2);
    if (payload.empty()) return std::nullopt;
    return ParsedFeature{
        text[0] == 'W' ? FeatureKind::word_at : FeatureKind::pos_at, offset, 0,
        std::move(payload)};
  }

  if (text.size() >= 4 && text[0] == 'C' && text[1] == '[') {
    size_t comma = text.find(',', 2);
    size_t close = text.find(']', 2);
    if (comma == std::string::npos || close == std::string::npos ||
        comma >= close || close + 1 >= text.size() || text[close + 1] != '=')
      return std::nullopt;
    int offset = 0;
    if (!parse_offset(text.substr(2, comma - 2), &offset)) return std::nullopt;
    std::string len_text = text.substr(comma + 1, close - comma - 1);
    if (len_text != "2" && len_text != "3") return std::nullopt;
    int length = len_text == "2" ? 2 : 3;
    if (offset < -kWindow || offset + length - 1 > kWindow) return std::nullopt;
    std::string payload = text.substr(close + 2);
    if (payload.empty()) return std::nullopt;
    return ParsedFeature{FeatureKind::colloc, offset, length,
                         std::move(payload)};
  }

  return std::nullopt;
}

const Stopwords& default_stopwords() {
  static const Stopwords words = {
      "the",  "a",     "an",   "and",  "or",    "but",  "if",    "of",
      "at",   "by",    "for",  "with", "about", "into", "to",    "from",
      "in",   "out",   "on",   "off",  "over",  "under", "up",   "down",
      "is",   "are",   "was",  "were", "be",    "been", "being", "am",
      "have", "has",   "had",  "do",   "does",  "did",  "not",   "no",
      "nor",  "so",    "as",   "it",   "its",   "this", "that",  "these",
      "those", "there", "then", "than", "he",   "she",  "they",  "we"};
  return words;
}

Stopwords load_stopwords(std::istream& in) {
  Stopwords words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.insert(lower(line));
  }
  return words;
}

std::vector<std::string> extract_features(const Example& example,
                                          const Stopwords& stopwords) {
  const int n = int(example.tokens.size());
  const int t = example.target_index;
  std::vector<std::string> out;

  // Local window: words and POS tags at each in-sentence offset. No
  // boundary padding; out-of-range offsets emit nothing.
  for (int o = -kWindow; o <= kWindow; ++o) {
    int pos = t + o;
    if (pos < 0 || pos >= n) continue;
    out.push_back("W[" + format_offset(o) + "]=" + example.tokens[size_t(pos)].form);
    out.push_back("P[" + format_offset(o) + "]=" + example.tokens[size_t(pos)].pos);
  }

  // Collocations: every 2-gram and 3-gram of forms lying wholly within the
  // window (target token included), keyed by the start offset.
  for (int len = 2; len <= 3; ++len) {
    for (int o = -kWindow; o + len - 1 <= kWindow; ++o) {
      int start = t + o;
      if (start < 0 || start + len - 1 >= n) continue;
      std::string gram = example.tokens[size_t(start)].form;
      for (int j = 1; j < len; ++j) {
        gram += '_';
        gram += example.tokens[size_t(start + j)].form;
      }
      out.push_back("C[" + format_offset(o) + "," + std::to_string(len) +
                    "]=" + gram);
    }
  }

  // Topical context: distinct lower-cased sentence forms, stopwords and
  // the target occurrence itself excluded.
  for (int pos = 0; pos < n; ++pos) {
    if (pos == t) continue;
    std::string word = lower(example.tokens[size_t(pos)].form);
    if (stopwords.count(word)) continue;
    out.push_back("T=" + word);
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FeatureIndex build_index(const std::vector<std::vector<std::string>>& raw_sets,
                         int min_count) {
  if (min_count < 1) throw error("min_count must be >= 1");
  // Each set holds distinct strings, so after sorting the concatenation a
  // feature's run length is the number of sets containing it.
  std::vector<std::string> all;
  size_t total = 0;
  for (const auto& set : raw_sets) total += set.size();
  all.reserve(total);
  for (const auto& set : raw_sets) all.insert(all.end(), set.begin(), set.end());
  std::sort(all.begin(), all.end());

  FeatureIndex index;
  index.min_count = min_count;
  for (size_t i = 0; i < all.size();) {
    size_t j = i + 1;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (j - i >= size_t(min_count)) index.backward.push_back(all[i]);
    i = j;
  }
  // ids follow the lexicographic order of the canonical strings.
  index.forward.reserve(index.backward.size());
  for (size_t i = 0; i < index.backward.size(); ++i)
    index.forward.emplace(index.backward[i], int(i));
  return index;
}

FeatureVector vectorize(const std::vector<std::string>& raw,
                        const FeatureIndex& index) {
  FeatureVector active;
  for (const auto& feature : raw) {
    int id = index.id_of(feature);
    if (id >= 0) active.push_back(id);
  }
  std::sort(active.begin(), active.end());
  return active;
}

}  // namespace wsd
