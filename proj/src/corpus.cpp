#include "wsd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>

#include "wsd/error.hpp"
#include "wsd/rng.hpp"

namespace wsd {

namespace {

constexpr uint64_t kTuningHalfSalt = 0x54554e45ULL;   // test/supply halving
constexpr uint64_t kSupplyOrderSalt = 0x5355504cULL;  // global supply shuffle

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  for (;;) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

Token parse_token(const std::string& text, int line_no) {
  size_t slash = text.rfind('/');
  if (slash == std::string::npos)
    throw parse_error("token '" + text + "' lacks a form/POS separator",
                      line_no);
  Token t{text.substr(0, slash), text.substr(slash + 1)};
  if (t.form.empty())
    throw parse_error("token '" + text + "' has an empty form", line_no);
  if (t.pos.empty())
    throw parse_error("token '" + text + "' has an empty POS tag", line_no);
  return t;
}

int parse_int_field(const std::string& text, const char* what, int line_no) {
  size_t consumed = 0;
  int value = 0;
  try {
    value = std::stoi(text, &consumed);
  } catch (const std::exception&) {
    throw parse_error(std::string("bad ") + what + " '" + text + "'", line_no);
  }
  if (consumed != text.size())
    throw parse_error(std::string("bad ") + what + " '" + text + "'", line_no);
  return value;
}

// Per-sense buckets of indices into `examples`, in example order, keyed by
// the sense's inventory position.
std::vector<std::vector<int>> bucket_by_sense(
    const std::vector<Example>& examples, const WordProblem& problem) {
  std::vector<std::vector<int>> buckets(problem.sense_inventory.size());
  for (size_t i = 0; i < examples.size(); ++i) {
    int s = problem.sense_id(examples[i].sense);
    buckets[size_t(s)].push_back(int(i));
  }
  return buckets;
}

std::vector<Example> gather_sorted_by_id(const std::vector<Example>& pool,
                                         const std::vector<int>& indices) {
  std::vector<Example> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(pool[size_t(i)]);
  std::sort(out.begin(), out.end(),
            [](const Example& a, const Example& b) { return a.id < b.id; });
  return out;
}

}  // namespace

int WordProblem::sense_id(const std::string& label) const {
  for (size_t i = 0; i < sense_inventory.size(); ++i)
    if (sense_inventory[i] == label) return int(i);
  return -1;
}

const char* combination_name(Combination c) {
  switch (c) {
    case Combination::AB_AB: return "A+B-A+B";
    case Combination::AB_A: return "A+B-A";
    case Combination::AB_B: return "A+B-B";
    case Combination::A_A: return "A-A";
    case Combination::B_B: return "B-B";
    case Combination::A_B: return "A-B";
    case Combination::B_A: return "B-A";
  }
  return "?";
}

bool combination_cross_validated(Combination c) {
  return c != Combination::A_B && c != Combination::B_A;
}

WordProblem parse_corpus(std::istream& in) {
  WordProblem problem;
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw error("empty corpus file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream header(line);
    std::string tag, lemma, pos;
    header >> tag >> lemma >> pos;
    if (tag != "#WSD" || lemma.empty() || (pos != "noun" && pos != "verb"))
      throw parse_error("expected header '#WSD <lemma> <noun|verb>'", line_no);
    problem.lemma = lemma;
    problem.pos_class = pos == "noun" ? PosClass::noun : PosClass::verb;
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() != 4)
      throw parse_error("expected 4 tab-separated fields, got " +
                            std::to_string(fields.size()),
                        line_no);

    Example ex;
    ex.id = int(problem.examples.size());
    if (fields[0] == "A")
      ex.part = Part::A;
    else if (fields[0] == "B")
      ex.part = Part::B;
    else
      throw parse_error("part must be A or B, got '" + fields[0] + "'",
                        line_no);

    ex.sense = fields[1];
    if (ex.sense.empty()) throw parse_error("empty sense label", line_no);

    ex.target_index = parse_int_field(fields[2], "target index", line_no);

    std::istringstream toks(fields[3]);
    std::string tok;
    while (toks >> tok) ex.tokens.push_back(parse_token(tok, line_no));
    if (ex.tokens.empty()) throw parse_error("example has no tokens", line_no);
    if (ex.target_index < 0 || ex.target_index >= int(ex.tokens.size()))
      throw parse_error("target index " + std::to_string(ex.target_index) +
                            " out of range for " +
                            std::to_string(ex.tokens.size()) + " tokens",
                        line_no);

    if (problem.sense_id(ex.sense) < 0)
      problem.sense_inventory.push_back(ex.sense);
    problem.examples.push_back(std::move(ex));
  }

  if (problem.examples.empty()) throw error("corpus has no examples");
  return problem;
}

std::string serialize_corpus(const WordProblem& problem) {
  std::string out = "#WSD " + problem.lemma + ' ' +
                    (problem.pos_class == PosClass::noun ? "noun" : "verb") +
                    '\n';
  for (const Example& ex : problem.examples) {
    out += ex.part == Part::A ? 'A' : 'B';
    out += '\t';
    out += ex.sense;
    out += '\t';
    out += std::to_string(ex.target_index);
    out += '\t';
    for (size_t i = 0; i < ex.tokens.size(); ++i) {
      if (i) out += ' ';
      out += ex.tokens[i].form;
      out += '/';
      out += ex.tokens[i].pos;
    }
    out += '\n';
  }
  return out;
}

std::vector<Example> examples_of_part(const WordProblem& problem, Part part) {
  std::vector<Example> out;
  for (const Example& ex : problem.examples)
    if (ex.part == part) out.push_back(ex);
  return out;
}

SplitResult split(const WordProblem& problem, const SplitSpec& spec) {
  SplitResult result;

  if (spec.combination == Combination::A_B ||
      spec.combination == Combination::B_A) {
    Part train_part =
        spec.combination == Combination::A_B ? Part::A : Part::B;
    Part test_part = train_part == Part::A ? Part::B : Part::A;
    TrainTestPair pair{examples_of_part(problem, train_part),
                       examples_of_part(problem, test_part)};
    if (pair.train.empty())
      throw error(std::string("no examples in training part for ") +
                  combination_name(spec.combination));
    if (pair.test.empty())
      throw error(std::string("no examples in test part for ") +
                  combination_name(spec.combination));
    result.pairs.push_back(std::move(pair));
    return result;
  }

  if (spec.folds < 2) throw error("folds must be >= 2");

  // Designated pool and the part the test folds are filtered to.
  std::vector<Example> pool;
  std::optional<Part> test_filter;
  switch (spec.combination) {
    case Combination::AB_AB: pool = problem.examples; break;
    case Combination::AB_A:
      pool = problem.examples;
      test_filter = Part::A;
      break;
    case Combination::AB_B:
      pool = problem.examples;
      test_filter = Part::B;
      break;
    case Combination::A_A: pool = examples_of_part(problem, Part::A); break;
    case Combination::B_B: pool = examples_of_part(problem, Part::B); break;
    default: break;
  }
  if (pool.empty())
    throw error(std::string("empty pool for ") +
                combination_name(spec.combination));
  if (test_filter) {
    bool any = false;
    for (const Example& ex : pool) any = any || ex.part == *test_filter;
    if (!any)
      throw error(std::string("no test-part examples for ") +
                  combination_name(spec.combination));
  }

  // Stratified dealing: shuffle each sense's pool examples with its own
  // stream, deal round-robin into folds.
  std::vector<int> fold_of(pool.size(), 0);
  std::vector<std::vector<int>> buckets = bucket_by_sense(pool, problem);
  for (size_t s = 0; s < buckets.size(); ++s) {
    std::vector<int>& bucket = buckets[s];
    if (bucket.empty()) continue;
    if (int(bucket.size()) < spec.folds)
      result.warnings.push_back(
          "sense '" + problem.sense_inventory[s] + "' has " +
          std::to_string(bucket.size()) + " examples in the " +
          combination_name(spec.combination) + " pool, fewer than " +
          std::to_string(spec.folds) + " folds; stratification is best-effort");
    SplitMix64 rng(derive_seed(spec.seed, uint64_t(s)));
    shuffle(bucket, rng);
    for (size_t j = 0; j < bucket.size(); ++j)
      fold_of[size_t(bucket[j])] = int(j % size_t(spec.folds));
  }

  result.pairs.resize(size_t(spec.folds));
  for (int f = 0; f < spec.folds; ++f) {
    std::vector<int> train_idx, test_idx;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (fold_of[i] == f) {
        if (!test_filter || pool[i].part == *test_filter)
          test_idx.push_back(int(i));
      } else {
        train_idx.push_back(int(i));
      }
    }
    result.pairs[size_t(f)].train = gather_sorted_by_id(pool, train_idx);
    result.pairs[size_t(f)].test = gather_sorted_by_id(pool, test_idx);
  }
  return result;
}

TuningSplit tuning_split(const WordProblem& problem, Part target_part,
                         double fraction, uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 0.5)
    throw error("tuning fraction must lie in (0, 0.5]");
  std::vector<Example> part = examples_of_part(problem, target_part);
  if (part.empty()) throw error("target part has no examples");

  // Per sense: seeded shuffle, first floor(n/2) to the test half, the rest
  // to the supply half (so the supply always covers fraction 0.5).
  uint64_t half_seed = derive_seed(seed, kTuningHalfSalt);
  std::vector<int> test_idx, supply_idx;
  std::vector<std::vector<int>> buckets = bucket_by_sense(part, problem);
  for (size_t s = 0; s < buckets.size(); ++s) {
    std::vector<int>& bucket = buckets[s];
    if (bucket.empty()) continue;
    SplitMix64 rng(derive_seed(half_seed, uint64_t(s)));
    shuffle(bucket, rng);
    size_t n_test = bucket.size() / 2;
    for (size_t j = 0; j < bucket.size(); ++j)
      (j < n_test ? test_idx : supply_idx).push_back(bucket[j]);
  }

  // One global shuffle fixes the supply order; tuning sets are prefixes of
  // it, hence nested across fractions.
  std::sort(supply_idx.begin(), supply_idx.end());
  SplitMix64 order_rng(derive_seed(seed, kSupplyOrderSalt));
  shuffle(supply_idx, order_rng);

  size_t want = size_t(std::ceil(fraction * double(part.size())));
  if (want > supply_idx.size()) want = supply_idx.size();

  TuningSplit out;
  out.tuning.reserve(want);
  for (size_t j = 0; j < want; ++j)
    out.tuning.push_back(part[size_t(supply_idx[j])]);
  out.test = gather_sorted_by_id(part, test_idx);
  return out;
}

}  // namespace wsd
