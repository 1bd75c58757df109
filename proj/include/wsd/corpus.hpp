#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wsd {

enum class Part { A, B };

enum class PosClass { noun, verb };

struct Token {
  std::string form;  // surface word, never empty
  std::string pos;   // part-of-speech tag, never empty
  bool operator==(const Token&) const = default;
};

// One sense-tagged occurrence of the target word.
struct Example {
  int id = 0;  // stable within the dataset, assigned in file order
  Part part = Part::A;
  std::string sense;
  std::vector<Token> tokens;
  int target_index = 0;
  bool operator==(const Example&) const = default;
};

// One ambiguous word = one classification problem.
struct WordProblem {
  std::string lemma;
  PosClass pos_class = PosClass::noun;
  std::vector<Example> examples;
  std::vector<std::string> sense_inventory;  // ordered by first occurrence
  bool operator==(const WordProblem&) const = default;

  // Index of a sense label in the inventory, -1 if absent.
  int sense_id(const std::string& label) const;
};

enum class Combination {
  AB_AB,  // A+B-A+B
  AB_A,   // A+B-A
  AB_B,   // A+B-B
  A_A,
  B_B,
  A_B,
  B_A,
};

inline constexpr Combination kAllCombinations[] = {
    Combination::AB_AB, Combination::AB_A, Combination::AB_B, Combination::A_A,
    Combination::B_B,   Combination::A_B,  Combination::B_A};

const char* combination_name(Combination c);
bool combination_cross_validated(Combination c);

struct SplitSpec {
  Combination combination = Combination::AB_AB;
  int folds = 10;  // used by same-pool combinations
  uint64_t seed = 0;
};

struct TrainTestPair {
  std::vector<Example> train;
  std::vector<Example> test;
};

struct SplitResult {
  std::vector<TrainTestPair> pairs;
  std::vector<std::string> warnings;  // e.g. sense too small to stratify
};

struct TuningSplit {
  std::vector<Example> tuning;  // prefix of the seeded supply order
  std::vector<Example> test;    // fixed 50% half, identical for all fractions
};

// Parses the plain-text corpus format (see README). Throws parse_error /
// error with the offending line number.
WordProblem parse_corpus(std::istream& in);

// Inverse of parse_corpus; parse_corpus(serialize_corpus(p)) == p.
std::string serialize_corpus(const WordProblem& problem);

std::vector<Example> examples_of_part(const WordProblem& problem, Part part);

// Builds train/test pairs for one combination. Disjoint-pool combinations
// (A-B, B-A) yield a single whole-part pair; same-pool combinations yield
// `folds` stratified cross-validation pairs. Deterministic in spec.seed.
SplitResult split(const WordProblem& problem, const SplitSpec& spec);

// Splits the target part into a fixed 50% test half and a 50% supply half,
// then returns the first ceil(fraction * |part|) supply examples as the
// tuning set. The test half and the supply order depend only on the seed,
// so tuning sets are nested across fractions.
TuningSplit tuning_split(const WordProblem& problem, Part target_part,
                         double fraction, uint64_t seed);

}  // namespace wsd
