#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"

namespace wsd {

// Synthetic two-domain corpus generator. Each sense owns an indicative
// vocabulary per part; part B shares a configurable fraction of part A's
// words. Context tokens are indicative draws with probability
// emission_prob, noise words otherwise.
struct SynthConfig {
  std::string lemma = "synth";
  PosClass pos_class = PosClass::noun;
  int senses = 2;
  int examples_per_part = 100;
  std::vector<double> priors_a;  // one entry per sense, sums to 1
  std::vector<double> priors_b;
  int words_per_sense = 8;    // indicative vocabulary size per sense/part
  double vocab_overlap = 1.0; // fraction of B's sense vocabulary shared with A
  double emission_prob = 0.65;
  int noise_vocab = 150;
  int sentence_len = 9;       // context tokens around the target
  double mislabel_rate = 0.0;
};

struct MislabeledExample {
  int id;
  std::string true_sense;  // the generating sense before the flip
};

struct SyntheticCorpus {
  WordProblem problem;
  std::vector<MislabeledExample> mislabeled;
};

// Pure function of (config, seed).
SyntheticCorpus generate_synthetic(const SynthConfig& config, uint64_t seed);

// Flat key=value config file; '#' starts a comment. Unknown keys are errors.
SynthConfig parse_synth_config(std::istream& in);

// Built-in presets: "iid-domains" (A and B identically distributed) and
// "shifted-domains" (reversed sense priors, partially disjoint vocabularies).
SynthConfig synth_preset(const std::string& name);

}  // namespace wsd
