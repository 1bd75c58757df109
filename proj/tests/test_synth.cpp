#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "wsd/error.hpp"
#include "wsd/synth.hpp"

using namespace wsd;

TEST_CASE("identical part configs give matching empirical priors") {
  SynthConfig cfg = synth_preset("iid-domains");
  cfg.examples_per_part = 2000;
  SyntheticCorpus corpus = generate_synthetic(cfg, 5);
  CHECK(corpus.mislabeled.empty());

  std::map<std::string, double> freq_a, freq_b;
  for (const Example& ex : corpus.problem.examples)
    ++(ex.part == Part::A ? freq_a : freq_b)[ex.sense];
  for (int s = 0; s < cfg.senses; ++s) {
    std::string label = "sense" + std::to_string(s);
    double pa = freq_a[label] / cfg.examples_per_part;
    double pb = freq_b[label] / cfg.examples_per_part;
    CHECK(std::abs(pa - cfg.priors_a[size_t(s)]) < 0.05);
    CHECK(std::abs(pa - pb) < 0.06);  // sampling error only
  }
}

TEST_CASE("mislabel rate flips roughly the configured fraction") {
  SynthConfig cfg = synth_preset("iid-domains");
  cfg.examples_per_part = 50;  // 100 total
  cfg.mislabel_rate = 0.2;
  SyntheticCorpus corpus = generate_synthetic(cfg, 9);

  // The generator records exactly the flipped examples.
  int recorded_mismatch = 0;
  for (const MislabeledExample& flip : corpus.mislabeled) {
    const Example& ex = corpus.problem.examples[size_t(flip.id)];
    CHECK(ex.sense != flip.true_sense);
    ++recorded_mismatch;
  }
  CHECK(recorded_mismatch == int(corpus.mislabeled.size()));
  CHECK(corpus.mislabeled.size() >= 10);
  CHECK(corpus.mislabeled.size() <= 32);

  // Count is deterministic per seed.
  CHECK(generate_synthetic(cfg, 9).mislabeled.size() ==
        corpus.mislabeled.size());
}

TEST_CASE("generation is a pure function of config and seed") {
  SynthConfig cfg = synth_preset("shifted-domains");
  cfg.examples_per_part = 60;
  SyntheticCorpus a = generate_synthetic(cfg, 123);
  SyntheticCorpus b = generate_synthetic(cfg, 123);
  CHECK(serialize_corpus(a.problem) == serialize_corpus(b.problem));
  SyntheticCorpus c = generate_synthetic(cfg, 124);
  CHECK(serialize_corpus(a.problem) != serialize_corpus(c.problem));
}

TEST_CASE("generator validates its configuration") {
  SynthConfig cfg = synth_preset("iid-domains");
  cfg.priors_a = {0.5, 0.2, 0.2, 0.2};  // sums to 1.1
  CHECK_THROWS_AS(generate_synthetic(cfg, 1), error);

  cfg = synth_preset("iid-domains");
  cfg.senses = 1;
  cfg.priors_a = {1.0};
  cfg.priors_b = {1.0};
  CHECK_THROWS_AS(generate_synthetic(cfg, 1), error);
}

TEST_CASE("synth config files parse and reject unknown keys") {
  std::istringstream in(
      "lemma = interest\n"
      "pos = noun\n"
      "senses = 3\n"
      "examples_per_part = 25\n"
      "priors_a = 0.5, 0.3, 0.2\n"
      "priors_b = 0.2, 0.3, 0.5\n"
      "vocab_overlap = 0.7  # partially shared\n"
      "mislabel_rate = 0.05\n");
  SynthConfig cfg = parse_synth_config(in);
  CHECK(cfg.lemma == "interest");
  CHECK(cfg.senses == 3);
  CHECK(cfg.examples_per_part == 25);
  CHECK(cfg.priors_b == std::vector<double>{0.2, 0.3, 0.5});
  CHECK(cfg.vocab_overlap == 0.7);
  CHECK(cfg.mislabel_rate == 0.05);
  generate_synthetic(cfg, 3);  // parses into a usable config

  std::istringstream bad("sense_count = 3\n");
  CHECK_THROWS_AS(parse_synth_config(bad), parse_error);
}

TEST_CASE("unknown preset names are rejected") {
  CHECK_THROWS_AS(synth_preset("nope"), error);
  CHECK(synth_preset("iid-domains").priors_a ==
        synth_preset("iid-domains").priors_b);
  SynthConfig shifted = synth_preset("shifted-domains");
  CHECK(shifted.priors_a != shifted.priors_b);
  CHECK(shifted.vocab_overlap < 1.0);
}
