#include "wsd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "wsd/error.hpp"
#include "wsd/rng.hpp"

namespace wsd {

namespace {

// FNV-1a; std::hash is not pinned across platforms.
uint64_t stable_hash(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const char* kContextTags[] = {"NN", "VB", "JJ", "RB", "DT"};

std::string tag_for(const std::string& word) {
  return kContextTags[stable_hash(word) % 5];
}

void check_priors(const std::vector<double>& priors, int k, const char* name) {
  if (int(priors.size()) != k)
    throw error(std::string(name) + " must have one entry per sense");
  double sum = 0.0;
  for (double p : priors) {
    if (p < 0.0) throw error(std::string(name) + " has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw error(std::string(name) + " must sum to 1");
}

int draw_from_priors(const std::vector<double>& priors, SplitMix64& rng) {
  double u = rng.next_double();
  double cum = 0.0;
  for (size_t s = 0; s < priors.size(); ++s) {
    cum += priors[s];
    if (u < cum) return int(s);
  }
  return int(priors.size()) - 1;
}

// Indicative vocabulary of one sense in one part. Part B reuses the first
// ceil(overlap * W) words of part A's list.
std::vector<std::string> sense_vocab(int sense, Part part, int words_per_sense,
                                     double overlap) {
  std::vector<std::string> words;
  words.reserve(size_t(words_per_sense));
  if (part == Part::A) {
    for (int j = 0; j < words_per_sense; ++j)
      words.push_back("s" + std::to_string(sense) + "a" + std::to_string(j));
  } else {
    int shared = int(std::ceil(overlap * words_per_sense));
    shared = std::min(shared, words_per_sense);
    for (int j = 0; j < shared; ++j)
      words.push_back("s" + std::to_string(sense) + "a" + std::to_string(j));
    for (int j = shared; j < words_per_sense; ++j)
      words.push_back("s" + std::to_string(sense) + "b" + std::to_string(j));
  }
  return words;
}

void validate(const SynthConfig& c) {
  if (c.senses < 2) throw error("synthetic config needs at least 2 senses");
  if (c.examples_per_part < 1) throw error("examples_per_part must be >= 1");
  check_priors(c.priors_a, c.senses, "priors_a");
  check_priors(c.priors_b, c.senses, "priors_b");
  if (c.words_per_sense < 1) throw error("words_per_sense must be >= 1");
  if (c.vocab_overlap < 0.0 || c.vocab_overlap > 1.0)
    throw error("vocab_overlap must lie in [0,1]");
  if (c.emission_prob < 0.0 || c.emission_prob > 1.0)
    throw error("emission_prob must lie in [0,1]");
  if (c.noise_vocab < 1) throw error("noise_vocab must be >= 1");
  if (c.sentence_len < 0) throw error("sentence_len must be >= 0");
  if (c.mislabel_rate < 0.0 || c.mislabel_rate >= 1.0)
    throw error("mislabel_rate must lie in [0,1)");
  if (c.lemma.empty()) throw error("lemma must be non-empty");
}

}  // namespace

SyntheticCorpus generate_synthetic(const SynthConfig& config, uint64_t seed) {
  validate(config);

  std::vector<std::vector<std::string>> vocab_a, vocab_b;
  for (int s = 0; s < config.senses; ++s) {
    vocab_a.push_back(sense_vocab(s, Part::A, config.words_per_sense,
                                  config.vocab_overlap));
    vocab_b.push_back(sense_vocab(s, Part::B, config.words_per_sense,
                                  config.vocab_overlap));
  }
  std::vector<std::string> noise;
  for (int j = 0; j < config.noise_vocab; ++j)
    noise.push_back("n" + std::to_string(j));

  std::string target_pos =
      config.pos_class == PosClass::noun ? "NN" : "VB";

  std::vector<std::string> sense_names;
  for (int s = 0; s < config.senses; ++s)
    sense_names.push_back("sense" + std::to_string(s));

  SyntheticCorpus out;
  out.problem.lemma = config.lemma;
  out.problem.pos_class = config.pos_class;

  SplitMix64 rng(derive_seed(seed, 0x53594e54ULL));
  for (Part part : {Part::A, Part::B}) {
    const auto& priors = part == Part::A ? config.priors_a : config.priors_b;
    const auto& vocab = part == Part::A ? vocab_a : vocab_b;
    for (int i = 0; i < config.examples_per_part; ++i) {
      int true_sense = draw_from_priors(priors, rng);

      Example ex;
      ex.id = int(out.problem.examples.size());
      ex.part = part;
      ex.sense = sense_names[size_t(true_sense)];

      int target_pos_idx = int(rng.next_below(uint64_t(config.sentence_len + 1)));
      for (int t = 0; t <= config.sentence_len; ++t) {
        if (t == target_pos_idx) {
          ex.tokens.push_back({config.lemma, target_pos});
          continue;
        }
        const std::string& word =
            rng.next_double() < config.emission_prob
                ? vocab[size_t(true_sense)]
                       [rng.next_below(uint64_t(config.words_per_sense))]
                : noise[rng.next_below(uint64_t(config.noise_vocab))];
        ex.tokens.push_back({word, tag_for(word)});
      }
      ex.target_index = target_pos_idx;

      if (config.mislabel_rate > 0.0 &&
          rng.next_double() < config.mislabel_rate) {
        int wrong = int(rng.next_below(uint64_t(config.senses - 1)));
        if (wrong >= true_sense) ++wrong;
        ex.sense = sense_names[size_t(wrong)];
        out.mislabeled.push_back({ex.id, sense_names[size_t(true_sense)]});
      }
      out.problem.examples.push_back(std::move(ex));
    }
  }

  // Inventory ordered by first occurrence, matching the parse convention
  // so that generated corpora round-trip exactly.
  for (const Example& ex : out.problem.examples)
    if (out.problem.sense_id(ex.sense) < 0)
      out.problem.sense_inventory.push_back(ex.sense);
  return out;
}

SynthConfig parse_synth_config(std::istream& in) {
  SynthConfig config;
  config.priors_a.clear();
  config.priors_b.clear();
  bool saw_senses = false;

  auto parse_doubles = [](const std::string& text, int line_no) {
    std::vector<double> values;
    std::string item;
    std::istringstream items(text);
    while (std::getline(items, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw parse_error("bad number '" + item + "'", line_no);
      }
    }
    return values;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw parse_error("expected key = value", line_no);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw parse_error("expected key = value", line_no);

    try {
      if (key == "lemma") {
        config.lemma = value;
      } else if (key == "pos") {
        if (value == "noun")
          config.pos_class = PosClass::noun;
        else if (value == "verb")
          config.pos_class = PosClass::verb;
        else
          throw parse_error("pos must be noun or verb", line_no);
      } else if (key == "senses") {
        config.senses = std::stoi(value);
        saw_senses = true;
      } else if (key == "examples_per_part") {
        config.examples_per_part = std::stoi(value);
      } else if (key == "priors_a") {
        config.priors_a = parse_doubles(value, line_no);
      } else if (key == "priors_b") {
        config.priors_b = parse_doubles(value, line_no);
      } else if (key == "words_per_sense") {
        config.words_per_sense = std::stoi(value);
      } else if (key == "vocab_overlap") {
        config.vocab_overlap = std::stod(value);
      } else if (key == "emission_prob") {
        config.emission_prob = std::stod(value);
      } else if (key == "noise_vocab") {
        config.noise_vocab = std::stoi(value);
      } else if (key == "sentence_len") {
        config.sentence_len = std::stoi(value);
      } else if (key == "mislabel_rate") {
        config.mislabel_rate = std::stod(value);
      } else {
        throw parse_error("unknown key '" + key + "'", line_no);
      }
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception&) {
      throw parse_error("bad value for '" + key + "'", line_no);
    }
  }

  if (!saw_senses && config.priors_a.empty())
    throw error("synthetic config must set senses or priors");
  if (config.priors_a.empty() || config.priors_b.empty()) {
    // uniform default priors for any part left unspecified
    std::vector<double> uniform(size_t(config.senses),
                                1.0 / double(config.senses));
    if (config.priors_a.empty()) config.priors_a = uniform;
    if (config.priors_b.empty()) config.priors_b = uniform;
  }
  if (!saw_senses) config.senses = int(config.priors_a.size());
  return config;
}

SynthConfig synth_preset(const std::string& name) {
  SynthConfig config;
  if (name == "iid-domains") {
    config.lemma = "line";
    config.senses = 4;
    config.examples_per_part = 500;
    config.priors_a = {0.4, 0.3, 0.2, 0.1};
    config.priors_b = config.priors_a;
    config.words_per_sense = 8;
    config.vocab_overlap = 1.0;
    config.emission_prob = 0.6;
    config.noise_vocab = 150;
    config.sentence_len = 9;
    return config;
  }
  if (name == "shifted-domains") {
    config.lemma = "state";
    config.senses = 5;
    config.examples_per_part = 500;
    config.priors_a = {0.38, 0.25, 0.17, 0.12, 0.08};
    config.priors_b = {0.08, 0.12, 0.17, 0.25, 0.38};
    config.words_per_sense = 8;
    config.vocab_overlap = 0.4;
    config.emission_prob = 0.6;
    config.noise_vocab = 150;
    config.sentence_len = 9;
    return config;
  }
  throw error("unknown preset '" + name +
              "' (available: iid-domains, shifted-domains)");
}

}  // namespace wsd
