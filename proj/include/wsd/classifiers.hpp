#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wsd/features.hpp"

namespace wsd {

enum class Method { mfc, nb, eb, snow, dl, lb };

inline constexpr Method kAllMethods[] = {Method::mfc, Method::nb, Method::eb,
                                         Method::snow, Method::dl, Method::lb};

const char* method_name(Method m);
const char* method_display_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

// Vectorized training data for one word problem. Labels index the sense
// inventory; senses absent from the training pool are legal and simply
// never predicted.
struct TrainSet {
  std::vector<FeatureVector> vectors;
  std::vector<int> labels;
  int n_senses = 0;
  int n_features = 0;

  int size() const { return int(vectors.size()); }
  void validate() const;  // throws wsd::error on broken invariants
  bool operator==(const TrainSet&) const = default;
};

// ---------------------------------------------------------------------------
// Most-frequent-sense baseline.

struct MfcModel {
  int majority_sense = 0;  // ties resolve to the lowest sense id
  std::vector<int64_t> counts;
  bool operator==(const MfcModel&) const = default;
};

MfcModel train_mfc(const TrainSet& ts);

// ---------------------------------------------------------------------------
// Naive Bayes with relative-frequency estimates. A zero estimate of
// P(f|s) is replaced by prior(s)/m at scoring time.

struct NbModel {
  int n_senses = 0;
  int n_features = 0;
  int m = 0;                   // training-set size
  std::vector<double> prior;   // count(s)/m; 0 for senses unseen in training
  // count(f,s)/count(s) for pairs with count(f,s) > 0, keyed f * n_senses + s.
  std::unordered_map<int64_t, double> cond;
  bool operator==(const NbModel&) const = default;
};

NbModel train_naive_bayes(const TrainSet& ts);

// log prior(s) + sum of log P(f|s) over active features known to the model.
// -inf for senses with zero training mass.
double nb_log_score(const NbModel& model, const FeatureVector& v, int sense);

int classify_nb(const NbModel& model, const FeatureVector& v);

// ---------------------------------------------------------------------------
// Exemplar-based k-NN under Hamming distance; neighbours vote their sense
// with weight 1/(1+d).

struct EbModel {
  TrainSet stored;  // kept verbatim, no generalization
  int k_neighbors = 1;
  bool operator==(const EbModel&) const = default;
};

int hamming_distance(const FeatureVector& a, const FeatureVector& b);

EbModel train_exemplar(const TrainSet& ts, int k_neighbors);

int classify_exemplar(const EbModel& model, const FeatureVector& v);

// ---------------------------------------------------------------------------
// SNoW-style network: one mistake-driven Winnow node per sense over the
// common feature space.

struct SnowParams {
  double alpha = 1.5;  // promotion, > 1
  double beta = 0.5;   // demotion, in (0,1)
  double theta = 1.0;  // threshold, > 0
  int epochs = 3;
  uint64_t seed = 0;  // reserved; training order is fixed, nothing is drawn
};

struct SnowModel {
  int n_senses = 0;
  int n_features = 0;
  double theta = 1.0;
  double alpha = 1.5;
  double beta = 0.5;
  int epochs = 3;
  // Per-sense feature weights; a node's weight appears once the node has
  // seen the feature (initialized at 1.0), absent features contribute 0.
  std::vector<std::unordered_map<int, double>> weights;
  bool operator==(const SnowModel&) const = default;
};

SnowModel train_snow(const TrainSet& ts, const SnowParams& params);

int classify_snow(const SnowModel& model, const FeatureVector& v);

// ---------------------------------------------------------------------------
// Decision lists: one rule per (feature, sense) pair with positive
// log-likelihood weight; first matching rule wins.

struct DlParams {
  double delta = 0.1;      // smoothing constant, > 0
  double min_weight = 0.0; // rules must exceed this weight
};

struct DlRule {
  int feature = 0;
  int sense = 0;
  double weight = 0.0;
  bool operator==(const DlRule&) const = default;
};

struct DlModel {
  int n_senses = 0;
  int n_features = 0;
  std::vector<DlRule> rules;  // weight desc, ties by feature id then sense id
  int default_sense = 0;      // training majority
  bool operator==(const DlModel&) const = default;
};

// ln((count_for + delta) / (count_against + delta))
double dl_weight(int64_t count_for, int64_t count_against, double delta);

DlModel train_decision_list(const TrainSet& ts, const DlParams& params);

int classify_dl(const DlModel& model, const FeatureVector& v);

// ---------------------------------------------------------------------------
// LazyBoosting: AdaBoost.MH with real-valued one-feature weak rules,
// examining only a random fraction of the features per round.

struct LbParams {
  int rounds = 200;
  double sample_fraction = 0.1;  // in (0,1]; 1.0 examines every feature
  std::optional<double> epsilon; // smoothing; defaults to 1/(m*k)
  uint64_t seed = 0;
};

struct WeakRule {
  int feature = 0;
  std::vector<double> c_present;  // per-label output when the feature fires
  std::vector<double> c_absent;
  double z = 0.0;  // normalizer achieved on the round
  bool operator==(const WeakRule&) const = default;
};

struct LbModel {
  int n_senses = 0;
  int n_features = 0;
  std::vector<WeakRule> rounds;
  // D_{T+1}, row-major (example, label); kept for noise analysis.
  std::vector<double> final_distribution;
  bool operator==(const LbModel&) const = default;

  int trained_examples() const {
    return n_senses == 0 ? 0 : int(final_distribution.size()) / n_senses;
  }
};

LbModel train_lazyboosting(const TrainSet& ts, const LbParams& params);

// Per-label ensemble score: sum of c_present/c_absent over the rounds.
std::vector<double> lb_scores(const LbModel& model, const FeatureVector& v);

int classify_lb(const LbModel& model, const FeatureVector& v);

// ---------------------------------------------------------------------------
// Uniform dispatch.

struct MethodParams {
  int knn_k = 1;
  int min_count = 1;  // feature index pruning threshold
  SnowParams snow;
  DlParams dl;
  LbParams lb;
};

struct Model {
  Method method = Method::mfc;
  std::string lemma;
  int n_senses = 0;
  int n_features = 0;
  std::vector<std::string> senses;    // inventory, id order
  std::vector<std::string> features;  // canonical strings, id order
  std::variant<MfcModel, NbModel, EbModel, SnowModel, DlModel, LbModel> impl;
  bool operator==(const Model&) const = default;
};

// Trains one method; `seed` feeds only methods that sample (LazyBoosting).
Model train_model(const TrainSet& ts, const std::vector<std::string>& senses,
                  const std::vector<std::string>& feature_names,
                  const std::string& lemma, Method method,
                  const MethodParams& params, uint64_t seed);

int classify(const Model& model, const FeatureVector& v);

}  // namespace wsd
