#include "wsd/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsd/error.hpp"
#include "wsd/rng.hpp"

namespace wsd {

namespace {

// argmax with ties resolved to the lowest sense id.
int argmax_lowest(const std::vector<double>& scores) {
  int best = 0;
  for (int s = 1; s < int(scores.size()); ++s)
    if (scores[size_t(s)] > scores[size_t(best)]) best = s;
  return best;
}

bool contains(const FeatureVector& v, int feature) {
  return std::binary_search(v.begin(), v.end(), feature);
}

std::vector<int64_t> label_counts(const TrainSet& ts) {
  std::vector<int64_t> counts(size_t(ts.n_senses), 0);
  for (int label : ts.labels) ++counts[size_t(label)];
  return counts;
}

int majority_of(const std::vector<int64_t>& counts) {
  int best = 0;
  for (int s = 1; s < int(counts.size()); ++s)
    if (counts[size_t(s)] > counts[size_t(best)]) best = s;
  return best;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::mfc: return "mfc";
    case Method::nb: return "nb";
    case Method::eb: return "eb";
    case Method::snow: return "snow";
    case Method::dl: return "dl";
    case Method::lb: return "lb";
  }
  return "?";
}

const char* method_display_name(Method m) {
  switch (m) {
    case Method::mfc: return "MFC";
    case Method::nb: return "Naive Bayes";
    case Method::eb: return "Exemplar-based";
    case Method::snow: return "SNoW";
    case Method::dl: return "Decision Lists";
    case Method::lb: return "LazyBoosting";
  }
  return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (Method m : kAllMethods)
    if (name == method_name(m)) return m;
  return std::nullopt;
}

void TrainSet::validate() const {
  if (vectors.empty()) throw error("empty training set");
  if (vectors.size() != labels.size())
    throw error("training vectors and labels differ in length");
  if (n_senses < 1) throw error("training set needs at least one sense");
  for (int label : labels)
    if (label < 0 || label >= n_senses)
      throw error("label " + std::to_string(label) + " outside sense range");
  for (const FeatureVector& v : vectors)
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] < 0 || v[j] >= n_features)
        throw error("feature id outside index range");
      if (j > 0 && v[j] <= v[j - 1])
        throw error("feature vector not strictly increasing");
    }
}

// ---------------------------------------------------------------------------
// MFC

MfcModel train_mfc(const TrainSet& ts) {
  ts.validate();
  MfcModel model;
  model.counts = label_counts(ts);
  model.majority_sense = majority_of(model.counts);
  return model;
}

// ---------------------------------------------------------------------------
// Naive Bayes

NbModel train_naive_bayes(const TrainSet& ts) {
  ts.validate();
  NbModel model;
  model.n_senses = ts.n_senses;
  model.n_features = ts.n_features;
  model.m = ts.size();

  std::vector<int64_t> sense_counts = label_counts(ts);
  model.prior.resize(size_t(ts.n_senses));
  for (int s = 0; s < ts.n_senses; ++s)
    model.prior[size_t(s)] = double(sense_counts[size_t(s)]) / double(ts.size());

  std::unordered_map<int64_t, int64_t> pair_counts;
  for (int i = 0; i < ts.size(); ++i)
    for (int f : ts.vectors[size_t(i)])
      ++pair_counts[int64_t(f) * ts.n_senses + ts.labels[size_t(i)]];

  model.cond.reserve(pair_counts.size());
  for (const auto& [key, count] : pair_counts) {
    int64_t sense = key % ts.n_senses;
    model.cond.emplace(key,
                       double(count) / double(sense_counts[size_t(sense)]));
  }
  return model;
}

double nb_log_score(const NbModel& model, const FeatureVector& v, int sense) {
  if (sense < 0 || sense >= model.n_senses)
    throw error("sense id out of range");
  double prior = model.prior[size_t(sense)];
  if (prior <= 0.0) return -std::numeric_limits<double>::infinity();
  double score = std::log(prior);
  double smoothed = prior / double(model.m);  // replaces zero estimates
  for (int f : v) {
    if (f >= model.n_features) continue;  // unseen in training: skipped
    auto it = model.cond.find(int64_t(f) * model.n_senses + sense);
    score += std::log(it == model.cond.end() ? smoothed : it->second);
  }
  return score;
}

int classify_nb(const NbModel& model, const FeatureVector& v) {
  std::vector<double> scores(size_t(model.n_senses));
  for (int s = 0; s < model.n_senses; ++s) scores[size_t(s)] = nb_log_score(model, v, s);
  return argmax_lowest(scores);
}

// ---------------------------------------------------------------------------
// Exemplar-based

int hamming_distance(const FeatureVector& a, const FeatureVector& b) {
  size_t i = 0, j = 0;
  int distance = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++distance;
      ++i;
    } else {
      ++distance;
      ++j;
    }
  }
  return distance + int(a.size() - i) + int(b.size() - j);
}

EbModel train_exemplar(const TrainSet& ts, int k_neighbors) {
  ts.validate();
  if (k_neighbors < 1) throw error("k must be >= 1");
  return EbModel{ts, k_neighbors};
}

int classify_exemplar(const EbModel& model, const FeatureVector& v) {
  const TrainSet& ts = model.stored;
  if (ts.vectors.empty()) throw error("exemplar model stores no examples");
  const size_t k = std::min(size_t(model.k_neighbors), ts.vectors.size());

  // Bounded selection of the k best (distance, id) pairs; ties at the
  // boundary distance are resolved toward the lowest example id.
  using Entry = std::pair<int, int>;
  std::vector<Entry> heap;  // max-heap on (distance, id)
  heap.reserve(k + 1);
  for (int i = 0; i < ts.size(); ++i) {
    Entry e{hamming_distance(ts.vectors[size_t(i)], v), i};
    if (heap.size() < k) {
      heap.push_back(e);
      std::push_heap(heap.begin(), heap.end());
    } else if (e < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = e;
      std::push_heap(heap.begin(), heap.end());
    }
  }

  std::vector<double> votes(size_t(ts.n_senses), 0.0);
  for (const Entry& e : heap)
    votes[size_t(ts.labels[size_t(e.second)])] += 1.0 / (1.0 + e.first);
  return argmax_lowest(votes);
}

// ---------------------------------------------------------------------------
// SNoW

SnowModel train_snow(const TrainSet& ts, const SnowParams& params) {
  ts.validate();
  if (!(params.alpha > 1.0)) throw error("snow alpha must be > 1");
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw error("snow beta must lie in (0,1)");
  if (!(params.theta > 0.0)) throw error("snow theta must be > 0");
  if (params.epochs < 1) throw error("snow epochs must be >= 1");

  SnowModel model;
  model.n_senses = ts.n_senses;
  model.n_features = ts.n_features;
  model.theta = params.theta;
  model.alpha = params.alpha;
  model.beta = params.beta;
  model.epochs = params.epochs;
  model.weights.resize(size_t(ts.n_senses));

  // Mistake-driven multiplicative updates in fixed training order. A node
  // initializes a feature's weight to 1.0 the first time it processes an
  // example containing it.
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (int i = 0; i < ts.size(); ++i) {
      const FeatureVector& active = ts.vectors[size_t(i)];
      const int label = ts.labels[size_t(i)];
      for (int c = 0; c < ts.n_senses; ++c) {
        auto& node = model.weights[size_t(c)];
        double activation = 0.0;
        for (int f : active) activation += node.try_emplace(f, 1.0).first->second;
        if (activation >= params.theta && c != label) {
          for (int f : active) node[f] *= params.beta;
        } else if (activation < params.theta && c == label) {
          for (int f : active) node[f] *= params.alpha;
        }
      }
    }
  }
  return model;
}

int classify_snow(const SnowModel& model, const FeatureVector& v) {
  std::vector<double> activations(size_t(model.n_senses), 0.0);
  for (int c = 0; c < model.n_senses; ++c) {
    const auto& node = model.weights[size_t(c)];
    double sum = 0.0;
    for (int f : v) {
      auto it = node.find(f);
      if (it != node.end()) sum += it->second;  // unseen features contribute 0
    }
    activations[size_t(c)] = sum;
  }
  return argmax_lowest(activations);
}

// ---------------------------------------------------------------------------
// Decision lists

double dl_weight(int64_t count_for, int64_t count_against, double delta) {
  if (count_for < 0 || count_against < 0) throw error("negative counts");
  if (!(delta > 0.0)) throw error("dl delta must be > 0");
  return std::log((double(count_for) + delta) /
                  (double(count_against) + delta));
}

DlModel train_decision_list(const TrainSet& ts, const DlParams& params) {
  ts.validate();
  if (!(params.delta > 0.0)) throw error("dl delta must be > 0");

  DlModel model;
  model.n_senses = ts.n_senses;
  model.n_features = ts.n_features;
  model.default_sense = majority_of(label_counts(ts));

  std::unordered_map<int64_t, int64_t> pair_counts;
  std::unordered_map<int, int64_t> feature_counts;
  for (int i = 0; i < ts.size(); ++i)
    for (int f : ts.vectors[size_t(i)]) {
      ++pair_counts[int64_t(f) * ts.n_senses + ts.labels[size_t(i)]];
      ++feature_counts[f];
    }

  for (const auto& [key, count_for] : pair_counts) {
    int feature = int(key / ts.n_senses);
    int sense = int(key % ts.n_senses);
    int64_t count_against = feature_counts[feature] - count_for;
    double weight = dl_weight(count_for, count_against, params.delta);
    if (weight > params.min_weight)
      model.rules.push_back({feature, sense, weight});
  }

  std::sort(model.rules.begin(), model.rules.end(),
            [](const DlRule& a, const DlRule& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              if (a.feature != b.feature) return a.feature < b.feature;
              return a.sense < b.sense;
            });
  return model;
}

int classify_dl(const DlModel& model, const FeatureVector& v) {
  for (const DlRule& rule : model.rules)
    if (contains(v, rule.feature)) return rule.sense;  // first match wins
  return model.default_sense;
}

// ---------------------------------------------------------------------------
// LazyBoosting (AdaBoost.MH with real-valued one-feature rules)

namespace {

struct StumpEval {
  double z = std::numeric_limits<double>::infinity();
  std::vector<double> c_present, c_absent;
};

// Builds the candidate's rule outputs from the weight partition
// W[presence][sign][label] and evaluates the exact normalizer
// Z = sum_{i,l} D(i,l) exp(-Y_i[l] h(x_i,l)).
StumpEval evaluate_stump(const std::vector<double>& wp1,
                         const std::vector<double>& wn1,
                         const std::vector<double>& total_pos,
                         const std::vector<double>& total_neg, double eps) {
  const size_t k = wp1.size();
  StumpEval eval;
  eval.c_present.resize(k);
  eval.c_absent.resize(k);
  double z = 0.0;
  for (size_t l = 0; l < k; ++l) {
    double wp0 = total_pos[l] - wp1[l];
    double wn0 = total_neg[l] - wn1[l];
    double c1 = 0.5 * std::log((wp1[l] + eps) / (wn1[l] + eps));
    double c0 = 0.5 * std::log((wp0 + eps) / (wn0 + eps));
    eval.c_present[l] = c1;
    eval.c_absent[l] = c0;
    z += wp1[l] * std::exp(-c1) + wn1[l] * std::exp(c1);
    z += wp0 * std::exp(-c0) + wn0 * std::exp(c0);
  }
  eval.z = z;
  return eval;
}

}  // namespace

LbModel train_lazyboosting(const TrainSet& ts, const LbParams& params) {
  ts.validate();
  if (params.rounds < 1) throw error("boosting rounds must be >= 1");
  if (!(params.sample_fraction > 0.0) || params.sample_fraction > 1.0)
    throw error("sample_fraction must lie in (0,1]");
  if (params.epsilon && !(*params.epsilon > 0.0))
    throw error("epsilon must be > 0");

  const int m = ts.size();
  const int k = ts.n_senses;
  const double eps = params.epsilon.value_or(1.0 / (double(m) * double(k)));

  LbModel model;
  model.n_senses = k;
  model.n_features = ts.n_features;
  model.final_distribution.assign(size_t(m) * size_t(k),
                                  1.0 / (double(m) * double(k)));
  std::vector<double>& dist = model.final_distribution;

  // With no features every stump is empty; the model degenerates to the
  // uniform-score ensemble.
  if (ts.n_features == 0) return model;

  std::vector<std::vector<int>> docs_of(size_t(ts.n_features));
  for (int i = 0; i < m; ++i)
    for (int f : ts.vectors[size_t(i)]) docs_of[size_t(f)].push_back(i);

  const int n_candidates = std::min(
      ts.n_features,
      int(std::ceil(params.sample_fraction * double(ts.n_features))));

  SplitMix64 rng(params.seed);
  std::vector<int> all_features(size_t(ts.n_features));
  for (int f = 0; f < ts.n_features; ++f) all_features[size_t(f)] = f;

  std::vector<double> total_pos(size_t(k), 0.0), total_neg(size_t(k), 0.0);
  std::vector<double> wp1(size_t(k), 0.0), wn1(size_t(k), 0.0);

  for (int round = 0; round < params.rounds; ++round) {
    // Candidate features for this round, ascending so that equal
    // normalizers resolve to the lowest feature id.
    std::vector<int> candidates;
    if (n_candidates >= ts.n_features) {
      candidates = all_features;
    } else {
      for (int j = 0; j < n_candidates; ++j) {
        size_t pick = size_t(j) + size_t(rng.next_below(
                                      uint64_t(ts.n_features - j)));
        std::swap(all_features[size_t(j)], all_features[pick]);
      }
      candidates.assign(all_features.begin(),
                        all_features.begin() + n_candidates);
      std::sort(candidates.begin(), candidates.end());
    }

    std::fill(total_pos.begin(), total_pos.end(), 0.0);
    std::fill(total_neg.begin(), total_neg.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      const double* row = &dist[size_t(i) * size_t(k)];
      const int label = ts.labels[size_t(i)];
      for (int l = 0; l < k; ++l)
        (l == label ? total_pos : total_neg)[size_t(l)] += row[size_t(l)];
    }

    WeakRule best;
    best.z = std::numeric_limits<double>::infinity();
    for (int f : candidates) {
      std::fill(wp1.begin(), wp1.end(), 0.0);
      std::fill(wn1.begin(), wn1.end(), 0.0);
      for (int i : docs_of[size_t(f)]) {
        const double* row = &dist[size_t(i) * size_t(k)];
        const int label = ts.labels[size_t(i)];
        for (int l = 0; l < k; ++l)
          (l == label ? wp1 : wn1)[size_t(l)] += row[size_t(l)];
      }
      StumpEval eval = evaluate_stump(wp1, wn1, total_pos, total_neg, eps);
      if (eval.z < best.z) {
        best.feature = f;
        best.z = eval.z;
        best.c_present = std::move(eval.c_present);
        best.c_absent = std::move(eval.c_absent);
      }
    }

    // Reweight: D <- D exp(-Y h) / Z with the directly summed normalizer.
    std::vector<char> has_feature(size_t(m), 0);
    for (int i : docs_of[size_t(best.feature)]) has_feature[size_t(i)] = 1;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
      double* row = &dist[size_t(i) * size_t(k)];
      const int label = ts.labels[size_t(i)];
      const std::vector<double>& c =
          has_feature[size_t(i)] ? best.c_present : best.c_absent;
      for (int l = 0; l < k; ++l) {
        double y = l == label ? 1.0 : -1.0;
        row[size_t(l)] *= std::exp(-y * c[size_t(l)]);
        z += row[size_t(l)];
      }
    }
    for (double& d : dist) d /= z;
    best.z = z;
    model.rounds.push_back(std::move(best));
  }
  return model;
}

std::vector<double> lb_scores(const LbModel& model, const FeatureVector& v) {
  std::vector<double> scores(size_t(model.n_senses), 0.0);
  for (const WeakRule& rule : model.rounds) {
    const std::vector<double>& c =
        contains(v, rule.feature) ? rule.c_present : rule.c_absent;
    for (int l = 0; l < model.n_senses; ++l) scores[size_t(l)] += c[size_t(l)];
  }
  return scores;
}

int classify_lb(const LbModel& model, const FeatureVector& v) {
  return argmax_lowest(lb_scores(model, v));
}

// ---------------------------------------------------------------------------
// Dispatch

Model train_model(const TrainSet& ts, const std::vector<std::string>& senses,
                  const std::vector<std::string>& feature_names,
                  const std::string& lemma, Method method,
                  const MethodParams& params, uint64_t seed) {
  Model model;
  model.method = method;
  model.lemma = lemma;
  model.n_senses = ts.n_senses;
  model.n_features = ts.n_features;
  model.senses = senses;
  model.features = feature_names;
  switch (method) {
    case Method::mfc: model.impl = train_mfc(ts); break;
    case Method::nb: model.impl = train_naive_bayes(ts); break;
    case Method::eb: model.impl = train_exemplar(ts, params.knn_k); break;
    case Method::snow: model.impl = train_snow(ts, params.snow); break;
    case Method::dl: model.impl = train_decision_list(ts, params.dl); break;
    case Method::lb: {
      LbParams lb = params.lb;
      lb.seed = seed;
      model.impl = train_lazyboosting(ts, lb);
      break;
    }
  }
  return model;
}

int classify(const Model& model, const FeatureVector& v) {
  return std::visit(
      [&v](const auto& impl) -> int {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, MfcModel>)
          return impl.majority_sense;
        else if constexpr (std::is_same_v<T, NbModel>)
          return classify_nb(impl, v);
        else if constexpr (std::is_same_v<T, EbModel>)
          return classify_exemplar(impl, v);
        else if constexpr (std::is_same_v<T, SnowModel>)
          return classify_snow(impl, v);
        else if constexpr (std::is_same_v<T, DlModel>)
          return classify_dl(impl, v);
        else
          return classify_lb(impl, v);
      },
      model.impl);
}

}  // namespace wsd
