#include "wsd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "wsd/error.hpp"
#include "wsd/parallel.hpp"
#include "wsd/rng.hpp"

namespace wsd {

namespace {

constexpr double kChiSquare95 = 3.841459;  // 1 df

// Two-tailed 97.5% Student's t quantiles for df 1..30.
constexpr double kTCritical[] = {
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582, 2.446912,
    2.364624,  2.306004, 2.262157, 2.228139, 2.200985, 2.178813,
    2.160369,  2.144787, 2.131450, 2.119905, 2.109816, 2.100922,
    2.093024,  2.085963, 2.079614, 2.073873, 2.068658, 2.063899,
    2.059539,  2.055529, 2.051831, 2.048407, 2.045230, 2.042272};

std::string pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value * 100.0);
  return buf;
}

std::string num(double value, int decimals) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / double(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  double mu = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / double(xs.size() - 1));
}

}  // namespace

double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& gold) {
  if (predictions.size() != gold.size())
    throw error("accuracy: prediction/gold length mismatch");
  if (predictions.empty()) throw error("accuracy: empty input");
  size_t hits = 0;
  for (size_t i = 0; i < gold.size(); ++i)
    if (predictions[i] == gold[i]) ++hits;
  return double(hits) / double(gold.size());
}

double kappa(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw error("kappa: length mismatch");
  if (a.empty()) throw error("kappa: empty input");
  const double n = double(a.size());

  size_t hits = 0;
  std::unordered_map<int, int64_t> count_a, count_b;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++hits;
    ++count_a[a[i]];
    ++count_b[b[i]];
  }
  double p_o = double(hits) / n;
  double p_e = 0.0;
  for (const auto& [label, ca] : count_a) {
    auto it = count_b.find(label);
    if (it != count_b.end())
      p_e += (double(ca) / n) * (double(it->second) / n);
  }
  // Both annotators constant: same label gives P_e = 1 (and P_o = 1) ->
  // kappa 1; different labels give P_e = 0, P_o = 0 -> kappa 0.
  if (p_e >= 1.0) return 1.0;
  return (p_o - p_e) / (1.0 - p_e);
}

McNemarResult mcnemar(const std::vector<int>& pred_a,
                      const std::vector<int>& pred_b,
                      const std::vector<int>& gold) {
  if (pred_a.size() != pred_b.size() || pred_a.size() != gold.size())
    throw error("mcnemar: length mismatch");
  McNemarResult r;
  for (size_t i = 0; i < gold.size(); ++i) {
    bool a_ok = pred_a[i] == gold[i];
    bool b_ok = pred_b[i] == gold[i];
    if (a_ok && !b_ok) ++r.b;
    if (!a_ok && b_ok) ++r.c;
  }
  if (r.b + r.c == 0) return r;  // statistic 0, not significant
  double diff = std::abs(double(r.b - r.c)) - 1.0;
  r.statistic = diff * diff / double(r.b + r.c);
  r.significant_95 = r.statistic > kChiSquare95;
  return r;
}

double t_critical_95(int df) {
  if (df < 1) throw error("t test needs df >= 1");
  if (df <= 30) return kTCritical[df - 1];
  return 1.959964;
}

TTestResult paired_ttest(const std::vector<double>& acc_a,
                         const std::vector<double>& acc_b) {
  if (acc_a.size() != acc_b.size()) throw error("t-test: length mismatch");
  if (acc_a.size() < 2) throw error("t-test needs at least 2 folds");
  const size_t n = acc_a.size();

  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = acc_a[i] - acc_b[i];
  double mu = mean_of(d);
  double sd = sample_sd(d);

  TTestResult r;
  if (sd == 0.0) {
    if (mu == 0.0) return r;  // t = 0, not significant
    r.t = mu > 0 ? std::numeric_limits<double>::infinity()
                 : -std::numeric_limits<double>::infinity();
    r.significant_95 = true;
    return r;
  }
  r.t = mu * std::sqrt(double(n)) / sd;
  r.significant_95 = std::abs(r.t) > t_critical_95(int(n) - 1);
  return r;
}

AgreementMatrix agreement_matrix(const std::vector<PredictionRecord>& records,
                                 const std::vector<std::string>& method_names) {
  if (records.empty()) throw error("agreement matrix: no records");
  const size_t n_cols = method_names.size() + 1;

  std::vector<std::vector<int>> columns(n_cols);
  for (auto& col : columns) col.reserve(records.size());
  for (const PredictionRecord& rec : records) {
    if (rec.predicted.size() != method_names.size())
      throw error("agreement matrix: record width mismatch");
    columns[0].push_back(rec.gold);
    for (size_t j = 0; j < rec.predicted.size(); ++j)
      columns[j + 1].push_back(rec.predicted[j]);
  }

  AgreementMatrix m;
  m.labels.push_back("gold");
  for (const std::string& name : method_names) m.labels.push_back(name);
  m.agreement.assign(n_cols, std::vector<double>(n_cols, 1.0));
  m.kappa.assign(n_cols, std::vector<double>(n_cols, 1.0));
  for (size_t i = 0; i < n_cols; ++i)
    for (size_t j = i + 1; j < n_cols; ++j) {
      double agree = accuracy(columns[i], columns[j]);
      double kap = kappa(columns[i], columns[j]);
      m.agreement[i][j] = m.agreement[j][i] = agree;
      m.kappa[i][j] = m.kappa[j][i] = kap;
    }
  return m;
}

// ---------------------------------------------------------------------------
// Shared train/evaluate path.

SingleEval evaluate_split(const std::vector<Example>& train,
                          const std::vector<Example>& test,
                          const WordProblem& problem, const EvalConfig& config,
                          uint64_t seed) {
  if (train.empty()) throw error("evaluate: empty training set");
  if (test.empty()) throw error("evaluate: empty test set");

  // Canonical training order: ascending example id.
  std::vector<Example> ordered = train;
  std::sort(ordered.begin(), ordered.end(),
            [](const Example& a, const Example& b) { return a.id < b.id; });

  std::vector<std::vector<std::string>> raw_train;
  raw_train.reserve(ordered.size());
  for (const Example& ex : ordered)
    raw_train.push_back(extract_features(ex, config.stopwords));
  FeatureIndex index = build_index(raw_train, config.params.min_count);

  TrainSet ts;
  ts.n_senses = int(problem.sense_inventory.size());
  ts.n_features = index.size();
  ts.vectors.reserve(ordered.size());
  ts.labels.reserve(ordered.size());
  for (size_t i = 0; i < ordered.size(); ++i) {
    ts.vectors.push_back(vectorize(raw_train[i], index));
    ts.labels.push_back(problem.sense_id(ordered[i].sense));
  }

  std::vector<Model> models;
  models.reserve(config.methods.size());
  for (Method method : config.methods)
    models.push_back(train_model(ts, problem.sense_inventory, index.backward,
                                 problem.lemma, method, config.params,
                                 derive_seed(seed, 100 + uint64_t(method))));

  SingleEval eval;
  eval.records.reserve(test.size());
  std::vector<std::vector<int>> per_method(config.methods.size());
  std::vector<int> gold;
  for (const Example& ex : test) {
    FeatureVector v = vectorize(extract_features(ex, config.stopwords), index);
    PredictionRecord rec;
    rec.example_id = ex.id;
    rec.gold = problem.sense_id(ex.sense);
    for (size_t j = 0; j < models.size(); ++j) {
      int pred = classify(models[j], v);
      rec.predicted.push_back(pred);
      per_method[j].push_back(pred);
    }
    gold.push_back(rec.gold);
    eval.records.push_back(std::move(rec));
  }
  for (size_t j = 0; j < per_method.size(); ++j)
    eval.accuracies.push_back(accuracy(per_method[j], gold));
  return eval;
}

// ---------------------------------------------------------------------------
// Seven-combination driver.

EvaluationReport run_combinations(const WordProblem& problem,
                                  const EvalConfig& config, uint64_t seed) {
  if (problem.sense_inventory.size() < 2)
    throw error("problem is not trainable: fewer than 2 senses");

  EvalConfig cfg = config;
  if (std::find(cfg.methods.begin(), cfg.methods.end(), Method::mfc) ==
      cfg.methods.end())
    cfg.methods.insert(cfg.methods.begin(), Method::mfc);

  EvaluationReport report;
  report.methods = cfg.methods;
  report.reference = cfg.reference;
  report.combos.resize(std::size(kAllCombinations));

  struct FoldTask {
    size_t combo_idx;
    size_t fold_idx;
  };
  std::vector<FoldTask> tasks;
  std::vector<SplitResult> splits(std::size(kAllCombinations));
  std::vector<std::vector<SingleEval>> fold_evals(std::size(kAllCombinations));

  for (size_t ci = 0; ci < std::size(kAllCombinations); ++ci) {
    ComboResult& combo = report.combos[ci];
    combo.combination = kAllCombinations[ci];
    SplitSpec spec;
    spec.combination = kAllCombinations[ci];
    spec.folds = cfg.folds;
    spec.seed = derive_seed(seed, 10 + ci);
    try {
      splits[ci] = split(problem, spec);
    } catch (const error& e) {
      combo.ok = false;
      combo.error = e.what();
      continue;
    }
    combo.ok = true;
    combo.warnings = splits[ci].warnings;
    fold_evals[ci].resize(splits[ci].pairs.size());
    for (size_t f = 0; f < splits[ci].pairs.size(); ++f)
      if (!splits[ci].pairs[f].test.empty()) tasks.push_back({ci, f});
  }

  std::exception_ptr task_error;
  std::mutex error_mutex;
  parallel_for(tasks.size(), cfg.jobs, [&](size_t t) {
    const FoldTask& task = tasks[t];
    const TrainTestPair& pair = splits[task.combo_idx].pairs[task.fold_idx];
    try {
      fold_evals[task.combo_idx][task.fold_idx] =
          evaluate_split(pair.train, pair.test, problem, cfg, seed);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!task_error) task_error = std::current_exception();
    }
  });
  if (task_error) std::rethrow_exception(task_error);

  const size_t n_methods = cfg.methods.size();
  size_t ref_idx = n_methods;
  for (size_t j = 0; j < n_methods; ++j)
    if (cfg.methods[j] == cfg.reference) ref_idx = j;

  for (size_t ci = 0; ci < std::size(kAllCombinations); ++ci) {
    ComboResult& combo = report.combos[ci];
    if (!combo.ok) continue;
    const bool cross_validated =
        combination_cross_validated(kAllCombinations[ci]);

    combo.per_method.resize(n_methods);
    for (size_t f = 0; f < fold_evals[ci].size(); ++f) {
      const SingleEval& eval = fold_evals[ci][f];
      if (eval.accuracies.empty()) continue;  // empty filtered test fold
      for (size_t j = 0; j < n_methods; ++j)
        combo.per_method[j].fold_accuracies.push_back(eval.accuracies[j]);
      combo.records.insert(combo.records.end(), eval.records.begin(),
                           eval.records.end());
    }
    std::sort(combo.records.begin(), combo.records.end(),
              [](const PredictionRecord& a, const PredictionRecord& b) {
                return a.example_id < b.example_id;
              });

    if (combo.per_method[0].fold_accuracies.empty()) {
      combo.ok = false;
      combo.error = "all test folds empty";
      continue;
    }

    std::vector<int> gold;
    std::vector<std::vector<int>> pooled(n_methods);
    for (const PredictionRecord& rec : combo.records) {
      gold.push_back(rec.gold);
      for (size_t j = 0; j < n_methods; ++j)
        pooled[j].push_back(rec.predicted[j]);
    }

    for (size_t j = 0; j < n_methods; ++j) {
      MethodComboResult& mr = combo.per_method[j];
      mr.mean_accuracy = mean_of(mr.fold_accuracies);
      if (cross_validated && mr.fold_accuracies.size() >= 2)
        mr.sd = sample_sd(mr.fold_accuracies);
      if (j != ref_idx && ref_idx < n_methods) {
        mr.mcnemar_vs_ref = mcnemar(pooled[j], pooled[ref_idx], gold);
        if (cross_validated && mr.fold_accuracies.size() >= 2)
          mr.ttest_vs_ref =
              paired_ttest(mr.fold_accuracies,
                           combo.per_method[ref_idx].fold_accuracies);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tuning curves.

TuningCurve tuning_curve(const WordProblem& problem, Part source_part,
                         Part target_part,
                         const std::vector<double>& fractions,
                         const EvalConfig& config, uint64_t seed) {
  if (problem.sense_inventory.size() < 2)
    throw error("problem is not trainable: fewer than 2 senses");
  if (fractions.empty()) throw error("no tuning fractions given");

  std::vector<Example> source = examples_of_part(problem, source_part);
  if (source.empty()) throw error("source part has no examples");

  TuningCurve curve;
  curve.methods = config.methods;
  curve.fractions = fractions;

  // The test half is identical for every fraction under a fixed seed, and
  // tuning slices are nested; one split per fraction reuses it.
  std::vector<TuningSplit> slices;
  slices.reserve(fractions.size());
  for (double fraction : fractions)
    slices.push_back(tuning_split(problem, target_part, fraction, seed));
  const std::vector<Example>& test_half = slices.front().test;

  {
    std::unordered_map<int, int64_t> counts;
    int64_t best = 0;
    for (const Example& ex : test_half) {
      int64_t c = ++counts[problem.sense_id(ex.sense)];
      best = std::max(best, c);
    }
    curve.target_test_mfc = double(best) / double(test_half.size());
  }

  // Task 0 is the source-only baseline; then (mode x fraction) points.
  struct Task {
    int mode = -1;  // -1 baseline, else TuningMode index
    size_t fraction_idx = 0;
  };
  std::vector<Task> tasks;
  tasks.push_back({});
  for (int mode = 0; mode < 2; ++mode)
    for (size_t fi = 0; fi < fractions.size(); ++fi)
      tasks.push_back({mode, fi});

  std::vector<std::vector<double>> results(tasks.size());
  std::exception_ptr task_error;
  std::mutex error_mutex;
  parallel_for(tasks.size(), config.jobs, [&](size_t t) {
    try {
      std::vector<Example> train;
      if (tasks[t].mode == -1) {
        train = source;
      } else if (tasks[t].mode == int(TuningMode::combined)) {
        train = source;
        const auto& slice = slices[tasks[t].fraction_idx].tuning;
        train.insert(train.end(), slice.begin(), slice.end());
      } else {
        train = slices[tasks[t].fraction_idx].tuning;
      }
      results[t] =
          evaluate_split(train, test_half, problem, config, seed).accuracies;
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!task_error) task_error = std::current_exception();
    }
  });
  if (task_error) std::rethrow_exception(task_error);

  curve.baseline = results[0];
  curve.points.assign(2, std::vector<std::vector<double>>(fractions.size()));
  for (size_t t = 1; t < tasks.size(); ++t)
    curve.points[size_t(tasks[t].mode)][tasks[t].fraction_idx] = results[t];
  return curve;
}

// ---------------------------------------------------------------------------
// Averaging over word problems.

EvaluationReport average_reports(
    const std::vector<EvaluationReport>& reports) {
  if (reports.empty()) throw error("no reports to average");
  EvaluationReport avg;
  avg.methods = reports[0].methods;
  avg.reference = reports[0].reference;
  avg.combos.resize(reports[0].combos.size());

  for (size_t ci = 0; ci < avg.combos.size(); ++ci) {
    ComboResult& combo = avg.combos[ci];
    combo.combination = reports[0].combos[ci].combination;
    combo.ok = true;
    combo.per_method.resize(avg.methods.size());
    size_t contributing = 0;
    for (const EvaluationReport& report : reports) {
      const ComboResult& src = report.combos[ci];
      if (!src.ok) continue;
      ++contributing;
      for (size_t j = 0; j < avg.methods.size(); ++j) {
        combo.per_method[j].mean_accuracy += src.per_method[j].mean_accuracy;
        if (src.per_method[j].sd)
          combo.per_method[j].sd = combo.per_method[j].sd.value_or(0.0) +
                                   *src.per_method[j].sd;
      }
    }
    if (contributing == 0) {
      combo.ok = false;
      combo.error = "no word problem produced results";
      continue;
    }
    for (size_t j = 0; j < avg.methods.size(); ++j) {
      combo.per_method[j].mean_accuracy /= double(contributing);
      if (combo.per_method[j].sd)
        combo.per_method[j].sd = *combo.per_method[j].sd / double(contributing);
    }
  }
  return avg;
}

// ---------------------------------------------------------------------------
// Report emission.

namespace {

// A method counts as significantly different from the reference only when
// every applicable test at 95% says so.
bool significant_vs_ref(const MethodComboResult& mr) {
  bool any = false;
  bool all = true;
  if (mr.mcnemar_vs_ref) {
    any = true;
    all = all && mr.mcnemar_vs_ref->significant_95;
  }
  if (mr.ttest_vs_ref) {
    any = true;
    all = all && mr.ttest_vs_ref->significant_95;
  }
  return any && all;
}

std::string accuracy_cell(const MethodComboResult& mr, bool is_reference) {
  std::string cell = pct(mr.mean_accuracy);
  if (mr.sd) cell += "±" + pct(*mr.sd);
  bool has_tests = mr.mcnemar_vs_ref || mr.ttest_vs_ref;
  if (!is_reference && has_tests && !significant_vs_ref(mr)) cell += "*";
  return cell;
}

}  // namespace

std::string accuracy_csv(const EvaluationReport& report) {
  std::string out = "method";
  for (const ComboResult& combo : report.combos)
    out += std::string(",") + combination_name(combo.combination);
  out += '\n';
  for (size_t j = 0; j < report.methods.size(); ++j) {
    out += method_name(report.methods[j]);
    for (const ComboResult& combo : report.combos) {
      out += ',';
      if (!combo.ok)
        out += "ERR";
      else
        out += accuracy_cell(combo.per_method[j],
                             report.methods[j] == report.reference);
    }
    out += '\n';
  }
  return out;
}

std::string significance_csv(const EvaluationReport& report) {
  std::string out =
      "combination,method,reference,mcnemar_b,mcnemar_c,mcnemar_stat,"
      "mcnemar_significant,ttest_t,ttest_significant,significant\n";
  for (const ComboResult& combo : report.combos) {
    if (!combo.ok) continue;
    for (size_t j = 0; j < report.methods.size(); ++j) {
      const MethodComboResult& mr = combo.per_method[j];
      if (!mr.mcnemar_vs_ref && !mr.ttest_vs_ref) continue;
      out += std::string(combination_name(combo.combination)) + ',' +
             method_name(report.methods[j]) + ',' +
             method_name(report.reference) + ',';
      if (mr.mcnemar_vs_ref) {
        out += std::to_string(mr.mcnemar_vs_ref->b) + ',' +
               std::to_string(mr.mcnemar_vs_ref->c) + ',' +
               num(mr.mcnemar_vs_ref->statistic, 4) + ',' +
               (mr.mcnemar_vs_ref->significant_95 ? "yes" : "no") + ',';
      } else {
        out += ",,,,";
      }
      if (mr.ttest_vs_ref) {
        out += num(mr.ttest_vs_ref->t, 4) + ',' +
               (mr.ttest_vs_ref->significant_95 ? std::string("yes")
                                                : std::string("no")) +
               ',';
      } else {
        out += ",,";
      }
      out += significant_vs_ref(mr) ? "yes" : "no";
      out += '\n';
    }
  }
  return out;
}

std::string accuracy_table_text(const EvaluationReport& report) {
  const int name_width = 16;
  const int cell_width = 15;
  std::string out(size_t(name_width), ' ');
  for (const ComboResult& combo : report.combos) {
    std::string name = combination_name(combo.combination);
    out += std::string(size_t(cell_width) - name.size(), ' ') + name;
  }
  out += '\n';
  for (size_t j = 0; j < report.methods.size(); ++j) {
    std::string row = method_display_name(report.methods[j]);
    row.resize(size_t(name_width), ' ');
    for (const ComboResult& combo : report.combos) {
      std::string cell =
          combo.ok ? accuracy_cell(combo.per_method[j],
                                   report.methods[j] == report.reference)
                   : std::string("ERR");
      // "±" is two bytes; pad on display width.
      size_t display = cell.size();
      if (cell.find("±") != std::string::npos) --display;
      row += std::string(size_t(cell_width) - display, ' ') + cell;
    }
    out += row + '\n';
  }
  return out;
}

std::string agreement_csv(const AgreementMatrix& m) {
  std::string out = "method";
  for (const std::string& label : m.labels) out += ',' + label;
  out += '\n';
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (size_t j = 0; j < m.labels.size(); ++j) {
      out += ',';
      if (i != j) out += pct(m.agreement[i][j]);
    }
    out += '\n';
  }
  return out;
}

std::string kappa_csv(const AgreementMatrix& m) {
  std::string out = "method";
  for (const std::string& label : m.labels) out += ',' + label;
  out += '\n';
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (size_t j = 0; j < m.labels.size(); ++j) {
      out += ',';
      if (i != j) out += num(m.kappa[i][j], 4);
    }
    out += '\n';
  }
  return out;
}

std::string agreement_table_text(const AgreementMatrix& m) {
  // Agreement rates above the diagonal, kappa below, as in the paper.
  const int width = 8;
  auto pad = [width](const std::string& s) {
    return std::string(size_t(width) - s.size(), ' ') + s;
  };
  std::string out = pad("");
  for (const std::string& label : m.labels) out += pad(label);
  out += '\n';
  for (size_t i = 0; i < m.labels.size(); ++i) {
    out += pad(m.labels[i]);
    for (size_t j = 0; j < m.labels.size(); ++j) {
      if (i == j)
        out += pad("---");
      else if (i < j)
        out += pad(num(m.agreement[i][j] * 100.0, 1));
      else
        out += pad(num(m.kappa[i][j], 2));
    }
    out += '\n';
  }
  return out;
}

std::string tuning_csv(const TuningCurve& curve) {
  std::string out = "method,baseline";
  auto frac_label = [](double f) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%g", f);
    return std::string(buf);
  };
  for (double f : curve.fractions) out += ",combined_" + frac_label(f);
  for (double f : curve.fractions) out += ",tuning_" + frac_label(f);
  out += '\n';
  for (size_t j = 0; j < curve.methods.size(); ++j) {
    out += method_name(curve.methods[j]);
    out += ',' + pct(curve.baseline[j]);
    for (int mode = 0; mode < 2; ++mode)
      for (size_t fi = 0; fi < curve.fractions.size(); ++fi)
        out += ',' + pct(curve.points[size_t(mode)][fi][j]);
    out += '\n';
  }
  // Reference line: majority sense rate of the fixed target test half.
  out += "target_mfc";
  for (size_t c = 0; c < 1 + 2 * curve.fractions.size(); ++c)
    out += ',' + pct(curve.target_test_mfc);
  out += '\n';
  return out;
}

}  // namespace wsd
