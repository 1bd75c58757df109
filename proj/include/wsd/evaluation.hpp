#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsd/classifiers.hpp"
#include "wsd/corpus.hpp"

namespace wsd {

// ---------------------------------------------------------------------------
// Statistics.

// Fraction of exact matches; throws on empty or mismatched lengths.
double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& gold);

// Cohen's kappa over the union label set. Degenerate conventions: both
// sides constant and equal -> 1; both constant but different -> 0 (falls
// out of the formula).
double kappa(const std::vector<int>& a, const std::vector<int>& b);

struct McNemarResult {
  double statistic = 0.0;
  bool significant_95 = false;
  int64_t b = 0;  // a correct, b wrong
  int64_t c = 0;  // a wrong, b correct
};

// Continuity-corrected McNemar test; significant above the chi-square
// 95% critical value for 1 df.
McNemarResult mcnemar(const std::vector<int>& pred_a,
                      const std::vector<int>& pred_b,
                      const std::vector<int>& gold);

struct TTestResult {
  double t = 0.0;  // +/-inf sentinel when sd == 0 and mean != 0
  bool significant_95 = false;
};

// Two-tailed paired Student's t-test on fold accuracies (sample sd).
TTestResult paired_ttest(const std::vector<double>& acc_a,
                         const std::vector<double>& acc_b);

// Two-tailed 95% critical value of Student's t for the given degrees of
// freedom (df >= 1; the normal value 1.959964 is used past the table).
double t_critical_95(int df);

// ---------------------------------------------------------------------------
// Prediction bookkeeping.

struct PredictionRecord {
  int example_id = 0;
  int gold = 0;
  std::vector<int> predicted;  // aligned with the method list
};

struct AgreementMatrix {
  std::vector<std::string> labels;  // "gold" first, then method names
  // Full symmetric matrices; diagonal entries are 1 by definition and
  // omitted from rendered tables.
  std::vector<std::vector<double>> agreement;
  std::vector<std::vector<double>> kappa;
};

AgreementMatrix agreement_matrix(const std::vector<PredictionRecord>& records,
                                 const std::vector<std::string>& method_names);

// ---------------------------------------------------------------------------
// Experiment drivers.

struct EvalConfig {
  std::vector<Method> methods{Method::mfc, Method::nb,   Method::eb,
                              Method::snow, Method::dl, Method::lb};
  Method reference = Method::lb;  // significance comparisons target
  MethodParams params;
  Stopwords stopwords = default_stopwords();
  int folds = 10;
  int jobs = 1;
};

struct MethodComboResult {
  double mean_accuracy = 0.0;
  std::optional<double> sd;  // present iff the combination cross-validates
  std::vector<double> fold_accuracies;
  std::optional<McNemarResult> mcnemar_vs_ref;
  std::optional<TTestResult> ttest_vs_ref;
};

struct ComboResult {
  Combination combination = Combination::AB_AB;
  bool ok = false;
  std::string error;  // set when the combination is untrainable
  std::vector<std::string> warnings;
  std::vector<MethodComboResult> per_method;  // aligned with config methods
  std::vector<PredictionRecord> records;      // pooled across folds
};

struct EvaluationReport {
  std::vector<Method> methods;
  Method reference = Method::lb;
  std::vector<ComboResult> combos;  // kAllCombinations order
};

// Runs all seven train/test combinations for one word problem. Pure
// function of (problem, config, seed); untrainable combinations become
// error entries and the run continues.
EvaluationReport run_combinations(const WordProblem& problem,
                                  const EvalConfig& config, uint64_t seed);

enum class TuningMode { combined, tuning_only };

struct TuningCurve {
  std::vector<Method> methods;
  std::vector<double> fractions;
  std::vector<double> baseline;  // per method: source-only training
  // points[mode][fraction][method]
  std::vector<std::vector<std::vector<double>>> points;
  double target_test_mfc = 0.0;  // majority-sense rate of the test half
};

// Domain-tuning experiment: trains on the source part plus growing slices
// of the target part (combined) or on the slices alone (tuning_only), and
// evaluates on the fixed held-out half of the target part.
TuningCurve tuning_curve(const WordProblem& problem, Part source_part,
                         Part target_part,
                         const std::vector<double>& fractions,
                         const EvalConfig& config, uint64_t seed);

// ---------------------------------------------------------------------------
// Shared single-split evaluation; run_combinations and tuning_curve both
// build on this (train on `train`, predict `test`).

struct SingleEval {
  std::vector<double> accuracies;             // per method
  std::vector<PredictionRecord> records;      // per test example
};

SingleEval evaluate_split(const std::vector<Example>& train,
                          const std::vector<Example>& test,
                          const WordProblem& problem, const EvalConfig& config,
                          uint64_t seed);

// ---------------------------------------------------------------------------
// Report emission. Column orders are fixed; percentages carry 2 decimals.

std::string accuracy_csv(const EvaluationReport& report);
std::string significance_csv(const EvaluationReport& report);
std::string accuracy_table_text(const EvaluationReport& report);

// Element-wise average of per-word reports (same methods/config).
EvaluationReport average_reports(const std::vector<EvaluationReport>& reports);

std::string agreement_csv(const AgreementMatrix& m);
std::string kappa_csv(const AgreementMatrix& m);
std::string agreement_table_text(const AgreementMatrix& m);

std::string tuning_csv(const TuningCurve& curve);

}  // namespace wsd
