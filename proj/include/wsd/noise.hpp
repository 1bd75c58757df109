#pragma once

#include <string>
#include <vector>

#include "wsd/classifiers.hpp"

namespace wsd {

// Annotation-noise screening: examples that end up with large weight in
// the final boosting distribution are flagged for human review, together
// with the highest-scored weak rules.

struct SuspiciousExample {
  int example_id = 0;
  double weight = 0.0;  // sum of D_{T+1}(i, l) over labels
  int gold = 0;
  int predicted = 0;  // ensemble prediction on the training vector
};

struct RankedRule {
  int rank = 0;
  std::string feature;  // canonical feature string
  double score = 0.0;   // max per-sense |c| over present/absent outputs
  WeakRule rule;
};

struct SuspicionReport {
  std::vector<SuspiciousExample> ranked;  // weight desc, ties by lowest id
  std::vector<RankedRule> rules;
};

// `example_ids[i]` maps row i of the training set to its corpus example id
// (pass the identity when training order is file order); `feature_names`
// is the canonical-string table of the training index. Throws when the
// model carries no retained distribution or it does not match ts.
SuspicionReport rank_suspicious(const LbModel& model, const TrainSet& ts,
                                const std::vector<int>& example_ids,
                                const std::vector<std::string>& feature_names,
                                int top_n, int top_rules = 50);

std::string suspicion_csv(const SuspicionReport& report,
                          const std::vector<std::string>& senses);
std::string rules_text(const SuspicionReport& report,
                       const std::vector<std::string>& senses);

}  // namespace wsd
