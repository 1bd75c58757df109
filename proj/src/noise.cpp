#include "wsd/noise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wsd/error.hpp"

namespace wsd {

namespace {

std::string fmt(double value, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

double rule_score(const WeakRule& rule) {
  double best = 0.0;
  for (double c : rule.c_present) best = std::max(best, std::abs(c));
  for (double c : rule.c_absent) best = std::max(best, std::abs(c));
  return best;
}

}  // namespace

SuspicionReport rank_suspicious(const LbModel& model, const TrainSet& ts,
                                const std::vector<int>& example_ids,
                                const std::vector<std::string>& feature_names,
                                int top_n, int top_rules) {
  if (top_n < 1) throw error("top_n must be >= 1");
  if (model.final_distribution.empty())
    throw error("model carries no retained boosting distribution");
  if (model.trained_examples() != ts.size() || model.n_senses != ts.n_senses)
    throw error("boosting distribution does not match the training set");
  if (int(example_ids.size()) != ts.size())
    throw error("example id mapping does not match the training set");

  SuspicionReport report;
  report.ranked.reserve(size_t(ts.size()));
  for (int i = 0; i < ts.size(); ++i) {
    SuspiciousExample entry;
    entry.example_id = example_ids[size_t(i)];
    double weight = 0.0;
    for (int l = 0; l < ts.n_senses; ++l)
      weight +=
          model.final_distribution[size_t(i) * size_t(ts.n_senses) + size_t(l)];
    entry.weight = weight;
    entry.gold = ts.labels[size_t(i)];
    entry.predicted = classify_lb(model, ts.vectors[size_t(i)]);
    report.ranked.push_back(entry);
  }
  std::sort(report.ranked.begin(), report.ranked.end(),
            [](const SuspiciousExample& a, const SuspiciousExample& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.example_id < b.example_id;
            });
  if (int(report.ranked.size()) > top_n)
    report.ranked.resize(size_t(top_n));

  // Highest-scored weak rules by max per-sense |c|; ties keep round order.
  std::vector<size_t> order(model.rounds.size());
  for (size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return rule_score(model.rounds[a]) > rule_score(model.rounds[b]);
  });
  size_t keep = std::min(size_t(top_rules), order.size());
  for (size_t r = 0; r < keep; ++r) {
    const WeakRule& rule = model.rounds[order[r]];
    if (rule.feature < 0 || rule.feature >= int(feature_names.size()))
      throw error("rule feature id outside the feature table");
    RankedRule ranked;
    ranked.rank = int(r) + 1;
    ranked.feature = feature_names[size_t(rule.feature)];
    ranked.score = rule_score(rule);
    ranked.rule = rule;
    report.rules.push_back(std::move(ranked));
  }
  return report;
}

std::string suspicion_csv(const SuspicionReport& report,
                          const std::vector<std::string>& senses) {
  std::string out = "rank,example_id,weight,gold,predicted\n";
  for (size_t r = 0; r < report.ranked.size(); ++r) {
    const SuspiciousExample& e = report.ranked[r];
    out += std::to_string(r + 1) + ',' + std::to_string(e.example_id) + ',';
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", e.weight);
    out += buf;
    out += ',' + senses[size_t(e.gold)] + ',' + senses[size_t(e.predicted)] +
           '\n';
  }
  return out;
}

std::string rules_text(const SuspicionReport& report,
                       const std::vector<std::string>& senses) {
  std::string out;
  for (const RankedRule& r : report.rules) {
    out += "#" + std::to_string(r.rank) + " " + r.feature +
           " score=" + fmt(r.score, 4) + "\n";
    for (size_t l = 0; l < senses.size(); ++l)
      out += "    " + senses[l] + ": present " +
             fmt(r.rule.c_present[l], 4) + ", absent " +
             fmt(r.rule.c_absent[l], 4) + "\n";
  }
  return out;
}

}  // namespace wsd
