// wsd: command-line front-end for the word-sense-disambiguation suite.
// Subcommands: train, combinations, agreement, tuning, noise, synth.
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "wsd/classifiers.hpp"
#include "wsd/corpus.hpp"
#include "wsd/error.hpp"
#include "wsd/evaluation.hpp"
#include "wsd/features.hpp"
#include "wsd/model_io.hpp"
#include "wsd/noise.hpp"
#include "wsd/parallel.hpp"
#include "wsd/rng.hpp"
#include "wsd/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::vector<std::string> corpus_paths;
  std::string out;
  std::string stopwords_path;
  std::string model_path;
  std::string method = "lb";
  std::vector<std::string> methods;
  std::string reference = "lb";
  std::string preset;
  std::string config_path;
  std::string source_part = "A";
  std::string target_part = "B";
  uint64_t seed = 0;
  int folds = 10;
  int jobs = 1;
  int min_count = 1;
  int words = 1;
  int top_n = 50;
  int top_rules = 50;
  int knn_k = 1;
  int rounds = 200;
  double sample_fraction = 0.1;
  double epsilon = 0.0;  // 0 = default 1/(m*k)
  double alpha = 1.5;
  double beta = 0.5;
  double theta = 1.0;
  int epochs = 3;
  double delta = 0.1;
  double min_weight = 0.0;
  std::vector<double> fractions = {0.1, 0.2, 0.3, 0.4, 0.5};
};

wsd::WordProblem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wsd::error("cannot open corpus file '" + path + "'");
  try {
    return wsd::parse_corpus(in);
  } catch (const wsd::error& e) {
    throw wsd::error(path + ": " + e.what());
  }
}

wsd::Stopwords load_stopwords_opt(const Options& opt) {
  if (opt.stopwords_path.empty()) return wsd::default_stopwords();
  std::ifstream in(opt.stopwords_path, std::ios::binary);
  if (!in)
    throw wsd::error("cannot open stopword file '" + opt.stopwords_path + "'");
  return wsd::load_stopwords(in);
}

wsd::MethodParams method_params(const Options& opt) {
  wsd::MethodParams params;
  params.knn_k = opt.knn_k;
  params.min_count = opt.min_count;
  params.snow.alpha = opt.alpha;
  params.snow.beta = opt.beta;
  params.snow.theta = opt.theta;
  params.snow.epochs = opt.epochs;
  params.dl.delta = opt.delta;
  params.dl.min_weight = opt.min_weight;
  params.lb.rounds = opt.rounds;
  params.lb.sample_fraction = opt.sample_fraction;
  if (opt.epsilon > 0.0) params.lb.epsilon = opt.epsilon;
  return params;
}

wsd::EvalConfig eval_config(const Options& opt) {
  wsd::EvalConfig config;
  config.params = method_params(opt);
  config.stopwords = load_stopwords_opt(opt);
  config.folds = opt.folds;
  config.jobs = opt.jobs;
  auto ref = wsd::method_from_name(opt.reference);
  if (!ref) throw wsd::error("unknown reference method '" + opt.reference + "'");
  config.reference = *ref;
  if (!opt.methods.empty()) {
    config.methods.clear();
    for (const std::string& name : opt.methods) {
      auto m = wsd::method_from_name(name);
      if (!m) throw wsd::error("unknown method '" + name + "'");
      config.methods.push_back(*m);
    }
  }
  return config;
}

json params_json(const Options& opt) {
  json j;
  j["min_count"] = opt.min_count;
  j["knn_k"] = opt.knn_k;
  j["snow"] = {{"alpha", opt.alpha},
               {"beta", opt.beta},
               {"theta", opt.theta},
               {"epochs", opt.epochs}};
  j["dl"] = {{"delta", opt.delta}, {"min_weight", opt.min_weight}};
  j["lb"] = {{"rounds", opt.rounds},
             {"sample_fraction", opt.sample_fraction},
             {"epsilon", opt.epsilon > 0.0 ? json(opt.epsilon)
                                           : json("1/(m*k)")}};
  return j;
}

json synth_config_json(const wsd::SynthConfig& cfg) {
  json j;
  j["lemma"] = cfg.lemma;
  j["pos"] = cfg.pos_class == wsd::PosClass::noun ? "noun" : "verb";
  j["senses"] = cfg.senses;
  j["examples_per_part"] = cfg.examples_per_part;
  j["priors_a"] = cfg.priors_a;
  j["priors_b"] = cfg.priors_b;
  j["words_per_sense"] = cfg.words_per_sense;
  j["vocab_overlap"] = cfg.vocab_overlap;
  j["emission_prob"] = cfg.emission_prob;
  j["noise_vocab"] = cfg.noise_vocab;
  j["sentence_len"] = cfg.sentence_len;
  j["mislabel_rate"] = cfg.mislabel_rate;
  return j;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wsd::error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw wsd::error("failed writing '" + path.string() + "'");
}

// Output directory + manifest bookkeeping. The manifest must not depend
// on --jobs or anything else that cannot change the artifact bytes.
struct OutputDir {
  fs::path dir;
  json manifest;

  explicit OutputDir(const Options& opt, const std::string& command) {
    if (opt.out.empty()) throw wsd::error("--out is required");
    dir = opt.out;
    fs::create_directories(dir);
    manifest["tool"] = "wsd";
    manifest["format"] = 1;
    manifest["command"] = command;
    manifest["seed"] = opt.seed;
    manifest["inputs"] = json::object();
    manifest["config"] = json::object();
    manifest["outputs"] = json::array();
  }

  void emit(const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    manifest["outputs"].push_back(name);
  }

  void finish() {
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  }
};

std::string stem_of(const std::string& path) {
  std::string stem = fs::path(path).stem().string();
  for (char& c : stem)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return stem.empty() ? "corpus" : stem;
}

// ---------------------------------------------------------------------------

int cmd_train(const Options& opt) {
  wsd::WordProblem problem = load_problem(opt.corpus_paths.at(0));
  wsd::Stopwords stopwords = load_stopwords_opt(opt);
  auto method = wsd::method_from_name(opt.method);
  if (!method) throw wsd::error("unknown method '" + opt.method + "'");

  std::vector<std::vector<std::string>> raw;
  raw.reserve(problem.examples.size());
  for (const wsd::Example& ex : problem.examples)
    raw.push_back(wsd::extract_features(ex, stopwords));
  wsd::FeatureIndex index = wsd::build_index(raw, opt.min_count);

  wsd::TrainSet ts;
  ts.n_senses = int(problem.sense_inventory.size());
  ts.n_features = index.size();
  for (size_t i = 0; i < problem.examples.size(); ++i) {
    ts.vectors.push_back(wsd::vectorize(raw[i], index));
    ts.labels.push_back(problem.sense_id(problem.examples[i].sense));
  }

  wsd::Model model =
      wsd::train_model(ts, problem.sense_inventory, index.backward,
                       problem.lemma, *method, method_params(opt), opt.seed);
  if (opt.out.empty()) throw wsd::error("--out is required");
  wsd::save_model(model, opt.out);

  std::cout << "trained " << wsd::method_name(*method) << " on "
            << opt.corpus_paths.at(0) << ": m=" << ts.size()
            << " k=" << ts.n_senses << " features=" << ts.n_features;
  switch (*method) {
    case wsd::Method::lb:
      std::cout << " rounds=" << std::get<wsd::LbModel>(model.impl).rounds.size();
      break;
    case wsd::Method::snow:
      std::cout << " epochs=" << opt.epochs;
      break;
    case wsd::Method::dl:
      std::cout << " rules=" << std::get<wsd::DlModel>(model.impl).rules.size();
      break;
    case wsd::Method::eb:
      std::cout << " k_neighbors=" << opt.knn_k;
      break;
    default: break;
  }
  std::cout << "\n";
  return 0;
}

int cmd_combinations(const Options& opt) {
  wsd::EvalConfig config = eval_config(opt);
  OutputDir out(opt, "combinations");
  out.manifest["inputs"]["corpus"] = opt.corpus_paths;
  out.manifest["inputs"]["stopwords"] =
      opt.stopwords_path.empty() ? "builtin" : opt.stopwords_path;
  out.manifest["config"] = params_json(opt);
  out.manifest["config"]["folds"] = opt.folds;
  out.manifest["config"]["reference"] = opt.reference;
  {
    json names = json::array();
    for (wsd::Method m : config.methods) names.push_back(wsd::method_name(m));
    out.manifest["config"]["methods"] = names;
  }

  std::vector<wsd::EvaluationReport> reports(opt.corpus_paths.size());
  std::vector<wsd::WordProblem> problems(opt.corpus_paths.size());
  for (size_t w = 0; w < opt.corpus_paths.size(); ++w)
    problems[w] = load_problem(opt.corpus_paths[w]);

  // One word at a time; fold-level parallelism lives inside the driver.
  for (size_t w = 0; w < opt.corpus_paths.size(); ++w) {
    reports[w] = wsd::run_combinations(problems[w], config,
                                       wsd::derive_seed(opt.seed, w));
    for (const wsd::ComboResult& combo : reports[w].combos) {
      for (const std::string& warning : combo.warnings)
        std::cerr << "warning: " << opt.corpus_paths[w] << ": " << warning
                  << "\n";
      if (!combo.ok)
        std::cerr << "note: " << opt.corpus_paths[w] << ": "
                  << wsd::combination_name(combo.combination)
                  << " skipped: " << combo.error << "\n";
    }
  }

  if (opt.corpus_paths.size() == 1) {
    out.emit("accuracy.csv", wsd::accuracy_csv(reports[0]));
    out.emit("significance.csv", wsd::significance_csv(reports[0]));
    out.emit("accuracy_table.txt", wsd::accuracy_table_text(reports[0]));
  } else {
    for (size_t w = 0; w < reports.size(); ++w) {
      std::string stem = stem_of(opt.corpus_paths[w]);
      out.emit("accuracy_" + stem + ".csv", wsd::accuracy_csv(reports[w]));
      out.emit("significance_" + stem + ".csv",
               wsd::significance_csv(reports[w]));
    }
    wsd::EvaluationReport averaged = wsd::average_reports(reports);
    out.emit("accuracy_average.csv", wsd::accuracy_csv(averaged));
    out.emit("accuracy_table_average.txt",
             wsd::accuracy_table_text(averaged));
  }
  out.finish();
  return 0;
}

// Pooled A+B-A+B predictions for one problem.
wsd::AgreementMatrix agreement_for_problem(const wsd::WordProblem& problem,
                                           const wsd::EvalConfig& config,
                                           uint64_t seed) {
  wsd::SplitSpec spec;
  spec.combination = wsd::Combination::AB_AB;
  spec.folds = config.folds;
  spec.seed = wsd::derive_seed(seed, 10);  // matches run_combinations
  wsd::SplitResult folds = wsd::split(problem, spec);

  std::vector<wsd::SingleEval> evals(folds.pairs.size());
  wsd::parallel_for(folds.pairs.size(), config.jobs, [&](size_t f) {
    evals[f] = wsd::evaluate_split(folds.pairs[f].train, folds.pairs[f].test,
                                   problem, config, seed);
  });

  std::vector<wsd::PredictionRecord> records;
  for (const wsd::SingleEval& eval : evals)
    records.insert(records.end(), eval.records.begin(), eval.records.end());
  std::sort(records.begin(), records.end(),
            [](const wsd::PredictionRecord& a, const wsd::PredictionRecord& b) {
              return a.example_id < b.example_id;
            });

  std::vector<std::string> names;
  for (wsd::Method m : config.methods) names.push_back(wsd::method_name(m));
  return wsd::agreement_matrix(records, names);
}

int cmd_agreement(const Options& opt) {
  wsd::EvalConfig config = eval_config(opt);
  OutputDir out(opt, "agreement");
  out.manifest["inputs"]["corpus"] = opt.corpus_paths;
  out.manifest["inputs"]["stopwords"] =
      opt.stopwords_path.empty() ? "builtin" : opt.stopwords_path;
  out.manifest["config"] = params_json(opt);
  out.manifest["config"]["folds"] = opt.folds;

  wsd::AgreementMatrix total;
  for (size_t w = 0; w < opt.corpus_paths.size(); ++w) {
    wsd::WordProblem problem = load_problem(opt.corpus_paths[w]);
    wsd::AgreementMatrix m =
        agreement_for_problem(problem, config, wsd::derive_seed(opt.seed, w));
    if (w == 0) {
      total = m;
    } else {
      for (size_t i = 0; i < m.labels.size(); ++i)
        for (size_t j = 0; j < m.labels.size(); ++j) {
          total.agreement[i][j] += m.agreement[i][j];
          total.kappa[i][j] += m.kappa[i][j];
        }
    }
  }
  const double n = double(opt.corpus_paths.size());
  for (size_t i = 0; i < total.labels.size(); ++i)
    for (size_t j = 0; j < total.labels.size(); ++j) {
      total.agreement[i][j] /= n;
      total.kappa[i][j] /= n;
    }

  out.emit("agreement.csv", wsd::agreement_csv(total));
  out.emit("kappa.csv", wsd::kappa_csv(total));
  out.emit("agreement_table.txt", wsd::agreement_table_text(total));
  out.finish();
  return 0;
}

int cmd_tuning(const Options& opt) {
  wsd::EvalConfig config = eval_config(opt);
  auto parse_part = [](const std::string& p) {
    if (p == "A") return wsd::Part::A;
    if (p == "B") return wsd::Part::B;
    throw wsd::error("part must be A or B, got '" + p + "'");
  };
  wsd::Part source = parse_part(opt.source_part);
  wsd::Part target = parse_part(opt.target_part);
  if (source == target) throw wsd::error("source and target parts must differ");

  OutputDir out(opt, "tuning");
  out.manifest["inputs"]["corpus"] = opt.corpus_paths;
  out.manifest["inputs"]["stopwords"] =
      opt.stopwords_path.empty() ? "builtin" : opt.stopwords_path;
  out.manifest["config"] = params_json(opt);
  out.manifest["config"]["source_part"] = opt.source_part;
  out.manifest["config"]["target_part"] = opt.target_part;
  out.manifest["config"]["fractions"] = opt.fractions;

  std::vector<wsd::TuningCurve> curves;
  for (size_t w = 0; w < opt.corpus_paths.size(); ++w) {
    wsd::WordProblem problem = load_problem(opt.corpus_paths[w]);
    curves.push_back(wsd::tuning_curve(problem, source, target, opt.fractions,
                                       config, wsd::derive_seed(opt.seed, w)));
    if (opt.corpus_paths.size() > 1)
      out.emit("tuning_" + stem_of(opt.corpus_paths[w]) + ".csv",
               wsd::tuning_csv(curves.back()));
  }

  wsd::TuningCurve averaged = curves[0];
  for (size_t w = 1; w < curves.size(); ++w) {
    for (size_t j = 0; j < averaged.baseline.size(); ++j)
      averaged.baseline[j] += curves[w].baseline[j];
    for (size_t mode = 0; mode < averaged.points.size(); ++mode)
      for (size_t fi = 0; fi < averaged.points[mode].size(); ++fi)
        for (size_t j = 0; j < averaged.points[mode][fi].size(); ++j)
          averaged.points[mode][fi][j] += curves[w].points[mode][fi][j];
    averaged.target_test_mfc += curves[w].target_test_mfc;
  }
  const double n = double(curves.size());
  for (double& x : averaged.baseline) x /= n;
  for (auto& mode : averaged.points)
    for (auto& point : mode)
      for (double& x : point) x /= n;
  averaged.target_test_mfc /= n;

  out.emit("tuning.csv", wsd::tuning_csv(averaged));
  out.finish();
  return 0;
}

int cmd_noise(const Options& opt) {
  wsd::Model model = wsd::load_model(opt.model_path);
  if (model.method != wsd::Method::lb) {
    // Usage error by contract: the suspicion ranking is defined on the
    // boosting distribution only.
    std::cerr << "noise requires a LazyBoosting model; '" << opt.model_path
              << "' holds algorithm '" << wsd::method_name(model.method)
              << "'\n";
    return 2;
  }
  const wsd::LbModel& lb = std::get<wsd::LbModel>(model.impl);

  wsd::WordProblem problem = load_problem(opt.corpus_paths.at(0));
  wsd::Stopwords stopwords = load_stopwords_opt(opt);

  // Rebuild the training matrix against the model's own feature table.
  wsd::FeatureIndex index;
  index.backward = model.features;
  for (size_t f = 0; f < model.features.size(); ++f)
    index.forward.emplace(model.features[f], int(f));

  wsd::TrainSet ts;
  ts.n_senses = model.n_senses;
  ts.n_features = int(model.features.size());
  std::vector<int> ids;
  for (const wsd::Example& ex : problem.examples) {
    ts.vectors.push_back(
        wsd::vectorize(wsd::extract_features(ex, stopwords), index));
    int sense = -1;
    for (size_t s = 0; s < model.senses.size(); ++s)
      if (model.senses[s] == ex.sense) sense = int(s);
    if (sense < 0)
      throw wsd::error("corpus sense '" + ex.sense +
                       "' unknown to the model; was the model trained on "
                       "this corpus?");
    ts.labels.push_back(sense);
    ids.push_back(ex.id);
  }

  wsd::SuspicionReport report = wsd::rank_suspicious(
      lb, ts, ids, model.features, opt.top_n, opt.top_rules);

  OutputDir out(opt, "noise");
  out.manifest["inputs"]["corpus"] = opt.corpus_paths;
  out.manifest["inputs"]["model"] = opt.model_path;
  out.manifest["inputs"]["stopwords"] =
      opt.stopwords_path.empty() ? "builtin" : opt.stopwords_path;
  out.manifest["config"]["top_n"] = opt.top_n;
  out.manifest["config"]["top_rules"] = opt.top_rules;
  out.emit("noise.csv", wsd::suspicion_csv(report, model.senses));
  out.emit("rules.txt", wsd::rules_text(report, model.senses));
  out.finish();
  return 0;
}

int cmd_synth(const Options& opt) {
  wsd::SynthConfig config;
  if (!opt.preset.empty() && !opt.config_path.empty())
    throw wsd::error("give either --preset or --config, not both");
  if (!opt.preset.empty()) {
    config = wsd::synth_preset(opt.preset);
  } else if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path, std::ios::binary);
    if (!in)
      throw wsd::error("cannot open config file '" + opt.config_path + "'");
    config = wsd::parse_synth_config(in);
  } else {
    throw wsd::error("synth needs --preset or --config");
  }

  OutputDir out(opt, "synth");
  out.manifest["inputs"]["preset"] =
      opt.preset.empty() ? json(nullptr) : json(opt.preset);
  out.manifest["inputs"]["config_file"] =
      opt.config_path.empty() ? json(nullptr) : json(opt.config_path);
  out.manifest["config"] = synth_config_json(config);
  out.manifest["config"]["words"] = opt.words;

  json flips = json::array();
  for (int w = 0; w < opt.words; ++w) {
    wsd::SynthConfig word_config = config;
    std::string name = "corpus.wsd";
    if (opt.words > 1) {
      char suffix[8];
      std::snprintf(suffix, sizeof(suffix), "%02d", w);
      word_config.lemma = config.lemma + suffix;
      name = "word_" + std::string(suffix) + ".wsd";
    }
    wsd::SyntheticCorpus corpus =
        wsd::generate_synthetic(word_config, wsd::derive_seed(opt.seed, uint64_t(w)));
    out.emit(name, wsd::serialize_corpus(corpus.problem));
    json word_flips = json::array();
    for (const wsd::MislabeledExample& flip : corpus.mislabeled)
      word_flips.push_back({{"id", flip.id}, {"true_sense", flip.true_sense}});
    flips.push_back({{"file", name}, {"mislabeled", word_flips}});
  }
  out.manifest["mislabeled"] = flips;
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Supervised word-sense disambiguation experiment suite"};
  app.require_subcommand(1);

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "PRNG seed (required; no wall-clock default)")
        ->required();
  };
  auto add_corpus = [&](CLI::App* cmd, bool multiple) {
    auto* o = cmd->add_option("--corpus", opt.corpus_paths, "corpus file(s)")
                  ->required()
                  ->check(CLI::ExistingFile);
    if (!multiple) o->expected(1);
  };
  auto add_common_params = [&](CLI::App* cmd) {
    cmd->add_option("--stopwords", opt.stopwords_path, "stopword file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--min-count", opt.min_count,
                    "feature index pruning threshold");
    cmd->add_option("--k", opt.knn_k, "exemplar neighbours");
    cmd->add_option("--rounds", opt.rounds, "boosting rounds");
    cmd->add_option("--sample-fraction", opt.sample_fraction,
                    "feature fraction examined per boosting round");
    cmd->add_option("--epsilon", opt.epsilon,
                    "boosting smoothing (default 1/(m*k))");
    cmd->add_option("--alpha", opt.alpha, "winnow promotion factor");
    cmd->add_option("--beta", opt.beta, "winnow demotion factor");
    cmd->add_option("--theta", opt.theta, "winnow threshold");
    cmd->add_option("--epochs", opt.epochs, "winnow epochs");
    cmd->add_option("--delta", opt.delta, "decision-list smoothing");
    cmd->add_option("--min-weight", opt.min_weight,
                    "decision-list pruning threshold");
  };
  auto add_eval_params = [&](CLI::App* cmd) {
    add_common_params(cmd);
    cmd->add_option("--folds", opt.folds, "cross-validation folds");
    cmd->add_option("--jobs", opt.jobs, "parallel tasks");
    cmd->add_option("--methods", opt.methods,
                    "methods to run (default: all six)")
        ->delimiter(',');
    cmd->add_option("--reference", opt.reference,
                    "significance reference method");
  };

  CLI::App* train = app.add_subcommand("train", "train one model");
  add_corpus(train, false);
  add_seed(train);
  add_common_params(train);
  train->add_option("--method", opt.method, "mfc|nb|eb|snow|dl|lb")
      ->required()
      ->check(CLI::IsMember({"mfc", "nb", "eb", "snow", "dl", "lb"}));
  train->add_option("--out", opt.out, "model file to write")->required();

  CLI::App* combinations = app.add_subcommand(
      "combinations", "run the seven train/test combinations");
  add_corpus(combinations, true);
  add_seed(combinations);
  add_eval_params(combinations);
  combinations->add_option("--out", opt.out, "output directory")->required();

  CLI::App* agreement = app.add_subcommand(
      "agreement", "pairwise agreement and kappa on pooled predictions");
  add_corpus(agreement, true);
  add_seed(agreement);
  add_eval_params(agreement);
  agreement->add_option("--out", opt.out, "output directory")->required();

  CLI::App* tuning =
      app.add_subcommand("tuning", "domain-tuning curves");
  add_corpus(tuning, true);
  add_seed(tuning);
  add_eval_params(tuning);
  tuning->add_option("--out", opt.out, "output directory")->required();
  tuning->add_option("--source-part", opt.source_part, "training domain part");
  tuning->add_option("--target-part", opt.target_part, "tuning/test part");
  tuning->add_option("--fractions", opt.fractions, "tuning fractions")
      ->delimiter(',');

  CLI::App* noise = app.add_subcommand(
      "noise", "rank suspicious training examples from a model");
  add_corpus(noise, false);
  add_seed(noise);
  noise->add_option("--model", opt.model_path, "LazyBoosting model file")
      ->required()
      ->check(CLI::ExistingFile);
  noise->add_option("--out", opt.out, "output directory")->required();
  noise->add_option("--stopwords", opt.stopwords_path, "stopword file")
      ->check(CLI::ExistingFile);
  noise->add_option("--top-n", opt.top_n, "suspects to report");
  noise->add_option("--top-rules", opt.top_rules, "weak rules to dump");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_seed(synth);
  synth->add_option("--out", opt.out, "output directory")->required();
  synth->add_option("--preset", opt.preset,
                    "iid-domains or shifted-domains");
  synth->add_option("--config", opt.config_path, "flat key=value config file")
      ->check(CLI::ExistingFile);
  synth->add_option("--words", opt.words, "number of word problems")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(train)) return cmd_train(opt);
    if (app.got_subcommand(combinations)) return cmd_combinations(opt);
    if (app.got_subcommand(agreement)) return cmd_agreement(opt);
    if (app.got_subcommand(tuning)) return cmd_tuning(opt);
    if (app.got_subcommand(noise)) return cmd_noise(opt);
    if (app.got_subcommand(synth)) return cmd_synth(opt);
  } catch (const wsd::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
