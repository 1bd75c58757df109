// End-to-end checks of the wsd binary (path passed as argv[1]): exit
// codes, artifact shapes, and byte-level reproducibility.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wsd/corpus.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_root;

int run(const std::string& args) {
  std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status >= 0);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = g_root / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// A small corpus all tests can share.
fs::path shared_corpus() {
  static fs::path path = [] {
    fs::path dir = fresh_dir("synth_shared");
    REQUIRE(run("synth --preset iid-domains --seed 11 --out " +
                dir.string()) == 0);
    return dir / "corpus.wsd";
  }();
  return path;
}

size_t count_lines(const std::string& text) {
  return size_t(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("synth emits a parseable corpus, reproducible by seed") {
  fs::path dir1 = fresh_dir("synth1");
  fs::path dir2 = fresh_dir("synth2");
  CHECK(run("synth --preset shifted-domains --seed 3 --out " + dir1.string()) ==
        0);
  CHECK(run("synth --preset shifted-domains --seed 3 --out " + dir2.string()) ==
        0);

  std::string corpus1 = slurp(dir1 / "corpus.wsd");
  CHECK(corpus1 == slurp(dir2 / "corpus.wsd"));
  CHECK(slurp(dir1 / "manifest.json") == slurp(dir2 / "manifest.json"));

  std::istringstream in(corpus1);
  wsd::WordProblem problem = wsd::parse_corpus(in);
  CHECK(problem.examples.size() == 1000);
  CHECK(problem.sense_inventory.size() == 5);

  fs::path dir3 = fresh_dir("synth3");
  CHECK(run("synth --preset shifted-domains --seed 4 --out " + dir3.string()) ==
        0);
  CHECK(corpus1 != slurp(dir3 / "corpus.wsd"));
}

TEST_CASE("synth accepts a config file and emits multiple words") {
  fs::path dir = fresh_dir("synth_cfg");
  fs::path cfg = dir / "synth.cfg";
  {
    std::ofstream out(cfg);
    out << "lemma = fall\npos = verb\nsenses = 3\nexamples_per_part = 30\n"
        << "priors_a = 0.6,0.3,0.1\npriors_b = 0.1,0.3,0.6\n";
  }
  CHECK(run("synth --config " + cfg.string() + " --words 3 --seed 8 --out " +
            dir.string()) == 0);
  for (const char* name : {"word_00.wsd", "word_01.wsd", "word_02.wsd"}) {
    std::istringstream in(slurp(dir / name));
    wsd::WordProblem problem = wsd::parse_corpus(in);
    CHECK(problem.examples.size() == 60);
    CHECK(problem.pos_class == wsd::PosClass::verb);
  }
  CHECK(run("synth --seed 8 --out " + dir.string()) == 1);  // no preset/config
  CHECK(run("synth --preset bogus --seed 8 --out " + dir.string()) == 1);
}

TEST_CASE("train writes deterministic model files with the right header") {
  fs::path dir = fresh_dir("train");
  fs::path corpus = shared_corpus();
  fs::path model1 = dir / "m1.model";
  fs::path model2 = dir / "m2.model";

  std::string base = "train --corpus " + corpus.string() + " --seed 2 ";
  CHECK(run(base + "--method mfc --out " + model1.string()) == 0);
  std::string text = slurp(model1);
  CHECK(text.rfind("WSDMODEL 1 mfc line ", 0) == 0);

  CHECK(run(base + "--method mfc --out " + model2.string()) == 0);
  CHECK(text == slurp(model2));  // same command, same bytes

  CHECK(run(base + "--method lb --rounds 25 --out " + model1.string()) == 0);
  CHECK(slurp(model1).rfind("WSDMODEL 1 lb line ", 0) == 0);
  CHECK(run(base + "--method lb --rounds 25 --out " + model2.string()) == 0);
  CHECK(slurp(model1) == slurp(model2));
}

TEST_CASE("usage errors exit 2, data errors exit 1") {
  fs::path dir = fresh_dir("errors");
  fs::path corpus = shared_corpus();

  // Unknown method name.
  CHECK(run("train --corpus " + corpus.string() +
            " --seed 1 --method svm --out " + (dir / "x.model").string()) ==
        2);
  // Missing required seed.
  CHECK(run("train --corpus " + corpus.string() + " --method mfc --out " +
            (dir / "x.model").string()) == 2);
  // Nonexistent corpus.
  CHECK(run("train --corpus /no/such/file.wsd --seed 1 --method mfc --out " +
            (dir / "x.model").string()) == 2);
  // Unknown subcommand.
  CHECK(run("frobnicate") == 2);

  // Malformed corpus content: a data error.
  fs::path bad = dir / "bad.wsd";
  {
    std::ofstream out(bad);
    out << "#WSD bank noun\nA\ts1\t9\tonly/RB one/CD token/NN\n";
  }
  CHECK(run("train --corpus " + bad.string() + " --seed 1 --method mfc --out " +
            (dir / "x.model").string()) == 1);
}

TEST_CASE("combinations emits the documented tables and a manifest") {
  fs::path dir = fresh_dir("combi");
  fs::path corpus = shared_corpus();
  CHECK(run("combinations --corpus " + corpus.string() +
            " --seed 4 --folds 5 --rounds 25 --jobs 2 --out " + dir.string()) ==
        0);

  std::string acc = slurp(dir / "accuracy.csv");
  CHECK(acc.rfind("method,A+B-A+B,A+B-A,A+B-B,A-A,B-B,A-B,B-A\n", 0) == 0);
  CHECK(count_lines(acc) == 7);
  CHECK(slurp(dir / "significance.csv").rfind("combination,method,", 0) == 0);
  CHECK(!slurp(dir / "accuracy_table.txt").empty());

  std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("\"command\": \"combinations\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 4") != std::string::npos);
  CHECK(manifest.find("--jobs") == std::string::npos);
}

TEST_CASE("combinations over several corpora adds an averaged table") {
  fs::path synth_dir = fresh_dir("multi_synth");
  CHECK(run("synth --preset iid-domains --words 2 --seed 6 --out " +
            synth_dir.string()) == 0);
  fs::path dir = fresh_dir("multi");
  CHECK(run("combinations --corpus " + (synth_dir / "word_00.wsd").string() +
            " --corpus " + (synth_dir / "word_01.wsd").string() +
            " --seed 4 --folds 3 --rounds 15 --jobs 2 --out " + dir.string()) ==
        0);
  CHECK(fs::exists(dir / "accuracy_word_00.csv"));
  CHECK(fs::exists(dir / "accuracy_word_01.csv"));
  CHECK(count_lines(slurp(dir / "accuracy_average.csv")) == 7);
}

TEST_CASE("agreement emits matrices over the pooled predictions") {
  fs::path dir = fresh_dir("agree");
  CHECK(run("agreement --corpus " + shared_corpus().string() +
            " --seed 4 --folds 5 --rounds 25 --jobs 2 --out " + dir.string()) ==
        0);
  std::string agree = slurp(dir / "agreement.csv");
  CHECK(agree.rfind("method,gold,mfc,nb,eb,snow,dl,lb\n", 0) == 0);
  CHECK(count_lines(agree) == 8);
  CHECK(count_lines(slurp(dir / "kappa.csv")) == 8);
  CHECK(!slurp(dir / "agreement_table.txt").empty());
}

TEST_CASE("tuning emits the curve table") {
  fs::path dir = fresh_dir("tune");
  CHECK(run("tuning --corpus " + shared_corpus().string() +
            " --seed 4 --rounds 25 --jobs 2 --out " + dir.string()) == 0);
  std::string csv = slurp(dir / "tuning.csv");
  CHECK(csv.rfind("method,baseline,combined_0.1,", 0) == 0);
  CHECK(count_lines(csv) == 8);  // header + 6 methods + target_mfc
  CHECK(csv.find("target_mfc") != std::string::npos);
}

TEST_CASE("noise requires a lazyboosting model and ranks suspects") {
  fs::path dir = fresh_dir("noise");
  fs::path corpus = shared_corpus();

  fs::path mfc_model = dir / "baseline.model";
  CHECK(run("train --corpus " + corpus.string() +
            " --seed 2 --method mfc --out " + mfc_model.string()) == 0);
  CHECK(run("noise --corpus " + corpus.string() + " --model " +
            mfc_model.string() + " --seed 2 --out " + dir.string()) == 2);

  fs::path lb_model = dir / "boost.model";
  CHECK(run("train --corpus " + corpus.string() +
            " --seed 2 --method lb --rounds 30 --out " + lb_model.string()) ==
        0);
  CHECK(run("noise --corpus " + corpus.string() + " --model " +
            lb_model.string() + " --seed 2 --top-n 20 --out " + dir.string()) ==
        0);
  std::string csv = slurp(dir / "noise.csv");
  CHECK(csv.rfind("rank,example_id,weight,gold,predicted\n", 0) == 0);
  CHECK(count_lines(csv) == 21);
  CHECK(!slurp(dir / "rules.txt").empty());
}

int main(int argc, char** argv) {
  doctest::Context context;
  // The harness passes the binary path after the doctest arguments.
  for (int i = 1; i < argc; ++i)
    if (argv[i][0] != '-') g_cli = argv[i];
  context.applyCommandLine(argc, argv);
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: wsd_cli_tests <path-to-wsd-binary>\n");
    return 1;
  }
  g_root = fs::temp_directory_path() /
           ("wsd_cli_tests_" + std::to_string(::getpid()));
  fs::create_directories(g_root);
  int rc = context.run();
  fs::remove_all(g_root);
  return rc;
}
