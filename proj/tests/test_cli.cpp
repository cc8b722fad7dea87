#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <Eigen/Core>

#include "tkm/csv_io.hpp"
#include "tkm/model_io.hpp"

using namespace tkm;
namespace fs = std::filesystem;

namespace {

// The driver binary under test, injected by CTest.
const std::string& cli_binary() {
  static const std::string path = [] {
    const char* env = std::getenv("TKM_CLI");
    return env ? std::string(env) : std::string();
  }();
  return path;
}

struct Workspace {
  fs::path root;
  std::string out_log;
  int log_counter = 0;
  bool data_ready = false;
  bool model_ready = false;

  Workspace() {
    root = fs::temp_directory_path() / ("tkm_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(root);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  std::string file(const std::string& name) const { return (root / name).string(); }
};

Workspace& ws() {
  static Workspace instance;
  return instance;
}

std::string quoted(const std::string& path) { return "\"" + path + "\""; }

// Runs the CLI with the given argument string; captures stdout+stderr.
int run_cli(const std::string& args, std::string* output = nullptr) {
  Workspace& w = ws();
  const std::string log = w.file("log_" + std::to_string(w.log_counter++) + ".txt");
  const std::string command = quoted(cli_binary()) + " " + args + " > " + quoted(log) + " 2>&1";
  const int status = std::system(command.c_str());
  if (output) {
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    *output = buffer.str();
  }
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

long line_count(const std::string& path) {
  const std::string text = slurp(path);
  long lines = 0;
  for (const char c : text)
    if (c == '\n') ++lines;
  return lines;
}

std::map<std::string, std::string> parse_report(const std::string& path) {
  std::map<std::string, std::string> values;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto space = line.find(' ');
    if (space != std::string::npos) values[line.substr(0, space)] = line.substr(space + 1);
  }
  return values;
}

// Two patients, two seizures each: 70 windows per patient at the default
// 2 s / 50 % seizure-overlap extraction settings.
void ensure_feature_workspace() {
  Workspace& w = ws();
  if (w.data_ready) return;
  REQUIRE(run_cli("synth --patients 2 --seizures-per 2 --duration 120 --seizure-duration 12"
                  " --seed 5 --out " +
                  quoted(w.file("data"))) == 0);
  REQUIRE(run_cli("extract --in " + quoted(w.file("data")) + " --out " +
                  quoted(w.file("features.csv"))) == 0);
  w.data_ready = true;
}

void ensure_trained_model() {
  Workspace& w = ws();
  ensure_feature_workspace();
  if (w.model_ready) return;
  std::string out;
  REQUIRE(run_cli("train --features " + quoted(w.file("features.csv")) +
                  " --leave-out-patient p1 --rank 6 --basis 8 --sweeps 2 --seed 3 --out " +
                  quoted(w.file("pi.model")), &out) == 0);
  REQUIRE(out.find("parameters 1536") != std::string::npos);
  REQUIRE(out.find("left out p1") != std::string::npos);
  w.model_ready = true;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help succeeds and malformed invocations fail with the parse code") {
  REQUIRE_FALSE(cli_binary().empty());
  std::string out;
  CHECK(run_cli("--help", &out) == 0);
  CHECK(out.find("synth") != std::string::npos);
  CHECK(run_cli("definitely-not-a-command", &out) == 1);
  CHECK(run_cli("synth", &out) == 1);  // --out is required
  CHECK(run_cli("train --features x.csv --rank 0 --out y", &out) == 1);
}

TEST_CASE("synth is reproducible per seed and varies across seeds") {
  Workspace& w = ws();
  for (const char* dir : {"syn_a", "syn_b"})
    REQUIRE(run_cli("synth --patients 1 --seizures-per 1 --duration 60 --seizure-duration 12"
                    " --seed 11 --out " +
                    quoted(w.file(dir))) == 0);
  REQUIRE(run_cli("synth --patients 1 --seizures-per 1 --duration 60 --seizure-duration 12"
                  " --seed 12 --out " +
                  quoted(w.file("syn_c"))) == 0);
  CHECK(slurp(w.file("syn_a/p0_recording.csv")) == slurp(w.file("syn_b/p0_recording.csv")));
  CHECK(slurp(w.file("syn_a/p0_annotations.csv")) == slurp(w.file("syn_b/p0_annotations.csv")));
  CHECK(slurp(w.file("syn_a/p0_recording.csv")) != slurp(w.file("syn_c/p0_recording.csv")));
}

TEST_CASE("extract emits the documented window table") {
  ensure_feature_workspace();
  const LabeledDataset data = read_features_csv(ws().file("features.csv"));
  CHECK(data.dims() == 32);
  CHECK(data.size() == 140);
  const auto groups = data.distinct_groups();
  REQUIRE(groups.size() == 2);
  CHECK(groups[0] == "p0");
  CHECK(groups[1] == "p1");
  long positives = 0;
  long flagged = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    positives += data.labels(i) == 1 ? 1 : 0;
    flagged += data.overlap_flags[static_cast<std::size_t>(i)] ? 1 : 0;
  }
  CHECK(positives == 44);  // 2 patients x 2 seizures x 11 windows
  CHECK(flagged == 20);    // every second window of each seizure
  CHECK(data.seizures_of_group("p0") == std::vector<int>{1, 2});
  CHECK(data.seizures_of_group("p1") == std::vector<int>{1, 2});
}

TEST_CASE("train saves a loadable model with a non-increasing objective") {
  ensure_trained_model();
  const TkrrModel model = load_model(ws().file("pi.model"));
  CHECK(model.feature_map.dims() == 32);
  CHECK(model.weights.rank() == 6);
  REQUIRE(model.history.size() == 64);  // 2 sweeps x 32 factor updates
  for (std::size_t i = 1; i < model.history.size(); ++i)
    CHECK(model.history[i] <= model.history[i - 1] * (1.0 + 1e-9) + 1e-12);
  CHECK(line_count(ws().file("pi.model.history.csv")) == 65);
  CHECK(std::isfinite(model.threshold));
}

TEST_CASE("finetune respects the update cap and dimension subsets") {
  ensure_trained_model();
  Workspace& w = ws();
  const std::string base = "finetune --model " + quoted(w.file("pi.model")) + " --features " +
                           quoted(w.file("features.csv")) + " --patient p1 --seizure-id 1";

  REQUIRE(run_cli(base + " --max-updates 0 --out " + quoted(w.file("noop.model"))) == 0);
  const TkrrModel source = load_model(w.file("pi.model"));
  const TkrrModel noop = load_model(w.file("noop.model"));
  for (std::size_t d = 0; d < 32; ++d)
    CHECK((noop.weights.factors[d] - source.weights.factors[d]).cwiseAbs().maxCoeff() == 0.0);
  CHECK(line_count(w.file("noop.model.curve.csv")) == 1);  // header only

  REQUIRE(run_cli(base + " --update-dims 2 --out " + quoted(w.file("one.model"))) == 0);
  const TkrrModel one = load_model(w.file("one.model"));
  long changed = 0;
  for (std::size_t d = 0; d < 32; ++d) {
    const bool same =
        (one.weights.factors[d] - source.weights.factors[d]).cwiseAbs().maxCoeff() == 0.0;
    if (!same) {
      ++changed;
      CHECK(d == 1);  // --update-dims counts from 1
    }
  }
  CHECK(changed == 1);
  CHECK(line_count(w.file("one.model.curve.csv")) == 2);

  std::string out;
  REQUIRE(run_cli(base + " --out " + quoted(w.file("pf.model")), &out) == 0);
  CHECK(out.find("held-out auroc after 32 updates") != std::string::npos);
  CHECK(line_count(w.file("pf.model.curve.csv")) == 33);
}

TEST_CASE("evaluate excludes overlapped windows and reports bounded metrics") {
  ensure_trained_model();
  Workspace& w = ws();
  std::string out;
  REQUIRE(run_cli("evaluate --model " + quoted(w.file("pi.model")) + " --features " +
                  quoted(w.file("features.csv")) + " --patient p1 --report " +
                  quoted(w.file("report.txt")) + " --folds " + quoted(w.file("folds.csv")),
                  &out) == 0);
  CHECK(out.find("evaluated 60 windows of p1") != std::string::npos);

  const auto report = parse_report(w.file("report.txt"));
  const double auroc = parse_double(report.at("auroc"), "auroc");
  const double auprc = parse_double(report.at("auprc"), "auprc");
  const double f1 = parse_double(report.at("f1"), "f1");
  CHECK(auroc >= 0.0);
  CHECK(auroc <= 1.0);
  CHECK(auprc >= 0.0);
  CHECK(auprc <= 1.0);
  CHECK(f1 >= 0.0);
  CHECK(f1 <= 1.0);
  const long tp = std::stol(report.at("tp"));
  const long fp = std::stol(report.at("fp"));
  const long tn = std::stol(report.at("tn"));
  const long fn = std::stol(report.at("fn"));
  CHECK(tp + fp + tn + fn == 60);
  CHECK(report.at("folds") == "1");
  CHECK(line_count(w.file("folds.csv")) == 2);

  // Pooled over both patients: 140 windows minus 20 overlap-flagged ones.
  REQUIRE(run_cli("evaluate --model " + quoted(w.file("pi.model")) + " --features " +
                  quoted(w.file("features.csv")) + " --report " +
                  quoted(w.file("report_all.txt")), &out) == 0);
  CHECK(out.find("evaluated 120 windows") != std::string::npos);
}

TEST_CASE("inspect prints the stored structure") {
  ensure_trained_model();
  std::string out;
  REQUIRE(run_cli("inspect --model " + quoted(ws().file("pi.model")), &out) == 0);
  CHECK(out.find("format tkm-model v1") != std::string::npos);
  CHECK(out.find("dims 32") != std::string::npos);
  CHECK(out.find("rank 6") != std::string::npos);
  CHECK(out.find("parameters 1536") != std::string::npos);
  CHECK(out.find("history_length 64") != std::string::npos);
}

TEST_CASE("runtime failures exit with the dedicated error code") {
  ensure_trained_model();
  Workspace& w = ws();
  {
    std::ofstream bad(w.file("bad.model"));
    bad << "tkm-model v9\ndims 2\n";
  }
  std::string out;
  CHECK(run_cli("inspect --model " + quoted(w.file("bad.model")), &out) == 2);
  CHECK(out.find("error:") != std::string::npos);
  CHECK(run_cli("evaluate --model " + quoted(w.file("pi.model")) + " --features " +
                quoted(w.file("features.csv")) + " --patient nobody --report " +
                quoted(w.file("r.txt")), &out) == 2);
  CHECK(out.find("unknown patient") != std::string::npos);
}

TEST_CASE("the whole workflow is bit-reproducible") {
  Workspace& w = ws();
  const auto chain = [&](const std::string& tag) {
    const std::string dir = w.file(tag);
    fs::create_directories(dir);
    REQUIRE(run_cli("synth --patients 2 --seizures-per 1 --duration 60 --seizure-duration 12"
                    " --seed 17 --out " + quoted(dir + "/data")) == 0);
    REQUIRE(run_cli("extract --in " + quoted(dir + "/data") + " --out " +
                    quoted(dir + "/features.csv")) == 0);
    REQUIRE(run_cli("train --features " + quoted(dir + "/features.csv") +
                    " --leave-out-patient p1 --rank 4 --basis 6 --sweeps 1 --seed 9 --out " +
                    quoted(dir + "/pi.model")) == 0);
    REQUIRE(run_cli("finetune --model " + quoted(dir + "/pi.model") + " --features " +
                    quoted(dir + "/features.csv") +
                    " --patient p1 --seizure-id 1 --sweeps 1 --out " +
                    quoted(dir + "/pf.model")) == 0);
    REQUIRE(run_cli("evaluate --model " + quoted(dir + "/pf.model") + " --features " +
                    quoted(dir + "/features.csv") + " --patient p1 --report " +
                    quoted(dir + "/report.txt") + " --folds " + quoted(dir + "/folds.csv")) == 0);
  };
  chain("run1");
  chain("run2");
  for (const char* name :
       {"data/p0_recording.csv", "data/p0_annotations.csv", "data/p1_recording.csv",
        "features.csv", "pi.model", "pi.model.history.csv", "pf.model", "pf.model.curve.csv",
        "pf.model.history.csv", "report.txt", "folds.csv"}) {
    CHECK_MESSAGE(slurp(w.file("run1/" + std::string(name))) ==
                  slurp(w.file("run2/" + std::string(name))),
                  "file differs between runs: ", name);
  }
}

TEST_SUITE_END();
