#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tkm/cross_validation.hpp"
#include "tkm/csv_io.hpp"
#include "tkm/dataset.hpp"
#include "tkm/errors.hpp"
#include "tkm/metrics.hpp"
#include "tkm/model_io.hpp"
#include "tkm/scaler.hpp"
#include "tkm/signal.hpp"
#include "tkm/tkrr.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kToolVersion = "tkm 0.1.0";

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_ = Clock::now();
};

void write_manifest(const std::string& path, const std::string& command, const json& config,
                    const json& inputs, const json& outputs, double wall_s) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["tool_version"] = kToolVersion;
  manifest["wall_time_s"] = wall_s;
  std::ofstream out(path);
  if (!out) throw tkm::FormatError("cannot open for writing: " + path);
  out << manifest.dump(2) << "\n";
  out.flush();
  if (!out) throw tkm::FormatError("write failed: " + path);
}

// splitmix64 finalizer: decorrelates per-patient streams drawn from one seed.
std::uint64_t patient_seed(std::uint64_t base, int patient) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(patient + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void require_patient(const tkm::LabeledDataset& data, const std::string& patient) {
  const auto groups = data.distinct_groups();
  if (std::find(groups.begin(), groups.end(), patient) == groups.end())
    throw tkm::DomainError("unknown patient id: " + patient);
}

bool has_both_classes(const Eigen::VectorXi& labels) {
  const long positives = (labels.array() == 1).count();
  return positives > 0 && positives < labels.size();
}

// ---------------------------------------------------------------- synth ----

struct SynthOptions {
  int patients = 6;
  int seizures_per = 9;
  double duration_s = 600.0;
  double seizure_duration_s = 20.0;
  double sample_rate = 250.0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

void run_synth(const SynthOptions& opt) {
  Stopwatch watch;
  fs::create_directories(opt.out_dir);
  json outputs = json::array();
  for (int p = 0; p < opt.patients; ++p) {
    tkm::SynthesisSpec spec;
    spec.patient_id = "p" + std::to_string(p);
    spec.seed = patient_seed(opt.seed, p);
    spec.duration_s = opt.duration_s;
    spec.seizures = opt.seizures_per;
    spec.seizure_duration_s = opt.seizure_duration_s;
    spec.sample_rate = opt.sample_rate;
    const tkm::Recording rec = tkm::synthesize_recording(spec);
    const std::string rec_path = opt.out_dir + "/" + spec.patient_id + "_recording.csv";
    const std::string ann_path = opt.out_dir + "/" + spec.patient_id + "_annotations.csv";
    tkm::write_recording_csv(rec_path, rec);
    tkm::write_annotations_csv(ann_path, rec.annotations);
    outputs.push_back(rec_path);
    outputs.push_back(ann_path);
  }
  const json config = {{"patients", opt.patients},
                       {"seizures_per", opt.seizures_per},
                       {"duration_s", opt.duration_s},
                       {"seizure_duration_s", opt.seizure_duration_s},
                       {"sample_rate", opt.sample_rate},
                       {"seed", opt.seed}};
  write_manifest(opt.out_dir + "/manifest.json", "synth", config, json::array(), outputs,
                 watch.seconds());
  std::cout << "wrote " << opt.patients << " patient recordings to " << opt.out_dir << "\n";
}

// -------------------------------------------------------------- extract ----

struct ExtractOptions {
  std::string in_dir;
  std::string out_path;
  double target_hz = 250.0;
  double low_hz = 0.1;
  double high_hz = 50.0;
  double notch_hz = 50.0;
  double notch_q = 30.0;
  double window_s = 2.0;
  double seizure_overlap = 0.5;
  double background_overlap = 0.0;
};

void run_extract(const ExtractOptions& opt) {
  Stopwatch watch;
  std::vector<std::string> recordings;
  if (!fs::is_directory(opt.in_dir))
    throw tkm::FormatError("not a directory: " + opt.in_dir);
  for (const auto& entry : fs::directory_iterator(opt.in_dir)) {
    const std::string name = entry.path().filename().string();
    constexpr const char* suffix = "_recording.csv";
    if (name.size() > std::strlen(suffix) &&
        name.compare(name.size() - std::strlen(suffix), std::string::npos, suffix) == 0)
      recordings.push_back(entry.path().string());
  }
  if (recordings.empty())
    throw tkm::FormatError("no *_recording.csv files in " + opt.in_dir);
  std::sort(recordings.begin(), recordings.end());

  tkm::PipelineConfig cfg;
  cfg.target_hz = opt.target_hz;
  cfg.bandpass_low_hz = opt.low_hz;
  cfg.bandpass_high_hz = opt.high_hz;
  cfg.notch_hz = opt.notch_hz;
  cfg.notch_q = opt.notch_q;
  cfg.window.length_s = opt.window_s;
  cfg.window.seizure_overlap = opt.seizure_overlap;
  cfg.window.background_overlap = opt.background_overlap;

  tkm::LabeledDataset all;
  json inputs = json::array();
  for (const std::string& rec_path : recordings) {
    const std::string base = rec_path.substr(0, rec_path.size() - std::strlen("_recording.csv"));
    const std::string ann_path = base + "_annotations.csv";
    const std::string patient = fs::path(base).filename().string();
    const tkm::Recording rec = tkm::read_recording_csv(rec_path, ann_path, patient);
    const tkm::LabeledDataset features = tkm::extract_features(rec, cfg);
    if (all.size() == 0)
      all = features;
    else
      all.append(features);
    inputs.push_back(rec_path);
    inputs.push_back(ann_path);
  }
  tkm::write_features_csv(opt.out_path, all);

  const json config = {{"target_hz", opt.target_hz},
                       {"bandpass_low_hz", opt.low_hz},
                       {"bandpass_high_hz", opt.high_hz},
                       {"notch_hz", opt.notch_hz},
                       {"notch_q", opt.notch_q},
                       {"window_s", opt.window_s},
                       {"seizure_overlap", opt.seizure_overlap},
                       {"background_overlap", opt.background_overlap}};
  write_manifest(opt.out_path + ".manifest.json", "extract", config, inputs,
                 json::array({opt.out_path}), watch.seconds());
  std::cout << "wrote " << all.size() << " windows x " << all.dims() << " features to "
            << opt.out_path << "\n";
}

// ---------------------------------------------------------------- train ----

struct TrainOptions {
  std::string features_path;
  std::string leave_out;
  long rank = 30;
  double ridge = 1e-4;
  double lengthscale = 0.6;
  long basis = 20;
  double half_width = 1.25;
  int sweeps = 2;
  std::uint64_t seed = 0;
  std::string out_path;
};

void run_train(const TrainOptions& opt) {
  Stopwatch watch;
  const tkm::LabeledDataset data = tkm::read_features_csv(opt.features_path);
  std::vector<Eigen::Index> train_rows;
  if (!opt.leave_out.empty()) {
    require_patient(data, opt.leave_out);
    for (Eigen::Index i = 0; i < data.size(); ++i)
      if (data.group_ids[static_cast<std::size_t>(i)] != opt.leave_out) train_rows.push_back(i);
  } else {
    for (Eigen::Index i = 0; i < data.size(); ++i) train_rows.push_back(i);
  }
  if (train_rows.empty()) throw tkm::DomainError("no training rows left");
  const tkm::LabeledDataset train = data.subset(train_rows);

  const tkm::ScalerParams scaler = tkm::fit_scaler(train.features);
  tkm::LabeledDataset scaled = train;
  scaled.features = tkm::apply_scaler(scaler, train.features).values;

  const tkm::FeatureMapConfig map = tkm::FeatureMapConfig::uniform(
      data.dims(), opt.basis, opt.half_width, opt.lengthscale);
  tkm::TrainConfig cfg;
  cfg.rank = opt.rank;
  cfg.ridge = opt.ridge;
  cfg.sweeps = opt.sweeps;
  cfg.seed = opt.seed;

  tkm::TkrrModel model = tkm::fit(scaled, cfg, map, scaler);
  const Eigen::VectorXd train_scores =
      tkm::score_scaled_batch(model.weights, map, scaled.features);
  if (has_both_classes(train.labels))
    model.threshold = tkm::best_f1_threshold(train_scores, train.labels).first;

  tkm::save_model(opt.out_path, model);
  tkm::write_history_csv(opt.out_path + ".history.csv", model.history);

  const json config = {{"features", opt.features_path},
                       {"leave_out_patient", opt.leave_out},
                       {"rank", opt.rank},
                       {"ridge", opt.ridge},
                       {"lengthscale", opt.lengthscale},
                       {"basis", opt.basis},
                       {"half_width", opt.half_width},
                       {"sweeps", opt.sweeps},
                       {"seed", opt.seed}};
  write_manifest(opt.out_path + ".manifest.json", "train", config,
                 json::array({opt.features_path}),
                 json::array({opt.out_path, opt.out_path + ".history.csv"}), watch.seconds());
  std::cout << "trained on " << train.size() << " windows ("
            << (opt.leave_out.empty() ? std::string("all patients")
                                      : "left out " + opt.leave_out)
            << ")\n";
  std::cout << "parameters " << tkm::cpd_param_count(model.weights) << "\n";
  if (!model.history.empty()) std::cout << "final objective " << model.history.back() << "\n";
  if (model.solver_fallbacks > 0)
    std::cout << "min-norm fallback used " << model.solver_fallbacks << " times\n";
}

// ------------------------------------------------------------- finetune ----

struct FinetuneOptions {
  std::string model_path;
  std::string features_path;
  std::string patient;
  int seizure_id = 1;
  int sweeps = 1;
  std::optional<long> max_updates;
  std::vector<long> update_dims;  // 1-based on the command line
  std::string out_path;
  std::string curve_path;
};

void run_finetune(const FinetuneOptions& opt) {
  Stopwatch watch;
  const tkm::TkrrModel source = tkm::load_model(opt.model_path);
  const tkm::LabeledDataset data = tkm::read_features_csv(opt.features_path);
  require_patient(data, opt.patient);
  if (data.dims() != source.feature_map.dims())
    throw tkm::DimensionError("feature file dimension does not match the model");

  const tkm::CvFold fold = tkm::leave_one_seizure_fold(data, opt.patient, opt.seizure_id);
  const tkm::LabeledDataset train = data.subset(fold.train);
  const tkm::LabeledDataset test = data.subset(fold.test);

  tkm::LabeledDataset scaled_train = train;
  scaled_train.features = tkm::apply_scaler(source.scaler, train.features).values;
  const Eigen::MatrixXd scaled_test = tkm::apply_scaler(source.scaler, test.features).values;

  tkm::FinetuneOptions ft_opts;
  ft_opts.sweeps = opt.sweeps;
  ft_opts.max_factor_updates = opt.max_updates;
  for (const long d : opt.update_dims) {
    if (d < 1 || d > data.dims())
      throw tkm::DomainError("--update-dims entries must lie in 1.." +
                             std::to_string(data.dims()));
    ft_opts.update_dims.push_back(static_cast<Eigen::Index>(d - 1));
  }

  std::vector<tkm::CurvePoint> curve;
  const bool curve_defined = test.size() > 0 && has_both_classes(test.labels);
  tkm::FitObserver observer;
  if (curve_defined) {
    observer = [&](long update, const tkm::CpdTensor& weights) {
      const Eigen::VectorXd scores =
          tkm::score_scaled_batch(weights, source.feature_map, scaled_test);
      curve.push_back(
          {update, tkm::roc_auc(scores, test.labels), tkm::pr_auc(scores, test.labels)});
    };
  } else {
    std::cerr << "note: held-out rows are single-class; iteration curve left empty\n";
  }

  tkm::TkrrModel tuned = tkm::finetune(source, scaled_train, ft_opts, observer);
  const Eigen::VectorXd train_scores =
      tkm::score_scaled_batch(tuned.weights, tuned.feature_map, scaled_train.features);
  if (has_both_classes(train.labels))
    tuned.threshold = tkm::best_f1_threshold(train_scores, train.labels).first;

  tkm::save_model(opt.out_path, tuned);
  const std::string curve_path =
      opt.curve_path.empty() ? opt.out_path + ".curve.csv" : opt.curve_path;
  tkm::write_curve_csv(curve_path, curve);
  tkm::write_history_csv(opt.out_path + ".history.csv", tuned.history);

  const json config = {{"model", opt.model_path},
                       {"features", opt.features_path},
                       {"patient", opt.patient},
                       {"seizure_id", opt.seizure_id},
                       {"sweeps", opt.sweeps},
                       {"max_updates", opt.max_updates ? json(*opt.max_updates) : json()},
                       {"update_dims", opt.update_dims}};
  write_manifest(opt.out_path + ".manifest.json", "finetune", config,
                 json::array({opt.model_path, opt.features_path}),
                 json::array({opt.out_path, curve_path, opt.out_path + ".history.csv"}),
                 watch.seconds());
  std::cout << "fine-tuned on seizure " << opt.seizure_id << " of " << opt.patient << " ("
            << train.size() << " train windows, " << test.size() << " held-out)\n";
  if (!curve.empty())
    std::cout << "held-out auroc after " << curve.back().update << " updates: "
              << curve.back().auroc << "\n";
}

// ------------------------------------------------------------- evaluate ----

struct EvaluateOptions {
  std::string model_path;
  std::string features_path;
  std::string patient;
  std::string report_path;
  std::string folds_path;
};

tkm::FoldReport evaluate_rows(const tkm::TkrrModel& model, const tkm::LabeledDataset& rows,
                              const std::string& fold_id) {
  tkm::FoldReport fold;
  fold.fold_id = fold_id;
  fold.test_size = rows.size();
  fold.threshold = model.threshold;
  long clamped = 0;
  const Eigen::VectorXd scores = tkm::predict_scores(model, rows.features, &clamped);
  const tkm::ThresholdMetrics at = tkm::confusion_metrics(scores, rows.labels, model.threshold);
  fold.f1 = at.f1;
  fold.sensitivity = at.sensitivity;
  fold.precision = at.precision;
  fold.confusion = at.confusion;
  if (has_both_classes(rows.labels)) {
    fold.auroc = tkm::roc_auc(scores, rows.labels);
    fold.auprc = tkm::pr_auc(scores, rows.labels);
  } else {
    fold.single_class = true;
  }
  return fold;
}

void run_evaluate(const EvaluateOptions& opt) {
  Stopwatch watch;
  const tkm::TkrrModel model = tkm::load_model(opt.model_path);
  const tkm::LabeledDataset data = tkm::read_features_csv(opt.features_path);
  if (!opt.patient.empty()) require_patient(data, opt.patient);
  if (data.dims() != model.feature_map.dims())
    throw tkm::DimensionError("feature file dimension does not match the model");

  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    if (!opt.patient.empty() && data.group_ids[static_cast<std::size_t>(i)] != opt.patient)
      continue;
    if (data.overlap_flags[static_cast<std::size_t>(i)]) continue;
    rows.push_back(i);
  }
  if (rows.empty()) throw tkm::DomainError("no rows to evaluate after overlap removal");
  const tkm::LabeledDataset test = data.subset(rows);

  const tkm::FoldReport pooled = evaluate_rows(model, test, "all");
  tkm::EvaluationReport report;
  report.auroc = pooled.auroc;
  report.auprc = pooled.auprc;
  report.f1 = pooled.f1;
  report.sensitivity = pooled.sensitivity;
  report.precision = pooled.precision;
  report.threshold = pooled.threshold;
  report.confusion = pooled.confusion;
  for (const std::string& group : test.distinct_groups()) {
    std::vector<Eigen::Index> group_rows;
    for (Eigen::Index i = 0; i < test.size(); ++i)
      if (test.group_ids[static_cast<std::size_t>(i)] == group) group_rows.push_back(i);
    report.per_fold.push_back(evaluate_rows(model, test.subset(group_rows), group));
  }

  tkm::write_report(opt.report_path, report);
  json outputs = json::array({opt.report_path});
  if (!opt.folds_path.empty()) {
    tkm::write_folds_csv(opt.folds_path, report.per_fold);
    outputs.push_back(opt.folds_path);
  }
  const json config = {{"model", opt.model_path},
                       {"features", opt.features_path},
                       {"patient", opt.patient}};
  write_manifest(opt.report_path + ".manifest.json", "evaluate", config,
                 json::array({opt.model_path, opt.features_path}), outputs, watch.seconds());

  std::cout << "evaluated " << test.size() << " windows";
  if (!opt.patient.empty()) std::cout << " of " << opt.patient;
  std::cout << "\n";
  std::cout << "auroc "
            << (report.auroc ? tkm::format_full_precision(*report.auroc) : "undefined") << "\n";
  std::cout << "auprc "
            << (report.auprc ? tkm::format_full_precision(*report.auprc) : "undefined") << "\n";
  std::cout << "f1 " << report.f1 << "\n";
}

// -------------------------------------------------------------- inspect ----

void run_inspect(const std::string& model_path) {
  const tkm::TkrrModel model = tkm::load_model(model_path);
  std::cout << "format tkm-model v1\n";
  std::cout << "dims " << model.feature_map.dims() << "\n";
  std::cout << "rank " << model.weights.rank() << "\n";
  std::cout << "basis_counts";
  for (const auto m : model.feature_map.basis_counts) std::cout << " " << m;
  std::cout << "\n";
  std::cout << "half_widths";
  for (const double u : model.feature_map.half_widths)
    std::cout << " " << tkm::format_full_precision(u);
  std::cout << "\n";
  std::cout << "lengthscale " << tkm::format_full_precision(model.feature_map.lengthscale)
            << "\n";
  std::cout << "ridge " << tkm::format_full_precision(model.ridge) << "\n";
  std::cout << "threshold " << tkm::format_full_precision(model.threshold) << "\n";
  std::cout << "parameters " << tkm::cpd_param_count(model.weights) << "\n";
  std::cout << "history_length " << model.history.size() << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Tensorized kernel machines for patient-adaptive seizure detection"};
  app.require_subcommand(1);
  long threads = 1;
  app.add_option("--threads", threads,
                 "Cap internal parallelism (the implementation is currently single-threaded)")
      ->check(CLI::PositiveNumber);

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic multi-patient recordings");
  synth_cmd->add_option("--patients", synth.patients, "Number of patients")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seizures-per", synth.seizures_per, "Seizures per patient")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--duration", synth.duration_s, "Recording duration per patient [s]");
  synth_cmd->add_option("--seizure-duration", synth.seizure_duration_s,
                        "Duration of each seizure [s] (>= 10)");
  synth_cmd->add_option("--sample-rate", synth.sample_rate, "Sampling rate [Hz]");
  synth_cmd->add_option("--seed", synth.seed, "Master seed");
  synth_cmd->add_option("--out", synth.out_dir, "Output directory")->required();

  ExtractOptions extract;
  auto* extract_cmd =
      app.add_subcommand("extract", "Run the preprocessing + feature pipeline over recordings");
  extract_cmd->add_option("--in", extract.in_dir, "Directory with *_recording.csv files")
      ->required();
  extract_cmd->add_option("--out", extract.out_path, "Output feature CSV")->required();
  extract_cmd->add_option("--target-hz", extract.target_hz, "Resampling target rate [Hz]");
  extract_cmd->add_option("--low", extract.low_hz, "Bandpass low edge [Hz]");
  extract_cmd->add_option("--high", extract.high_hz, "Bandpass high edge [Hz]");
  extract_cmd->add_option("--notch", extract.notch_hz, "Notch frequency [Hz]");
  extract_cmd->add_option("--notch-q", extract.notch_q, "Notch quality factor");
  extract_cmd->add_option("--window", extract.window_s, "Window length [s]");
  extract_cmd->add_option("--seizure-overlap", extract.seizure_overlap,
                          "Window overlap inside seizure spans [0,1)");
  extract_cmd->add_option("--background-overlap", extract.background_overlap,
                          "Window overlap inside background spans [0,1)");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Fit a patient-independent model");
  train_cmd->add_option("--features", train.features_path, "Feature CSV")->required();
  train_cmd->add_option("--leave-out-patient", train.leave_out,
                        "Patient id excluded from training");
  train_cmd->add_option("--rank", train.rank, "CPD rank R")->check(CLI::PositiveNumber);
  train_cmd->add_option("--ridge", train.ridge, "Ridge penalty");
  train_cmd->add_option("--lengthscale", train.lengthscale, "RBF lengthscale");
  train_cmd->add_option("--basis", train.basis, "Basis functions per dimension M")
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--half-width", train.half_width, "Feature-map box half-width U");
  train_cmd->add_option("--sweeps", train.sweeps, "Full ALS sweeps")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--seed", train.seed, "Factor initialization seed");
  train_cmd->add_option("--out", train.out_path, "Output model file")->required();

  FinetuneOptions finetune;
  auto* finetune_cmd =
      app.add_subcommand("finetune", "Warm-start ALS on one seizure of a target patient");
  finetune_cmd->add_option("--model", finetune.model_path, "Source model file")->required();
  finetune_cmd->add_option("--features", finetune.features_path, "Feature CSV")->required();
  finetune_cmd->add_option("--patient", finetune.patient, "Target patient id")->required();
  finetune_cmd->add_option("--seizure-id", finetune.seizure_id, "Seizure used for training")
      ->required();
  finetune_cmd->add_option("--sweeps", finetune.sweeps, "Full ALS sweeps")
      ->check(CLI::NonNegativeNumber);
  long max_updates = -1;
  auto* max_updates_opt = finetune_cmd->add_option(
      "--max-updates", max_updates, "Stop after this many factor updates");
  finetune_cmd
      ->add_option("--update-dims", finetune.update_dims,
                   "1-based dimensions to update (default: all)")
      ->delimiter(',');
  finetune_cmd->add_option("--out", finetune.out_path, "Output model file")->required();
  finetune_cmd->add_option("--curve", finetune.curve_path,
                           "Iteration-curve CSV (default: <out>.curve.csv)");

  EvaluateOptions evaluate;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Score a feature set and write an evaluation report");
  evaluate_cmd->add_option("--model", evaluate.model_path, "Model file")->required();
  evaluate_cmd->add_option("--features", evaluate.features_path, "Feature CSV")->required();
  evaluate_cmd->add_option("--patient", evaluate.patient,
                           "Restrict evaluation to this patient");
  evaluate_cmd->add_option("--report", evaluate.report_path, "Output report file")->required();
  evaluate_cmd->add_option("--folds", evaluate.folds_path, "Optional per-patient fold CSV");

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print a model's structure");
  inspect_cmd->add_option("--model", inspect_path, "Model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (*max_updates_opt) finetune.max_updates = max_updates;

  if (*synth_cmd) run_synth(synth);
  if (*extract_cmd) run_extract(extract);
  if (*train_cmd) run_train(train);
  if (*finetune_cmd) run_finetune(finetune);
  if (*evaluate_cmd) run_evaluate(evaluate);
  if (*inspect_cmd) run_inspect(inspect_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
