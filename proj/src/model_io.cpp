#include "tkm/model_io.hpp"

#include <fstream>
#include <sstream>

#include "tkm/csv_io.hpp"

namespace tkm {

namespace {

constexpr const char* kFormatHeader = "tkm-model v1";

void expect_key(std::istream& in, const std::string& key, const std::string& path) {
  std::string token;
  if (!(in >> token) || token != key)
    throw FormatError(path + ": expected '" + key + "', found '" + token + "'");
}

double read_double(std::istream& in, const std::string& path, const std::string& what) {
  double value = 0.0;
  if (!(in >> value)) throw FormatError(path + ": bad value for " + what);
  return value;
}

long read_long(std::istream& in, const std::string& path, const std::string& what) {
  long value = 0;
  if (!(in >> value)) throw FormatError(path + ": bad value for " + what);
  return value;
}

}  // namespace

void save_model(const std::string& path, const TkrrModel& model) {
  model.weights.validate();
  model.feature_map.validate();
  model.scaler.validate();
  const Eigen::Index dims = model.feature_map.dims();
  if (model.weights.order() != dims || model.scaler.dims() != dims)
    throw DimensionError("save_model: map, weights and scaler dimensions disagree");

  std::ofstream out(path);
  if (!out) throw FormatError("cannot open for writing: " + path);
  out << kFormatHeader << "\n";
  out << "dims " << dims << "\n";
  out << "rank " << model.weights.rank() << "\n";
  out << "ridge " << format_full_precision(model.ridge) << "\n";
  out << "threshold " << format_full_precision(model.threshold) << "\n";
  out << "lengthscale " << format_full_precision(model.feature_map.lengthscale) << "\n";
  out << "basis_counts";
  for (const auto m : model.feature_map.basis_counts) out << " " << m;
  out << "\n";
  out << "half_widths";
  for (const double u : model.feature_map.half_widths) out << " " << format_full_precision(u);
  out << "\n";
  out << "scaler_min";
  for (Eigen::Index j = 0; j < dims; ++j)
    out << " " << format_full_precision(model.scaler.min(j));
  out << "\n";
  out << "scaler_max";
  for (Eigen::Index j = 0; j < dims; ++j)
    out << " " << format_full_precision(model.scaler.max(j));
  out << "\n";
  out << "history " << model.history.size() << "\n";
  for (const double h : model.history) out << format_full_precision(h) << "\n";
  for (Eigen::Index d = 0; d < dims; ++d) {
    const Eigen::MatrixXd& f = model.weights.factors[static_cast<std::size_t>(d)];
    out << "factor " << d << " " << f.rows() << " " << f.cols() << "\n";
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
      for (Eigen::Index r = 0; r < f.rows(); ++r)
        out << format_full_precision(f(r, c)) << (r + 1 == f.rows() ? "" : " ");
      out << "\n";
    }
  }
  out << "end\n";
  out.flush();
  if (!out) throw FormatError("write failed: " + path);
}

TkrrModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open for reading: " + path);
  std::string header;
  if (!std::getline(in, header) || header != kFormatHeader)
    throw FormatError(path + ": unsupported model format (expected '" +
                      std::string(kFormatHeader) + "', found '" + header + "')");

  TkrrModel model;
  expect_key(in, "dims", path);
  const long dims = read_long(in, path, "dims");
  if (dims < 1) throw FormatError(path + ": dims must be >= 1");
  expect_key(in, "rank", path);
  const long rank = read_long(in, path, "rank");
  if (rank < 1) throw FormatError(path + ": rank must be >= 1");
  expect_key(in, "ridge", path);
  model.ridge = read_double(in, path, "ridge");
  expect_key(in, "threshold", path);
  model.threshold = read_double(in, path, "threshold");
  expect_key(in, "lengthscale", path);
  model.feature_map.lengthscale = read_double(in, path, "lengthscale");

  expect_key(in, "basis_counts", path);
  model.feature_map.basis_counts.resize(static_cast<std::size_t>(dims));
  for (auto& m : model.feature_map.basis_counts)
    m = static_cast<Eigen::Index>(read_long(in, path, "basis_counts"));
  expect_key(in, "half_widths", path);
  model.feature_map.half_widths.resize(static_cast<std::size_t>(dims));
  for (auto& u : model.feature_map.half_widths) u = read_double(in, path, "half_widths");

  expect_key(in, "scaler_min", path);
  model.scaler.min.resize(dims);
  for (Eigen::Index j = 0; j < dims; ++j)
    model.scaler.min(j) = read_double(in, path, "scaler_min");
  expect_key(in, "scaler_max", path);
  model.scaler.max.resize(dims);
  for (Eigen::Index j = 0; j < dims; ++j)
    model.scaler.max(j) = read_double(in, path, "scaler_max");

  expect_key(in, "history", path);
  const long history_len = read_long(in, path, "history length");
  if (history_len < 0) throw FormatError(path + ": negative history length");
  model.history.resize(static_cast<std::size_t>(history_len));
  for (auto& h : model.history) h = read_double(in, path, "history");

  model.weights.factors.resize(static_cast<std::size_t>(dims));
  for (long d = 0; d < dims; ++d) {
    expect_key(in, "factor", path);
    const long index = read_long(in, path, "factor index");
    if (index != d) throw FormatError(path + ": factor indices out of order");
    const long rows = read_long(in, path, "factor rows");
    const long cols = read_long(in, path, "factor cols");
    if (rows != model.feature_map.basis_counts[static_cast<std::size_t>(d)] || cols != rank)
      throw FormatError(path + ": factor shape disagrees with dims/rank");
    Eigen::MatrixXd factor(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r)
        factor(r, c) = read_double(in, path, "factor value");
    model.weights.factors[static_cast<std::size_t>(d)] = std::move(factor);
  }
  expect_key(in, "end", path);

  model.feature_map.validate();
  model.scaler.validate();
  model.weights.validate();
  return model;
}

void write_report(const std::string& path, const EvaluationReport& report) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open for writing: " + path);
  const auto metric = [&](const char* name, const std::optional<double>& value) {
    out << name << " " << (value ? format_full_precision(*value) : "undefined") << "\n";
  };
  metric("auroc", report.auroc);
  metric("auprc", report.auprc);
  out << "f1 " << format_full_precision(report.f1) << "\n";
  out << "sensitivity " << format_full_precision(report.sensitivity) << "\n";
  out << "precision " << format_full_precision(report.precision) << "\n";
  out << "threshold " << format_full_precision(report.threshold) << "\n";
  out << "tp " << report.confusion.tp << "\n";
  out << "fp " << report.confusion.fp << "\n";
  out << "tn " << report.confusion.tn << "\n";
  out << "fn " << report.confusion.fn << "\n";
  out << "evaluated " << report.confusion.total() << "\n";
  out << "folds " << report.per_fold.size() << "\n";
  out.flush();
  if (!out) throw FormatError("write failed: " + path);
}

}  // namespace tkm
