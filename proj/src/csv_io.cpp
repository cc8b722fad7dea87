#include "tkm/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tkm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open for reading: " + path);
  return in;
}

long parse_long(const std::string& token, const std::string& context) {
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0')
    throw FormatError(context + ": bad integer '" + token + "'");
  return value;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw FormatError("write failed: " + path);
}

}  // namespace

std::string format_full_precision(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return buffer;
}

double parse_double(const std::string& token, const std::string& context) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0')
    throw FormatError(context + ": bad number '" + token + "'");
  return value;
}

void write_recording_csv(const std::string& path, const Recording& rec) {
  auto out = open_output(path);
  out << "time_s";
  for (Eigen::Index c = 0; c < rec.channel_count(); ++c) out << ",ch" << (c + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < rec.sample_count(); ++i) {
    out << format_full_precision(static_cast<double>(i) / rec.sample_rate);
    for (Eigen::Index c = 0; c < rec.channel_count(); ++c)
      out << "," << format_full_precision(rec.channels(c, i));
    out << "\n";
  }
  finish_write(out, path);
}

void write_annotations_csv(const std::string& path,
                           const std::vector<Annotation>& annotations) {
  auto out = open_output(path);
  out << "start_s,end_s,label,seizure_id\n";
  for (const Annotation& a : annotations) {
    out << format_full_precision(a.start_s) << "," << format_full_precision(a.end_s) << ","
        << (a.seizure ? "seizure" : "background") << "," << a.seizure_id << "\n";
  }
  finish_write(out, path);
}

Recording read_recording_csv(const std::string& recording_path,
                             const std::string& annotations_path,
                             const std::string& patient_id) {
  auto in = open_input(recording_path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(recording_path + ": empty file");
  const auto header = split_line(line);
  if (header.size() < 2 || header[0] != "time_s")
    throw FormatError(recording_path + ": expected header time_s,ch1,...");
  const auto channels = static_cast<Eigen::Index>(header.size() - 1);

  std::vector<double> times;
  std::vector<double> samples;  // row-major: sample-by-sample, channel fastest
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (static_cast<Eigen::Index>(fields.size()) != channels + 1)
      throw FormatError(recording_path + ": inconsistent column count");
    times.push_back(parse_double(fields[0], recording_path));
    for (Eigen::Index c = 0; c < channels; ++c)
      samples.push_back(parse_double(fields[static_cast<std::size_t>(c + 1)], recording_path));
  }
  if (times.size() < 2) throw FormatError(recording_path + ": need at least 2 samples");

  const auto n = static_cast<Eigen::Index>(times.size());
  double fs = static_cast<double>(n - 1) / (times.back() - times.front());
  if (!(fs > 0.0)) throw FormatError(recording_path + ": time column must increase");
  if (std::abs(fs - std::round(fs)) < 1e-6) fs = std::round(fs);

  Recording rec;
  rec.patient_id = patient_id;
  rec.sample_rate = fs;
  rec.channels.resize(channels, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < channels; ++c)
      rec.channels(c, i) = samples[static_cast<std::size_t>(i * channels + c)];

  auto ann_in = open_input(annotations_path);
  if (!std::getline(ann_in, line)) throw FormatError(annotations_path + ": empty file");
  if (split_line(line) != std::vector<std::string>{"start_s", "end_s", "label", "seizure_id"})
    throw FormatError(annotations_path + ": expected header start_s,end_s,label,seizure_id");
  while (std::getline(ann_in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != 4) throw FormatError(annotations_path + ": expected 4 columns");
    Annotation a;
    a.start_s = parse_double(fields[0], annotations_path);
    a.end_s = parse_double(fields[1], annotations_path);
    if (fields[2] == "seizure")
      a.seizure = true;
    else if (fields[2] == "background")
      a.seizure = false;
    else
      throw FormatError(annotations_path + ": unknown label '" + fields[2] + "'");
    a.seizure_id = static_cast<int>(parse_long(fields[3], annotations_path));
    rec.annotations.push_back(a);
  }
  rec.validate();
  return rec;
}

void write_features_csv(const std::string& path, const LabeledDataset& data) {
  data.validate();
  auto out = open_output(path);
  out << "patient_id,seizure_id,label,overlap";
  for (Eigen::Index j = 0; j < data.dims(); ++j) {
    char name[32];
    std::snprintf(name, sizeof(name), ",f%02d", static_cast<int>(j + 1));
    out << name;
  }
  out << "\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    out << data.group_ids[static_cast<std::size_t>(i)] << ","
        << data.seizure_ids[static_cast<std::size_t>(i)] << "," << data.labels(i) << ","
        << (data.overlap_flags[static_cast<std::size_t>(i)] ? 1 : 0);
    for (Eigen::Index j = 0; j < data.dims(); ++j)
      out << "," << format_full_precision(data.features(i, j));
    out << "\n";
  }
  finish_write(out, path);
}

LabeledDataset read_features_csv(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");
  const auto header = split_line(line);
  if (header.size() < 5 || header[0] != "patient_id" || header[1] != "seizure_id" ||
      header[2] != "label" || header[3] != "overlap")
    throw FormatError(path + ": expected header patient_id,seizure_id,label,overlap,f01..");
  const auto dims = static_cast<Eigen::Index>(header.size() - 4);

  std::vector<std::string> groups;
  std::vector<int> seizures;
  std::vector<int> labels;
  std::vector<bool> overlaps;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (static_cast<Eigen::Index>(fields.size()) != dims + 4)
      throw FormatError(path + ": inconsistent column count");
    groups.push_back(fields[0]);
    seizures.push_back(static_cast<int>(parse_long(fields[1], path)));
    const long label = parse_long(fields[2], path);
    if (label != 1 && label != -1)
      throw FormatError(path + ": label must be +1 or -1, got " + fields[2]);
    labels.push_back(static_cast<int>(label));
    overlaps.push_back(parse_long(fields[3], path) != 0);
    for (Eigen::Index j = 0; j < dims; ++j)
      values.push_back(parse_double(fields[static_cast<std::size_t>(j + 4)], path));
  }

  LabeledDataset data;
  const auto n = static_cast<Eigen::Index>(groups.size());
  data.features.resize(n, dims);
  data.labels.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    data.labels(i) = labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < dims; ++j)
      data.features(i, j) = values[static_cast<std::size_t>(i * dims + j)];
  }
  data.group_ids = std::move(groups);
  data.seizure_ids = std::move(seizures);
  data.overlap_flags = std::move(overlaps);
  data.validate();
  return data;
}

void write_history_csv(const std::string& path, const std::vector<double>& history) {
  auto out = open_output(path);
  out << "update,objective\n";
  for (std::size_t i = 0; i < history.size(); ++i)
    out << (i + 1) << "," << format_full_precision(history[i]) << "\n";
  finish_write(out, path);
}

void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points) {
  auto out = open_output(path);
  out << "update,auroc,auprc\n";
  for (const CurvePoint& p : points)
    out << p.update << "," << format_full_precision(p.auroc) << ","
        << format_full_precision(p.auprc) << "\n";
  finish_write(out, path);
}

void write_folds_csv(const std::string& path, const std::vector<FoldReport>& folds) {
  auto out = open_output(path);
  out << "fold_id,auroc,auprc,f1,sensitivity,precision,threshold,"
         "tp,fp,tn,fn,train_size,test_size,single_class\n";
  for (const FoldReport& f : folds) {
    out << f.fold_id << ",";
    out << (f.auroc ? format_full_precision(*f.auroc) : "undefined") << ",";
    out << (f.auprc ? format_full_precision(*f.auprc) : "undefined") << ",";
    out << format_full_precision(f.f1) << "," << format_full_precision(f.sensitivity) << ","
        << format_full_precision(f.precision) << "," << format_full_precision(f.threshold)
        << "," << f.confusion.tp << "," << f.confusion.fp << "," << f.confusion.tn << ","
        << f.confusion.fn << "," << f.train_size << "," << f.test_size << ","
        << (f.single_class ? 1 : 0) << "\n";
  }
  finish_write(out, path);
}

}  // namespace tkm
