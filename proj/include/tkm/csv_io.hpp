#pragma once

#include <string>
#include <vector>

#include "tkm/dataset.hpp"
#include "tkm/errors.hpp"
#include "tkm/metrics.hpp"
#include "tkm/signal.hpp"

namespace tkm {

/// Formats a double with 17 significant digits (%.16e), enough for an exact
/// decimal round trip.
std::string format_full_precision(double value);

/// Parses a floating-point token; throws FormatError on trailing garbage.
double parse_double(const std::string& token, const std::string& context);

/// Recording CSV: header `time_s,ch1,...,chC`, one row per sample.
void write_recording_csv(const std::string& path, const Recording& rec);

/// Annotation CSV: header `start_s,end_s,label,seizure_id` with label
/// `seizure` or `background`.
void write_annotations_csv(const std::string& path, const std::vector<Annotation>& annotations);

/// Reads the recording + annotation pair back. The sample rate is derived
/// from the time column and snapped to an integer when within 1e-6 Hz.
Recording read_recording_csv(const std::string& recording_path,
                             const std::string& annotations_path,
                             const std::string& patient_id);

/// Feature CSV: header `patient_id,seizure_id,label,overlap,f01..fNN`,
/// features at full precision, label +1/-1, overlap 0/1.
void write_features_csv(const std::string& path, const LabeledDataset& data);
LabeledDataset read_features_csv(const std::string& path);

/// Objective-history CSV: header `update,objective`.
void write_history_csv(const std::string& path, const std::vector<double>& history);

/// Fine-tuning iteration curve: header `update,auroc,auprc`.
struct CurvePoint {
  long update = 0;
  double auroc = 0.0;
  double auprc = 0.0;
};
void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& points);

/// Per-fold evaluation table.
void write_folds_csv(const std::string& path, const std::vector<FoldReport>& folds);

}  // namespace tkm
