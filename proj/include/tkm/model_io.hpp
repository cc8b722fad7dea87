#pragma once

#include <string>

#include "tkm/errors.hpp"
#include "tkm/metrics.hpp"
#include "tkm/tkrr.hpp"

namespace tkm {

/// Writes the model as a self-describing "tkm-model v1" text document:
/// version line, dimensions, map and solver hyperparameters, scaler bounds,
/// decision threshold, objective history, and the factor matrices in
/// column-major order, all floats at 17 significant digits.
void save_model(const std::string& path, const TkrrModel& model);

/// Parses a "tkm-model v1" document. Throws FormatError with the offending
/// detail on version mismatch or corruption; predictions of a saved-then-
/// loaded model match the original to 1e-12 (exact decimal round trip).
TkrrModel load_model(const std::string& path);

/// Flat key-value report document (one `key value` pair per line); AUROC
/// and AUPRC print as `undefined` when the test labels were single-class.
void write_report(const std::string& path, const EvaluationReport& report);

}  // namespace tkm
