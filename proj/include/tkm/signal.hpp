#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "tkm/dataset.hpp"
#include "tkm/errors.hpp"

namespace tkm {

struct Annotation {
  double start_s = 0.0;
  double end_s = 0.0;
  bool seizure = false;
  int seizure_id = 0;  // 1-based for seizures, 0 for background
};

/// Multichannel recording with non-overlapping annotations covering spans of
/// interest. Channels are rows.
struct Recording {
  std::string patient_id;
  double sample_rate = 250.0;
  Eigen::MatrixXd channels;  // C x S
  std::vector<Annotation> annotations;

  Eigen::Index channel_count() const { return channels.rows(); }
  Eigen::Index sample_count() const { return channels.cols(); }
  double duration_s() const {
    return static_cast<double>(sample_count()) / sample_rate;
  }
  void validate() const;
};

struct WindowSpec {
  double length_s = 2.0;
  double seizure_overlap = 0.5;
  double background_overlap = 0.0;
  void validate() const;
};

struct Window {
  Eigen::Index start = 0;  // sample offset into the recording
  Eigen::MatrixXd samples;  // C x L
  int label = -1;           // +1 seizure, -1 background
  int seizure_id = 0;
  bool overlap_flag = false;
};

/// Resamples every channel to the target rate: windowed-sinc polyphase when
/// the rates are rationally related, linear interpolation otherwise.
/// A recording already at the target rate passes through unchanged.
/// Annotations are in seconds and are copied as-is.
Recording resample(const Recording& rec, double target_hz = 250.0);

/// Forward (causal) 4th-order Butterworth bandpass, realized as cascaded
/// biquads designed by bilinear transform with frequency prewarping.
Recording bandpass_filter(const Recording& rec, double low_hz = 0.1, double high_hz = 50.0);

/// Forward second-order IIR notch.
Recording notch_filter(const Recording& rec, double freq_hz = 50.0, double q = 30.0);

/// Cuts annotation spans into fixed-length windows. Seizure windows advance
/// by length*(1-seizure_overlap) samples and every second window within an
/// annotation carries overlap_flag=true (it shares samples with its
/// predecessor); background windows advance by the full length. Partial
/// tails are dropped, and no window straddles an annotation boundary.
std::vector<Window> segment_windows(const Recording& rec, const WindowSpec& spec);

inline constexpr int kFeaturesPerChannel = 16;

/// 7 values: zero crossings, local maxima count, local minima count,
/// bias-corrected skewness, bias-corrected excess kurtosis, RMS, line
/// length. Constant windows yield skewness = kurtosis = 0.
Eigen::VectorXd time_domain_features(const Eigen::VectorXd& x);

/// One-sided Hann periodogram: P_k = |X_k|^2 / (fs * sum w^2), doubled for
/// 0 < k < L/2, at frequencies k*fs/L for k = 0..floor(L/2).
Eigen::VectorXd periodogram_psd(const Eigen::VectorXd& x, double fs);

/// 7 values: total power (PSD integral over [0.5, fs/2]), peak frequency
/// (argmax over the same range, 0 for an all-zero PSD), and mean PSD in the
/// delta (1-3), theta (4-8), alpha (9-13), beta (14-20) and HF (40-80 Hz)
/// bands; the HF band is computed from the separately supplied pre-lowpass
/// samples. Requires fs >= 200 so the HF band is observable.
Eigen::VectorXd frequency_domain_features(const Eigen::VectorXd& x, double fs,
                                          const Eigen::VectorXd& hf_channel);

/// 2 values: spectral entropy (Shannon entropy of the DC-free normalized
/// PSD divided by log of the bin count, in [0,1]; 0 for a constant window)
/// and sample entropy (m=2, r=0.2*std; 0 when no length-m template pairs
/// match, capped at log((L-m)(L-m-1)/2) when no length-m+1 pairs match).
Eigen::VectorXd entropy_features(const Eigen::VectorXd& x);

/// Sorts each of the 16 feature types independently across channels in
/// descending order, then concatenates type-major; invariant to channel
/// permutation.
Eigen::VectorXd sort_channel_features(const Eigen::MatrixXd& per_channel);

struct PipelineConfig {
  double target_hz = 250.0;
  double bandpass_low_hz = 0.1;
  double bandpass_high_hz = 50.0;
  double notch_hz = 50.0;
  double notch_q = 30.0;
  WindowSpec window;
};

/// Full preprocessing + feature pipeline: resample -> notch -> (HF source)
/// -> bandpass -> window -> 16 features per channel -> channel sort.
/// Produces one row per window with C*16 columns.
LabeledDataset extract_features(const Recording& rec, const PipelineConfig& cfg = {});

struct SynthesisSpec {
  std::string patient_id = "p0";
  std::uint64_t seed = 0;
  double duration_s = 600.0;
  int seizures = 9;
  double seizure_duration_s = 20.0;
  double sample_rate = 250.0;
};

/// Two-channel synthetic EEG: 1/f-shaped colored-noise background with
/// rhythmic 3-5 Hz growing-amplitude bursts superimposed on alternating
/// channels during seizure spans. Per-patient oscillation frequency, burst
/// amplitude, noise scale and spectral tilt are drawn from the seed, so
/// patients differ systematically. Deterministic given the spec.
Recording synthesize_recording(const SynthesisSpec& spec);

}  // namespace tkm
