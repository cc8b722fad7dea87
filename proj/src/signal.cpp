#include "tkm/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace tkm {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

// Forward (causal) direct-form-II-transposed pass, zero initial state.
void filter_row(const Biquad& bq, Eigen::MatrixXd& channels, Eigen::Index row) {
  double s1 = 0.0, s2 = 0.0;
  for (Eigen::Index n = 0; n < channels.cols(); ++n) {
    const double x = channels(row, n);
    const double y = bq.b0 * x + s1;
    s1 = bq.b1 * x - bq.a1 * y + s2;
    s2 = bq.b2 * x - bq.a2 * y;
    channels(row, n) = y;
  }
}

Eigen::MatrixXd apply_cascade(const Eigen::MatrixXd& channels,
                              const std::vector<Biquad>& sections) {
  Eigen::MatrixXd out = channels;
  for (Eigen::Index c = 0; c < out.rows(); ++c)
    for (const Biquad& bq : sections) filter_row(bq, out, c);
  return out;
}

// 4th-order Butterworth bandpass as four biquads: the analog prototype is
// transformed lowpass-to-bandpass (8 poles, 4 zeros at s=0) and discretized
// by the bilinear transform with prewarped edges.
std::vector<Biquad> design_butter_bandpass(double low_hz, double high_hz, double fs) {
  if (!(low_hz > 0.0) || !(low_hz < high_hz) || !(high_hz < fs / 2.0))
    throw DomainError("bandpass_filter: need 0 < low < high < fs/2");
  const double w1 = 4.0 * std::tan(kPi * low_hz / fs);
  const double w2 = 4.0 * std::tan(kPi * high_hz / fs);
  const double wo2 = w1 * w2;
  const double bw = w2 - w1;
  constexpr int order = 4;

  std::vector<std::complex<double>> digital;  // one pole per conjugate pair
  std::complex<double> prod_bilinear(1.0, 0.0);
  for (int k = 1; k <= order; ++k) {
    const double theta = kPi * (2.0 * k + order - 1.0) / (2.0 * order);
    const std::complex<double> proto(std::cos(theta), std::sin(theta));
    if (proto.imag() <= 0.0) continue;  // conjugate partner handled implicitly
    const std::complex<double> ps = proto * (bw / 2.0);
    const std::complex<double> disc = std::sqrt(ps * ps - wo2);
    for (const std::complex<double>& s : {ps + disc, ps - disc}) {
      prod_bilinear *= (4.0 - s);
      digital.push_back((4.0 + s) / (4.0 - s));
    }
  }
  // Overall gain: bw^4 * prod(4 - s_zero) / prod(4 - s_pole) over all 8
  // poles; the conjugate half contributes the complex conjugate, so the
  // product is |prod_bilinear|^2.
  const double k_dig = std::pow(bw, order) * 256.0 / std::norm(prod_bilinear);
  const double g = std::pow(k_dig, 1.0 / static_cast<double>(digital.size()));

  std::vector<Biquad> sections;
  sections.reserve(digital.size());
  for (const std::complex<double>& z : digital)
    sections.push_back({g, 0.0, -g, -2.0 * z.real(), std::norm(z)});
  return sections;
}

Biquad design_notch(double freq_hz, double q, double fs) {
  if (!(freq_hz > 0.0) || !(freq_hz < fs / 2.0))
    throw DomainError("notch_filter: need 0 < freq < fs/2");
  if (!(q > 0.0)) throw DomainError("notch_filter: quality factor must be positive");
  const double w0 = 2.0 * kPi * freq_hz / fs;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad bq;
  bq.b0 = 1.0 / a0;
  bq.b1 = -2.0 * std::cos(w0) / a0;
  bq.b2 = 1.0 / a0;
  bq.a1 = -2.0 * std::cos(w0) / a0;
  bq.a2 = (1.0 - alpha) / a0;
  return bq;
}

// Best rational p/q ~= ratio with q <= max_den, by continued fractions.
bool rational_ratio(double ratio, long max_den, long* p, long* q) {
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double x = ratio;
  for (int iter = 0; iter < 64; ++iter) {
    const double af = std::floor(x);
    const long a = static_cast<long>(af);
    const long h = a * h0 + h1;
    const long k = a * k0 + k1;
    if (k > max_den) break;
    h1 = h0; h0 = h;
    k1 = k0; k0 = k;
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - ratio) <= 1e-9 * ratio) {
      *p = h;
      *q = k;
      return true;
    }
    const double rem = x - af;
    if (rem < 1e-12) break;
    x = 1.0 / rem;
  }
  return false;
}

// Windowed-sinc interpolation at output positions n*q/p (input-sample
// units). Weights are renormalized to sum 1 at every output phase so DC is
// preserved even at the edges.
Eigen::MatrixXd sinc_resample(const Eigen::MatrixXd& channels, long p, long q) {
  const Eigen::Index s = channels.cols();
  const Eigen::Index n_out = static_cast<Eigen::Index>(((s - 1) * p) / q) + 1;
  const double cutoff = std::min(0.5, 0.5 * static_cast<double>(p) / static_cast<double>(q));
  const double half = 10.0 * std::max(1.0, static_cast<double>(q) / static_cast<double>(p));

  Eigen::MatrixXd out(channels.rows(), n_out);
  for (Eigen::Index n = 0; n < n_out; ++n) {
    const double t = static_cast<double>(n * q) / static_cast<double>(p);
    const auto lo = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::ceil(t - half)));
    const auto hi = std::min<Eigen::Index>(s - 1, static_cast<Eigen::Index>(std::floor(t + half)));
    double wsum = 0.0;
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(channels.rows());
    for (Eigen::Index i = lo; i <= hi; ++i) {
      const double u = static_cast<double>(i) - t;
      const double kern =
          u == 0.0 ? 2.0 * cutoff : std::sin(2.0 * kPi * cutoff * u) / (kPi * u);
      const double taper = 0.5 * (1.0 + std::cos(kPi * u / half));
      const double w = kern * taper;
      wsum += w;
      acc += w * channels.col(i);
    }
    out.col(n) = acc / wsum;
  }
  return out;
}

Eigen::MatrixXd linear_resample(const Eigen::MatrixXd& channels, double fs, double target_hz) {
  const Eigen::Index s = channels.cols();
  const auto n_out = static_cast<Eigen::Index>(
                         std::floor(static_cast<double>(s - 1) * target_hz / fs)) + 1;
  Eigen::MatrixXd out(channels.rows(), n_out);
  for (Eigen::Index n = 0; n < n_out; ++n) {
    const double pos = static_cast<double>(n) * fs / target_hz;
    const auto i0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(pos)), s - 1);
    const auto i1 = std::min<Eigen::Index>(i0 + 1, s - 1);
    const double frac = pos - static_cast<double>(i0);
    out.col(n) = (1.0 - frac) * channels.col(i0) + frac * channels.col(i1);
  }
  return out;
}

double band_mean(const Eigen::VectorXd& psd, double df, double lo, double hi) {
  double sum = 0.0;
  long count = 0;
  for (Eigen::Index k = 0; k < psd.size(); ++k) {
    const double f = static_cast<double>(k) * df;
    if (f >= lo && f <= hi) {
      sum += psd(k);
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

void Recording::validate() const {
  if (!(sample_rate > 0.0)) throw DomainError("Recording: sample rate must be positive");
  if (channels.size() > 0 && !channels.allFinite())
    throw DomainError("Recording: samples must be finite");
  const double dur = duration_s();
  const double slack = 0.5 / sample_rate + 1e-9;
  std::vector<std::pair<double, double>> spans;
  spans.reserve(annotations.size());
  for (const Annotation& a : annotations) {
    if (!(a.end_s > a.start_s)) throw DomainError("Recording: empty annotation span");
    if (a.start_s < -1e-9 || a.end_s > dur + slack)
      throw DomainError("Recording: annotation outside the recording");
    if (a.seizure && a.seizure_id < 1)
      throw DomainError("Recording: seizure annotation needs a positive id");
    spans.emplace_back(a.start_s, a.end_s);
  }
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i)
    if (spans[i].first < spans[i - 1].second - 1e-9)
      throw DomainError("Recording: overlapping annotations");
}

void WindowSpec::validate() const {
  if (!(length_s > 0.0)) throw DomainError("WindowSpec: length must be positive");
  if (seizure_overlap < 0.0 || seizure_overlap >= 1.0 || background_overlap < 0.0 ||
      background_overlap >= 1.0)
    throw DomainError("WindowSpec: overlaps must lie in [0, 1)");
}

Recording resample(const Recording& rec, double target_hz) {
  rec.validate();
  if (!(target_hz > 0.0)) throw DomainError("resample: target rate must be positive");
  if (rec.sample_count() == 0) throw DimensionError("resample: empty recording");
  if (target_hz == rec.sample_rate) return rec;

  Recording out = rec;
  out.sample_rate = target_hz;
  long p = 0, q = 0;
  if (rational_ratio(target_hz / rec.sample_rate, 1024, &p, &q))
    out.channels = sinc_resample(rec.channels, p, q);
  else
    out.channels = linear_resample(rec.channels, rec.sample_rate, target_hz);
  return out;
}

Recording bandpass_filter(const Recording& rec, double low_hz, double high_hz) {
  rec.validate();
  const auto sections = design_butter_bandpass(low_hz, high_hz, rec.sample_rate);
  Recording out = rec;
  out.channels = apply_cascade(rec.channels, sections);
  return out;
}

Recording notch_filter(const Recording& rec, double freq_hz, double q) {
  rec.validate();
  const Biquad bq = design_notch(freq_hz, q, rec.sample_rate);
  Recording out = rec;
  out.channels = apply_cascade(rec.channels, {bq});
  return out;
}

std::vector<Window> segment_windows(const Recording& rec, const WindowSpec& spec) {
  rec.validate();
  spec.validate();
  const auto length = static_cast<Eigen::Index>(std::lround(spec.length_s * rec.sample_rate));
  std::vector<Window> windows;
  if (length < 1) return windows;
  for (const Annotation& a : rec.annotations) {
    const auto s0 = std::max<Eigen::Index>(
        0, static_cast<Eigen::Index>(std::lround(a.start_s * rec.sample_rate)));
    const auto s1 = std::min<Eigen::Index>(
        rec.sample_count(), static_cast<Eigen::Index>(std::lround(a.end_s * rec.sample_rate)));
    const double overlap = a.seizure ? spec.seizure_overlap : spec.background_overlap;
    const auto stride = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::lround(static_cast<double>(length) * (1.0 - overlap))));
    long index_in_annotation = 0;
    for (Eigen::Index start = s0; start + length <= s1; start += stride, ++index_in_annotation) {
      Window w;
      w.start = start;
      w.samples = rec.channels.middleCols(start, length);
      w.label = a.seizure ? 1 : -1;
      w.seizure_id = a.seizure ? a.seizure_id : 0;
      w.overlap_flag = overlap > 0.0 && index_in_annotation % 2 == 1;
      windows.push_back(std::move(w));
    }
  }
  return windows;
}

Eigen::VectorXd time_domain_features(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 3) throw DimensionError("time_domain_features: need at least 3 samples");

  long crossings = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int sign = x(i) > 0.0 ? 1 : (x(i) < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }

  long maxima = 0, minima = 0;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (x(i) > x(i - 1) && x(i) > x(i + 1)) ++maxima;
    if (x(i) < x(i - 1) && x(i) < x(i + 1)) ++minima;
  }

  const double nd = static_cast<double>(n);
  const double mean = x.mean();
  const Eigen::ArrayXd centered = x.array() - mean;
  const double m2 = centered.square().mean();
  double skewness = 0.0, kurtosis = 0.0;
  if (m2 > 0.0) {
    const double m3 = centered.cube().mean();
    const double g1 = m3 / std::pow(m2, 1.5);
    skewness = g1 * std::sqrt(nd * (nd - 1.0)) / (nd - 2.0);
    if (n >= 4) {
      const double m4 = centered.square().square().mean();
      const double g2 = m4 / (m2 * m2) - 3.0;
      kurtosis = ((nd + 1.0) * g2 + 6.0) * (nd - 1.0) / ((nd - 2.0) * (nd - 3.0));
    }
  }

  const double rms = std::sqrt(x.squaredNorm() / nd);
  const double line_length = (x.tail(n - 1) - x.head(n - 1)).cwiseAbs().sum();

  Eigen::VectorXd out(7);
  out << static_cast<double>(crossings), static_cast<double>(maxima),
      static_cast<double>(minima), skewness, kurtosis, rms, line_length;
  return out;
}

Eigen::VectorXd periodogram_psd(const Eigen::VectorXd& x, double fs) {
  const Eigen::Index n = x.size();
  if (n < 2) throw DimensionError("periodogram_psd: need at least 2 samples");
  if (!(fs > 0.0)) throw DomainError("periodogram_psd: sample rate must be positive");

  Eigen::VectorXd window(n);
  for (Eigen::Index i = 0; i < n; ++i)
    window(i) = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
  const Eigen::VectorXd xw = window.cwiseProduct(x);
  const double wss = window.squaredNorm();

  std::vector<double> cos_table(static_cast<std::size_t>(n));
  std::vector<double> sin_table(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    cos_table[static_cast<std::size_t>(j)] = std::cos(angle);
    sin_table[static_cast<std::size_t>(j)] = std::sin(angle);
  }

  const Eigen::Index half = n / 2;
  Eigen::VectorXd psd(half + 1);
  for (Eigen::Index k = 0; k <= half; ++k) {
    double re = 0.0, im = 0.0;
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      re += xw(i) * cos_table[static_cast<std::size_t>(idx)];
      im -= xw(i) * sin_table[static_cast<std::size_t>(idx)];
      idx += k;
      if (idx >= n) idx -= n;
    }
    double p = (re * re + im * im) / (fs * wss);
    if (k > 0 && !(n % 2 == 0 && k == half)) p *= 2.0;
    psd(k) = p;
  }
  return psd;
}

Eigen::VectorXd frequency_domain_features(const Eigen::VectorXd& x, double fs,
                                          const Eigen::VectorXd& hf_channel) {
  if (fs < 200.0)
    throw DomainError("frequency_domain_features: sample rate too low for the HF band");
  const Eigen::VectorXd psd = periodogram_psd(x, fs);
  const double df = fs / static_cast<double>(x.size());

  double total = 0.0;
  double peak = 0.0;
  double peak_power = 0.0;
  for (Eigen::Index k = 0; k < psd.size(); ++k) {
    const double f = static_cast<double>(k) * df;
    if (f < 0.5) continue;
    total += psd(k) * df;
    if (psd(k) > peak_power) {
      peak_power = psd(k);
      peak = f;
    }
  }

  const Eigen::VectorXd hf_psd = periodogram_psd(hf_channel, fs);
  const double hf_df = fs / static_cast<double>(hf_channel.size());

  Eigen::VectorXd out(7);
  out << total, peak, band_mean(psd, df, 1.0, 3.0), band_mean(psd, df, 4.0, 8.0),
      band_mean(psd, df, 9.0, 13.0), band_mean(psd, df, 14.0, 20.0),
      band_mean(hf_psd, hf_df, 40.0, 80.0);
  return out;
}

Eigen::VectorXd entropy_features(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 100) throw DimensionError("entropy_features: need at least 100 samples");

  // Spectral entropy over the DC-free one-sided PSD.
  const Eigen::VectorXd psd = periodogram_psd(x, 1.0);
  const Eigen::Index bins = psd.size() - 1;
  const double total = psd.tail(bins).sum();
  double spectral = 0.0;
  if (total > 0.0) {
    double h = 0.0;
    for (Eigen::Index k = 1; k < psd.size(); ++k) {
      const double p = psd(k) / total;
      if (p > 0.0) h -= p * std::log(p);
    }
    spectral = h / std::log(static_cast<double>(bins));
  }

  // Sample entropy, m = 2, r = 0.2 * population standard deviation.
  constexpr Eigen::Index m = 2;
  const double mean = x.mean();
  const double sd = std::sqrt((x.array() - mean).square().mean());
  const double r = 0.2 * sd;
  const Eigen::Index templates = n - m;
  long matches_m = 0, matches_m1 = 0;
  for (Eigen::Index i = 0; i < templates; ++i) {
    for (Eigen::Index j = i + 1; j < templates; ++j) {
      if (std::abs(x(i) - x(j)) > r || std::abs(x(i + 1) - x(j + 1)) > r) continue;
      ++matches_m;
      if (std::abs(x(i + 2) - x(j + 2)) <= r) ++matches_m1;
    }
  }
  double sampen = 0.0;
  if (matches_m > 0) {
    sampen = matches_m1 > 0
                 ? std::log(static_cast<double>(matches_m) / static_cast<double>(matches_m1))
                 : std::log(static_cast<double>(templates) *
                            static_cast<double>(templates - 1) / 2.0);
  }

  Eigen::VectorXd out(2);
  out << spectral, sampen;
  return out;
}

Eigen::VectorXd sort_channel_features(const Eigen::MatrixXd& per_channel) {
  if (per_channel.rows() < 1) throw DimensionError("sort_channel_features: need a channel");
  const Eigen::Index c = per_channel.rows();
  const Eigen::Index f = per_channel.cols();
  Eigen::VectorXd out(c * f);
  std::vector<double> column(static_cast<std::size_t>(c));
  for (Eigen::Index j = 0; j < f; ++j) {
    for (Eigen::Index i = 0; i < c; ++i) column[static_cast<std::size_t>(i)] = per_channel(i, j);
    std::sort(column.begin(), column.end(), std::greater<double>());
    for (Eigen::Index i = 0; i < c; ++i) out(j * c + i) = column[static_cast<std::size_t>(i)];
  }
  return out;
}

LabeledDataset extract_features(const Recording& rec, const PipelineConfig& cfg) {
  rec.validate();
  cfg.window.validate();
  const Recording at_rate = resample(rec, cfg.target_hz);
  const Recording notched = notch_filter(at_rate, cfg.notch_hz, cfg.notch_q);
  const Recording banded = bandpass_filter(notched, cfg.bandpass_low_hz, cfg.bandpass_high_hz);
  const std::vector<Window> windows = segment_windows(banded, cfg.window);

  const Eigen::Index c = rec.channel_count();
  LabeledDataset data;
  data.features.resize(static_cast<Eigen::Index>(windows.size()), c * kFeaturesPerChannel);
  data.labels.resize(static_cast<Eigen::Index>(windows.size()));
  data.group_ids.reserve(windows.size());
  data.seizure_ids.reserve(windows.size());
  data.overlap_flags.reserve(windows.size());

  Eigen::MatrixXd per_channel(c, kFeaturesPerChannel);
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    const Window& w = windows[wi];
    const Eigen::Index length = w.samples.cols();
    for (Eigen::Index ch = 0; ch < c; ++ch) {
      const Eigen::VectorXd band_x = w.samples.row(ch).transpose();
      // HF band features come from the notched, not-yet-bandpassed samples.
      const Eigen::VectorXd hf_x =
          notched.channels.row(ch).segment(w.start, length).transpose();
      per_channel.row(ch).segment(0, 7) = time_domain_features(band_x).transpose();
      per_channel.row(ch).segment(7, 7) =
          frequency_domain_features(band_x, notched.sample_rate, hf_x).transpose();
      per_channel.row(ch).segment(14, 2) = entropy_features(band_x).transpose();
    }
    data.features.row(static_cast<Eigen::Index>(wi)) = sort_channel_features(per_channel);
    data.labels(static_cast<Eigen::Index>(wi)) = w.label;
    data.group_ids.push_back(rec.patient_id);
    data.seizure_ids.push_back(w.seizure_id);
    data.overlap_flags.push_back(w.overlap_flag);
  }
  data.validate();
  return data;
}

Recording synthesize_recording(const SynthesisSpec& spec) {
  if (!(spec.duration_s > 0.0)) throw DomainError("synthesize_recording: duration must be positive");
  if (!(spec.sample_rate > 0.0))
    throw DomainError("synthesize_recording: sample rate must be positive");
  if (spec.seizures < 0) throw DomainError("synthesize_recording: seizure count must be >= 0");
  double slot = 0.0;
  if (spec.seizures > 0) {
    if (spec.seizure_duration_s < 10.0)
      throw DomainError("synthesize_recording: seizures must last at least 10 s");
    slot = spec.duration_s / static_cast<double>(spec.seizures);
    if (slot < spec.seizure_duration_s + 8.0)
      throw DomainError("synthesize_recording: seizure spec exceeds the duration");
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Patient parameters, drawn in a fixed documented order.
  const double bg_scale = 0.95 + 0.2 * uniform(rng);
  const double tilt = 0.95 + 0.035 * uniform(rng);
  // Two seizure flavours inside the 3-5 Hz range: a delta-edge rhythm whose
  // harmonic lands in theta, and a theta rhythm whose harmonic lands in
  // alpha, so patients differ systematically in band signature.
  const double flavour = uniform(rng);
  const double osc_hz = (flavour < 0.5 ? 3.15 : 4.55) + 0.25 * uniform(rng);
  const double burst_amp = 2.0 + 1.0 * uniform(rng);
  const double harmonic = 0.4 + 0.2 * uniform(rng);
  const double white_mix = 0.2 + 0.1 * uniform(rng);
  const double phase = 2.0 * kPi * uniform(rng);
  // Slow vigilance-style drift of the background level across the recording,
  // so background statistics are non-stationary within one patient.
  const double drift_depth = 0.15 + 0.15 * uniform(rng);
  const double drift_cycles = 2.0 + 2.0 * uniform(rng);
  const double drift_phase = 2.0 * kPi * uniform(rng);
  // Artifact swells: brief one-sided surges of extra colored noise in the
  // background (movement/muscle-like). Rate, strength, and spectral character
  // are patient-specific, so amplitude features are unreliable across
  // patients in a patient-dependent way.
  const double swell_rate_per_min = 1.0 + 2.0 * uniform(rng);
  const double swell_amp = 1.8 + 1.4 * uniform(rng);
  const double swell_low_prob = 0.2 + 0.6 * uniform(rng);

  const auto samples = static_cast<Eigen::Index>(std::lround(spec.duration_s * spec.sample_rate));
  Recording rec;
  rec.patient_id = spec.patient_id;
  rec.sample_rate = spec.sample_rate;
  rec.channels.resize(2, samples);

  // Background: AR(1)-colored noise (spectral tilt set by the pole) mixed
  // with a white component, per channel.
  const double colored_sd = (1.0 - tilt) / std::sqrt(1.0 - tilt * tilt);
  for (Eigen::Index ch = 0; ch < 2; ++ch) {
    double state = 0.0;
    for (Eigen::Index i = 0; i < samples; ++i) {
      state = tilt * state + (1.0 - tilt) * normal(rng);
      const double white = normal(rng);
      const double drift =
          1.0 + drift_depth * std::sin(2.0 * kPi * drift_cycles *
                                           static_cast<double>(i) /
                                           static_cast<double>(samples) +
                                       drift_phase);
      rec.channels(ch, i) = bg_scale * drift *
                            ((1.0 - white_mix) * state / colored_sd +
                             white_mix * white);
    }
  }

  // Artifact swells, kept clear of the seizure slots.
  if (spec.seizures >= 0) {
    const int swell_count = static_cast<int>(
        std::lround(swell_rate_per_min * spec.duration_s / 60.0));
    const double guard = 4.0;
    for (int a = 0; a < swell_count; ++a) {
      const double dur = 1.5 + 2.0 * uniform(rng);
      const double at = uniform(rng) * (spec.duration_s - dur);
      const Eigen::Index side = uniform(rng) < 0.5 ? 0 : 1;
      const double pole = uniform(rng) < swell_low_prob ? 0.975 : 0.6;
      bool clear = true;
      for (int k = 0; k < spec.seizures; ++k) {
        const double center = (static_cast<double>(k) + 0.5) * slot;
        const double s0 = center - 0.5 * spec.seizure_duration_s - guard;
        const double s1 = center + 0.5 * spec.seizure_duration_s + guard;
        if (at + dur > s0 && at < s1) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      const auto a0 = static_cast<Eigen::Index>(std::lround(at * spec.sample_rate));
      const auto a1 = std::min(
          samples, static_cast<Eigen::Index>(std::lround((at + dur) * spec.sample_rate)));
      const double sd = (1.0 - pole) / std::sqrt(1.0 - pole * pole);
      double state = 0.0;
      for (Eigen::Index i = a0; i < a1; ++i) {
        state = pole * state + (1.0 - pole) * normal(rng);
        const double env =
            std::sin(kPi * static_cast<double>(i - a0) / static_cast<double>(a1 - a0));
        rec.channels(side, i) += swell_amp * env * env * state / sd;
      }
    }
  }

  // Seizures: growing-amplitude rhythmic bursts on alternating channels,
  // one per slot, centered.
  double previous_end = 0.0;
  for (int k = 0; k < spec.seizures; ++k) {
    const double center = (static_cast<double>(k) + 0.5) * slot;
    const double start = center - 0.5 * spec.seizure_duration_s;
    const double end = center + 0.5 * spec.seizure_duration_s;
    const auto n0 = static_cast<Eigen::Index>(std::lround(start * spec.sample_rate));
    const auto n1 =
        std::min(samples, static_cast<Eigen::Index>(std::lround(end * spec.sample_rate)));
    const Eigen::Index side = k % 2;
    for (Eigen::Index i = n0; i < n1; ++i) {
      const double t = static_cast<double>(i - n0) / spec.sample_rate;
      const double progress = static_cast<double>(i - n0) / static_cast<double>(n1 - n0);
      const double ramp = 0.35 + 0.65 * progress;
      rec.channels(side, i) +=
          burst_amp * ramp *
          (std::sin(2.0 * kPi * osc_hz * t + phase) +
           harmonic * std::sin(4.0 * kPi * osc_hz * t + 0.7 * phase));
    }

    Annotation background;
    background.start_s = previous_end;
    background.end_s = start;
    rec.annotations.push_back(background);
    Annotation seizure;
    seizure.start_s = start;
    seizure.end_s = end;
    seizure.seizure = true;
    seizure.seizure_id = k + 1;
    rec.annotations.push_back(seizure);
    previous_end = end;
  }
  if (previous_end < spec.duration_s) {
    Annotation tail;
    tail.start_s = previous_end;
    tail.end_s = spec.duration_s;
    rec.annotations.push_back(tail);
  }
  rec.validate();
  return rec;
}

}  // namespace tkm
