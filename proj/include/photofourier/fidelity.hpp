#ifndef PHOTOFOURIER_FIDELITY_HPP
#define PHOTOFOURIER_FIDELITY_HPP

// Numerical-fidelity models: uniform quantization, pseudo-negative filter
// splitting, photodetector temporal accumulation with a single ADC readout,
// and additive sensing noise.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "photofourier/errors.hpp"
#include "photofourier/signal.hpp"
#include "photofourier/tiling.hpp"

namespace photofourier::fidelity {

enum class Detection { Linear, Square };

struct QuantConfig {
  int act_bits = 8;
  int weight_bits = 8;
  int adc_bits = 8;
};

struct AccumulationConfig {
  std::size_t depth = 16;  // N_TA: channels summed at the photodetector per readout
  Detection detection = Detection::Linear;
  double snr_db = 20.0;  // +infinity disables sensing noise
};

struct FilterPair {
  Kernel2D p;
  Kernel2D n;
};

inline void require_bits(int bits, const char* what) {
  if (bits < 2 || bits > 16) throw InvalidInput(std::string(what) + ": bits must be in [2, 16]");
}

inline FilterPair pseudo_negative_split(const Kernel2D& ker) {
  require_image(ker, "kernel");
  FilterPair fp{Kernel2D(ker.rows, ker.cols), Kernel2D(ker.rows, ker.cols)};
  for (std::size_t i = 0; i < ker.data.size(); ++i) {
    fp.p.data[i] = std::max(ker.data[i], 0.0);
    fp.n.data[i] = std::max(-ker.data[i], 0.0);
  }
  return fp;
}

/// Symmetric uniform quantization with a per-tensor max-abs scale; idempotent.
inline double quantize_uniform(double x, int bits, double scale) {
  require_bits(bits, "quantize_uniform");
  if (!(scale > 0.0)) throw DegenerateScale("quantize_uniform: scale must be positive");
  const double qmax = static_cast<double>((1 << (bits - 1)) - 1);
  double q = std::round(x / scale * qmax);
  q = std::min(std::max(q, -qmax), qmax);
  return q * scale / qmax;
}

inline Signal1D quantize_uniform(const Signal1D& x, int bits, double scale) {
  Signal1D out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = quantize_uniform(x[i], bits, scale);
  return out;
}

inline Image2D quantize_uniform(const Image2D& x, int bits, double scale) {
  Image2D out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.data.size(); ++i) out.data[i] = quantize_uniform(x.data[i], bits, scale);
  return out;
}

inline double max_abs(const Image2D& x) {
  double m = 0.0;
  for (double v : x.data) m = std::max(m, std::fabs(v));
  return m;
}

/// Photodetector charge readout: clamp to [0, full_scale], quantize to
/// 2^bits uniform levels, dequantize. Both endpoints and the midpoint are
/// represented exactly; the error never exceeds full_scale / 2^(bits+1).
inline double adc_readout(double v, int bits, double full_scale) {
  require_bits(bits, "adc_readout");
  if (!(full_scale > 0.0)) throw DegenerateScale("adc_readout: full_scale must be positive");
  v = std::min(std::max(v, 0.0), full_scale);
  const double step = full_scale / static_cast<double>(1 << bits);
  return std::round(v / step) * step;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
  return (static_cast<double>(splitmix64(state) >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller; one standard normal per call, deterministic across platforms.
inline double gaussian(std::uint64_t& state) {
  const double u1 = uniform01(state);
  const double u2 = uniform01(state);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = seed;
  s ^= splitmix64(a) + 0x9e3779b97f4a7c15ULL;
  s ^= splitmix64(b) + (s << 6) + (s >> 2);
  s ^= splitmix64(c) + (s << 6) + (s >> 2);
  return s;
}

}  // namespace detail

/// Sums up to cfg.depth per-channel partial values at full precision (after
/// the optional Square detection transform), adds one zero-mean Gaussian
/// noise draw with power snr_db below the mean signal power, then applies a
/// single ADC readout. Deterministic given rng_seed.
inline double temporal_accumulate(const Signal1D& partials, const AccumulationConfig& cfg,
                                  const QuantConfig& q, double full_scale, std::uint64_t rng_seed) {
  if (cfg.depth < 1) throw InvalidInput("temporal_accumulate: depth must be >= 1");
  if (partials.size() > cfg.depth)
    throw DepthExceeded("temporal_accumulate: more partials than the accumulation depth");
  double sum = 0.0, power = 0.0;
  for (double v : partials) {
    const double t = cfg.detection == Detection::Square ? v * v : v;
    sum += t;
    power += t * t;
  }
  if (std::isfinite(cfg.snr_db) && !partials.empty()) {
    if (!(cfg.snr_db > 0.0)) throw InvalidInput("temporal_accumulate: snr_db must be positive");
    const double mean_power = power / static_cast<double>(partials.size());
    const double sigma = std::sqrt(mean_power / std::pow(10.0, cfg.snr_db / 10.0));
    std::uint64_t state = rng_seed;
    sum += sigma * detail::gaussian(state);
  }
  return adc_readout(sum, q.adc_bits, full_scale);
}

struct ErrorStats {
  double mean_abs = 0.0;
  double max_abs = 0.0;
  double mean_rel = 0.0;  // relative to the mean |reference|
  std::size_t count = 0;
};

struct LayerShape {
  std::size_t in_size = 0;
  std::size_t kernel = 0;
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
};

namespace detail {

// Exact per-channel 'same' partial convolutions of the quantized tensors,
// routed through the 1D tiling path with edge padding (bit-exact), one
// stream each for the positive and negative kernel halves.
struct LayerPartials {
  std::vector<std::vector<Image2D>> p;  // [out][in]
  std::vector<std::vector<Image2D>> n;
  std::vector<Image2D> reference;       // float reference per out channel
};

inline LayerPartials layer_partials(const LayerShape& shape,
                                    const std::vector<std::vector<Kernel2D>>& weights,
                                    const std::vector<Image2D>& inputs, const QuantConfig& q) {
  if (weights.size() != shape.out_channels || inputs.size() != shape.in_channels)
    throw ShapeMismatch("layer_fidelity_sim: channel counts disagree with the layer shape");
  for (const auto& row : weights)
    if (row.size() != shape.in_channels)
      throw ShapeMismatch("layer_fidelity_sim: weight tensor in_channels mismatch");

  // one-step row-tiling size for the padded rows
  const std::size_t row_len = shape.in_size + 2 * (shape.kernel / 2);
  const std::size_t n_conv = row_len * (shape.in_size + shape.kernel - 1) + 1;

  LayerPartials lp;
  lp.p.resize(shape.out_channels);
  lp.n.resize(shape.out_channels);
  lp.reference.assign(shape.out_channels, Image2D(shape.in_size, shape.in_size));

  std::vector<Image2D> qin;
  qin.reserve(inputs.size());
  for (const auto& img : inputs) {
    require_image(img, "input");
    if (img.rows != shape.in_size || !img.square())
      throw ShapeMismatch("layer_fidelity_sim: input image size mismatch");
    const double s = max_abs(img);
    qin.push_back(s > 0.0 ? quantize_uniform(img, q.act_bits, s) : img);
  }

  for (std::size_t co = 0; co < shape.out_channels; ++co) {
    lp.p[co].reserve(shape.in_channels);
    lp.n[co].reserve(shape.in_channels);
    for (std::size_t ci = 0; ci < shape.in_channels; ++ci) {
      const Kernel2D& w = weights[co][ci];
      require_image(w, "weight");
      if (w.rows != shape.kernel || !w.square())
        throw ShapeMismatch("layer_fidelity_sim: kernel size mismatch");

      const Image2D ref = tiling::conv2d_reference(inputs[ci], w, tiling::RefMode::Same);
      for (std::size_t t = 0; t < ref.data.size(); ++t) lp.reference[co].data[t] += ref.data[t];

      const double s = max_abs(w);
      const Kernel2D qw = s > 0.0 ? quantize_uniform(w, q.weight_bits, s) : w;
      const FilterPair fp = pseudo_negative_split(qw);
      lp.p[co].push_back(tiling::conv2d_via_1d(qin[ci], fp.p, n_conv, tiling::direct_backend,
                                               tiling::PaddingMode::ZeroPadEdges));
      lp.n[co].push_back(tiling::conv2d_via_1d(qin[ci], fp.n, n_conv, tiling::direct_backend,
                                               tiling::PaddingMode::ZeroPadEdges));
    }
  }
  return lp;
}

// Largest accumulated charge seen across all groups/streams/positions; this
// is the ADC reference used when no override is given.
inline double calibrate_full_scale(const LayerPartials& lp, const LayerShape& shape,
                                   const AccumulationConfig& a) {
  double m = 0.0;
  const std::size_t groups = (shape.in_channels + a.depth - 1) / a.depth;
  for (std::size_t co = 0; co < shape.out_channels; ++co)
    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t c0 = g * a.depth, c1 = std::min(shape.in_channels, c0 + a.depth);
      for (std::size_t t = 0; t < shape.in_size * shape.in_size; ++t) {
        double sp = 0.0, sn = 0.0;
        for (std::size_t ci = c0; ci < c1; ++ci) {
          double vp = lp.p[co][ci].data[t], vn = lp.n[co][ci].data[t];
          if (a.detection == Detection::Square) vp *= vp, vn *= vn;
          sp += vp;
          sn += vn;
        }
        m = std::max({m, sp, sn});
      }
    }
  return m;
}

}  // namespace detail

/// Runs one conv layer through the accelerator fidelity model: per-tensor
/// quantization, pseudo-negative kernel pairs accumulated as separate
/// photodetector streams, grouped temporal accumulation of depth a.depth
/// with noise and one ADC readout per group, digital subtraction and digital
/// summation across groups. Returns element-wise error statistics against
/// the float reference. full_scale_override = 0 self-calibrates the ADC
/// reference on this layer.
inline ErrorStats layer_fidelity_sim(const LayerShape& shape,
                                     const std::vector<std::vector<Kernel2D>>& weights,
                                     const std::vector<Image2D>& inputs, const QuantConfig& q,
                                     const AccumulationConfig& a, std::uint64_t seed,
                                     double full_scale_override = 0.0) {
  require_bits(q.act_bits, "act");
  require_bits(q.weight_bits, "weight");
  require_bits(q.adc_bits, "adc");
  const detail::LayerPartials lp = detail::layer_partials(shape, weights, inputs, q);
  const double fs = full_scale_override > 0.0 ? full_scale_override
                                              : detail::calibrate_full_scale(lp, shape, a);
  const double full_scale = fs > 0.0 ? fs : 1.0;

  ErrorStats st;
  double abs_sum = 0.0, ref_sum = 0.0;
  const std::size_t groups = (shape.in_channels + a.depth - 1) / a.depth;
  const std::size_t npos = shape.in_size * shape.in_size;

  Signal1D part_p, part_n;
  for (std::size_t co = 0; co < shape.out_channels; ++co)
    for (std::size_t t = 0; t < npos; ++t) {
      double out = 0.0;
      for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t c0 = g * a.depth, c1 = std::min(shape.in_channels, c0 + a.depth);
        part_p.clear();
        part_n.clear();
        for (std::size_t ci = c0; ci < c1; ++ci) {
          part_p.push_back(lp.p[co][ci].data[t]);
          part_n.push_back(lp.n[co][ci].data[t]);
        }
        const std::uint64_t sp = detail::mix_seed(seed, co, g * 2, t);
        const std::uint64_t sn = detail::mix_seed(seed, co, g * 2 + 1, t);
        out += temporal_accumulate(part_p, a, q, full_scale, sp) -
               temporal_accumulate(part_n, a, q, full_scale, sn);
      }
      const double err = std::fabs(out - lp.reference[co].data[t]);
      abs_sum += err;
      ref_sum += std::fabs(lp.reference[co].data[t]);
      st.max_abs = std::max(st.max_abs, err);
      ++st.count;
    }

  st.mean_abs = st.count ? abs_sum / static_cast<double>(st.count) : 0.0;
  const double ref_mean = st.count ? ref_sum / static_cast<double>(st.count) : 0.0;
  st.mean_rel = ref_mean > 0.0 ? st.mean_abs / ref_mean : 0.0;
  return st;
}

/// Mean absolute error per accumulation depth, using one ADC reference
/// calibrated at the deepest setting so the depths are comparable.
inline std::vector<double> depth_sweep(const LayerShape& shape,
                                       const std::vector<std::vector<Kernel2D>>& weights,
                                       const std::vector<Image2D>& inputs, const QuantConfig& q,
                                       const AccumulationConfig& base,
                                       const std::vector<std::size_t>& depths, std::uint64_t seed) {
  if (depths.empty()) throw InvalidInput("depth_sweep: no depths given");
  const detail::LayerPartials lp = detail::layer_partials(shape, weights, inputs, q);
  AccumulationConfig deepest = base;
  deepest.depth = *std::max_element(depths.begin(), depths.end());
  const double fs = detail::calibrate_full_scale(lp, shape, deepest);
  std::vector<double> mae;
  mae.reserve(depths.size());
  for (std::size_t d : depths) {
    AccumulationConfig a = base;
    a.depth = d;
    mae.push_back(layer_fidelity_sim(shape, weights, inputs, q, a, seed, fs > 0.0 ? fs : 1.0).mean_abs);
  }
  return mae;
}

}  // namespace photofourier::fidelity

#endif
