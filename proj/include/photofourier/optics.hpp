#ifndef PHOTOFOURIER_OPTICS_HPP
#define PHOTOFOURIER_OPTICS_HPP

// Discrete scalar model of a 1D on-chip joint transform correlator:
// compose the joint input plane, Fourier lens, square-law detection at the
// Fourier plane, second lens, and extraction of the cross-correlation term.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "photofourier/errors.hpp"
#include "photofourier/signal.hpp"

namespace photofourier::optics {

/// Readout model at the output plane. Linear reads the correlation
/// amplitudes directly; Square models an intensity detector there and is
/// only meant for sensitivity studies.
enum class OutputReadout { Linear, Square };

struct JtcConfig {
  std::size_t plane_size = 0;  // N, discrete positions on the joint plane
  std::size_t offset_s = 0;    // x_s, offset of the signal from the left edge
  std::size_t offset_k = 0;    // x_k, offset of the kernel from the right edge
  OutputReadout readout = OutputReadout::Linear;

  std::size_t separation() const { return offset_s + offset_k; }
};

struct JtcOutput {
  std::vector<double> plane;       // real output-plane readout, length N
  std::size_t separation = 0;      // d = x_s + x_k
  double imag_residual = 0.0;      // max |Im| relative to max |plane| before realization
  // Center positions of the three output terms on the circular plane:
  // the non-convolution term at 0, the two cross terms at +/- d offsets.
  std::size_t center_zero() const { return 0; }
  std::size_t center_plus() const { return separation + 1; }
  std::size_t center_minus() const { return plane.size() - separation - 1; }
};

/// True iff the three JTC output terms occupy disjoint supports on the
/// circular plane for inputs of the given lengths at separation d.
/// The cross terms each span s_len + k_len - 1 samples; the center term
/// spans lags up to max(s_len, k_len) - 1 on either side.  d >= W keeps the
/// cross terms clear of the center, and N >= 2d + 2W + 1 keeps the two cross
/// terms clear of each other (no circular aliasing).
inline bool separation_check(std::size_t s_len, std::size_t k_len, std::size_t d, std::size_t n) {
  if (s_len == 0 || k_len == 0 || n == 0) return false;
  const std::size_t w = s_len + k_len - 1;
  return d >= w && n >= 2 * d + 2 * w + 1;
}

/// Smallest plane size passing separation_check for the given lengths and
/// separation, rounded up to a power of two.
inline std::size_t default_plane_size(std::size_t s_len, std::size_t k_len, std::size_t d) {
  const std::size_t w = s_len + k_len - 1;
  const std::size_t n_min = 2 * d + 2 * w + 1;
  std::size_t n = 1;
  while (n < n_min) n *= 2;
  return n;
}

/// Config with the minimal separation d = s_len + k_len - 1 and the default
/// plane size; the signal carries the whole offset (x_k = 0).
inline JtcConfig default_config(std::size_t s_len, std::size_t k_len) {
  const std::size_t d = s_len + k_len - 1;
  return JtcConfig{default_plane_size(s_len, k_len, d), d, 0};
}

inline void require_separation(const Signal1D& s, const Signal1D& k, const JtcConfig& cfg) {
  if (!separation_check(s.size(), k.size(), cfg.separation(), cfg.plane_size))
    throw SeparationViolation("jtc: term supports would overlap or wrap on the plane");
  if (cfg.plane_size < s.size() + k.size() + cfg.separation())
    throw SeparationViolation("jtc: input supports do not fit on the plane");
}

/// Place s starting at x_s and k ending x_k short of the right edge, the two
/// inputs at opposite ends of the plane separated by d = x_s + x_k across the
/// wrap point. All other positions are dark.
inline Signal1D compose_joint_input(const Signal1D& s, const Signal1D& k, const JtcConfig& cfg) {
  require_signal(s, "signal");
  require_signal(k, "kernel");
  require_nonnegative(s, "signal");
  require_nonnegative(k, "kernel");
  require_separation(s, k, cfg);
  Signal1D plane(cfg.plane_size, 0.0);
  std::copy(s.begin(), s.end(), plane.begin() + static_cast<long>(cfg.offset_s));
  const std::size_t k_start = cfg.plane_size - cfg.offset_k - k.size();
  std::copy(k.begin(), k.end(), plane.begin() + static_cast<long>(k_start));
  return plane;
}

namespace detail {

// Unitary DFT, radix-2 when the length is a power of two, direct otherwise.
inline void fft_pow2(ComplexField1D& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline ComplexField1D dft_direct(const ComplexField1D& x) {
  const std::size_t n = x.size();
  ComplexField1D out(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(m) *
                         static_cast<double>(t) / static_cast<double>(n);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace detail

/// Unitary discrete Fourier transform (1/sqrt(N) normalization), the action
/// of one on-chip lens on the field.
inline ComplexField1D fourier_lens(ComplexField1D field) {
  if (field.empty()) throw InvalidInput("fourier_lens: length must be >= 1");
  const std::size_t n = field.size();
  if ((n & (n - 1)) == 0) {
    detail::fft_pow2(field);
  } else {
    field = detail::dft_direct(field);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : field) v *= norm;
  return field;
}

inline ComplexField1D fourier_lens(const Signal1D& field) {
  ComplexField1D c(field.begin(), field.end());
  return fourier_lens(std::move(c));
}

/// Square-law detection: element-wise |F|^2.
inline Signal1D square_detect(const ComplexField1D& field) {
  Signal1D out(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = std::norm(field[i]);
  return out;
}

/// Full JTC pipeline: lens -> square detection -> lens.  With unitary lenses
/// the second transform of the Fourier-plane intensity is the circular
/// autocorrelation of the joint input scaled by 1/sqrt(N); the output plane
/// is rescaled by sqrt(N) so the cross terms carry the plain
/// sliding-dot-product cross-correlation values.
inline JtcOutput jtc_correlate(const Signal1D& s, const Signal1D& k, const JtcConfig& cfg) {
  const Signal1D joint = compose_joint_input(s, k, cfg);
  const ComplexField1D fplane = fourier_lens(joint);
  const Signal1D intensity = square_detect(fplane);
  const ComplexField1D oplane = fourier_lens(intensity);

  const double scale = std::sqrt(static_cast<double>(cfg.plane_size));
  JtcOutput out;
  out.separation = cfg.separation();
  out.plane.resize(oplane.size());
  double max_mag = 0.0, max_imag = 0.0;
  for (std::size_t i = 0; i < oplane.size(); ++i) {
    out.plane[i] = oplane[i].real() * scale;
    max_mag = std::max(max_mag, std::abs(oplane[i]));
    max_imag = std::max(max_imag, std::abs(oplane[i].imag()));
  }
  out.imag_residual = max_mag > 0.0 ? max_imag / max_mag : 0.0;
  if (cfg.readout == OutputReadout::Square)
    for (auto& v : out.plane) v *= v;
  return out;
}

/// Window of length s_len + k_len - 1 at the +d term: the full
/// cross-correlation c[j] = sum_t s[t+j] k[t] for j = -(k_len-1) .. s_len-1.
inline Signal1D extract_correlation_term(const JtcOutput& out, std::size_t s_len, std::size_t k_len) {
  const std::size_t w = s_len + k_len - 1;
  if (out.plane.size() < 2 * out.separation + 2 * w + 1)
    throw WindowOutOfBounds("extract_correlation_term: plane too small for the term window");
  Signal1D term(w);
  for (std::size_t i = 0; i < w; ++i)
    term[i] = out.plane[(out.separation + 1 + i) % out.plane.size()];
  return term;
}

/// Direct sliding-dot-product full cross-correlation, same ordering as
/// extract_correlation_term. Zero kernel taps are skipped; tiled kernels
/// are mostly gaps.
inline Signal1D correlate_full(const Signal1D& s, const Signal1D& k) {
  if (s.empty() || k.empty()) throw InvalidInput("correlate_full: empty input");
  Signal1D out(s.size() + k.size() - 1, 0.0);
  std::vector<std::size_t> taps;
  taps.reserve(k.size());
  for (std::size_t t = 0; t < k.size(); ++t)
    if (k[t] != 0.0) taps.push_back(t);
  for (std::size_t u = 0; u < out.size(); ++u) {
    const long j = static_cast<long>(u) - static_cast<long>(k.size()) + 1;
    double acc = 0.0;
    for (std::size_t t : taps) {
      const long si = static_cast<long>(t) + j;
      if (si >= 0 && si < static_cast<long>(s.size())) acc += s[static_cast<std::size_t>(si)] * k[t];
    }
    out[u] = acc;
  }
  return out;
}

}  // namespace photofourier::optics

#endif
