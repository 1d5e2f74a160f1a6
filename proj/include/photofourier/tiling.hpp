#ifndef PHOTOFOURIER_TILING_HPP
#define PHOTOFOURIER_TILING_HPP

// 2D convolution via 1D convolution: row tiling, partial row tiling and row
// partitioning, plus the exact 2D reference used as the oracle.
//
// Convention: cross-correlation (CNN convention) throughout; the 1D backend
// computes the full sliding-dot-product cross-correlation, which is what the
// JTC's +d term natively produces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "photofourier/errors.hpp"
#include "photofourier/optics.hpp"
#include "photofourier/signal.hpp"

namespace photofourier::tiling {

enum class PaddingMode { None, ZeroPadEdges };
enum class TilingVariant { RowTiling, PartialRowTiling, RowPartitioning };

/// Full 1D cross-correlation backend. Both inputs share one length L; the
/// result has length 2L-1 with lag j at index j + L - 1.
using Backend1D = std::function<Signal1D(const Signal1D&, const Signal1D&)>;

struct TilingPlan {
  TilingVariant variant = TilingVariant::RowTiling;
  PaddingMode padding = PaddingMode::None;
  std::size_t s_i = 0;
  std::size_t s_k = 0;
  std::size_t n_conv = 0;
  std::size_t row_len = 0;              // tiled row length: s_i, + 2*pad with ZeroPadEdges
  std::size_t rows_per_step = 0;        // N_ir = floor(n_conv / row_len)
  std::size_t valid_rows_per_step = 0;  // N_or (row tiling only)
  std::size_t steps = 0;                // 1D convolutions per 2D conv for row tiling
  std::size_t cycles = 0;               // total 1D convolutions per full 2D conv

  std::size_t pad() const { return s_k / 2; }
};

struct TiledPair {
  Signal1D input_1d;
  Signal1D kernel_1d;
  std::size_t step_index = 0;
};

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

inline TilingPlan plan_tiling(std::size_t s_i, std::size_t s_k, std::size_t n_conv,
                              PaddingMode padding = PaddingMode::None) {
  if (s_k < 1 || s_i < s_k) throw InvalidInput("plan_tiling: need s_i >= s_k >= 1");
  if (n_conv < s_k) throw Infeasible("plan_tiling: a single kernel row does not fit in n_conv");

  TilingPlan p;
  p.padding = padding;
  p.s_i = s_i;
  p.s_k = s_k;
  p.n_conv = n_conv;
  p.row_len = padding == PaddingMode::ZeroPadEdges ? s_i + 2 * (s_k / 2) : s_i;
  p.rows_per_step = n_conv / p.row_len;

  if (n_conv > s_k * p.row_len) {
    p.variant = TilingVariant::RowTiling;
    p.valid_rows_per_step = p.rows_per_step - s_k + 1;
    p.steps = ceil_div(s_i, p.valid_rows_per_step);
    p.cycles = p.steps;
  } else if (n_conv >= p.row_len) {
    p.variant = TilingVariant::PartialRowTiling;
    p.valid_rows_per_step = 0;
    p.cycles = s_i * ceil_div(s_k, p.rows_per_step);
    p.steps = p.cycles;
  } else {
    p.variant = TilingVariant::RowPartitioning;
    p.valid_rows_per_step = 0;
    p.rows_per_step = 0;
    p.cycles = s_i * s_k * ceil_div(s_i, n_conv);
    p.steps = p.cycles;
  }
  return p;
}

namespace detail {

// Copies image row r into dst (length plan.row_len), honoring the padding
// mode; rows outside the image are all zero.
inline void emit_row(const Image2D& img, long r, const TilingPlan& plan, double* dst) {
  std::fill(dst, dst + plan.row_len, 0.0);
  if (r < 0 || r >= static_cast<long>(img.rows)) return;
  const std::size_t col_off = plan.padding == PaddingMode::ZeroPadEdges ? plan.pad() : 0;
  for (std::size_t c = 0; c < img.cols; ++c) dst[col_off + c] = img.at(static_cast<std::size_t>(r), c);
}

// First tiled image row of a row-tiling step. Step 0 starts at the top (the
// leading zero pad comes from the correlation boundary); later steps re-tile
// the pad rows preceding their first emitted output row so every emitted row
// sees its full vertical context.
inline long first_tiled_row(const TilingPlan& plan, std::size_t step) {
  if (step == 0) return 0;
  return static_cast<long>(step * plan.valid_rows_per_step) - static_cast<long>(plan.pad());
}

inline Signal1D tile_kernel(const Kernel2D& ker, const TilingPlan& plan, std::size_t len) {
  Signal1D w(len, 0.0);
  for (std::size_t kr = 0; kr < plan.s_k; ++kr)
    for (std::size_t kc = 0; kc < plan.s_k; ++kc) w[kr * plan.row_len + kc] = ker.at(kr, kc);
  return w;
}

// Lag-q sample of a full correlation of two equal-length (L) signals.
inline double at_lag(const Signal1D& full, long q, std::size_t len) {
  const long u = q + static_cast<long>(len) - 1;
  if (u < 0 || u >= static_cast<long>(full.size()))
    throw LengthMismatch("correlation output shorter than expected");
  return full[static_cast<std::size_t>(u)];
}

}  // namespace detail

inline void require_square_pair(const Image2D& img, const Kernel2D& ker) {
  require_image(img, "image");
  require_image(ker, "kernel");
  if (!img.square()) throw InvalidInput("tiling: image must be square");
  if (!ker.square()) throw InvalidInput("tiling: kernel must be square");
  if (ker.rows > img.rows) throw InvalidInput("tiling: kernel larger than image");
}

/// One row-tiling step: input rows tiled contiguously (clamped at the image
/// bottom, zero-filled to n_conv) and all kernel rows tiled with
/// row_len - s_k zero gaps between them.
inline TiledPair tile_step(const Image2D& img, const Kernel2D& ker, const TilingPlan& plan,
                           std::size_t step) {
  require_square_pair(img, ker);
  if (plan.variant != TilingVariant::RowTiling)
    throw Infeasible("tile_step: plan is not a row-tiling plan");
  if (step >= plan.steps) throw StepOutOfRange("tile_step: step index past plan.steps");

  TiledPair out;
  out.step_index = step;
  out.input_1d.assign(plan.n_conv, 0.0);
  const long r0 = detail::first_tiled_row(plan, step);
  for (std::size_t b = 0; b < plan.rows_per_step; ++b)
    detail::emit_row(img, r0 + static_cast<long>(b), plan, out.input_1d.data() + b * plan.row_len);
  out.kernel_1d = detail::tile_kernel(ker, plan, plan.n_conv);
  return out;
}

/// Valid output rows of one step: min(N_or, remaining) rows of length s_i,
/// read from the window of the same-aligned output where the tiled kernel
/// lies fully inside the tiled input rows.
inline std::vector<Signal1D> extract_valid_rows(const Signal1D& conv_out, const TilingPlan& plan,
                                                std::size_t step) {
  if (plan.variant != TilingVariant::RowTiling)
    throw Infeasible("extract_valid_rows: plan is not a row-tiling plan");
  if (step >= plan.steps) throw StepOutOfRange("extract_valid_rows: step index past plan.steps");
  if (conv_out.size() != 2 * plan.n_conv - 1)
    throw LengthMismatch("extract_valid_rows: expected a full correlation of two n_conv signals");

  const std::size_t pad = plan.pad();
  const std::size_t n_emit = std::min(plan.valid_rows_per_step, plan.s_i - step * plan.valid_rows_per_step);
  const std::size_t window_row = step == 0 ? 0 : pad;
  const std::size_t col_off = plan.padding == PaddingMode::ZeroPadEdges ? pad : 0;
  const long off = static_cast<long>(pad * plan.row_len + pad);

  std::vector<Signal1D> rows(n_emit, Signal1D(plan.s_i, 0.0));
  for (std::size_t a = 0; a < n_emit; ++a)
    for (std::size_t c = 0; c < plan.s_i; ++c) {
      const long q = static_cast<long>((window_row + a) * plan.row_len + c + col_off) - off;
      rows[a][c] = detail::at_lag(conv_out, q, plan.n_conv);
    }
  return rows;
}

/// Textbook sliding-window cross-correlation, the 2D oracle.
enum class RefMode { Same, Valid };

inline Image2D conv2d_reference(const Image2D& img, const Kernel2D& ker, RefMode mode) {
  require_square_pair(img, ker);
  const long pad = static_cast<long>(ker.rows / 2);
  const std::size_t out_n = mode == RefMode::Same ? img.rows : img.rows - ker.rows + 1;
  Image2D out(out_n, out_n);
  for (std::size_t i = 0; i < out_n; ++i)
    for (std::size_t c = 0; c < out_n; ++c) {
      double acc = 0.0;
      for (std::size_t kr = 0; kr < ker.rows; ++kr)
        for (std::size_t kc = 0; kc < ker.cols; ++kc) {
          const long r = mode == RefMode::Same
                             ? static_cast<long>(i + kr) - pad
                             : static_cast<long>(i + kr);
          const long cc = mode == RefMode::Same
                              ? static_cast<long>(c + kc) - pad
                              : static_cast<long>(c + kc);
          if (r < 0 || r >= static_cast<long>(img.rows) || cc < 0 || cc >= static_cast<long>(img.cols))
            continue;
          acc += ker.at(kr, kc) * img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(cc));
        }
      out.at(i, c) = acc;
    }
  return out;
}

inline Signal1D direct_backend(const Signal1D& a, const Signal1D& b) {
  return optics::correlate_full(a, b);
}

/// 1D backend routed through the JTC pipeline. Trailing zeros are trimmed
/// before placement on the plane and the correlation is re-embedded at the
/// matching lags.
inline Signal1D jtc_backend(const Signal1D& a, const Signal1D& b) {
  if (a.size() != b.size()) throw LengthMismatch("jtc_backend: inputs must share a length");
  const std::size_t len = a.size();
  auto trimmed = [](const Signal1D& v) {
    std::size_t n = v.size();
    while (n > 0 && v[n - 1] == 0.0) --n;
    return n;
  };
  const std::size_t na = trimmed(a), nb = trimmed(b);
  Signal1D out(2 * len - 1, 0.0);
  if (na == 0 || nb == 0) return out;

  const Signal1D s(a.begin(), a.begin() + static_cast<long>(na));
  const Signal1D k(b.begin(), b.begin() + static_cast<long>(nb));
  const optics::JtcConfig cfg = optics::default_config(na, nb);
  const Signal1D term = optics::extract_correlation_term(optics::jtc_correlate(s, k, cfg), na, nb);
  // term[u'] is lag u' - (nb - 1); lag j sits at index j + len - 1.
  for (std::size_t u = 0; u < term.size(); ++u) {
    const long j = static_cast<long>(u) - static_cast<long>(nb) + 1;
    out[static_cast<std::size_t>(j + static_cast<long>(len) - 1)] = term[u];
  }
  return out;
}

namespace detail {

inline Signal1D run_backend(const Backend1D& backend, Signal1D x, Signal1D w, std::size_t min_len) {
  const std::size_t len = std::max({min_len, x.size(), w.size()});
  x.resize(len, 0.0);
  w.resize(len, 0.0);
  return backend(x, w);
}

// Partial row tiling: one output row is accumulated over ceil(s_k / N_ir)
// cycles, each tiling a chunk of kernel rows with the matching input rows.
// A pad-sample context from the physically adjacent rows is kept at the chunk
// edges so column straddles behave like contiguous row tiling.
inline void conv_row_partial(const Image2D& img, const Kernel2D& ker, const TilingPlan& plan,
                             const Backend1D& backend, std::size_t i, double* out_row) {
  const std::size_t pad = plan.pad();
  const std::size_t col_off = plan.padding == PaddingMode::ZeroPadEdges ? pad : 0;
  const std::size_t chunk_rows = plan.rows_per_step;
  const std::size_t chunks = ceil_div(plan.s_k, chunk_rows);
  std::fill(out_row, out_row + plan.s_i, 0.0);

  for (std::size_t q = 0; q < chunks; ++q) {
    const std::size_t kr0 = q * chunk_rows;
    const std::size_t nk = std::min(chunk_rows, plan.s_k - kr0);
    const long r_first = static_cast<long>(i + kr0) - static_cast<long>(pad);

    Signal1D x(pad + nk * plan.row_len + pad, 0.0);
    // pre-context: tail of the row above the chunk
    {
      Signal1D prev(plan.row_len, 0.0);
      emit_row(img, r_first - 1, plan, prev.data());
      for (std::size_t t = 0; t < pad; ++t) x[t] = prev[plan.row_len - pad + t];
    }
    for (std::size_t b = 0; b < nk; ++b)
      emit_row(img, r_first + static_cast<long>(b), plan, x.data() + pad + b * plan.row_len);
    // post-context: head of the row below the chunk
    {
      Signal1D next(plan.row_len, 0.0);
      emit_row(img, r_first + static_cast<long>(nk), plan, next.data());
      for (std::size_t t = 0; t < pad; ++t) x[pad + nk * plan.row_len + t] = next[t];
    }

    Signal1D w(nk * plan.row_len, 0.0);
    for (std::size_t b = 0; b < nk; ++b)
      for (std::size_t kc = 0; kc < plan.s_k; ++kc)
        w[b * plan.row_len + kc] = ker.at(kr0 + b, kc);

    const std::size_t run_len = std::max(plan.n_conv, x.size());
    const Signal1D full = run_backend(backend, std::move(x), std::move(w), run_len);
    // value(c) = sum_t x[(c + col_off) + t] w[t]; the context pad at the head
    // of x supplies the backward straddle samples.
    for (std::size_t c = 0; c < plan.s_i; ++c)
      out_row[c] += at_lag(full, static_cast<long>(c + col_off), run_len);
  }
}

// Row partitioning: each output row is assembled per kernel row from
// column partitions of at most n_conv samples, with a pad-sample halo.
inline void conv_row_partitioned(const Image2D& img, const Kernel2D& ker, const TilingPlan& plan,
                                 const Backend1D& backend, std::size_t i, double* out_row) {
  const std::size_t pad = plan.pad();
  const std::size_t parts = ceil_div(plan.s_i, plan.n_conv);
  std::fill(out_row, out_row + plan.s_i, 0.0);

  Signal1D row(plan.s_i, 0.0);
  for (std::size_t kr = 0; kr < plan.s_k; ++kr) {
    const long r = static_cast<long>(i + kr) - static_cast<long>(pad);
    std::fill(row.begin(), row.end(), 0.0);
    if (r >= 0 && r < static_cast<long>(img.rows))
      for (std::size_t c = 0; c < img.cols; ++c) row[c] = img.at(static_cast<std::size_t>(r), c);

    Signal1D w(ker.cols, 0.0);
    for (std::size_t kc = 0; kc < ker.cols; ++kc) w[kc] = ker.at(kr, kc);

    for (std::size_t p = 0; p < parts; ++p) {
      const std::size_t c0 = p * plan.n_conv;
      const std::size_t c1 = std::min(plan.s_i, c0 + plan.n_conv);
      Signal1D x(c1 - c0 + plan.s_k - 1, 0.0);
      for (std::size_t t = 0; t < x.size(); ++t) {
        const long cc = static_cast<long>(c0 + t) - static_cast<long>(pad);
        if (cc >= 0 && cc < static_cast<long>(plan.s_i)) x[t] = row[static_cast<std::size_t>(cc)];
      }
      const std::size_t run_len = std::max(plan.n_conv, x.size());
      const Signal1D full = run_backend(backend, std::move(x), w, run_len);
      for (std::size_t c = c0; c < c1; ++c)
        out_row[c] += at_lag(full, static_cast<long>(c - c0), run_len);
    }
  }
}

}  // namespace detail

/// 'Same'-mode 2D convolution of a square image assembled from 1D
/// correlations per the tiling plan. With ZeroPadEdges the result is
/// bit-identical to conv2d_reference(Same); with PaddingMode::None it
/// differs only at the column-seam positions of the tiled layout.
inline Image2D conv2d_via_1d(const Image2D& img, const Kernel2D& ker, std::size_t n_conv,
                             const Backend1D& backend, PaddingMode padding = PaddingMode::None) {
  require_square_pair(img, ker);
  const TilingPlan plan = plan_tiling(img.rows, ker.rows, n_conv, padding);
  Image2D out(img.rows, img.cols);

  switch (plan.variant) {
    case TilingVariant::RowTiling:
      for (std::size_t step = 0; step < plan.steps; ++step) {
        const TiledPair pair = tile_step(img, ker, plan, step);
        const Signal1D conv = backend(pair.input_1d, pair.kernel_1d);
        const auto rows = extract_valid_rows(conv, plan, step);
        for (std::size_t a = 0; a < rows.size(); ++a) {
          const std::size_t i = step * plan.valid_rows_per_step + a;
          std::copy(rows[a].begin(), rows[a].end(), out.data.begin() + static_cast<long>(i * out.cols));
        }
      }
      break;
    case TilingVariant::PartialRowTiling:
      for (std::size_t i = 0; i < plan.s_i; ++i)
        detail::conv_row_partial(img, ker, plan, backend, i, out.data.data() + i * out.cols);
      break;
    case TilingVariant::RowPartitioning:
      for (std::size_t i = 0; i < plan.s_i; ++i)
        detail::conv_row_partitioned(img, ker, plan, backend, i, out.data.data() + i * out.cols);
      break;
  }
  return out;
}

}  // namespace photofourier::tiling

#endif
