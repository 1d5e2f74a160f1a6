#ifndef PHOTOFOURIER_SIGNAL_HPP
#define PHOTOFOURIER_SIGNAL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "photofourier/errors.hpp"

namespace photofourier {

using Signal1D = std::vector<double>;
using ComplexField1D = std::vector<std::complex<double>>;

inline bool all_finite(const Signal1D& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void require_signal(const Signal1D& v, const char* what) {
  if (v.empty()) throw InvalidInput(std::string(what) + ": length must be >= 1");
  if (!all_finite(v)) throw InvalidInput(std::string(what) + ": non-finite sample");
}

inline void require_nonnegative(const Signal1D& v, const char* what) {
  for (double x : v)
    if (x < 0.0) throw InvalidInput(std::string(what) + ": negative amplitude");
}

/// Row-major real matrix. The tiling algorithms operate on square images
/// (rectangular support is rejected there, not here).
struct Image2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Image2D() = default;
  Image2D(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool square() const { return rows == cols; }

  bool operator==(const Image2D& o) const = default;
};

using Kernel2D = Image2D;

inline void require_image(const Image2D& img, const char* what) {
  if (img.rows == 0 || img.cols == 0) throw InvalidInput(std::string(what) + ": empty");
  if (img.data.size() != img.rows * img.cols)
    throw ShapeMismatch(std::string(what) + ": data size does not match rows*cols");
  for (double x : img.data)
    if (!std::isfinite(x)) throw InvalidInput(std::string(what) + ": non-finite value");
}

}  // namespace photofourier

#endif
