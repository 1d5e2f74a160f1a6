#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "photofourier/fidelity.hpp"

using namespace photofourier;
using fidelity::AccumulationConfig;
using fidelity::QuantConfig;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

AccumulationConfig noiseless(std::size_t depth) {
  AccumulationConfig a;
  a.depth = depth;
  a.snr_db = kInf;
  return a;
}
}  // namespace

TEST_CASE("pseudo-negative split") {
  Image2D ker(2, 2);
  ker.data = {2.0, -3.0, 0.0, 1.0};
  const auto fp = fidelity::pseudo_negative_split(ker);
  CHECK(fp.p.data == std::vector<double>{2.0, 0.0, 0.0, 1.0});
  CHECK(fp.n.data == std::vector<double>{0.0, 3.0, 0.0, 0.0});

  SECTION("all-nonnegative kernel has an all-zero negative half") {
    Image2D pos(2, 2);
    pos.data = {1.0, 0.5, 0.0, 2.0};
    CHECK(fidelity::pseudo_negative_split(pos).n.data == std::vector<double>(4, 0.0));
  }
  SECTION("p - n reconstructs exactly and the split is minimal") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int it = 0; it < 100; ++it) {
      Image2D k(3, 3);
      for (auto& v : k.data) v = d(rng);
      const auto s = fidelity::pseudo_negative_split(k);
      for (std::size_t i = 0; i < 9; ++i) {
        CHECK(s.p.data[i] - s.n.data[i] == k.data[i]);  // exact reconstruction
        CHECK(s.p.data[i] >= 0.0);
        CHECK(s.n.data[i] >= 0.0);
        CHECK(std::min(s.p.data[i], s.n.data[i]) == 0.0);  // minimal split
      }
    }
  }
}

TEST_CASE("uniform quantization") {
  CHECK(fidelity::quantize_uniform(0.0, 8, 3.5) == 0.0);
  // endpoint preservation at scale = max|x|
  CHECK(fidelity::quantize_uniform(3.5, 8, 3.5) == Catch::Approx(3.5));
  CHECK(fidelity::quantize_uniform(-3.5, 8, 3.5) == Catch::Approx(-3.5));
  // clamping beyond scale
  CHECK(fidelity::quantize_uniform(10.0, 8, 1.0) == Catch::Approx(1.0));

  SECTION("idempotence") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int it = 0; it < 1000; ++it) {
      const double x = d(rng);
      const double q1 = fidelity::quantize_uniform(x, 8, 4.0);
      CHECK(fidelity::quantize_uniform(q1, 8, 4.0) == q1);
    }
  }
  SECTION("errors") {
    CHECK_THROWS_AS(fidelity::quantize_uniform(1.0, 8, 0.0), DegenerateScale);
    CHECK_THROWS_AS(fidelity::quantize_uniform(1.0, 8, std::nan("")), DegenerateScale);
    CHECK_THROWS_AS(fidelity::quantize_uniform(1.0, 1, 1.0), InvalidInput);
    CHECK_THROWS_AS(fidelity::quantize_uniform(1.0, 17, 1.0), InvalidInput);
  }
}

TEST_CASE("adc readout") {
  CHECK(fidelity::adc_readout(0.0, 8, 1.0) == 0.0);
  CHECK(fidelity::adc_readout(1.0, 8, 1.0) == 1.0);
  CHECK(fidelity::adc_readout(-0.5, 8, 1.0) == 0.0);  // clamp below
  CHECK(fidelity::adc_readout(2.0, 8, 1.0) == 1.0);   // clamp above
  // midpoint within one half step of the exact value
  CHECK(std::fabs(fidelity::adc_readout(0.5, 8, 1.0) - 0.5) <= 1.0 / 512.0);

  SECTION("error bound over random values") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
      const double v = d(rng);
      CHECK(std::fabs(fidelity::adc_readout(v, 8, 1.0) - v) <= 0.5 / 256.0 + 1e-15);
    }
  }
}

TEST_CASE("temporal accumulation") {
  QuantConfig q;

  SECTION("depth 1 without noise reduces to plain readout") {
    const double x = 0.7351;
    CHECK(fidelity::temporal_accumulate({x}, noiseless(1), q, 1.0, 9) ==
          fidelity::adc_readout(x, q.adc_bits, 1.0));
  }
  SECTION("all-zero partials read zero") {
    CHECK(fidelity::temporal_accumulate(Signal1D(16, 0.0), noiseless(16), q, 1.0, 9) == 0.0);
  }
  SECTION("depth limit enforced") {
    CHECK_THROWS_AS(fidelity::temporal_accumulate(Signal1D(17, 0.1), noiseless(16), q, 1.0, 9),
                    DepthExceeded);
  }
  SECTION("square detection squares each partial before summing") {
    AccumulationConfig a = noiseless(4);
    a.detection = fidelity::Detection::Square;
    QuantConfig hi;
    hi.adc_bits = 16;
    const double got = fidelity::temporal_accumulate({0.5, 0.25}, a, hi, 1.0, 9);
    CHECK(got == Catch::Approx(0.3125).margin(1e-4));
  }
  SECTION("determinism: identical seeds, identical results") {
    AccumulationConfig a;
    a.depth = 16;
    a.snr_db = 20.0;
    const Signal1D parts{0.1, 0.2, 0.3, 0.4};
    const double r1 = fidelity::temporal_accumulate(parts, a, q, 4.0, 1234);
    const double r2 = fidelity::temporal_accumulate(parts, a, q, 4.0, 1234);
    const double r3 = fidelity::temporal_accumulate(parts, a, q, 4.0, 1235);
    CHECK(r1 == r2);
    CHECK(r1 != r3);  // with overwhelming probability at 8 adc bits over [0,4]
  }
}

TEST_CASE("accumulate-before-quantize dominates quantize-then-accumulate") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  QuantConfig q;
  double err_sum_then_adc = 0.0, err_adc_then_sum = 0.0;
  const int trials = 10000;
  for (int it = 0; it < trials; ++it) {
    Signal1D parts(16);
    for (auto& v : parts) v = d(rng);
    double exact = 0.0;
    for (double v : parts) exact += v;
    const double a = fidelity::temporal_accumulate(parts, noiseless(16), q, 16.0, 9);
    double b = 0.0;
    for (double v : parts) b += fidelity::adc_readout(v, q.adc_bits, 16.0);
    err_sum_then_adc += std::fabs(a - exact);
    err_adc_then_sum += std::fabs(b - exact);
  }
  CHECK(err_sum_then_adc < err_adc_then_sum);
  CHECK(err_adc_then_sum <= 16.0 * err_sum_then_adc);
}

TEST_CASE("noise calibration within half a dB over 1e6 samples") {
  std::uint64_t state = 987654321;
  const double snr_db = 20.0;
  const double sigma = std::sqrt(1.0 / std::pow(10.0, snr_db / 10.0));  // signal power 1
  double power = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double noise = sigma * fidelity::detail::gaussian(state);
    power += noise * noise;
  }
  const double empirical_snr = 10.0 * std::log10(1.0 / (power / n));
  CHECK(std::fabs(empirical_snr - snr_db) < 0.5);
}

TEST_CASE("identity layer with exactly representable inputs has zero error") {
  fidelity::LayerShape shape{4, 1, 1, 1};
  std::vector<Image2D> inputs(1, Image2D(4, 4));
  std::mt19937_64 rng(5);
  for (auto& v : inputs[0].data) v = double(rng() % 2);  // binary image
  Image2D unit(1, 1);
  unit.data = {1.0};
  std::vector<std::vector<Image2D>> weights{{unit}};
  QuantConfig q;
  q.adc_bits = 16;
  const auto st = fidelity::layer_fidelity_sim(shape, weights, inputs, q, noiseless(16), 9);
  CHECK(st.max_abs == 0.0);
}

TEST_CASE("depth 16 beats depth 1 on random 32-channel layers") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> in_d(0.0, 1.0), w_d(-1.0, 1.0);
  double mae1 = 0.0, mae16 = 0.0;
  const int layers = 20;
  for (int layer = 0; layer < layers; ++layer) {
    fidelity::LayerShape shape{6, 3, 32, 1};
    std::vector<Image2D> inputs;
    for (int ci = 0; ci < 32; ++ci) {
      Image2D img(6, 6);
      for (auto& v : img.data) v = in_d(rng);
      inputs.push_back(std::move(img));
    }
    std::vector<std::vector<Image2D>> weights(1);
    for (int ci = 0; ci < 32; ++ci) {
      Image2D k(3, 3);
      for (auto& v : k.data) v = w_d(rng);
      weights[0].push_back(std::move(k));
    }
    const auto mae = fidelity::depth_sweep(shape, weights, inputs, QuantConfig{}, noiseless(16),
                                           {1, 16}, 100 + layer);
    mae1 += mae[0];
    mae16 += mae[1];
  }
  CHECK(mae16 < mae1);
}

TEST_CASE("layer sim shape validation") {
  fidelity::LayerShape shape{4, 3, 2, 1};
  std::vector<Image2D> inputs(2, Image2D(4, 4));
  std::vector<std::vector<Image2D>> weights{{Image2D(3, 3), Image2D(3, 3)}};
  SECTION("wrong channel count") {
    std::vector<Image2D> one(1, Image2D(4, 4));
    CHECK_THROWS_AS(
        fidelity::layer_fidelity_sim(shape, weights, one, QuantConfig{}, noiseless(16), 1),
        ShapeMismatch);
  }
  SECTION("wrong kernel size") {
    std::vector<std::vector<Image2D>> bad{{Image2D(2, 2), Image2D(3, 3)}};
    CHECK_THROWS_AS(
        fidelity::layer_fidelity_sim(shape, bad, inputs, QuantConfig{}, noiseless(16), 1),
        ShapeMismatch);
  }
}
