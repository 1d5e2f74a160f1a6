// Acceptance gate: one test case per criterion, each printing a single
// PASS/FAIL line. Tolerances are pinned here, not configurable.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "photofourier/photofourier.hpp"

using namespace photofourier;
namespace am = archmodel;

namespace {

void verdict(int index, const char* label, bool pass) {
  std::printf("ACCEPTANCE %2d [%s]: %s\n", index, label, pass ? "PASS" : "FAIL");
  std::fflush(stdout);
  REQUIRE(pass);
}

Image2D random_int_image(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Image2D img(n, n);
  for (auto& v : img.data) v = double(d(rng));
  return img;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("criterion 1: tiling exactness over randomized instances") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260826);
  bool pass = true;
  int checked = 0;
  for (int it = 0; it < 1000 && pass; ++it) {
    const std::size_t s_k = std::array<std::size_t, 3>{1, 3, 5}[rng() % 3];
    const std::size_t s_i = std::max<std::size_t>(s_k, 4 + rng() % 29);  // [4, 32]
    // spread instances across all three variants
    const std::size_t row_len = s_i + 2 * (s_k / 2);
    std::size_t n_conv;
    switch (rng() % 3) {
      case 0: n_conv = s_k * row_len + 1 + rng() % (2 * row_len); break;  // row tiling
      case 1: n_conv = row_len + rng() % (s_k * row_len); break;          // partial-ish
      default: n_conv = s_k + rng() % row_len; break;                     // small
    }
    const Image2D img = random_int_image(rng, s_i, 0, 9);
    const Image2D ker = random_int_image(rng, s_k, -4, 4);
    const Image2D ref = tiling::conv2d_reference(img, ker, tiling::RefMode::Same);

    const Image2D padded = tiling::conv2d_via_1d(img, ker, n_conv, tiling::direct_backend,
                                                 tiling::PaddingMode::ZeroPadEdges);
    if (padded.data != ref.data) pass = false;  // bit-exact

    // valid-mode interior equality without padding
    const Image2D bare =
        tiling::conv2d_via_1d(img, ker, n_conv, tiling::direct_backend, tiling::PaddingMode::None);
    const std::size_t pad = s_k / 2;
    for (std::size_t r = 0; r < s_i && pass; ++r)
      for (std::size_t c = pad; c + pad < s_i; ++c)
        if (bare.at(r, c) != ref.at(r, c)) {
          pass = false;
          break;
        }
    ++checked;
  }
  const bool in_time = elapsed_s(t0) < 60.0;
  verdict(1, "tiling exactness, 1000 instances", pass && checked == 1000 && in_time);
}

TEST_CASE("criterion 2: canonical 5x5/3x3/20-sample instance") {
  const auto p = tiling::plan_tiling(5, 3, 20);
  bool pass = p.valid_rows_per_step == 2 && p.steps == 3 && p.rows_per_step == 4;

  // middle 10 of 20: a middle step's emitted window covers same-aligned
  // outputs 5..14 of the 20-sample tiled signal
  std::mt19937_64 rng(2);
  const Image2D img = random_int_image(rng, 5, 0, 9);
  const Image2D ker = random_int_image(rng, 3, -4, 4);
  const auto pair = tiling::tile_step(img, ker, p, 1);
  const Signal1D conv = tiling::direct_backend(pair.input_1d, pair.kernel_1d);
  const auto rows = tiling::extract_valid_rows(conv, p, 1);
  pass = pass && rows.size() == 2;
  // same-aligned output z[q] = conv[q + n_conv - 1 - (pad*row_len + pad)],
  // and the middle step's window is exactly samples 5..14 of the 20
  const Image2D ref = tiling::conv2d_reference(img, ker, tiling::RefMode::Same);
  for (std::size_t a = 0; a < 2 && pass; ++a)
    for (std::size_t c = 0; c < 5; ++c) {
      const std::size_t q = (1 + a) * 5 + c;  // 5..14: the middle 10
      if (rows[a][c] != conv[q + 20 - 1 - 6]) pass = false;
      if (c >= 1 && c + 1 < 5 && rows[a][c] != ref.at(2 + a, c)) pass = false;
    }
  verdict(2, "plan_tiling(5,3,20) reproduces the reference instance", pass);
}

TEST_CASE("criterion 3: jtc oracle equivalence and disjointness") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  bool pass = true;

  for (int it = 0; it < 200 && pass; ++it) {
    const std::size_t sl = 1 + rng() % 64, kl = 1 + rng() % 16;
    Signal1D s(sl), k(kl);
    for (auto& v : s) v = d(rng);
    for (auto& v : k) v = d(rng);
    const optics::JtcConfig cfg = optics::default_config(sl, kl);
    const auto out = optics::jtc_correlate(s, k, cfg);
    const Signal1D term = optics::extract_correlation_term(out, sl, kl);
    const Signal1D want = optics::correlate_full(s, k);
    double max_want = 0.0;
    for (double v : want) max_want = std::max(max_want, std::fabs(v));
    for (std::size_t i = 0; i < want.size(); ++i)
      if (std::fabs(term[i] - want[i]) > 1e-9 * std::max(1.0, max_want)) pass = false;

    // three-term disjointness: the plane is (numerically) zero outside the
    // center band and the two cross bands
    const std::size_t n = out.plane.size(), sep = out.separation, w = sl + kl - 1;
    const std::size_t center_half = std::max(sl, kl) - 1;
    double plane_max = 0.0;
    for (double v : out.plane) plane_max = std::max(plane_max, std::fabs(v));
    for (std::size_t p = 0; p < n; ++p) {
      const bool in_center = p <= center_half || n - p <= center_half;
      const bool in_plus = p >= sep + 1 && p <= sep + w;
      const bool in_minus = n - p >= sep + 1 && n - p <= sep + w;
      if (!in_center && !in_plus && !in_minus && std::fabs(out.plane[p]) > 1e-9 * plane_max)
        pass = false;
    }
  }

  // 256-element tiled input
  {
    std::mt19937_64 r2(4);
    const Image2D img = random_int_image(r2, 8, 0, 9);
    const Image2D ker = random_int_image(r2, 3, 0, 4);
    const auto plan = tiling::plan_tiling(8, 3, 256);
    const auto pair = tiling::tile_step(img, ker, plan, 0);
    Signal1D k = pair.kernel_1d;
    while (!k.empty() && k.back() == 0.0) k.pop_back();
    const auto cfg = optics::default_config(pair.input_1d.size(), k.size());
    pass = pass && optics::separation_check(pair.input_1d.size(), k.size(), cfg.separation(),
                                            cfg.plane_size);
    const auto out = optics::jtc_correlate(pair.input_1d, k, cfg);
    const auto term = optics::extract_correlation_term(out, pair.input_1d.size(), k.size());
    const auto want = optics::correlate_full(pair.input_1d, k);
    double max_want = 0.0;
    for (double v : want) max_want = std::max(max_want, std::fabs(v));
    for (std::size_t i = 0; i < want.size(); ++i)
      if (std::fabs(term[i] - want[i]) > 1e-9 * std::max(1.0, max_want)) pass = false;
  }
  verdict(3, "jtc vs direct correlation, 200 pairs + tiled input", pass && elapsed_s(t0) < 60.0);
}

TEST_CASE("criterion 4: parallelization optimizer anchors") {
  bool pass = true;
  pass = pass && am::optimize_parallelization(8, 16).ib == 8;
  pass = pass && am::optimize_parallelization(16, 16).ib == 16;
  const auto s32 = am::optimize_parallelization(32, 16);
  pass = pass && s32.ties == std::vector<std::size_t>{16, 32};
  pass = pass && s32.objective == 3.0;  // exact rational: 16/16+2 == 32/16+1
  pass = pass && std::fabs(s32.continuous_optimum - std::sqrt(512.0)) < 1e-12;
  pass = pass && std::fabs(s32.continuous_optimum - 22.6) < 0.1;
  verdict(4, "optimizer IB anchors, tie and continuous optimum", pass);
}

TEST_CASE("criterion 5: baseline power is ADC/DAC bound") {
  const auto hw = presets::baseline();
  const auto b = am::power_breakdown(hw, presets::unit_scheme(1, 1));
  const double share = (b.adc_w + b.dac_w) / b.total_w;
  verdict(5, "1-PFCU baseline ADC+DAC share >= 80%", share >= 0.80);
}

TEST_CASE("criterion 6: NG converter scaling") {
  const auto cg = presets::cg(), ng = presets::ng();
  const double adc_rel =
      std::fabs(cg.powers.adc_mw_at_f_adc / 5.81 - ng.powers.adc_mw_at_f_adc) /
      ng.powers.adc_mw_at_f_adc;
  const double dac_rel =
      std::fabs(cg.powers.dac_mw_at_f_phot / 5.81 - ng.powers.dac_mw_at_f_phot) /
      ng.powers.dac_mw_at_f_phot;
  const bool values = ng.powers.adc_mw_at_f_adc == 0.16 && ng.powers.dac_mw_at_f_phot == 6.15 &&
                      cg.powers.adc_mw_at_f_adc == 0.93 && cg.powers.dac_mw_at_f_phot == 35.71;
  verdict(6, "NG ADC/DAC = CG / 5.81 within 0.5%", values && adc_rel < 0.005 && dac_rel < 0.005);
}

TEST_CASE("criterion 7: optimization ladder on the 5-network suite") {
  std::vector<workloads::NetworkSpec> suite;
  for (const auto& name : workloads::builtin_names())
    suite.push_back(workloads::builtin_network(name));

  std::vector<double> geomeans;
  for (const auto& rung : presets::optimization_ladder(true)) {
    std::vector<am::PerfReport> reports;
    for (const auto& net : suite) reports.push_back(am::network_perf(net, rung.hw, rung.scheme));
    geomeans.push_back(am::geomean_fps_per_watt(reports));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < geomeans.size(); ++i)
    if (geomeans[i] < geomeans[i - 1] * (1.0 - 1e-12)) monotone = false;
  const double gain = geomeans.back() / geomeans.front();
  verdict(7, "ladder monotone, end-to-end FPS/W gain >= 5x", monotone && gain >= 5.0);
}

TEST_CASE("criterion 8: temporal accumulation fidelity trend") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> in_d(0.0, 1.0), w_d(-1.0, 1.0);
  const std::vector<std::size_t> depths{1, 2, 4, 8, 16};
  std::vector<double> mae(depths.size(), 0.0);
  fidelity::AccumulationConfig acc;
  acc.snr_db = std::numeric_limits<double>::infinity();  // isolate quantization

  const int layers = 100;
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
    const auto sweep = fidelity::depth_sweep(shape, weights, inputs, fidelity::QuantConfig{}, acc,
                                             depths, 5000 + layer);
    for (std::size_t i = 0; i < depths.size(); ++i) mae[i] += sweep[i];
  }
  for (auto& v : mae) v /= layers;

  bool monotone = true;
  for (std::size_t i = 1; i < mae.size(); ++i)
    if (mae[i] > mae[i - 1] * (1.0 + 1e-9)) monotone = false;
  const bool halved = mae.back() <= mae.front() / 2.0;
  verdict(8, "depth sweep error monotone, depth 16 < depth 1 / 2", monotone && halved);
}

TEST_CASE("criterion 9: area sanity") {
  const auto cg = am::area_breakdown(presets::cg());
  const auto ng = am::area_breakdown(presets::ng());
  const bool cg_ok = std::fabs(cg.pic_mm2 - 92.2) / 92.2 <= 0.15 &&
                     std::fabs(cg.pfcu_width_mm - 2.32) <= 0.1;
  const bool ng_ok = std::fabs(ng.pic_mm2 - 93.5) / 93.5 <= 0.15 &&
                     std::fabs(ng.sram_mm2 - 5.3) / 5.3 <= 0.15 &&
                     std::fabs(ng.cmos_mm2 - 16.5) / 16.5 <= 0.15;
  verdict(9, "CG/NG areas within 15% of published values", cg_ok && ng_ok);
}

TEST_CASE("criterion 10: cycle-model identities") {
  const auto hw = presets::cg();
  bool pass = true;
  for (std::size_t s_i : {14u, 28u, 56u}) {
    workloads::LayerSpec a{s_i, 3, 1, 64, 64, workloads::Padding::Same};
    workloads::LayerSpec b = a;
    b.stride = 2;
    pass = pass && am::layer_cycles(a, hw).photonic_cycles == am::layer_cycles(b, hw).photonic_cycles;
  }
  for (std::size_t c_out : {8u, 16u, 64u}) {  // aligned: multiples of n_pfcu
    workloads::LayerSpec l{14, 3, 1, 16, c_out, workloads::Padding::Same};
    pass = pass && am::layer_cycles(l, hw, true).photonic_cycles ==
                       2 * am::layer_cycles(l, hw, false).photonic_cycles;
  }
  verdict(10, "stride-invariant cycles, pseudo-negative 2x", pass);
}

TEST_CASE("criterion 11: CLI determinism") {
#ifdef PF_CLI_PATH
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  bool pass = true;
  const std::string invocations[] = {
      "conv-check --size 12 --kernel 5 --n-conv 200 --seed 42",
      "--config cg perf --ladder --network vgg16",
      "fidelity-sweep --size 6 --channels 8 --layers 1 --depths 1 --depths 8 --seed 7",
      "jtc-demo --demo tiled --seed 11",
  };
  int i = 0;
  for (const auto& inv : invocations) {
    const std::string a = "acc11_a" + std::to_string(i) + ".out";
    const std::string b = "acc11_b" + std::to_string(i) + ".out";
    const std::string cli = PF_CLI_PATH;
    const int ra = std::system((cli + " " + inv + " >" + a + " 2>&1").c_str());
    const int rb = std::system((cli + " " + inv + " >" + b + " 2>&1").c_str());
    if (ra != rb) pass = false;
    const std::string ca = slurp(a), cb = slurp(b);
    if (ca.empty() || ca != cb) pass = false;
    ++i;
  }
  verdict(11, "repeated CLI runs byte-identical", pass);
#else
  verdict(11, "repeated CLI runs byte-identical", false);
#endif
}
