// photofourier CLI: convolution equivalence checks, JTC demos, fidelity
// sweeps, performance/power/area reports, and the parallelization optimizer.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "photofourier/photofourier.hpp"

namespace pf = photofourier;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;

struct GlobalOpts {
  std::string config = "cg";
  std::uint64_t seed = 1;
  std::string out;  // empty = stdout
  std::string format = "json";
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw pf::InvalidInput("cannot read file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

pf::archmodel::HardwareConfig resolve_config(const std::string& spec) {
  if (spec == "cg") return pf::presets::cg();
  if (spec == "ng") return pf::presets::ng();
  if (spec == "baseline") return pf::presets::baseline();
  return pf::presets::from_json(json::parse(read_file(spec)));
}

void emit(const GlobalOpts& g, const std::string& content) {
  if (g.out.empty())
    std::cout << content;
  else
    pf::report::write_file(g.out, content);
}

json manifest_json(const GlobalOpts& g, const std::string& command) {
  pf::report::RunManifest m;
  m.command = command;
  m.config = g.config;
  m.seed = g.seed;
  m.out = g.out;
  return pf::report::to_json(m);
}

std::string render(const GlobalOpts& g, json doc, const pf::report::CsvWriter* csv) {
  if (g.format == "csv" && csv) return csv->str();
  return doc.dump(2) + "\n";
}

// deterministic integer tensors for checks/demos
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ^ 0x6a09e667f3bcc908ULL) {}
  std::uint64_t next() { return pf::fidelity::detail::splitmix64(state); }
  double uniform() { return pf::fidelity::detail::uniform01(state); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

pf::Image2D random_int_image(std::size_t n, Rng& rng, int lo, int hi) {
  pf::Image2D img(n, n);
  for (auto& v : img.data) v = static_cast<double>(rng.integer(lo, hi));
  return img;
}

// ---------------------------------------------------------------------------

int cmd_conv_check(const GlobalOpts& g, std::size_t size, std::size_t kernel, std::size_t n_conv,
                   const std::string& padding, const std::string& backend) {
  const auto pad_mode = padding == "zeropad" ? pf::tiling::PaddingMode::ZeroPadEdges
                                             : pf::tiling::PaddingMode::None;
  const pf::tiling::Backend1D be =
      backend == "jtc" ? pf::tiling::Backend1D(pf::tiling::jtc_backend)
                       : pf::tiling::Backend1D(pf::tiling::direct_backend);

  Rng rng(g.seed);
  const pf::Image2D img = random_int_image(size, rng, 0, 9);
  // the optical path only carries nonnegative amplitudes; signed weights are
  // handled upstream by stream splitting, so keep the optical check in range
  const int k_lo = backend == "jtc" ? 0 : -4;
  pf::Kernel2D ker(kernel, kernel);
  for (auto& v : ker.data) v = static_cast<double>(rng.integer(k_lo, 4));

  const pf::Image2D got = pf::tiling::conv2d_via_1d(img, ker, n_conv, be, pad_mode);
  const pf::Image2D ref = pf::tiling::conv2d_reference(img, ker, pf::tiling::RefMode::Same);

  const std::size_t pad = kernel / 2;
  double max_diff = 0.0;
  bool only_seams = true;
  json mismatches = json::array();
  const double tol = backend == "jtc" ? 1e-9 : 0.0;
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) {
      const double d = std::fabs(got.at(r, c) - ref.at(r, c));
      max_diff = std::max(max_diff, d);
      if (d > tol + 1e-9 * std::fabs(ref.at(r, c))) {
        const bool seam = c < pad || c + pad >= size;
        if (!seam) only_seams = false;
        if (mismatches.size() < 32)
          mismatches.push_back({{"row", r}, {"col", c}, {"got", got.at(r, c)}, {"ref", ref.at(r, c)}});
      }
    }

  const bool pass = pad_mode == pf::tiling::PaddingMode::ZeroPadEdges ? mismatches.empty()
                                                                      : only_seams;
  json doc;
  doc["manifest"] = manifest_json(g, "conv-check");
  doc["size"] = size;
  doc["kernel"] = kernel;
  doc["n_conv"] = n_conv;
  doc["padding"] = padding;
  doc["backend"] = backend;
  doc["max_abs_diff"] = max_diff;
  doc["mismatches"] = mismatches;
  doc["pass"] = pass;

  pf::report::CsvWriter csv({"size", "kernel", "n_conv", "padding", "backend", "max_abs_diff", "pass"});
  csv.add_row({std::to_string(size), std::to_string(kernel), std::to_string(n_conv), padding,
               backend, pf::report::CsvWriter::num(max_diff), pass ? "1" : "0"});
  emit(g, render(g, doc, &csv));
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_jtc_demo(const GlobalOpts& g, const std::string& demo, std::size_t s_len, std::size_t k_len,
                 std::size_t plane) {
  pf::Signal1D s, k;
  Rng rng(g.seed);
  if (demo == "impulse") {
    s.assign(s_len, 0.0);
    k.assign(k_len, 0.0);
    s[0] = 1.0;
    if (s_len > 1) s[s_len - 1] = 1.0;
    k[0] = 1.0;
  } else if (demo == "tiled") {
    // 256-element tiled row-tiling input of an 8x8 image with a 3x3 kernel
    const pf::Image2D img = random_int_image(8, rng, 0, 9);
    pf::Kernel2D ker(3, 3);
    for (auto& v : ker.data) v = static_cast<double>(rng.integer(0, 4));
    const auto plan = pf::tiling::plan_tiling(8, 3, 256);
    const auto pair = pf::tiling::tile_step(img, ker, plan, 0);
    s = pair.input_1d;
    k = pair.kernel_1d;
    while (!k.empty() && k.back() == 0.0) k.pop_back();
  } else {
    s.resize(s_len);
    k.resize(k_len);
    for (auto& v : s) v = rng.uniform();
    for (auto& v : k) v = rng.uniform();
  }

  pf::optics::JtcConfig cfg = pf::optics::default_config(s.size(), k.size());
  if (plane > 0) {
    cfg.plane_size = plane;
    if (!pf::optics::separation_check(s.size(), k.size(), cfg.separation(), cfg.plane_size))
      throw pf::SeparationViolation("requested plane size violates term separation");
  }
  const pf::optics::JtcOutput out = pf::optics::jtc_correlate(s, k, cfg);

  std::ostringstream csv;
  csv << "# command=jtc-demo seed=" << g.seed << " plane_size=" << cfg.plane_size
      << " separation=" << out.separation << " tool_version=" << pf::report::kToolVersion << "\n";
  csv << "position,value\n";
  csv.precision(17);
  for (std::size_t i = 0; i < out.plane.size(); ++i) csv << i << "," << out.plane[i] << "\n";
  emit(g, csv.str());
  return kExitOk;
}

int cmd_optimize(const GlobalOpts& g, std::size_t n_pfcu, std::size_t n_ta) {
  const auto s = pf::archmodel::optimize_parallelization(n_pfcu, n_ta);
  json doc;
  doc["manifest"] = manifest_json(g, "optimize");
  doc["n_pfcu"] = n_pfcu;
  doc["n_ta"] = n_ta;
  doc["ib"] = s.ib;
  doc["cp"] = s.cp;
  doc["objective"] = s.objective;
  doc["ties"] = s.ties;
  doc["continuous_optimum"] = s.continuous_optimum;

  pf::report::CsvWriter csv({"n_pfcu", "n_ta", "ib", "cp", "objective", "continuous_optimum"});
  csv.add_row({std::to_string(n_pfcu), std::to_string(n_ta), std::to_string(s.ib),
               std::to_string(s.cp), pf::report::CsvWriter::num(s.objective),
               pf::report::CsvWriter::num(s.continuous_optimum)});
  emit(g, render(g, doc, &csv));
  return kExitOk;
}

int cmd_power(const GlobalOpts& g, std::size_t ib, double activity) {
  const auto hw = resolve_config(g.config);
  const auto scheme = ib == 0 ? pf::archmodel::optimize_parallelization(hw.n_pfcu, hw.n_ta)
                              : pf::presets::unit_scheme(hw.n_pfcu, ib);
  const auto b = pf::archmodel::power_breakdown(hw, scheme, activity);
  json doc;
  doc["manifest"] = manifest_json(g, "power");
  doc["config"] = hw.name;
  doc["ib"] = scheme.ib;
  doc["cp"] = scheme.cp;
  doc["activity"] = activity;
  doc["power"] = pf::report::to_json(b);

  pf::report::CsvWriter csv({"component", "watts"});
  csv.add_row({"dac", pf::report::CsvWriter::num(b.dac_w)});
  csv.add_row({"adc", pf::report::CsvWriter::num(b.adc_w)});
  csv.add_row({"mrr", pf::report::CsvWriter::num(b.mrr_w)});
  csv.add_row({"laser", pf::report::CsvWriter::num(b.laser_w)});
  csv.add_row({"sram", pf::report::CsvWriter::num(b.sram_w)});
  csv.add_row({"cmos", pf::report::CsvWriter::num(b.cmos_w)});
  csv.add_row({"misc", pf::report::CsvWriter::num(b.misc_w)});
  csv.add_row({"total", pf::report::CsvWriter::num(b.total_w)});
  emit(g, render(g, doc, &csv));
  return kExitOk;
}

int cmd_area(const GlobalOpts& g) {
  const auto hw = resolve_config(g.config);
  const auto a = pf::archmodel::area_breakdown(hw);
  json doc;
  doc["manifest"] = manifest_json(g, "area");
  doc["config"] = hw.name;
  doc["area"] = pf::report::to_json(a);

  pf::report::CsvWriter csv({"part", "mm2"});
  csv.add_row({"lens", pf::report::CsvWriter::num(a.lens_mm2)});
  csv.add_row({"mrr", pf::report::CsvWriter::num(a.mrr_mm2)});
  csv.add_row({"photodetector", pf::report::CsvWriter::num(a.pd_mm2)});
  csv.add_row({"splitter", pf::report::CsvWriter::num(a.splitter_mm2)});
  csv.add_row({"laser", pf::report::CsvWriter::num(a.laser_mm2)});
  csv.add_row({"routing", pf::report::CsvWriter::num(a.routing_mm2)});
  csv.add_row({"pic", pf::report::CsvWriter::num(a.pic_mm2)});
  csv.add_row({"sram", pf::report::CsvWriter::num(a.sram_mm2)});
  csv.add_row({"cmos", pf::report::CsvWriter::num(a.cmos_mm2)});
  csv.add_row({"total", pf::report::CsvWriter::num(a.total_mm2)});
  emit(g, render(g, doc, &csv));
  return kExitOk;
}

pf::workloads::NetworkSpec resolve_network(const std::string& spec) {
  try {
    return pf::workloads::builtin_network(spec);
  } catch (const pf::UnknownNetwork&) {
    return pf::workloads::parse_network(read_file(spec));
  }
}

int cmd_perf(const GlobalOpts& g, const std::vector<std::string>& nets, bool ladder) {
  const auto hw = resolve_config(g.config);
  std::vector<pf::workloads::NetworkSpec> specs;
  for (const auto& n : nets) specs.push_back(resolve_network(n));

  json doc;
  doc["manifest"] = manifest_json(g, "perf");
  pf::report::CsvWriter csv({"config", "network", "fps", "fps_per_watt", "edp", "avg_power_w"});

  if (ladder) {
    json rungs = json::array();
    for (const auto& rung : pf::presets::optimization_ladder(hw.nonlinear_material)) {
      std::vector<pf::archmodel::PerfReport> reports;
      json per_net = json::array();
      for (const auto& net : specs) {
        auto r = pf::archmodel::network_perf(net, rung.hw, rung.scheme);
        per_net.push_back({{"network", net.name}, {"fps", r.fps}, {"fps_per_watt", r.fps_per_watt}});
        csv.add_row({rung.label, net.name, pf::report::CsvWriter::num(r.fps),
                     pf::report::CsvWriter::num(r.fps_per_watt), pf::report::CsvWriter::num(r.edp),
                     pf::report::CsvWriter::num(r.avg_power_w)});
        reports.push_back(std::move(r));
      }
      rungs.push_back({{"label", rung.label},
                       {"networks", per_net},
                       {"geomean_fps_per_watt", pf::archmodel::geomean_fps_per_watt(reports)}});
    }
    doc["ladder"] = rungs;
  } else {
    const auto scheme = pf::archmodel::optimize_parallelization(hw.n_pfcu, hw.n_ta);
    std::vector<pf::archmodel::PerfReport> reports;
    json per_net = json::array();
    for (const auto& net : specs) {
      auto r = pf::archmodel::network_perf(net, hw, scheme);
      json nj = pf::report::to_json(r);
      nj["network"] = net.name;
      const auto pb = pf::archmodel::power_breakdown(hw, scheme, 1.0);
      nj["power"] = pf::report::to_json(pb);
      per_net.push_back(nj);
      csv.add_row({hw.name, net.name, pf::report::CsvWriter::num(r.fps),
                   pf::report::CsvWriter::num(r.fps_per_watt), pf::report::CsvWriter::num(r.edp),
                   pf::report::CsvWriter::num(r.avg_power_w)});
      reports.push_back(std::move(r));
    }
    doc["networks"] = per_net;
    if (specs.size() > 1)
      doc["geomean_fps_per_watt"] = pf::archmodel::geomean_fps_per_watt(reports);
  }
  emit(g, render(g, doc, &csv));
  return kExitOk;
}

int cmd_fidelity_sweep(const GlobalOpts& g, std::size_t size, std::size_t kernel,
                       std::size_t channels, std::size_t n_layers,
                       std::vector<std::size_t> depths, double snr_db, int adc_bits) {
  if (depths.empty()) depths = {1, 2, 4, 8, 16};
  pf::fidelity::QuantConfig q;
  q.adc_bits = adc_bits;
  pf::fidelity::AccumulationConfig a;
  a.snr_db = snr_db;

  std::vector<double> mae(depths.size(), 0.0);
  for (std::size_t layer = 0; layer < n_layers; ++layer) {
    Rng rng(g.seed + 977 * layer);
    pf::fidelity::LayerShape shape{size, kernel, channels, 1};
    std::vector<pf::Image2D> inputs;
    for (std::size_t ci = 0; ci < channels; ++ci) {
      pf::Image2D img(size, size);
      for (auto& v : img.data) v = rng.uniform();
      inputs.push_back(std::move(img));
    }
    std::vector<std::vector<pf::Kernel2D>> weights(1);
    for (std::size_t ci = 0; ci < channels; ++ci) {
      pf::Kernel2D k(kernel, kernel);
      for (auto& v : k.data) v = 2.0 * rng.uniform() - 1.0;
      weights[0].push_back(std::move(k));
    }
    const auto sweep =
        pf::fidelity::depth_sweep(shape, weights, inputs, q, a, depths, g.seed + layer);
    for (std::size_t i = 0; i < depths.size(); ++i) mae[i] += sweep[i];
  }
  for (auto& v : mae) v /= static_cast<double>(n_layers);

  json doc;
  doc["manifest"] = manifest_json(g, "fidelity-sweep");
  doc["size"] = size;
  doc["kernel"] = kernel;
  doc["channels"] = channels;
  doc["layers"] = n_layers;
  doc["snr_db"] = snr_db;
  doc["adc_bits"] = adc_bits;
  doc["depths"] = depths;
  doc["mean_abs_error"] = mae;

  pf::report::CsvWriter csv({"depth", "mean_abs_error"});
  for (std::size_t i = 0; i < depths.size(); ++i)
    csv.add_row({std::to_string(depths[i]), pf::report::CsvWriter::num(mae[i])});
  emit(g, render(g, doc, &csv));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photofourier: JTC photonic CNN accelerator simulator"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "hardware config: cg, ng, baseline, or a JSON file path");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* conv = app.add_subcommand("conv-check", "compare tiled 1D convolution against the 2D oracle");
  std::size_t cc_size = 8, cc_kernel = 3, cc_nconv = 80;
  std::string cc_padding = "zeropad", cc_backend = "direct";
  conv->add_option("--size", cc_size, "image size");
  conv->add_option("--kernel", cc_kernel, "kernel size");
  conv->add_option("--n-conv", cc_nconv, "1D convolution size");
  conv->add_option("--padding", cc_padding)->check(CLI::IsMember({"none", "zeropad"}));
  conv->add_option("--backend", cc_backend)->check(CLI::IsMember({"direct", "jtc"}));

  auto* demo = app.add_subcommand("jtc-demo", "dump a JTC output plane as CSV");
  std::string jd_demo = "random";
  std::size_t jd_slen = 16, jd_klen = 4, jd_plane = 0;
  demo->add_option("--demo", jd_demo)->check(CLI::IsMember({"impulse", "random", "tiled"}));
  demo->add_option("--s-len", jd_slen, "signal length");
  demo->add_option("--k-len", jd_klen, "kernel length");
  demo->add_option("--plane", jd_plane, "plane size (0 = auto)");

  auto* opt = app.add_subcommand("optimize", "parallelization scheme optimizer");
  std::size_t op_pfcu = 8, op_ta = 16;
  opt->add_option("--n-pfcu", op_pfcu);
  opt->add_option("--n-ta", op_ta);

  auto* pow = app.add_subcommand("power", "power breakdown for a config");
  std::size_t pw_ib = 0;
  double pw_activity = 1.0;
  pow->add_option("--ib", pw_ib, "input-broadcast group size (0 = optimize)");
  pow->add_option("--activity", pw_activity, "activity factor in [0,1]");

  app.add_subcommand("area", "area breakdown for a config");

  auto* perf = app.add_subcommand("perf", "network performance report");
  std::vector<std::string> pf_nets{"vgg16"};
  bool pf_ladder = false;
  perf->add_option("--network", pf_nets, "builtin name or network JSON path (repeatable)");
  perf->add_flag("--ladder", pf_ladder, "report the optimization ladder");

  auto* fid = app.add_subcommand("fidelity-sweep", "accumulation-depth fidelity sweep");
  std::size_t fs_size = 8, fs_kernel = 3, fs_channels = 32, fs_layers = 4;
  std::vector<std::size_t> fs_depths;
  double fs_snr = 20.0;
  int fs_adc_bits = 8;
  fid->add_option("--size", fs_size);
  fid->add_option("--kernel", fs_kernel);
  fid->add_option("--channels", fs_channels);
  fid->add_option("--layers", fs_layers, "number of random layers to average");
  fid->add_option("--depths", fs_depths, "accumulation depths");
  fid->add_option("--snr", fs_snr, "sensing SNR in dB (inf to disable)");
  fid->add_option("--adc-bits", fs_adc_bits);

  // allow global options (--seed, --out, ...) after the subcommand name
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (conv->parsed()) return cmd_conv_check(g, cc_size, cc_kernel, cc_nconv, cc_padding, cc_backend);
    if (demo->parsed()) return cmd_jtc_demo(g, jd_demo, jd_slen, jd_klen, jd_plane);
    if (opt->parsed()) return cmd_optimize(g, op_pfcu, op_ta);
    if (pow->parsed()) return cmd_power(g, pw_ib, pw_activity);
    if (app.get_subcommand("area")->parsed()) return cmd_area(g);
    if (perf->parsed()) return cmd_perf(g, pf_nets, pf_ladder);
    if (fid->parsed())
      return cmd_fidelity_sweep(g, fs_size, fs_kernel, fs_channels, fs_layers, fs_depths, fs_snr,
                                fs_adc_bits);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
