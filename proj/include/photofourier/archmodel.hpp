#ifndef PHOTOFOURIER_ARCHMODEL_HPP
#define PHOTOFOURIER_ARCHMODEL_HPP

// Architecture-level models: parallelization optimizer, per-layer cycle
// accounting, power and area breakdowns, and network-level FPS / FPS-per-W /
// EDP reports.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "photofourier/errors.hpp"
#include "photofourier/tiling.hpp"
#include "photofourier/workloads.hpp"

namespace photofourier::archmodel {

struct ComponentPowers {
  double mrr_mw = 3.1;
  double laser_mw_per_waveguide = 0.5;
  double adc_mw_at_f_adc = 0.93;   // per ADC at adc_ref_hz
  double dac_mw_at_f_phot = 35.71;  // per DAC at f_phot
  double sram_pj_per_bit = 0.03;
  double cmos_tile_mw = 400.0;
  double misc_mw_per_pfcu = 100.0;  // photodetectors, drivers, leakage
  double adc_ref_hz = 625e6;
};

struct ComponentDims {
  // micrometers unless suffixed _mm
  double mrr_w = 15.0, mrr_h = 17.0;
  double splitter_w = 1.2, splitter_h = 2.2;
  double pd_w = 16.0, pd_h = 120.0;
  double waveguide_pitch = 1.3;
  double laser_w = 400.0, laser_h = 300.0;
  double lens_w_mm = 2.0, lens_h_mm = 1.0;
  double route_len_mm = 9.45;  // effective folded-routing length per PFCU
  double sram_mm2 = 5.85;
  double cmos_tile_mm2 = 10.15;
};

struct HardwareConfig {
  std::string name = "cg";
  std::size_t n_pfcu = 8;
  std::size_t n_i = 256;  // input waveguides per PFCU
  std::size_t n_w = 25;   // active weight waveguides per PFCU
  std::size_t n_ta = 16;  // temporal accumulation depth
  double f_phot_hz = 10e9;
  int adc_bits = 8;
  int dac_bits = 8;
  bool nonlinear_material = false;  // NG: square computed in-waveguide
  bool monolithic = false;          // NG: single chip, no chiplet split
  std::size_t chiplets = 2;
  std::size_t pipeline_stages = 2;
  ComponentPowers powers;
  ComponentDims dims;

  double f_adc_hz() const { return f_phot_hz / static_cast<double>(n_ta); }
};

inline void validate(const HardwareConfig& hw) {
  if (hw.n_pfcu < 1 || hw.n_i < 1 || hw.n_ta < 1) throw ValidationError("hardware counts must be positive");
  if (hw.n_w > hw.n_i) throw ValidationError("n_w must not exceed n_i");
  if (!(hw.f_phot_hz > 0)) throw ValidationError("f_phot must be positive");
}

// ---------------------------------------------------------------------------
// Parallelization: input broadcasting (IB) vs ADC sharing (CP), IB*CP = n_pfcu.

struct ParallelizationScheme {
  std::size_t ib = 1;
  std::size_t cp = 1;
  double objective = 0.0;
  std::vector<std::size_t> ties;  // all IB values attaining the optimum
  double continuous_optimum = 0.0;  // unconstrained argmin sqrt(n_ta * n_pfcu)
};

inline double parallelization_objective(std::size_t ib, std::size_t n_pfcu, std::size_t n_ta) {
  if (ib < 1 || n_pfcu % ib != 0) throw NotADivisor("IB must divide n_pfcu");
  return static_cast<double>(ib) / static_cast<double>(n_ta) +
         static_cast<double>(n_pfcu) / static_cast<double>(ib);
}

inline bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Sweeps all power-of-two divisors of n_pfcu; ties break toward the largest
/// IB (maximal DAC sharing) and are reported.
inline ParallelizationScheme optimize_parallelization(std::size_t n_pfcu, std::size_t n_ta) {
  if (!is_pow2(n_pfcu)) throw InvalidCount("n_pfcu must be a power of two");
  if (n_ta < 1) throw InvalidCount("n_ta must be positive");
  ParallelizationScheme best;
  best.objective = std::numeric_limits<double>::infinity();
  constexpr double eps = 1e-12;
  for (std::size_t ib = 1; ib <= n_pfcu; ib *= 2) {
    const double obj = parallelization_objective(ib, n_pfcu, n_ta);
    if (obj < best.objective - eps) {
      best.objective = obj;
      best.ties.assign(1, ib);
    } else if (obj <= best.objective + eps) {
      best.ties.push_back(ib);
    }
  }
  best.ib = best.ties.back();
  best.cp = n_pfcu / best.ib;
  best.continuous_optimum = std::sqrt(static_cast<double>(n_ta) * static_cast<double>(n_pfcu));
  return best;
}

// ---------------------------------------------------------------------------
// Cycle model.

struct CycleAccounting {
  std::uint64_t photonic_cycles = 0;
  std::uint64_t convs_1d = 0;  // tiling cycles per (channel, filter-group)
  double latency_s = 0.0;
  double utilization = 0.0;
  tiling::TilingVariant variant = tiling::TilingVariant::RowTiling;
};

/// Strided layers run at unit stride with digital discard, so stride never
/// changes the cycle count; pseudo-negative execution doubles the filter
/// dimension.
inline CycleAccounting layer_cycles(const workloads::LayerSpec& layer, const HardwareConfig& hw,
                                    bool pseudo_negative = true) {
  validate(hw);
  const tiling::TilingPlan plan = tiling::plan_tiling(layer.in_size, layer.kernel, hw.n_i);
  CycleAccounting acc;
  acc.variant = plan.variant;
  acc.convs_1d = plan.cycles;
  const std::uint64_t filters = (pseudo_negative ? 2 : 1) * layer.out_channels;
  const std::uint64_t groups = (filters + hw.n_pfcu - 1) / hw.n_pfcu;
  acc.photonic_cycles = groups * layer.in_channels * plan.cycles;
  // 2-stage pipeline: one convolution per cycle after a one-cycle fill
  acc.latency_s = static_cast<double>(acc.photonic_cycles + 1) / hw.f_phot_hz;

  double u;
  if (plan.variant == tiling::TilingVariant::RowTiling)
    u = static_cast<double>(layer.in_size) /
        static_cast<double>(plan.steps * plan.valid_rows_per_step);
  else
    u = std::min(1.0, static_cast<double>(layer.in_size) * static_cast<double>(layer.in_size) /
                          (static_cast<double>(plan.cycles) * static_cast<double>(hw.n_i)));
  const double kept = static_cast<double>(layer.out_size()) / static_cast<double>(layer.in_size);
  acc.utilization = u * kept * kept;
  return acc;
}

// ---------------------------------------------------------------------------
// Power model.

struct PowerBreakdown {
  double dac_w = 0.0;
  double adc_w = 0.0;
  double mrr_w = 0.0;
  double laser_w = 0.0;
  double sram_w = 0.0;
  double cmos_w = 0.0;
  double misc_w = 0.0;
  double total_w = 0.0;
};

/// Component power at a given activity factor (1 = streaming, 0 = idle).
/// DACs: CP*n_i shared input DACs plus n_pfcu*n_w weight DACs at f_phot.
/// ADCs: IB*n_i converters clocked at f_phot/n_ta (linear power vs
/// frequency). Idle keeps only the laser and leakage-like misc terms.
inline PowerBreakdown power_breakdown(const HardwareConfig& hw, const ParallelizationScheme& s,
                                      double activity = 1.0) {
  validate(hw);
  if (s.ib * s.cp != hw.n_pfcu) throw ValidationError("scheme does not match n_pfcu");
  const ComponentPowers& p = hw.powers;
  PowerBreakdown b;

  const double dacs = static_cast<double>(s.cp * hw.n_i + hw.n_pfcu * hw.n_w);
  b.dac_w = activity * p.dac_mw_at_f_phot * dacs * 1e-3;

  const double adcs = static_cast<double>(s.ib * hw.n_i);
  b.adc_w = activity * p.adc_mw_at_f_adc * adcs * (hw.f_adc_hz() / p.adc_ref_hz) * 1e-3;

  // input modulators + weight modulators + square-function MRRs unless the
  // nonlinear material computes the square in place
  const double mrrs = static_cast<double>(hw.n_i + hw.n_pfcu * hw.n_w) +
                      (hw.nonlinear_material ? 0.0 : static_cast<double>(hw.n_i * hw.n_pfcu));
  b.mrr_w = activity * p.mrr_mw * mrrs * 1e-3;

  b.laser_w = p.laser_mw_per_waveguide * static_cast<double>(hw.n_pfcu * hw.n_i) * 1e-3;

  const double bits_per_s = hw.f_adc_hz() * static_cast<double>((s.ib * hw.n_i + hw.n_i) * 8);
  b.sram_w = activity * p.sram_pj_per_bit * 1e-12 * bits_per_s;

  b.cmos_w = activity * p.cmos_tile_mw * static_cast<double>(hw.n_pfcu) * 1e-3;
  b.misc_w = p.misc_mw_per_pfcu * static_cast<double>(hw.n_pfcu) * 1e-3;

  b.total_w = b.dac_w + b.adc_w + b.mrr_w + b.laser_w + b.sram_w + b.cmos_w + b.misc_w;
  return b;
}

// ---------------------------------------------------------------------------
// Area model.

struct AreaBreakdown {
  double lens_mm2 = 0.0;
  double mrr_mm2 = 0.0;
  double pd_mm2 = 0.0;
  double splitter_mm2 = 0.0;
  double laser_mm2 = 0.0;
  double routing_mm2 = 0.0;
  double pfcu_mm2 = 0.0;       // one PFCU
  double pic_mm2 = 0.0;        // all PFCUs
  double sram_mm2 = 0.0;
  double cmos_mm2 = 0.0;
  double total_mm2 = 0.0;
  double pfcu_width_mm = 0.0;  // folded layout: lens width + waveguide bundle
};

inline AreaBreakdown area_breakdown(const HardwareConfig& hw) {
  validate(hw);
  const ComponentDims& d = hw.dims;
  constexpr double um2_to_mm2 = 1e-6;
  AreaBreakdown a;

  const double mrr_count = hw.nonlinear_material ? 0.0 : static_cast<double>(2 * hw.n_i);
  const double pd_count =
      hw.nonlinear_material ? static_cast<double>(hw.n_i) : static_cast<double>(2 * hw.n_i);

  a.lens_mm2 = 2.0 * d.lens_w_mm * d.lens_h_mm;
  a.mrr_mm2 = mrr_count * d.mrr_w * d.mrr_h * um2_to_mm2;
  a.pd_mm2 = pd_count * d.pd_w * d.pd_h * um2_to_mm2;
  a.splitter_mm2 = static_cast<double>(hw.n_i - 1) * d.splitter_w * d.splitter_h * um2_to_mm2;
  a.laser_mm2 = d.laser_w * d.laser_h * um2_to_mm2;
  a.routing_mm2 = d.waveguide_pitch * 1e-3 * static_cast<double>(2 * hw.n_i) * d.route_len_mm;

  a.pfcu_mm2 = a.lens_mm2 + a.mrr_mm2 + a.pd_mm2 + a.splitter_mm2 + a.laser_mm2 + a.routing_mm2;
  a.pic_mm2 = a.pfcu_mm2 * static_cast<double>(hw.n_pfcu);
  a.sram_mm2 = d.sram_mm2;
  a.cmos_mm2 = d.cmos_tile_mm2;
  a.total_mm2 = a.pic_mm2 + a.sram_mm2 + a.cmos_mm2;
  a.pfcu_width_mm = d.lens_w_mm + d.waveguide_pitch * 1e-3 * static_cast<double>(hw.n_i);
  return a;
}

// ---------------------------------------------------------------------------
// Network-level report.

struct LayerPerf {
  std::uint64_t photonic_cycles = 0;
  double latency_s = 0.0;
  double energy_j = 0.0;
  double utilization = 0.0;
};

struct PerfReport {
  std::vector<LayerPerf> layers;
  std::uint64_t total_cycles = 0;
  double latency_s = 0.0;
  double energy_j = 0.0;
  double avg_power_w = 0.0;
  double fps = 0.0;
  double fps_per_watt = 0.0;
  double edp = 0.0;
};

inline PerfReport network_perf(const workloads::NetworkSpec& net, const HardwareConfig& hw,
                               const ParallelizationScheme& scheme, bool pseudo_negative = true) {
  workloads::validate_network(net);
  const PowerBreakdown active = power_breakdown(hw, scheme, 1.0);
  PerfReport r;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    CycleAccounting acc;
    try {
      acc = layer_cycles(net.layers[i], hw, pseudo_negative);
    } catch (const Infeasible& e) {
      throw Infeasible("layer " + std::to_string(i) + ": " + e.what());
    }
    LayerPerf lp;
    lp.photonic_cycles = acc.photonic_cycles;
    lp.latency_s = acc.latency_s;
    lp.energy_j = active.total_w * acc.latency_s;
    lp.utilization = acc.utilization;
    r.total_cycles += acc.photonic_cycles;
    r.latency_s += lp.latency_s;
    r.energy_j += lp.energy_j;
    r.layers.push_back(lp);
  }
  r.avg_power_w = r.latency_s > 0 ? r.energy_j / r.latency_s : 0.0;
  r.fps = r.latency_s > 0 ? 1.0 / r.latency_s : 0.0;
  r.fps_per_watt = r.avg_power_w > 0 ? r.fps / r.avg_power_w : 0.0;
  r.edp = r.energy_j * r.latency_s;
  return r;
}

inline double geomean_fps_per_watt(const std::vector<PerfReport>& reports) {
  if (reports.empty()) throw InvalidInput("geomean over empty report list");
  double log_sum = 0.0;
  for (const auto& r : reports) log_sum += std::log(r.fps_per_watt);
  return std::exp(log_sum / static_cast<double>(reports.size()));
}

}  // namespace photofourier::archmodel

#endif
