#ifndef PHOTOFOURIER_PRESETS_HPP
#define PHOTOFOURIER_PRESETS_HPP

// Shipped machine configurations (CG: chiplet-based, 14nm-class constants;
// NG: monolithic with nonlinear material, 7nm-class constants), the
// optimization ladder used in efficiency studies, and JSON (de)serialization
// of hardware configs.

#include <string>

#include <json.hpp>

#include "photofourier/archmodel.hpp"
#include "photofourier/errors.hpp"

namespace photofourier::presets {

using archmodel::HardwareConfig;

inline HardwareConfig cg() {
  HardwareConfig hw;
  hw.name = "cg";
  return hw;  // defaults are the CG constants
}

inline HardwareConfig ng() {
  HardwareConfig hw;
  hw.name = "ng";
  hw.n_pfcu = 16;
  hw.nonlinear_material = true;
  hw.monolithic = true;
  hw.chiplets = 1;
  hw.powers.mrr_mw = 0.42;
  hw.powers.adc_mw_at_f_adc = 0.16;
  hw.powers.dac_mw_at_f_phot = 6.15;
  hw.powers.sram_pj_per_bit = 0.02;
  hw.powers.cmos_tile_mw = 250.0;
  hw.powers.misc_mw_per_pfcu = 60.0;
  hw.dims.route_len_mm = 1.85;
  hw.dims.sram_mm2 = 5.3;
  hw.dims.cmos_tile_mm2 = 16.5;
  return hw;
}

/// Single-PFCU system with one DAC per input and weight waveguide, ADCs at
/// the photonic clock (no temporal accumulation), no sharing.
inline HardwareConfig baseline() {
  HardwareConfig hw = cg();
  hw.name = "baseline";
  hw.n_pfcu = 1;
  hw.n_w = hw.n_i;  // no small-filter DAC reduction
  hw.n_ta = 1;      // ADCs at f_phot
  return hw;
}

struct LadderRung {
  std::string label;
  HardwareConfig hw;
  archmodel::ParallelizationScheme scheme;
};

inline archmodel::ParallelizationScheme unit_scheme(std::size_t n_pfcu, std::size_t ib) {
  archmodel::ParallelizationScheme s;
  s.ib = ib;
  s.cp = n_pfcu / ib;
  s.objective = archmodel::parallelization_objective(ib, n_pfcu, 1);
  return s;
}

/// Cumulative optimizations, each rung including all rungs to its left:
/// baseline -> small-filter DACs -> multi-PFCU input broadcasting ->
/// temporal accumulation -> (NG only) nonlinear material.
inline std::vector<LadderRung> optimization_ladder(bool include_nonlinear = false) {
  std::vector<LadderRung> rungs;

  HardwareConfig hw = baseline();
  rungs.push_back({"baseline", hw, unit_scheme(1, 1)});

  hw.name = "small-filter";
  hw.n_w = 25;
  rungs.push_back({"small-filter", hw, unit_scheme(1, 1)});

  hw.name = "broadcast";
  hw.n_pfcu = 8;
  rungs.push_back({"broadcast", hw, unit_scheme(8, 8)});

  hw.name = "temporal";
  hw.n_ta = 16;
  rungs.push_back({"temporal", hw, unit_scheme(8, 8)});

  if (include_nonlinear) {
    HardwareConfig n = hw;
    n.name = "nonlinear";
    n.nonlinear_material = true;
    rungs.push_back({"nonlinear", n, unit_scheme(8, 8)});
  }
  return rungs;
}

// ---------------------------------------------------------------------------
// Hardware config files.

inline nlohmann::json to_json(const HardwareConfig& hw) {
  nlohmann::json j;
  j["name"] = hw.name;
  j["n_pfcu"] = hw.n_pfcu;
  j["n_i"] = hw.n_i;
  j["n_w"] = hw.n_w;
  j["n_ta"] = hw.n_ta;
  j["f_phot_hz"] = hw.f_phot_hz;
  j["adc_bits"] = hw.adc_bits;
  j["dac_bits"] = hw.dac_bits;
  j["nonlinear_material"] = hw.nonlinear_material;
  j["monolithic"] = hw.monolithic;
  j["chiplets"] = hw.chiplets;
  j["pipeline_stages"] = hw.pipeline_stages;
  j["powers"] = {{"mrr_mw", hw.powers.mrr_mw},
                 {"laser_mw_per_waveguide", hw.powers.laser_mw_per_waveguide},
                 {"adc_mw_at_f_adc", hw.powers.adc_mw_at_f_adc},
                 {"dac_mw_at_f_phot", hw.powers.dac_mw_at_f_phot},
                 {"sram_pj_per_bit", hw.powers.sram_pj_per_bit},
                 {"cmos_tile_mw", hw.powers.cmos_tile_mw},
                 {"misc_mw_per_pfcu", hw.powers.misc_mw_per_pfcu},
                 {"adc_ref_hz", hw.powers.adc_ref_hz}};
  j["dims"] = {{"mrr_w_um", hw.dims.mrr_w},
               {"mrr_h_um", hw.dims.mrr_h},
               {"splitter_w_um", hw.dims.splitter_w},
               {"splitter_h_um", hw.dims.splitter_h},
               {"pd_w_um", hw.dims.pd_w},
               {"pd_h_um", hw.dims.pd_h},
               {"waveguide_pitch_um", hw.dims.waveguide_pitch},
               {"laser_w_um", hw.dims.laser_w},
               {"laser_h_um", hw.dims.laser_h},
               {"lens_w_mm", hw.dims.lens_w_mm},
               {"lens_h_mm", hw.dims.lens_h_mm},
               {"route_len_mm", hw.dims.route_len_mm},
               {"sram_mm2", hw.dims.sram_mm2},
               {"cmos_tile_mm2", hw.dims.cmos_tile_mm2}};
  return j;
}

inline HardwareConfig from_json(const nlohmann::json& j) {
  HardwareConfig hw;
  try {
    hw.name = j.value("name", hw.name);
    hw.n_pfcu = j.value("n_pfcu", hw.n_pfcu);
    hw.n_i = j.value("n_i", hw.n_i);
    hw.n_w = j.value("n_w", hw.n_w);
    hw.n_ta = j.value("n_ta", hw.n_ta);
    hw.f_phot_hz = j.value("f_phot_hz", hw.f_phot_hz);
    hw.adc_bits = j.value("adc_bits", hw.adc_bits);
    hw.dac_bits = j.value("dac_bits", hw.dac_bits);
    hw.nonlinear_material = j.value("nonlinear_material", hw.nonlinear_material);
    hw.monolithic = j.value("monolithic", hw.monolithic);
    hw.chiplets = j.value("chiplets", hw.chiplets);
    hw.pipeline_stages = j.value("pipeline_stages", hw.pipeline_stages);
    if (j.contains("powers")) {
      const auto& p = j.at("powers");
      hw.powers.mrr_mw = p.value("mrr_mw", hw.powers.mrr_mw);
      hw.powers.laser_mw_per_waveguide =
          p.value("laser_mw_per_waveguide", hw.powers.laser_mw_per_waveguide);
      hw.powers.adc_mw_at_f_adc = p.value("adc_mw_at_f_adc", hw.powers.adc_mw_at_f_adc);
      hw.powers.dac_mw_at_f_phot = p.value("dac_mw_at_f_phot", hw.powers.dac_mw_at_f_phot);
      hw.powers.sram_pj_per_bit = p.value("sram_pj_per_bit", hw.powers.sram_pj_per_bit);
      hw.powers.cmos_tile_mw = p.value("cmos_tile_mw", hw.powers.cmos_tile_mw);
      hw.powers.misc_mw_per_pfcu = p.value("misc_mw_per_pfcu", hw.powers.misc_mw_per_pfcu);
      hw.powers.adc_ref_hz = p.value("adc_ref_hz", hw.powers.adc_ref_hz);
    }
    if (j.contains("dims")) {
      const auto& d = j.at("dims");
      hw.dims.mrr_w = d.value("mrr_w_um", hw.dims.mrr_w);
      hw.dims.mrr_h = d.value("mrr_h_um", hw.dims.mrr_h);
      hw.dims.splitter_w = d.value("splitter_w_um", hw.dims.splitter_w);
      hw.dims.splitter_h = d.value("splitter_h_um", hw.dims.splitter_h);
      hw.dims.pd_w = d.value("pd_w_um", hw.dims.pd_w);
      hw.dims.pd_h = d.value("pd_h_um", hw.dims.pd_h);
      hw.dims.waveguide_pitch = d.value("waveguide_pitch_um", hw.dims.waveguide_pitch);
      hw.dims.laser_w = d.value("laser_w_um", hw.dims.laser_w);
      hw.dims.laser_h = d.value("laser_h_um", hw.dims.laser_h);
      hw.dims.lens_w_mm = d.value("lens_w_mm", hw.dims.lens_w_mm);
      hw.dims.lens_h_mm = d.value("lens_h_mm", hw.dims.lens_h_mm);
      hw.dims.route_len_mm = d.value("route_len_mm", hw.dims.route_len_mm);
      hw.dims.sram_mm2 = d.value("sram_mm2", hw.dims.sram_mm2);
      hw.dims.cmos_tile_mm2 = d.value("cmos_tile_mm2", hw.dims.cmos_tile_mm2);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("hardware config: ") + e.what());
  }
  archmodel::validate(hw);
  return hw;
}

}  // namespace photofourier::presets

#endif
