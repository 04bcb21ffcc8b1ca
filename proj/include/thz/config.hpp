#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thz/absorption.hpp"

namespace thz {

struct SystemDims {
  int n_tx = 16;
  int n_rx = 16;
  int n_rf = 4;
  int m_tx = 12;
  int m_rx = 12;
  int g_tx = 20;
  int g_rx = 20;

  void validate() const;
};

// Named presets for the two reference array configurations.
SystemDims preset_system1();  // 32 antennas, 8 RF chains, 24 frames, grid 36
SystemDims preset_system2();  // 16 antennas, 4 RF chains, 12 frames, grid 20

struct ChannelConfig {
  std::vector<double> f_hz = {0.3e12};
  double d_m = 10.0;
  int n_nlos = 4;
  int n_ray = 1;
  std::vector<int> reflection_orders = {1, 1, 1, 2};
  double antenna_gain_db = 25.0;  // per side
  double angular_spread = 0.1;    // rad
  std::vector<SurfaceSpec> surfaces;  // empty -> built-in defaults
  // Absorption: explicit value wins; otherwise computed from the catalog; else 0.
  std::optional<double> k_abs_override;
  std::string catalog_path;
  MediumConditions medium;
  // "auto": rescale so E||H||_F^2 = N_T N_R at the first carrier;
  // "none": raw physical gains.
  std::string normalization = "auto";

  void validate() const;
};

struct ExperimentConfig {
  std::string experiment = "nmse";  // nmse | ase | ber | adc | absorption
  SystemDims dims = preset_system2();
  ChannelConfig channel;
  std::vector<double> snr_db = {-10.0, -5.0, 0.0, 5.0, 10.0};
  int trials = 100;
  std::vector<std::string> estimators = {"ls", "omp", "bl"};
  int mbl_blocks = 5;          // M for the multiple-measurement estimator
  std::vector<int> adc_bits = {0, 6, 4, 3, 2};  // 0 = infinite resolution
  std::uint64_t seed = 1u;
  double p_total = 1.0;
  int n_streams = 2;
  int n_symbols = 10000;  // QPSK symbols per trial in error-rate runs
  double bl_epsilon = 1e-6;
  int bl_k_max = 50;
  // Absorption tabulation grid (absorption experiment only).
  double f_min_hz = 0.1e12;
  double f_max_hz = 10.0e12;
  int f_points = 200;

  void validate() const;
};

// Built-in reflective materials used when a config lists none.
std::vector<SurfaceSpec> default_surfaces();

// Parse from a JSON document (string) or file; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace thz
