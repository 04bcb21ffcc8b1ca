#pragma once

#include <map>
#include <string>
#include <vector>

#include "thz/config.hpp"

namespace thz {

struct ResultRow {
  std::string experiment;
  std::string estimator;
  double snr_db = 0.0;
  std::string metric;
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int trials = 0;
  int failures = 0;
  std::uint64_t seed = 0;
  std::string version;
};

struct ResultTable {
  std::vector<ResultRow> rows;

  // Header: experiment,estimator,snr_db,metric,mean,stderr,trials,failures,seed,version
  std::string to_csv() const;
};

// Channel-estimation accuracy sweep. Rows: per estimator a normalized channel
// error ("nmse") and, for sparse estimators, the beamspace squared error
// ("mse_beamspace"); plus a "bcrlb" estimator row with the oracle lower bounds.
ResultTable run_nmse_sweep(const ExperimentConfig& cfg);

// Same pipeline with a mid-point ADC applied to the sounding measurements.
// Rows for infinite resolution (bits = 0) are emitted first and are
// byte-identical to run_nmse_sweep on the same config; finite-bit rows carry
// an "@<bits>" estimator suffix.
ResultTable run_adc_ablation(const ExperimentConfig& cfg);

// Spectral-efficiency sweep: fully-digital water-filling ("digital"), hybrid
// stages from true beamspace CSI ("hybrid-perfect"), and hybrid stages from
// estimated CSI ("hybrid-<estimator>"). Multi-carrier configs suffix the
// estimator label with "@<f>THz".
ResultTable run_ase_sweep(const ExperimentConfig& cfg);

// Uncoded QPSK error-rate sweep over the same transceiver designs.
ResultTable run_ber_sweep(const ExperimentConfig& cfg);

// Molecular absorption tabulated on a frequency grid; own two-column schema.
std::string absorption_csv(const ExperimentConfig& cfg);

// Amplitude scale applied to every channel draw so that the average channel
// power at the first carrier is N_T N_R (identity when normalization = "none").
double calibrate_channel_scale(const ExperimentConfig& cfg);

// Mean peak measurement amplitude over noiseless calibration soundings; the
// b-bit ADC step is 2 R / 2^b.
double calibrate_adc_range(const ExperimentConfig& cfg);

}  // namespace thz
