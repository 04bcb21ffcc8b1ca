#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "thz/absorption.hpp"
#include "thz/rng.hpp"

namespace thz {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct ArrayGeometry {
  int n_elements = 1;
  double spacing = 0.0;     // m
  double wavelength = 0.0;  // m

  void validate() const;
  static ArrayGeometry half_wavelength(int n, double f_hz);
};

// Unit-norm ULA steering vector, entries (1/sqrt(N)) exp(-j 2pi/lambda k d cos(phi)).
CVec array_response(const ArrayGeometry& geom, double phi);

inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

enum class ClusterKind { LoS, NLoS };

struct Ray {
  double aod = 0.0;       // rad
  double aoa = 0.0;       // rad
  double gain_mag = 0.0;  // dimensionless
  double phase = 0.0;     // rad, in (-pi, pi]
};

struct PathCluster {
  ClusterKind kind = ClusterKind::LoS;
  int reflection_order = 0;  // 0 for LoS
  double mean_aod = 0.0;
  double mean_aoa = 0.0;
  std::vector<Ray> rays;
};

struct ChannelRealization {
  CMat H;  // N_R x N_T
  std::vector<PathCluster> clusters;
  double f = 0.0;     // Hz
  double d = 0.0;     // m
  double g_tx = 1.0;  // linear amplitude gain, TX side
  double g_rx = 1.0;
};

// sqrt(L_spread L_abs) with L_spread = (c/4 pi f d)^2, L_abs = exp(-k_abs d).
double los_gain_magnitude(double f, double d, double k_abs);

// Adds the product of per-bounce reflection coefficients.
double nlos_gain_magnitude(double f, double d, double k_abs,
                           std::span<const double> bounce_gammas);

struct ClusterConfig {
  double f_hz = 0.3e12;
  double d_m = 10.0;
  int n_nlos = 4;
  int n_ray = 1;
  // per-NLoS-cluster reflection order; defaults to three first-order, one second-order
  std::vector<int> reflection_orders = {1, 1, 1, 2};
  std::vector<SurfaceSpec> surfaces;
  double k_abs = 0.0;            // 1/m
  double angular_spread = 0.1;   // rad, std of ray offsets around the cluster mean
};

// Draws LoS + N_NLoS clusters: mean angles uniform on (0, pi), ray angles
// mean + N(0, spread), phases uniform (-pi, pi]. Bounce surfaces and incidence
// angles are drawn per cluster; a total-reflection draw zeroes that cluster.
std::vector<PathCluster> sample_clusters(const ClusterConfig& cfg, Rng& rng);

ChannelRealization assemble_channel(const std::vector<PathCluster>& clusters,
                                    const ArrayGeometry& tx_geom,
                                    const ArrayGeometry& rx_geom, double g_tx,
                                    double g_rx, double f, double d);

}  // namespace thz
