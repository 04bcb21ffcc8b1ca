#include "thz/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};
}

void ArrayGeometry::validate() const {
  if (n_elements < 1) throw ConfigError("array: n_elements must be >= 1");
  if (!(spacing > 0.0)) throw ConfigError("array: spacing must be > 0");
  if (!(wavelength > 0.0)) throw ConfigError("array: wavelength must be > 0");
}

ArrayGeometry ArrayGeometry::half_wavelength(int n, double f_hz) {
  const double lambda = constants::c / f_hz;
  return ArrayGeometry{n, lambda / 2.0, lambda};
}

CVec array_response(const ArrayGeometry& geom, double phi) {
  geom.validate();
  const int n = geom.n_elements;
  const double step = 2.0 * std::numbers::pi / geom.wavelength * geom.spacing * std::cos(phi);
  CVec a(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) a(k) = norm * std::exp(-kImag * (step * k));
  return a;
}

double los_gain_magnitude(double f, double d, double k_abs) {
  if (!(f > 0.0)) throw std::domain_error("los_gain_magnitude: f must be > 0");
  if (!(d > 0.0)) throw std::domain_error("los_gain_magnitude: d must be > 0 (singular spreading loss)");
  if (k_abs < 0.0) throw std::domain_error("los_gain_magnitude: k_abs must be >= 0");
  const double spread = constants::c / (4.0 * std::numbers::pi * f * d);
  const double l_spread = spread * spread;
  const double l_abs = std::exp(-k_abs * d);
  return std::sqrt(l_spread * l_abs);
}

double nlos_gain_magnitude(double f, double d, double k_abs,
                           std::span<const double> bounce_gammas) {
  const double prod = combined_reflection(bounce_gammas);
  return std::abs(prod) * los_gain_magnitude(f, d, k_abs);
}

std::vector<PathCluster> sample_clusters(const ClusterConfig& cfg, Rng& rng) {
  if (cfg.n_ray < 1) throw ConfigError("cluster config: n_ray must be >= 1");
  if (cfg.n_nlos > 0 && static_cast<int>(cfg.reflection_orders.size()) != cfg.n_nlos)
    throw ConfigError("cluster config: reflection_orders size must equal n_nlos");

  std::uniform_real_distribution<double> mean_angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phase(-std::numbers::pi,
                                               std::numbers::pi);  // treated as (-pi, pi]
  std::normal_distribution<double> offset(0.0, cfg.angular_spread);
  std::uniform_real_distribution<double> incidence(0.0, std::numbers::pi / 2.0 * 0.999);

  auto draw_bounce_product = [&](int order) -> double {
    double prod = 1.0;
    for (int b = 0; b < order; ++b) {
      if (cfg.surfaces.empty())
        throw ConfigError("cluster config: NLoS clusters require at least one surface");
      std::uniform_int_distribution<std::size_t> pick(0, cfg.surfaces.size() - 1);
      const SurfaceSpec& surf = cfg.surfaces[pick(rng)];
      const double theta = incidence(rng);
      try {
        prod *= reflection_coefficient(surf, cfg.f_hz, theta).Gamma;
      } catch (const TotalReflectionError&) {
        prod = 0.0;  // blocked path
      }
    }
    return prod;
  };

  std::vector<PathCluster> clusters;
  clusters.reserve(1 + cfg.n_nlos);

  for (int c = 0; c < 1 + cfg.n_nlos; ++c) {
    PathCluster cl;
    cl.kind = (c == 0) ? ClusterKind::LoS : ClusterKind::NLoS;
    cl.reflection_order = (c == 0) ? 0 : cfg.reflection_orders[c - 1];
    cl.mean_aod = mean_angle(rng);
    cl.mean_aoa = mean_angle(rng);

    double mag;
    if (c == 0) {
      mag = los_gain_magnitude(cfg.f_hz, cfg.d_m, cfg.k_abs);
    } else {
      const double gamma_prod = draw_bounce_product(cl.reflection_order);
      const double bounce[] = {gamma_prod};
      mag = nlos_gain_magnitude(cfg.f_hz, cfg.d_m, cfg.k_abs, bounce);
    }

    cl.rays.reserve(cfg.n_ray);
    for (int r = 0; r < cfg.n_ray; ++r) {
      Ray ray;
      ray.aod = cl.mean_aod + offset(rng);
      ray.aoa = cl.mean_aoa + offset(rng);
      ray.gain_mag = mag;
      ray.phase = phase(rng);
      cl.rays.push_back(ray);
    }
    clusters.push_back(std::move(cl));
  }
  return clusters;
}

ChannelRealization assemble_channel(const std::vector<PathCluster>& clusters,
                                    const ArrayGeometry& tx_geom,
                                    const ArrayGeometry& rx_geom, double g_tx,
                                    double g_rx, double f, double d) {
  if (clusters.empty()) throw ConfigError("assemble_channel: empty cluster list");
  tx_geom.validate();
  rx_geom.validate();

  const int nt = tx_geom.n_elements;
  const int nr = rx_geom.n_elements;
  int n_nlos = 0;
  for (const auto& cl : clusters)
    if (cl.kind == ClusterKind::NLoS) ++n_nlos;

  CMat H = CMat::Zero(nr, nt);
  for (const auto& cl : clusters) {
    if (cl.rays.empty()) continue;
    const double n_ray = static_cast<double>(cl.rays.size());
    const double scale =
        (cl.kind == ClusterKind::LoS)
            ? std::sqrt(static_cast<double>(nt) * nr / n_ray)
            : std::sqrt(static_cast<double>(nt) * nr / (n_nlos * n_ray));
    for (const auto& ray : cl.rays) {
      const std::complex<double> alpha =
          ray.gain_mag * std::exp(kImag * ray.phase) * g_tx * g_rx;
      H.noalias() += scale * alpha * array_response(rx_geom, ray.aoa) *
                     array_response(tx_geom, ray.aod).adjoint();
    }
  }

  ChannelRealization out;
  out.H = std::move(H);
  out.clusters = clusters;
  out.f = f;
  out.d = d;
  out.g_tx = g_tx;
  out.g_rx = g_rx;
  return out;
}

}  // namespace thz
