#include "thz/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "thz/beamspace.hpp"
#include "thz/errors.hpp"
#include "thz/estimators.hpp"
#include "thz/quantizer.hpp"
#include "thz/transceiver.hpp"

#ifndef THZSIM_VERSION
#define THZSIM_VERSION "0.0.0"
#endif

namespace thz {

namespace {

constexpr double kGammaFloor = 1e-12;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double sigma2_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

// Seed-stream tags; each derived stream is keyed off the per-trial seed.
constexpr std::uint64_t kChannelTag = 11;
constexpr std::uint64_t kNoiseTag = 101;
constexpr std::uint64_t kSymbolTag = 7777;
constexpr std::uint64_t kScaleCalibTag = 1ull << 32;
constexpr std::uint64_t kRangeCalibTag = 1ull << 33;

struct FreqContext {
  double f = 0.0;
  ArrayGeometry tx_geom, rx_geom;
  CMat a_tx, a_rx;
  SensingOperator op;  // built with unit noise power; per-SNR R_v built locally
  ClusterConfig cluster;
  double psi_scale = 0.0;  // pinv(Psi) = psi_scale * Psi^H for half-wave grids
};

struct Harness {
  SoundingDesign design;
  std::vector<FreqContext> freqs;
  double scale = 1.0;
  double gain = 1.0;  // per-side antenna amplitude gain
};

ClusterConfig cluster_config_for(const ChannelConfig& ch, double f, double k_abs) {
  ClusterConfig cc;
  cc.f_hz = f;
  cc.d_m = ch.d_m;
  cc.n_nlos = ch.n_nlos;
  cc.n_ray = ch.n_ray;
  cc.reflection_orders = ch.reflection_orders;
  cc.surfaces = ch.surfaces.empty() ? default_surfaces() : ch.surfaces;
  cc.k_abs = k_abs;
  cc.angular_spread = ch.angular_spread;
  return cc;
}

double absorption_at(const ExperimentConfig& cfg, const SpectralLineCatalog* catalog,
                     double f) {
  if (cfg.channel.k_abs_override) return *cfg.channel.k_abs_override;
  if (catalog) return k_abs(*catalog, cfg.channel.medium, f);
  return 0.0;
}

CMat raw_channel(const ClusterConfig& cc, const FreqContext& fc, double gain,
                 double d_m, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const auto clusters = sample_clusters(cc, rng);
  return assemble_channel(clusters, fc.tx_geom, fc.rx_geom, gain, gain, cc.f_hz, d_m).H;
}

double scale_from_calibration(const ExperimentConfig& cfg, const ClusterConfig& cc,
                              const FreqContext& fc, double gain) {
  if (cfg.channel.normalization == "none") return 1.0;
  constexpr int kDraws = 100;
  double acc = 0.0;
  for (int c = 0; c < kDraws; ++c)
    acc += raw_channel(cc, fc, gain, cfg.channel.d_m,
                       derive_seed(cfg.seed, kScaleCalibTag + c))
               .squaredNorm();
  const double mean_power = acc / kDraws;
  if (!(mean_power > 0.0))
    throw NumericalError("channel calibration: zero average power; all paths blocked");
  return std::sqrt(static_cast<double>(cfg.dims.n_tx) * cfg.dims.n_rx / mean_power);
}

Harness build_harness(const ExperimentConfig& cfg) {
  cfg.validate();
  Harness h;
  h.design = design_sounding(cfg.dims.n_tx, cfg.dims.n_rx, cfg.dims.n_rf,
                             cfg.dims.m_tx, cfg.dims.m_rx);
  h.gain = db_to_amplitude(cfg.channel.antenna_gain_db);

  SpectralLineCatalog catalog;
  const bool has_catalog = !cfg.channel.catalog_path.empty();
  if (has_catalog) catalog = load_line_catalog_file(cfg.channel.catalog_path);

  const auto grid_tx = make_grid(cfg.dims.g_tx);
  const auto grid_rx = make_grid(cfg.dims.g_rx);
  for (double f : cfg.channel.f_hz) {
    FreqContext fc;
    fc.f = f;
    fc.tx_geom = ArrayGeometry::half_wavelength(cfg.dims.n_tx, f);
    fc.rx_geom = ArrayGeometry::half_wavelength(cfg.dims.n_rx, f);
    fc.a_tx = build_dictionary(grid_tx, fc.tx_geom);
    fc.a_rx = build_dictionary(grid_rx, fc.rx_geom);
    fc.op = sensing_operator(h.design, fc.a_tx, fc.a_rx, 1.0);
    fc.cluster = cluster_config_for(cfg.channel, f,
                                    absorption_at(cfg, has_catalog ? &catalog : nullptr, f));
    fc.psi_scale = static_cast<double>(cfg.dims.n_tx) * cfg.dims.n_rx /
                   (static_cast<double>(cfg.dims.g_tx) * cfg.dims.g_rx);
    h.freqs.push_back(std::move(fc));
  }

  h.scale = scale_from_calibration(cfg, h.freqs.front().cluster, h.freqs.front(), h.gain);
  return h;
}

CMat trial_channel(const ExperimentConfig& cfg, const Harness& h, const FreqContext& fc,
                   std::uint64_t trial_seed, std::uint64_t f_idx) {
  return h.scale * raw_channel(fc.cluster, fc, h.gain, cfg.channel.d_m,
                               derive_seed(trial_seed, kChannelTag + f_idx));
}

CVec vec_of(const CMat& m) { return CVec(Eigen::Map<const CVec>(m.data(), m.size())); }

CVec beamspace_truth(const FreqContext& fc, const CMat& h) {
  return fc.psi_scale * (fc.op.Psi.adjoint() * vec_of(h));
}

// Iteration safeguard for greedy pursuit: a small multiple of the expected
// path count (each off-grid path leaks into a handful of neighboring atoms).
// Without a cap, the residual-energy-change rule keeps admitting noise atoms
// whose individual contributions stay above epsilon_t.
int omp_iteration_cap(const ExperimentConfig& cfg) {
  return 3 * (1 + cfg.channel.n_nlos) * cfg.channel.n_ray;
}

// Sparse beamspace representation of a perfectly known channel, for the
// genie-CSI hybrid design. The dense min-norm projection spreads each path's
// energy over many leakage atoms, so ranking its entries can burn RF chains on
// side lobes of the strongest path; a greedy pursuit against the full
// dictionary (noiseless, all N_T N_R observations) concentrates each path into
// its dominant atoms instead, which is what the beam-selection step consumes.
CVec beamspace_truth_sparse(const ExperimentConfig& cfg, const FreqContext& fc,
                            const CMat& h) {
  const CVec y = vec_of(h);
  OmpConfig oc;
  oc.epsilon_t = 1e-6 * y.squaredNorm();
  oc.max_iters = omp_iteration_cap(cfg);
  return estimate_omp(y, fc.op.Psi, oc).h_b;
}

// ----- result accumulation ----------------------------------------------------

struct Slot {
  std::string experiment, estimator, metric;
  double snr_db = 0.0;
  std::vector<double> values;
  int failures = 0;
};

class Accumulator {
 public:
  int add_slot(std::string experiment, std::string estimator, double snr_db,
               std::string metric) {
    Slot s;
    s.experiment = std::move(experiment);
    s.estimator = std::move(estimator);
    s.metric = std::move(metric);
    s.snr_db = snr_db;
    slots_.push_back(std::move(s));
    return static_cast<int>(slots_.size()) - 1;
  }

  void record(int slot, double value) { slots_[slot].values.push_back(value); }
  void fail(int slot) { ++slots_[slot].failures; }

  ResultTable table(std::uint64_t seed) const {
    ResultTable t;
    for (const auto& s : slots_) {
      ResultRow row;
      row.experiment = s.experiment;
      row.estimator = s.estimator;
      row.snr_db = s.snr_db;
      row.metric = s.metric;
      const int n = static_cast<int>(s.values.size());
      row.trials = n;
      row.failures = s.failures;
      if (n > 0) {
        double mean = 0.0;
        for (double v : s.values) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : s.values) var += (v - mean) * (v - mean);
        row.mean = mean;
        row.stderr_of_mean = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
      }
      row.seed = seed;
      row.version = THZSIM_VERSION;
      t.rows.push_back(std::move(row));
    }
    return t;
  }

 private:
  std::vector<Slot> slots_;
};

// ----- channel-estimation sweeps ---------------------------------------------

bool beamspace_estimator(const std::string& e) {
  return e == "omp" || e == "bl" || e == "mbl";
}

struct EstimationPlan {
  std::vector<int> bits;          // 0 = infinite resolution, emitted first
  std::vector<double> deltas;     // ADC step per bits entry (0 for bits = 0)
  bool needs_mbl = false;
};

double adc_range(const ExperimentConfig& cfg, const Harness& h) {
  constexpr int kDraws = 100;
  const FreqContext& fc = h.freqs.front();
  double acc = 0.0;
  for (int c = 0; c < kDraws; ++c) {
    const CMat ch = h.scale * raw_channel(fc.cluster, fc, h.gain, cfg.channel.d_m,
                                          derive_seed(cfg.seed, kRangeCalibTag + 2 * c));
    Rng rng = make_rng(derive_seed(cfg.seed, kRangeCalibTag + 2 * c + 1));
    const CVec y = simulate_sounding(ch, h.design, 0.0, rng);
    double peak = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      peak = std::max({peak, std::abs(y(i).real()), std::abs(y(i).imag())});
    acc += peak;
  }
  return acc / kDraws;
}

ResultTable run_estimation(const ExperimentConfig& cfg, bool adc_mode) {
  const Harness h = build_harness(cfg);
  const FreqContext& fc = h.freqs.front();
  const int n_snr = static_cast<int>(cfg.snr_db.size());

  EstimationPlan plan;
  if (adc_mode) {
    // infinite resolution first (if requested), then finite settings in config
    // order with duplicates dropped
    if (std::find(cfg.adc_bits.begin(), cfg.adc_bits.end(), 0) != cfg.adc_bits.end())
      plan.bits.push_back(0);
    for (int b : cfg.adc_bits)
      if (b != 0 && std::find(plan.bits.begin(), plan.bits.end(), b) == plan.bits.end())
        plan.bits.push_back(b);
    if (plan.bits.empty()) plan.bits.push_back(0);
  } else {
    plan.bits.push_back(0);
  }
  double range = 0.0;
  bool any_finite = std::any_of(plan.bits.begin(), plan.bits.end(),
                                [](int b) { return b != 0; });
  if (any_finite) range = adc_range(cfg, h);
  for (int b : plan.bits)
    plan.deltas.push_back(b == 0 ? 0.0 : 2.0 * range / std::ldexp(1.0, b));
  plan.needs_mbl = std::find(cfg.estimators.begin(), cfg.estimators.end(), "mbl") !=
                   cfg.estimators.end();

  // row layout: per bits block, per estimator, per metric, per SNR; the
  // infinite-resolution block matches the plain estimation sweep byte for byte
  Accumulator acc;
  std::map<std::tuple<int, std::string, int, std::string>, int> slot_of;
  for (std::size_t bi = 0; bi < plan.bits.size(); ++bi) {
    const int bits = plan.bits[bi];
    const std::string family = bits == 0 ? "nmse" : "adc";
    const std::string suffix = bits == 0 ? "" : "@" + std::to_string(bits);
    for (const auto& est : cfg.estimators) {
      std::vector<std::string> metrics = {"nmse"};
      if (beamspace_estimator(est)) metrics.push_back("mse_beamspace");
      for (const auto& metric : metrics)
        for (int s = 0; s < n_snr; ++s)
          slot_of[{bits, est, s, metric}] =
              acc.add_slot(family, est + suffix, cfg.snr_db[s], metric);
    }
    if (bits == 0)
      for (const std::string metric : {"mse_beamspace", "mse_channel"})
        for (int s = 0; s < n_snr; ++s)
          slot_of[{0, "bcrlb", s, metric}] =
              acc.add_slot(family, "bcrlb", cfg.snr_db[s], metric);
  }

  const Eigen::Index n_meas = fc.op.Phi.rows();
  std::vector<CMat> r_v_per_snr;
  for (int s = 0; s < n_snr; ++s)
    r_v_per_snr.push_back(sigma2_from_snr(cfg.snr_db[s]) *
                          CMat::Identity(n_meas, n_meas));

  BlConfig blc;
  blc.epsilon = cfg.bl_epsilon;
  blc.k_max = cfg.bl_k_max;
  blc.track_evidence = false;

  const int m_blocks = plan.needs_mbl ? cfg.mbl_blocks : 1;

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t st = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    const CMat H = trial_channel(cfg, h, fc, st, 0);
    const CVec h_vec = vec_of(H);
    const CVec h_b_true = beamspace_truth(fc, H);
    const double h_power = H.squaredNorm();

    for (int s = 0; s < n_snr; ++s) {
      const double sigma2 = sigma2_from_snr(cfg.snr_db[s]);
      Rng rng_n = make_rng(derive_seed(st, kNoiseTag + s));
      const CMat y_clean =
          simulate_sounding_batch(H, h.design, sigma2, m_blocks, rng_n);

      for (std::size_t bi = 0; bi < plan.bits.size(); ++bi) {
        const int bits = plan.bits[bi];
        CMat y = y_clean;
        if (bits != 0)
          for (Eigen::Index c = 0; c < y.cols(); ++c)
            y.col(c) = quantize_uniform(y.col(c), bits, plan.deltas[bi]);
        const CVec y0 = y.col(0);

        for (const auto& est : cfg.estimators) {
          auto record_channel = [&](const CMat& h_hat) {
            acc.record(slot_of[{bits, est, s, "nmse"}], (h_hat - H).squaredNorm() / h_power);
          };
          auto record_beamspace = [&](double mse) {
            acc.record(slot_of[{bits, est, s, "mse_beamspace"}], mse);
          };
          auto fail_all = [&] {
            acc.fail(slot_of[{bits, est, s, "nmse"}]);
            if (beamspace_estimator(est)) acc.fail(slot_of[{bits, est, s, "mse_beamspace"}]);
          };
          try {
            if (est == "ls") {
              const CVec h_hat = estimate_ls(y0, fc.op.Phi);
              record_channel(Eigen::Map<const CMat>(h_hat.data(), H.rows(), H.cols()));
            } else if (est == "mmse") {
              const CMat r_h = (h_power / (H.rows() * H.cols())) *
                               CMat::Identity(h_vec.size(), h_vec.size());
              const CVec h_hat = estimate_mmse(y0, fc.op.Phi, r_h, r_v_per_snr[s]);
              record_channel(Eigen::Map<const CMat>(h_hat.data(), H.rows(), H.cols()));
            } else if (est == "omp") {
              OmpConfig oc;
              oc.epsilon_t = sigma2;
              oc.max_iters = omp_iteration_cap(cfg);
              const OmpResult r = estimate_omp(y0, fc.op.Phi_tilde, oc);
              record_channel(beamspace_to_channel(r.h_b, fc.a_rx, fc.a_tx));
              record_beamspace((r.h_b - h_b_true).squaredNorm());
            } else if (est == "bl") {
              const BlResult r = estimate_bl(y0, fc.op.Phi_tilde, r_v_per_snr[s], blc);
              record_channel(beamspace_to_channel(r.h_b, fc.a_rx, fc.a_tx));
              record_beamspace((r.h_b - h_b_true).squaredNorm());
            } else if (est == "mbl") {
              const MblResult r = estimate_mbl(y, fc.op.Phi_tilde, r_v_per_snr[s], blc);
              double mse = 0.0;
              for (Eigen::Index c = 0; c < r.h_b.cols(); ++c)
                mse += (r.h_b.col(c) - h_b_true).squaredNorm();
              record_beamspace(mse / r.h_b.cols());
              const CVec h_b_mean = r.h_b.rowwise().mean();
              record_channel(beamspace_to_channel(h_b_mean, fc.a_rx, fc.a_tx));
            } else {
              throw ConfigError("estimator '" + est + "' is not available in this sweep");
            }
          } catch (const NumericalError&) {
            fail_all();
          } catch (const ConfigError&) {
            fail_all();
          }
        }

        if (bits == 0) {
          try {
            const RVec gamma_oracle =
                (h_b_true.cwiseAbs2().array() + kGammaFloor).matrix();
            const CrlbResult cb =
                bcrlb(fc.op.Phi_tilde, r_v_per_snr[s], gamma_oracle, fc.op.Psi);
            acc.record(slot_of[{0, "bcrlb", s, "mse_beamspace"}], cb.mse_bound_beamspace);
            acc.record(slot_of[{0, "bcrlb", s, "mse_channel"}], cb.mse_bound_channel);
          } catch (const NumericalError&) {
            acc.fail(slot_of[{0, "bcrlb", s, "mse_beamspace"}]);
            acc.fail(slot_of[{0, "bcrlb", s, "mse_channel"}]);
          }
        }
      }
    }
  }

  return acc.table(cfg.seed);
}

// ----- link-level sweeps ------------------------------------------------------

struct LinkSource {
  std::string label;  // digital | hybrid-perfect | hybrid-<estimator>
  std::string estimator;  // empty for digital / perfect
};

std::vector<LinkSource> link_sources(const ExperimentConfig& cfg) {
  std::vector<LinkSource> out = {{"digital", ""}, {"hybrid-perfect", ""}};
  for (const auto& e : cfg.estimators)
    if (beamspace_estimator(e)) out.push_back({"hybrid-" + e, e});
  return out;
}

std::string freq_suffix(const ExperimentConfig& cfg, double f) {
  if (cfg.channel.f_hz.size() < 2) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "@%gTHz", f / 1e12);
  return buf;
}

struct LinkDesign {
  CMat f;  // combined precoder
  CMat w;  // combined combiner
};

LinkDesign design_digital(const CMat& h, double sigma2, const ExperimentConfig& cfg) {
  const auto wf = fully_digital_precoder(h, cfg.n_streams, cfg.p_total, sigma2);
  const auto mc = mmse_combiner(h, wf.f_opt, sigma2, cfg.n_streams);
  return {wf.f_opt, mc.w_m};
}

LinkDesign design_hybrid(const CVec& h_b_hat, const CMat& h_design,
                         const FreqContext& fc, double sigma2,
                         const ExperimentConfig& cfg) {
  const auto wf = fully_digital_precoder(h_design, cfg.n_streams, cfg.p_total, sigma2);
  // first pass fixes the analog stages and F_BB; the combiner statistics are
  // then formed with the actual hybrid precoder and fed to the second pass
  const CMat eye = CMat::Identity(h_design.rows(), h_design.rows());
  const CMat zero = CMat::Zero(h_design.rows(), cfg.n_streams);
  const HybridStages s1 = hybrid_from_beamspace(h_b_hat, fc.a_tx, fc.a_rx,
                                                cfg.dims.n_rf, wf.f_opt, eye, zero,
                                                cfg.p_total, cfg.n_streams);
  const CMat f = s1.f_rf * s1.f_bb;
  const auto mc = mmse_combiner(h_design, f, sigma2, cfg.n_streams);
  const HybridStages s2 = hybrid_from_beamspace(h_b_hat, fc.a_tx, fc.a_rx,
                                                cfg.dims.n_rf, wf.f_opt, mc.r_yy,
                                                mc.w_m, cfg.p_total, cfg.n_streams);
  return {s2.f_rf * s2.f_bb, s2.w_rf * s2.w_bb};
}

ResultTable run_link_sweep(const ExperimentConfig& cfg, const std::string& family) {
  const Harness h = build_harness(cfg);
  const int n_snr = static_cast<int>(cfg.snr_db.size());
  const auto sources = link_sources(cfg);
  const std::string metric = family == "ase" ? "ase" : "ber";
  const bool needs_mbl =
      std::any_of(sources.begin(), sources.end(),
                  [](const LinkSource& s) { return s.estimator == "mbl"; });
  const int m_blocks = needs_mbl ? cfg.mbl_blocks : 1;

  Accumulator acc;
  std::map<std::tuple<int, int, int>, int> slot_of;  // (source, f_idx, snr_idx)
  for (std::size_t si = 0; si < sources.size(); ++si)
    for (std::size_t fi = 0; fi < h.freqs.size(); ++fi)
      for (int s = 0; s < n_snr; ++s)
        slot_of[{static_cast<int>(si), static_cast<int>(fi), s}] = acc.add_slot(
            family, sources[si].label + freq_suffix(cfg, h.freqs[fi].f),
            cfg.snr_db[s], metric);

  BlConfig blc;
  blc.epsilon = cfg.bl_epsilon;
  blc.k_max = cfg.bl_k_max;
  blc.track_evidence = false;

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t st = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    for (std::size_t fi = 0; fi < h.freqs.size(); ++fi) {
      const FreqContext& fc = h.freqs[fi];
      const CMat H = trial_channel(cfg, h, fc, st, fi);
      const CVec h_b_true = beamspace_truth_sparse(cfg, fc, H);

      for (int s = 0; s < n_snr; ++s) {
        const double sigma2 = sigma2_from_snr(cfg.snr_db[s]);
        const Eigen::Index n_meas = fc.op.Phi.rows();
        const CMat r_v = sigma2 * CMat::Identity(n_meas, n_meas);

        // shared sounding measurement for all estimated-CSI designs
        CMat y;
        bool have_y = false;
        auto measurement = [&]() -> const CMat& {
          if (!have_y) {
            Rng rng = make_rng(derive_seed(st, kNoiseTag + 131 * fi + s));
            y = simulate_sounding_batch(H, h.design, sigma2, m_blocks, rng);
            have_y = true;
          }
          return y;
        };

        for (std::size_t si = 0; si < sources.size(); ++si) {
          const int slot = slot_of[{static_cast<int>(si), static_cast<int>(fi), s}];
          try {
            LinkDesign d;
            if (sources[si].label == "digital") {
              d = design_digital(H, sigma2, cfg);
            } else if (sources[si].label == "hybrid-perfect") {
              d = design_hybrid(h_b_true, H, fc, sigma2, cfg);
            } else {
              const CMat& ym = measurement();
              CVec h_b_hat;
              if (sources[si].estimator == "omp") {
                OmpConfig oc;
                oc.epsilon_t = sigma2;
                oc.max_iters = omp_iteration_cap(cfg);
                h_b_hat = estimate_omp(ym.col(0), fc.op.Phi_tilde, oc).h_b;
              } else if (sources[si].estimator == "bl") {
                h_b_hat = estimate_bl(ym.col(0), fc.op.Phi_tilde, r_v, blc).h_b;
              } else {
                h_b_hat =
                    estimate_mbl(ym, fc.op.Phi_tilde, r_v, blc).h_b.rowwise().mean();
              }
              const CMat h_design = beamspace_to_channel(h_b_hat, fc.a_rx, fc.a_tx);
              d = design_hybrid(h_b_hat, h_design, fc, sigma2, cfg);
            }

            if (family == "ase") {
              acc.record(slot, ase(H, d.f, d.w, sigma2, cfg.n_streams));
            } else {
              Rng rng = make_rng(
                  derive_seed(st, kSymbolTag + 131 * fi + 17 * s + si));
              acc.record(slot,
                         ber_qpsk(H, d.f, d.w, sigma2, cfg.n_symbols, rng));
            }
          } catch (const NumericalError&) {
            acc.fail(slot);
          } catch (const ConfigError&) {
            acc.fail(slot);
          }
        }
      }
    }
  }

  return acc.table(cfg.seed);
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  out << "experiment,estimator,snr_db,metric,mean,stderr,trials,failures,seed,version\n";
  for (const auto& r : rows)
    out << r.experiment << ',' << r.estimator << ',' << fmt(r.snr_db) << ','
        << r.metric << ',' << fmt(r.mean) << ',' << fmt(r.stderr_of_mean) << ','
        << r.trials << ',' << r.failures << ',' << r.seed << ',' << r.version << '\n';
  return out.str();
}

ResultTable run_nmse_sweep(const ExperimentConfig& cfg) {
  return run_estimation(cfg, false);
}

ResultTable run_adc_ablation(const ExperimentConfig& cfg) {
  return run_estimation(cfg, true);
}

ResultTable run_ase_sweep(const ExperimentConfig& cfg) {
  return run_link_sweep(cfg, "ase");
}

ResultTable run_ber_sweep(const ExperimentConfig& cfg) {
  return run_link_sweep(cfg, "ber");
}

std::string absorption_csv(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.channel.catalog_path.empty())
    throw ConfigError("absorption sweep requires channel.catalog_path");
  const auto catalog = load_line_catalog_file(cfg.channel.catalog_path);
  std::ostringstream out;
  out << "f_hz,k_abs_per_m\n";
  for (int i = 0; i < cfg.f_points; ++i) {
    const double f = cfg.f_min_hz +
                     (cfg.f_max_hz - cfg.f_min_hz) * i / (cfg.f_points - 1);
    out << fmt(f) << ',' << fmt(k_abs(catalog, cfg.channel.medium, f)) << '\n';
  }
  return out.str();
}

double calibrate_channel_scale(const ExperimentConfig& cfg) {
  const Harness h = build_harness(cfg);
  return h.scale;
}

double calibrate_adc_range(const ExperimentConfig& cfg) {
  const Harness h = build_harness(cfg);
  return adc_range(cfg, h);
}

}  // namespace thz
