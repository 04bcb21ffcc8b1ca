#include "thz/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "thz/errors.hpp"

namespace thz {

using nlohmann::json;

SystemDims preset_system1() { return SystemDims{32, 32, 8, 24, 24, 36, 36}; }
SystemDims preset_system2() { return SystemDims{16, 16, 4, 12, 12, 20, 20}; }

std::vector<SurfaceSpec> default_surfaces() {
  return {
      {"plaster", 237.0, 0.05e-3},
      {"concrete", 160.0, 0.13e-3},
      {"brick", 130.0, 0.15e-3},
  };
}

void SystemDims::validate() const {
  if (n_tx < 1 || n_rx < 1 || n_rf < 1)
    throw ConfigError("dims: antenna and RF-chain counts must be >= 1");
  if (n_rf > n_tx || n_rf > n_rx)
    throw ConfigError("dims: N_RF cannot exceed the antenna count");
  if (n_tx % n_rf != 0 || n_rx % n_rf != 0)
    throw ConfigError("dims: N_RF must divide N_T and N_R");
  if (m_tx < 1 || m_rx < 1) throw ConfigError("dims: M_T and M_R must be >= 1");
  if (m_tx % (n_tx / n_rf) != 0)
    throw ConfigError("dims: M_T must be divisible by the frame count N_T/N_RF");
  if (m_rx % (n_rx / n_rf) != 0)
    throw ConfigError("dims: M_R must be divisible by the combining count N_R/N_RF");
  if (g_tx < n_tx || g_rx < n_rx)
    throw ConfigError("dims: grid sizes must be at least the antenna counts");
}

void ChannelConfig::validate() const {
  if (f_hz.empty()) throw ConfigError("channel: need at least one carrier frequency");
  for (double f : f_hz)
    if (!(f > 0.0)) throw ConfigError("channel: carrier frequencies must be > 0");
  if (!(d_m > 0.0)) throw ConfigError("channel: distance must be > 0");
  if (n_nlos < 0 || n_ray < 1)
    throw ConfigError("channel: need n_nlos >= 0 and n_ray >= 1");
  if (static_cast<int>(reflection_orders.size()) != n_nlos)
    throw ConfigError("channel: reflection_orders must list one order per NLoS cluster");
  for (int r : reflection_orders)
    if (r < 1) throw ConfigError("channel: reflection orders must be >= 1");
  if (!(angular_spread >= 0.0)) throw ConfigError("channel: angular spread must be >= 0");
  if (k_abs_override && !(*k_abs_override >= 0.0))
    throw ConfigError("channel: k_abs must be >= 0");
  if (normalization != "auto" && normalization != "none")
    throw ConfigError("channel: normalization must be 'auto' or 'none'");
  medium.validate();
}

void ExperimentConfig::validate() const {
  static const std::set<std::string> kinds = {"nmse", "ase", "ber", "adc", "absorption"};
  if (!kinds.count(experiment))
    throw ConfigError("experiment must be one of nmse|ase|ber|adc|absorption");
  dims.validate();
  channel.validate();
  if (snr_db.empty()) throw ConfigError("snr_db must be non-empty");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  static const std::set<std::string> known = {"ls",      "mmse", "omp", "bl",
                                             "mbl",     "perfect"};
  if (estimators.empty()) throw ConfigError("estimators must be non-empty");
  for (const auto& e : estimators)
    if (!known.count(e)) throw ConfigError("unknown estimator '" + e + "'");
  if (mbl_blocks < 1) throw ConfigError("mbl_blocks must be >= 1");
  for (int b : adc_bits)
    if (b < 0 || b > 30) throw ConfigError("adc_bits entries must be 0 (inf) or 1..30");
  if (!(p_total > 0.0)) throw ConfigError("p_total must be > 0");
  if (n_streams < 1 || n_streams > dims.n_rf)
    throw ConfigError("n_streams must be in [1, N_RF]");
  if (n_symbols < 1) throw ConfigError("n_symbols must be >= 1");
  if (!(bl_epsilon > 0.0) || bl_k_max < 1)
    throw ConfigError("invalid Bayesian-learning stopping parameters");
  if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz) || f_points < 2)
    throw ConfigError("absorption grid requires 0 < f_min < f_max and >= 2 points");
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void get_if(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

std::vector<double> frequencies_from(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

void parse_dims(const json& j, SystemDims& dims) {
  reject_unknown(j, {"n_tx", "n_rx", "n_rf", "m_tx", "m_rx", "g_tx", "g_rx"}, "dims");
  get_if(j, "n_tx", dims.n_tx);
  get_if(j, "n_rx", dims.n_rx);
  get_if(j, "n_rf", dims.n_rf);
  get_if(j, "m_tx", dims.m_tx);
  get_if(j, "m_rx", dims.m_rx);
  get_if(j, "g_tx", dims.g_tx);
  get_if(j, "g_rx", dims.g_rx);
}

void parse_channel(const json& j, ChannelConfig& ch) {
  reject_unknown(j,
                 {"f_hz", "d_m", "n_nlos", "n_ray", "reflection_orders",
                  "antenna_gain_db", "angular_spread", "surfaces", "materials_path",
                  "k_abs", "catalog_path", "pressure_atm", "temperature_k",
                  "normalization"},
                 "channel");
  if (auto it = j.find("f_hz"); it != j.end()) ch.f_hz = frequencies_from(*it);
  get_if(j, "d_m", ch.d_m);
  get_if(j, "n_nlos", ch.n_nlos);
  get_if(j, "n_ray", ch.n_ray);
  bool orders_given = false;
  if (auto it = j.find("reflection_orders"); it != j.end()) {
    ch.reflection_orders = it->get<std::vector<int>>();
    orders_given = true;
  }
  if (!orders_given && ch.n_nlos != static_cast<int>(ch.reflection_orders.size())) {
    // default pattern: one second-order cluster, the rest first order
    ch.reflection_orders.assign(ch.n_nlos, 1);
    if (ch.n_nlos > 0) ch.reflection_orders.back() = 2;
  }
  get_if(j, "antenna_gain_db", ch.antenna_gain_db);
  get_if(j, "angular_spread", ch.angular_spread);
  if (auto it = j.find("surfaces"); it != j.end()) {
    ch.surfaces.clear();
    for (const auto& s : *it) {
      reject_unknown(s, {"name", "Z_ohms", "sigma_m"}, "channel.surfaces");
      SurfaceSpec spec;
      spec.name = s.at("name").get<std::string>();
      spec.Z_ohms = s.at("Z_ohms").get<double>();
      spec.roughness_sigma = s.at("sigma_m").get<double>();
      ch.surfaces.push_back(spec);
    }
  }
  if (auto it = j.find("materials_path"); it != j.end())
    ch.surfaces = load_materials_file(it->get<std::string>());
  if (auto it = j.find("k_abs"); it != j.end()) ch.k_abs_override = it->get<double>();
  get_if(j, "catalog_path", ch.catalog_path);
  get_if(j, "pressure_atm", ch.medium.pressure);
  get_if(j, "temperature_k", ch.medium.temperature);
  get_if(j, "normalization", ch.normalization);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown(j,
                 {"experiment", "preset", "dims", "channel", "snr_db", "trials",
                  "estimators", "mbl_blocks", "adc_bits", "seed", "p_total",
                  "n_streams", "n_symbols", "bl_epsilon", "bl_k_max", "f_min_hz",
                  "f_max_hz", "f_points"},
                 "config");

  ExperimentConfig cfg;
  get_if(j, "experiment", cfg.experiment);
  if (auto it = j.find("preset"); it != j.end()) {
    const auto name = it->get<std::string>();
    if (name == "system1")
      cfg.dims = preset_system1();
    else if (name == "system2")
      cfg.dims = preset_system2();
    else
      throw ConfigError("unknown preset '" + name + "' (expected system1 or system2)");
  }
  if (auto it = j.find("dims"); it != j.end()) parse_dims(*it, cfg.dims);
  if (auto it = j.find("channel"); it != j.end()) parse_channel(*it, cfg.channel);
  get_if(j, "snr_db", cfg.snr_db);
  get_if(j, "trials", cfg.trials);
  get_if(j, "estimators", cfg.estimators);
  get_if(j, "mbl_blocks", cfg.mbl_blocks);
  if (auto it = j.find("adc_bits"); it != j.end()) {
    cfg.adc_bits.clear();
    for (const auto& b : *it) {
      if (b.is_string()) {
        if (b.get<std::string>() != "inf")
          throw ConfigError("adc_bits strings must be \"inf\"");
        cfg.adc_bits.push_back(0);
      } else {
        cfg.adc_bits.push_back(b.get<int>());
      }
    }
  }
  get_if(j, "seed", cfg.seed);
  get_if(j, "p_total", cfg.p_total);
  get_if(j, "n_streams", cfg.n_streams);
  get_if(j, "n_symbols", cfg.n_symbols);
  get_if(j, "bl_epsilon", cfg.bl_epsilon);
  get_if(j, "bl_k_max", cfg.bl_k_max);
  get_if(j, "f_min_hz", cfg.f_min_hz);
  get_if(j, "f_max_hz", cfg.f_max_hz);
  get_if(j, "f_points", cfg.f_points);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace thz
