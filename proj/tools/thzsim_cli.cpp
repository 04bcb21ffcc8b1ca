// Batch front-end for the THz MIMO channel-sounding simulator.
//
// Subcommands: nmse, ase, ber, adc, absorption-sweep, validate-config.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "thz/errors.hpp"
#include "thz/sweeps.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
  cmd->add_option("--config", opts.config_path, "JSON experiment configuration");
  if (with_out)
    cmd->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--seed", opts.seed, "override the run seed");
  cmd->add_option("--trials", opts.trials, "override the Monte Carlo trial count");
  cmd->add_option("--preset", opts.preset,
                  "array preset override (system1 or system2)");
}

thz::ExperimentConfig resolve_config(const CommonOpts& opts,
                                     const std::string& experiment) {
  thz::ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = thz::load_config_file(opts.config_path);
  cfg.experiment = experiment;
  if (!opts.preset.empty()) {
    if (opts.preset == "system1")
      cfg.dims = thz::preset_system1();
    else if (opts.preset == "system2")
      cfg.dims = thz::preset_system2();
    else
      throw thz::ConfigError("unknown preset '" + opts.preset + "'");
  }
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.trials) cfg.trials = *opts.trials;
  cfg.validate();
  return cfg;
}

void emit(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw thz::ConfigError("cannot open output file: " + out_path);
  out << csv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"THz MIMO channel sounding and transceiver-design simulator"};
  app.require_subcommand(1);

  CommonOpts nmse_o, ase_o, ber_o, adc_o, abs_o, val_o;
  auto* nmse_cmd =
      app.add_subcommand("nmse", "channel-estimation accuracy sweep");
  add_common(nmse_cmd, nmse_o);
  auto* ase_cmd = app.add_subcommand("ase", "achievable spectral-efficiency sweep");
  add_common(ase_cmd, ase_o);
  auto* ber_cmd = app.add_subcommand("ber", "uncoded QPSK error-rate sweep");
  add_common(ber_cmd, ber_o);
  auto* adc_cmd =
      app.add_subcommand("adc", "estimation sweep with quantized measurements");
  add_common(adc_cmd, adc_o);
  auto* abs_cmd =
      app.add_subcommand("absorption-sweep", "tabulate molecular absorption");
  add_common(abs_cmd, abs_o);
  auto* val_cmd =
      app.add_subcommand("validate-config", "parse and validate a configuration");
  add_common(val_cmd, val_o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (nmse_cmd->parsed()) {
      emit(thz::run_nmse_sweep(resolve_config(nmse_o, "nmse")).to_csv(),
           nmse_o.out_path);
    } else if (ase_cmd->parsed()) {
      emit(thz::run_ase_sweep(resolve_config(ase_o, "ase")).to_csv(), ase_o.out_path);
    } else if (ber_cmd->parsed()) {
      emit(thz::run_ber_sweep(resolve_config(ber_o, "ber")).to_csv(), ber_o.out_path);
    } else if (adc_cmd->parsed()) {
      const auto cfg = resolve_config(adc_o, "adc");
      const double range = thz::calibrate_adc_range(cfg);
      std::cerr << "adc: calibrated peak measurement amplitude R = " << range
                << " (step = 2R/2^b)\n";
      emit(thz::run_adc_ablation(cfg).to_csv(), adc_o.out_path);
    } else if (abs_cmd->parsed()) {
      emit(thz::absorption_csv(resolve_config(abs_o, "absorption")), abs_o.out_path);
    } else if (val_cmd->parsed()) {
      if (val_o.config_path.empty())
        throw thz::ConfigError("validate-config requires --config");
      thz::load_config_file(val_o.config_path).validate();
      std::cerr << "config OK\n";
    }
  } catch (const thz::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const thz::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
