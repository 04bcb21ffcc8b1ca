#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace thz {

// One HITRAN-style spectral line, already converted to SI on load.
struct SpectralLine {
  std::string gas_id;
  std::string iso_id;
  double f_c0 = 0.0;         // zero-pressure resonance frequency, Hz
  double delta = 0.0;        // linear pressure shift, Hz/atm
  double S = 0.0;            // line intensity, Hz m^2 per molecule
  double alpha0_air = 0.0;   // air broadening half-width, Hz
  double alpha0_self = 0.0;  // self broadening half-width, Hz
  double gamma_T = 0.0;      // temperature broadening exponent
  double q = 0.0;            // mixing ratio of the parent gas

  void validate() const;  // throws ConfigError on invariant violation
};

struct SpectralLineCatalog {
  std::vector<SpectralLine> lines;
};

struct MediumConditions {
  double pressure = 1.0;       // atm
  double temperature = 296.0;  // K
  double p0 = 1.0;             // reference pressure, atm
  double T0 = 296.0;           // reference temperature, K
  double T_stp = 273.15;       // K

  void validate() const;
};

struct SurfaceSpec {
  std::string name;
  double Z_ohms = 0.0;          // wave impedance of the medium (constant over f)
  double roughness_sigma = 0.0; // m
};

struct ReflectionCoefficient {
  double gamma = 0.0;  // Fresnel factor
  double rho = 0.0;    // Rayleigh roughness factor
  double Gamma = 0.0;  // gamma * rho
};

// CSV header:
//   gas_id,iso_id,fc0_cm1,delta_cm1_per_atm,S_si,alpha0_air_hz,alpha0_self_hz,gamma_T,q
// Wavenumber columns are converted to Hz (x 100 c) on load.
SpectralLineCatalog load_line_catalog(std::istream& source);
SpectralLineCatalog load_line_catalog_file(const std::string& path);

// Material CSV header: name,Z_ohms,sigma_m
std::vector<SurfaceSpec> load_materials(std::istream& source);
std::vector<SurfaceSpec> load_materials_file(const std::string& path);

// Pressure-shifted line center f_c = f_c0 + delta p/p0.
double shifted_center(const SpectralLine& line, const MediumConditions& cond);

// Lorentz half-width [(1-q) a_air + q a_self] (p/p0) (T0/T)^gamma.
double lorentz_halfwidth(const SpectralLine& line, const MediumConditions& cond);

// Two-term Van Vleck-Weisskopf line shape F(f).
double vvw_line_shape(const SpectralLine& line, const MediumConditions& cond, double f);

// G(f) = (f/f_c) tanh(c f h / 2 k_B T) / tanh(c f_c h / 2 k_B T) F(f).
double line_shape(const SpectralLine& line, const MediumConditions& cond, double f);

// Per-line absorption contribution (p/p0)(T_STP/T) Q S G(f), Q = (p/RT) q N_A.
double k_abs_line(const SpectralLine& line, const MediumConditions& cond, double f);

double k_abs(const SpectralLineCatalog& catalog, const MediumConditions& cond, double f);
std::vector<double> k_abs_contributions(const SpectralLineCatalog& catalog,
                                        const MediumConditions& cond, double f);

// Fresnel x Rayleigh reflection at incidence theta_in; throws TotalReflectionError
// when sin(theta_in) Z/Z0 leaves [-1,1].
ReflectionCoefficient reflection_coefficient(const SurfaceSpec& surface, double f,
                                             double theta_in);

// Equivalent coefficient of a multi-bounce path: product of per-bounce Gammas.
double combined_reflection(std::span<const double> bounce_gammas);

}  // namespace thz
