#include "thz/absorption.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "thz/constants.hpp"
#include "thz/errors.hpp"

namespace thz {

namespace {

std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream ss(row);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!row.empty() && row.back() == ',') out.emplace_back();
  return out;
}

double parse_field(const std::string& s, std::size_t row, std::size_t col) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing garbage");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed numeric field at row " + std::to_string(row) +
                      ", column " + std::to_string(col) + ": '" + s + "'");
  }
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

constexpr const char* kCatalogHeader =
    "gas_id,iso_id,fc0_cm1,delta_cm1_per_atm,S_si,alpha0_air_hz,alpha0_self_hz,"
    "gamma_T,q";

}  // namespace

void SpectralLine::validate() const {
  if (!(f_c0 > 0.0)) throw ConfigError("spectral line: f_c0 must be > 0");
  if (S < 0.0) throw ConfigError("spectral line: negative intensity S");
  if (q < 0.0 || q > 1.0) throw ConfigError("spectral line: mixing ratio q outside [0,1]");
  if (!(alpha0_air > 0.0) || !(alpha0_self > 0.0))
    throw ConfigError("spectral line: broadening half-widths must be > 0");
}

void MediumConditions::validate() const {
  if (!(pressure > 0.0 && temperature > 0.0 && p0 > 0.0 && T0 > 0.0 && T_stp > 0.0))
    throw ConfigError("medium conditions must be strictly positive");
}

SpectralLineCatalog load_line_catalog(std::istream& source) {
  std::string row;
  if (!std::getline(source, row) || strip(row) != kCatalogHeader)
    throw ConfigError(std::string("line catalog: expected header '") + kCatalogHeader + "'");

  SpectralLineCatalog catalog;
  std::size_t row_idx = 1;
  while (std::getline(source, row)) {
    ++row_idx;
    if (strip(row).empty()) continue;
    auto fields = split_csv_row(row);
    if (fields.size() != 9)
      throw ConfigError("line catalog row " + std::to_string(row_idx) + ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    SpectralLine line;
    line.gas_id = strip(fields[0]);
    line.iso_id = strip(fields[1]);
    const double wavenumber_to_hz = 100.0 * constants::c;
    line.f_c0 = parse_field(fields[2], row_idx, 3) * wavenumber_to_hz;
    line.delta = parse_field(fields[3], row_idx, 4) * wavenumber_to_hz;
    line.S = parse_field(fields[4], row_idx, 5);
    line.alpha0_air = parse_field(fields[5], row_idx, 6);
    line.alpha0_self = parse_field(fields[6], row_idx, 7);
    line.gamma_T = parse_field(fields[7], row_idx, 8);
    line.q = parse_field(fields[8], row_idx, 9);
    line.validate();
    catalog.lines.push_back(std::move(line));
  }
  return catalog;
}

SpectralLineCatalog load_line_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open line catalog: " + path);
  return load_line_catalog(in);
}

std::vector<SurfaceSpec> load_materials(std::istream& source) {
  std::string row;
  if (!std::getline(source, row) || strip(row) != "name,Z_ohms,sigma_m")
    throw ConfigError("material file: expected header 'name,Z_ohms,sigma_m'");
  std::vector<SurfaceSpec> out;
  std::size_t row_idx = 1;
  while (std::getline(source, row)) {
    ++row_idx;
    if (strip(row).empty()) continue;
    auto fields = split_csv_row(row);
    if (fields.size() != 3)
      throw ConfigError("material row " + std::to_string(row_idx) + ": expected 3 fields");
    SurfaceSpec s;
    s.name = strip(fields[0]);
    s.Z_ohms = parse_field(fields[1], row_idx, 2);
    s.roughness_sigma = parse_field(fields[2], row_idx, 3);
    if (s.roughness_sigma < 0.0)
      throw ConfigError("material row " + std::to_string(row_idx) + ": sigma_m must be >= 0");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SurfaceSpec> load_materials_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material file: " + path);
  return load_materials(in);
}

double shifted_center(const SpectralLine& line, const MediumConditions& cond) {
  return line.f_c0 + line.delta * (cond.pressure / cond.p0);
}

double lorentz_halfwidth(const SpectralLine& line, const MediumConditions& cond) {
  cond.validate();
  const double mix = (1.0 - line.q) * line.alpha0_air + line.q * line.alpha0_self;
  return mix * (cond.pressure / cond.p0) *
         std::pow(cond.T0 / cond.temperature, line.gamma_T);
}

double vvw_line_shape(const SpectralLine& line, const MediumConditions& cond, double f) {
  if (!(f > 0.0)) throw std::domain_error("line shape requires f > 0");
  const double fc = shifted_center(line, cond);
  const double aL = lorentz_halfwidth(line, cond);
  const double prefactor = 100.0 * constants::c * f * aL / (std::numbers::pi * fc);
  const double minus = 1.0 / ((f - fc) * (f - fc) + aL * aL);
  const double plus = 1.0 / ((f + fc) * (f + fc) + aL * aL);
  return prefactor * (minus + plus);
}

double line_shape(const SpectralLine& line, const MediumConditions& cond, double f) {
  if (!(f > 0.0)) throw std::domain_error("line shape requires f > 0");
  const double fc = shifted_center(line, cond);
  const double scale = constants::c * constants::h / (2.0 * constants::k_B * cond.temperature);
  const double ratio = std::tanh(scale * f) / std::tanh(scale * fc);
  return (f / fc) * ratio * vvw_line_shape(line, cond, f);
}

double k_abs_line(const SpectralLine& line, const MediumConditions& cond, double f) {
  // Molecular volumetric density Q = (p/RT) q N_A, p in Pa -> molecules per m^3.
  const double p_pa = cond.pressure * constants::atm_to_Pa;
  const double Q = p_pa / (constants::R_gas * cond.temperature) * line.q * constants::N_A;
  return (cond.pressure / cond.p0) * (cond.T_stp / cond.temperature) * Q * line.S *
         line_shape(line, cond, f);
}

double k_abs(const SpectralLineCatalog& catalog, const MediumConditions& cond, double f) {
  if (!(f > 0.0)) throw std::domain_error("k_abs requires f > 0");
  double sum = 0.0;
  for (const auto& line : catalog.lines) sum += k_abs_line(line, cond, f);
  return sum;
}

std::vector<double> k_abs_contributions(const SpectralLineCatalog& catalog,
                                        const MediumConditions& cond, double f) {
  std::vector<double> out;
  out.reserve(catalog.lines.size());
  for (const auto& line : catalog.lines) out.push_back(k_abs_line(line, cond, f));
  return out;
}

ReflectionCoefficient reflection_coefficient(const SurfaceSpec& surface, double f,
                                             double theta_in) {
  if (theta_in < 0.0 || theta_in >= std::numbers::pi / 2.0)
    throw std::domain_error("incidence angle must lie in [0, pi/2)");
  const double ratio = std::sin(theta_in) * surface.Z_ohms / constants::Z0;
  if (std::abs(ratio) > 1.0)
    throw TotalReflectionError("refraction argument outside [-1,1]; treat path as blocked");
  const double theta_ref = std::asin(ratio);

  ReflectionCoefficient out;
  const double num = surface.Z_ohms * std::cos(theta_in) - constants::Z0 * std::cos(theta_ref);
  const double den = surface.Z_ohms * std::cos(theta_in) + constants::Z0 * std::cos(theta_ref);
  out.gamma = num / den;
  const double arg = 4.0 * std::numbers::pi * f * surface.roughness_sigma *
                     std::cos(theta_in) / constants::c;
  out.rho = std::exp(-0.5 * arg * arg);
  out.Gamma = out.gamma * out.rho;
  return out;
}

double combined_reflection(std::span<const double> bounce_gammas) {
  double prod = 1.0;
  for (double g : bounce_gammas) prod *= g;
  return prod;
}

}  // namespace thz
