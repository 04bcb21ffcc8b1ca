#pragma once

// Physical constants (CODATA 2018) in SI units.
namespace thz::constants {

inline constexpr double c = 2.99792458e8;        // speed of light, m/s
inline constexpr double h = 6.62607015e-34;      // Planck, J s
inline constexpr double k_B = 1.380649e-23;      // Boltzmann, J/K
inline constexpr double N_A = 6.02214076e23;     // Avogadro, 1/mol
inline constexpr double R_gas = 8.314462618;     // gas constant, J/(mol K)
inline constexpr double Z0 = 377.0;              // free-space wave impedance, ohm
inline constexpr double atm_to_Pa = 101325.0;

}  // namespace thz::constants
