#ifndef CPVDW_CONSTANTS_HPP
#define CPVDW_CONSTANTS_HPP

namespace cpvdw {

// Everything internal runs in natural units: hbar = c = eps0 = mu0 = 1.
// Lengths are measured in a reference length L0, frequencies in c/L0,
// energies in hbar*c/L0.  SI conversion happens only at the I/O boundary
// using the CODATA values below; they must not appear anywhere else.
namespace si {
inline constexpr double speed_of_light = 299792458.0;           // m/s
inline constexpr double hbar = 1.054571817e-34;                 // J s
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double vacuum_permeability = 1.25663706212e-6; // N/A^2
inline constexpr double bohr_radius = 5.29177210903e-11;        // m
} // namespace si

inline constexpr double kPi = 3.14159265358979323846;

// Two points closer than this (in units of L0) count as coincident.
inline constexpr double kMinSeparation = 1e-9;

} // namespace cpvdw

#endif
