#ifndef CPVDW_UNITS_HPP
#define CPVDW_UNITS_HPP

#include "constants.hpp"
#include "errors.hpp"

namespace cpvdw {

// Conversion between the external unit system of a config file and the
// internal natural units.  reference_length_m anchors the length scale;
// it defaults to the Bohr radius so that bare natural-unit configs
// describe atomic-scale problems.
struct UnitSystem {
  bool si_input = false;
  double reference_length_m = si::bohr_radius;

  void validate() const {
    if (!(reference_length_m > 0.0))
      throw ConfigError("units.reference_length_m: must be > 0");
  }

  // inputs -> natural
  double length_in(double v) const {
    return si_input ? v / reference_length_m : v;
  }
  double frequency_in(double v) const {
    return si_input ? v * reference_length_m / si::speed_of_light : v;
  }
  // squared dipole matrix element, SI unit C^2 m^2
  double dipole2_in(double v) const {
    if (!si_input)
      return v;
    return v / (si::hbar * si::speed_of_light * si::vacuum_permittivity *
                reference_length_m * reference_length_m);
  }
  double density_in(double v) const {
    if (!si_input)
      return v;
    const double l3 =
        reference_length_m * reference_length_m * reference_length_m;
    return v * l3;
  }

  // natural -> outputs
  double energy_out(double v) const {
    return si_input
               ? v * si::hbar * si::speed_of_light / reference_length_m
               : v;
  }
  double length_out(double v) const {
    return si_input ? v * reference_length_m : v;
  }

  double bohr_radius_natural() const {
    return si::bohr_radius / reference_length_m;
  }

  const char *energy_unit_name() const {
    return si_input ? "J" : "hbar*c/L0";
  }
  const char *length_unit_name() const { return si_input ? "m" : "L0"; }
};

} // namespace cpvdw

#endif
