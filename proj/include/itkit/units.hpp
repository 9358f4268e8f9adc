#pragma once

// Hartree atomic units: hbar = m_e = 1, lengths in bohr, energies in hartree,
// times in hbar/hartree.

namespace itkit {

struct UnitSystem {
  static constexpr double hbar = 1.0;
  static constexpr double electron_mass = 1.0;
  // CODATA 2018: 1 hartree = 27.211386245988 eV, a0 = 0.529177210903e-10 m.
  static constexpr double ev_to_hartree = 1.0 / 27.211386245988;
  static constexpr double cm_to_bohr = 1.0 / 0.529177210903e-8;

  static constexpr double from_ev(double ev) { return ev * ev_to_hartree; }
  static constexpr double from_cm(double cm) { return cm * cm_to_bohr; }
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace itkit
