#pragma once

namespace rydberg {

// Atomic units: hbar = m_e = e = 1, c = 1/alpha, energies in Hartree.
struct PhysicalConstants {
    double alpha = 7.2973525693e-3;          // fine-structure constant
    double au_time_seconds = 2.4188843265857e-17;
    double rest_energy_au() const { return 1.0 / (alpha * alpha); }  // m0 c^2 in Hartree
};

inline constexpr double kAlpha = 7.2973525693e-3;
inline constexpr double kAuTimeSeconds = 2.4188843265857e-17;

}  // namespace rydberg
