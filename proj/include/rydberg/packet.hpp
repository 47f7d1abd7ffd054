#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rydberg/dirac_coulomb.hpp"
#include "rydberg/elliptic_state.hpp"
#include "rydberg/radial_integrals.hpp"

namespace rydberg {

enum class EnergyMode { kExact, kLowestOrder };

// Level energies and spacings per l. All values are binding energies in
// Hartree; the branch index is s = +1 (j = l+1/2) or s = -1 (j = l-1/2).
struct FrequencyTable {
    std::vector<double> E_plus;    // l = 0..n-1
    std::vector<double> E_minus;   // l = 1..n-1 (index 0 unused)
    double omega(int l) const { return E_plus[l] - E_minus[l]; }            // l >= 1
    double omega_prime(int l) const { return E_minus[l + 2] - E_plus[l]; }  // l <= n-3
    double omega_dprime(int l) const { return E_minus[l] - E_plus[l - 2]; } // l >= 2
};

// The assembled four-component packet: weights, spinor, level energies and
// the cached radial integrals. Immutable after build; all observable
// evaluations are const and thread-safe.
struct PacketState {
    EllipticSpec spec;
    WeightTable weights;
    EnergyMode energy_mode = EnergyMode::kExact;
    FrequencyTable freq;
    std::vector<RadialIntegralSet> integrals;  // per l
    double Tp_au = 0;                          // headline precession time (l_av^2 shortcut)

    int n() const { return spec.n; }
    // branch populations of the level (l, s): the |amplitude|^2 sums
    double population(int l, int s_sign) const;
};

PacketState build_packet(const EllipticSpec& spec, EnergyMode mode = EnergyMode::kExact);

struct AutocorrSeries {
    std::vector<double> times_au;
    std::vector<std::complex<double>> values;
};

// <Psi(0)|Psi(t)>: level populations against exp(-i E t); exact for the
// constructed state since the Dirac eigenstates are orthonormal
AutocorrSeries autocorrelation(const PacketState& packet, const std::vector<double>& times_au);

// circular-weight approximation: a^2 sum w_ll^2 exp(-i E+ t) + b^2 sum w_ll^2 exp(-i E- t)
AutocorrSeries autocorrelation_approx(const PacketState& packet, const std::vector<double>& times_au);

struct SpinSeries {
    std::vector<double> times_au;
    std::vector<double> sx, sy, sz;
};

// Closed-form double sums for <sigma_x>, <sigma_y>, <sigma_z> with cached
// radial integrals. Requires a real spinor; throws std::invalid_argument
// otherwise. O(n^2) setup, O(n) per time sample.
SpinSeries spin_expectation(const PacketState& packet, const std::vector<double>& times_au);

struct DensityGrid {
    double half_extent = 0;   // a.u.; grid spans [-half_extent, half_extent]^2 at z = 0
    int nx = 0, ny = 0;
    double t_au = 0;
    std::vector<double> rho_large;  // row-major, index ix*ny + iy
    std::vector<double> rho_small;
    std::vector<double> rho_total;
    double x_at(int ix) const;
    double y_at(int iy) const;
};

// |c1|^2 + |c2|^2 (large) and |c3|^2 + |c4|^2 (small) on the z = 0 plane.
// Radial values are cached per unique grid radius; rows are evaluated in
// parallel (worker count capped by RYDG_THREADS), assembly order fixed.
DensityGrid density_grid(const PacketState& packet, double t_au,
                         double half_extent, int nx, int ny);

// Orientation of the density's major axis from centred second moments,
// in (-pi/2, pi/2]. Throws std::domain_error when the moment tensor is
// nearly degenerate (anisotropy below 2%).
double precession_angle(const DensityGrid& grid);
double precession_angle(const PacketState& packet, double t_au,
                        double half_extent_factor = 1.6, int resolution = 256);

}  // namespace rydberg
