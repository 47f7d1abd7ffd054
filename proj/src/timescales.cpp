#include "rydberg/timescales.hpp"

#include <cmath>
#include <stdexcept>

#include "rydberg/constants.hpp"

namespace rydberg {

TimescaleReport precession_time(int n, double eccentricity, int Z) {
    EllipticSpec spec;
    spec.n = n;
    spec.eccentricity = eccentricity;
    spec.Z = Z;
    spec.validate();

    TimescaleReport r;
    r.n = n;
    r.eccentricity = eccentricity;
    r.Z = Z;
    r.l_av = (n - 1) * std::cos(spec.gamma());
    const double n3 = static_cast<double>(n) * n * n;
    const double Z2 = static_cast<double>(Z) * Z;
    const double Z4a2 = Z2 * Z2 * kAlpha * kAlpha;
    r.Tp_au = 4.0 * M_PI * n3 * r.l_av * r.l_av / Z4a2;
    r.Tp_seconds = r.Tp_au * kAuTimeSeconds;
    r.TK_au = 2.0 * M_PI * n3 / Z2;
    // radiative lifetime at (l+1/2)^2 = l_av^2
    r.Trad_au = 1.5 * n3 * r.l_av * r.l_av / (kAlpha * kAlpha * kAlpha * Z2 * Z2);
    r.ratio_Tp_Trad = r.Tp_au / r.Trad_au;  // = 8 pi alpha / 3 identically
    return r;
}

double exact_mean_precession_time(const PacketState& packet) {
    const int n = packet.n();
    double k2 = 0.0;
    for (int l = 0; l < n; ++l) {
        k2 += packet.population(l, +1) * static_cast<double>(l + 1) * (l + 1);
        if (l >= 1) k2 += packet.population(l, -1) * static_cast<double>(l) * l;
    }
    const double n3 = static_cast<double>(n) * n * n;
    const double Z2 = static_cast<double>(packet.spec.Z) * packet.spec.Z;
    return 4.0 * M_PI * n3 * k2 / (Z2 * Z2 * kAlpha * kAlpha);
}

}  // namespace rydberg
