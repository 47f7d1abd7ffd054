#pragma once

#include "rydberg/packet.hpp"

namespace rydberg {

struct TimescaleReport {
    int n = 0;
    double eccentricity = 0;
    int Z = 0;
    double l_av = 0;
    double Tp_au = 0;        // 4 pi n^3 l_av^2 / (Z^4 alpha^2)
    double Tp_seconds = 0;
    double TK_au = 0;        // Kepler period 2 pi n^3 / Z^2
    double Trad_au = 0;      // radiative lifetime at (l+1/2)^2 = l_av^2
    double ratio_Tp_Trad = 0;  // = 8 pi alpha / 3, independent of n, l, Z
};

TimescaleReport precession_time(int n, double eccentricity, int Z);

// 2 pi over the weight-averaged level spacing: the l_av^2 shortcut replaced
// by the branch-population average of (l+s+1/2)^2 over the actual table
double exact_mean_precession_time(const PacketState& packet);

}  // namespace rydberg
