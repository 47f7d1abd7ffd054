#include <doctest.h>

#include <cmath>

#include "rydberg/constants.hpp"
#include "rydberg/timescales.hpp"

using namespace rydberg;

TEST_CASE("precession time: headline values") {
    TimescaleReport r92 = precession_time(50, 0.4, 92);
    CHECK(r92.Tp_seconds == doctest::Approx(1.96e-11).epsilon(0.05));
    TimescaleReport r1 = precession_time(50, 0.4, 1);
    CHECK(r1.Tp_seconds == doctest::Approx(1.4e-3).epsilon(0.05));
    CHECK(r92.l_av == doctest::Approx(49.0 * std::sqrt(0.84)).epsilon(1e-14));
}

TEST_CASE("precession time: Kepler-period identity") {
    for (int n : {10, 50})
        for (double e : {0.1, 0.4, 0.8})
            for (int Z : {1, 40, 92}) {
                TimescaleReport r = precession_time(n, e, Z);
                const double za = Z * kAlpha;
                CHECK(r.Tp_au
                      == doctest::Approx(2.0 * r.l_av * r.l_av * r.TK_au / (za * za))
                             .epsilon(1e-14));
            }
}

TEST_CASE("precession time: universal lifetime ratio") {
    const double want = 8.0 * M_PI * kAlpha / 3.0;
    CHECK(want == doctest::Approx(0.0611).epsilon(1e-3));
    for (int n : {10, 30, 50})
        for (double e : {0.1, 0.4, 0.8})
            for (int Z : {1, 40, 92})
                CHECK(precession_time(n, e, Z).ratio_Tp_Trad
                      == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("exact mean precession time") {
    // circular table: single l = n-1 row with the two spin branches
    {
        EllipticSpec s;
        s.n = 10;
        s.eccentricity = 0.0;
        s.Z = 40;
        s.a = 1 / std::sqrt(2.0);
        s.b = 1 / std::sqrt(2.0);
        PacketState p = build_packet(s);
        const int n = 10, l = n - 1;
        const double pp = p.population(l, +1);
        const double pm = p.population(l, -1);
        const double k2 = pp * (l + 1.0) * (l + 1.0) + pm * static_cast<double>(l) * l;
        const double z2 = 1600.0;
        const double want = 4.0 * M_PI * 1000.0 * k2 / (z2 * z2 * kAlpha * kAlpha);
        CHECK(exact_mean_precession_time(p) == doctest::Approx(want).epsilon(1e-13));
    }
    // showcase: within 5% of the l_av^2 shortcut
    {
        EllipticSpec s;
        s.n = 50;
        s.eccentricity = 0.4;
        s.Z = 92;
        s.a = 1 / std::sqrt(2.0);
        s.b = 1 / std::sqrt(2.0);
        PacketState p = build_packet(s);
        const double exact = exact_mean_precession_time(p);
        CHECK(exact == doctest::Approx(p.Tp_au).epsilon(0.05));
        CHECK(exact > p.Tp_au);  // variance pushes the mean upward
    }
}

TEST_CASE("exact mean precession time: Z^-4 scaling") {
    EllipticSpec s;
    s.n = 20;
    s.eccentricity = 0.3;
    s.Z = 1;
    s.a = 0.6;
    s.b = 0.8;
    PacketState p1 = build_packet(s, EnergyMode::kLowestOrder);
    s.Z = 4;
    PacketState p4 = build_packet(s, EnergyMode::kLowestOrder);
    CHECK(exact_mean_precession_time(p1) / exact_mean_precession_time(p4)
          == doctest::Approx(256.0).epsilon(1e-12));
}

TEST_CASE("timescales: domain validation") {
    CHECK_THROWS_AS(precession_time(0, 0.4, 92), std::invalid_argument);
    CHECK_THROWS_AS(precession_time(50, 1.0, 92), std::invalid_argument);
    CHECK_THROWS_AS(precession_time(50, 0.4, 200), std::invalid_argument);
}
