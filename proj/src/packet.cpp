#include "rydberg/packet.hpp"

#include <cmath>
#include <stdexcept>

#include "rydberg/constants.hpp"
#include "rydberg/quadrature.hpp"
#include "rydberg/timescales.hpp"

namespace rydberg {

PacketState build_packet(const EllipticSpec& spec, EnergyMode mode) {
    spec.validate();
    PacketState p{spec, build_weight_table(spec.n, spec.gamma()), mode, {}, {}, 0.0};
    const int n = spec.n;
    p.freq.E_plus.resize(n);
    p.freq.E_minus.assign(n, 0.0);
    for (int l = 0; l < n; ++l) {
        if (mode == EnergyMode::kExact) {
            p.freq.E_plus[l] = make_level(n, -(l + 1), spec.Z).binding_hartree;
            if (l >= 1) p.freq.E_minus[l] = make_level(n, l, spec.Z).binding_hartree;
        } else {
            p.freq.E_plus[l] = fine_structure_energy(n, l, +1, spec.Z);
            if (l >= 1) p.freq.E_minus[l] = fine_structure_energy(n, l, -1, spec.Z);
        }
    }
    p.integrals.reserve(n);
    for (int l = 0; l < n; ++l) p.integrals.push_back(compute_integral_set(n, l, spec.Z));
    const double lav = (n - 1) * std::cos(spec.gamma());
    const double Z2 = static_cast<double>(spec.Z) * spec.Z;
    p.Tp_au = 4.0 * M_PI * n * n * n * lav * lav / (Z2 * Z2 * kAlpha * kAlpha);
    return p;
}

double PacketState::population(int l, int s_sign) const {
    const double a2 = std::norm(spec.a);
    const double b2 = std::norm(spec.b);
    if (l < 0 || l >= n()) return 0.0;
    if (s_sign < 0 && l < 1) return 0.0;
    CompensatedSum s;
    for (int m = -l; m <= l; m += 2) {
        const double w2 = weights.at(l, m) * weights.at(l, m);
        if (s_sign > 0)
            s.add(w2 * (a2 * (l + 1 + m) + b2 * (l + 1 - m)) / (2.0 * l + 1.0));
        else
            s.add(w2 * (a2 * (l - m) + b2 * (l + m)) / (2.0 * l + 1.0));
    }
    return s.value();
}

AutocorrSeries autocorrelation(const PacketState& packet, const std::vector<double>& times_au) {
    const int n = packet.n();
    std::vector<double> Pp(n), Pm(n, 0.0);
    for (int l = 0; l < n; ++l) {
        Pp[l] = packet.population(l, +1);
        if (l >= 1) Pm[l] = packet.population(l, -1);
    }
    AutocorrSeries out;
    out.times_au = times_au;
    out.values.reserve(times_au.size());
    for (double t : times_au) {
        std::complex<double> A = 0.0;
        for (int l = 0; l < n; ++l) {
            A += Pp[l] * std::polar(1.0, -packet.freq.E_plus[l] * t);
            if (l >= 1) A += Pm[l] * std::polar(1.0, -packet.freq.E_minus[l] * t);
        }
        out.values.push_back(A);
    }
    return out;
}

AutocorrSeries autocorrelation_approx(const PacketState& packet,
                                      const std::vector<double>& times_au) {
    const int n = packet.n();
    const double a2 = std::norm(packet.spec.a);
    const double b2 = std::norm(packet.spec.b);
    std::vector<double> wll2(n);
    for (int l = 0; l < n; ++l) {
        double w = packet.weights.at(l, l);
        wll2[l] = w * w;
    }
    AutocorrSeries out;
    out.times_au = times_au;
    out.values.reserve(times_au.size());
    for (double t : times_au) {
        std::complex<double> A = 0.0;
        for (int l = 0; l < n; ++l) {
            A += a2 * wll2[l] * std::polar(1.0, -packet.freq.E_plus[l] * t);
            if (l >= 1) A += b2 * wll2[l] * std::polar(1.0, -packet.freq.E_minus[l] * t);
        }
        out.values.push_back(A);
    }
    return out;
}

// ---------------------------------------------------------------------------
// spin expectation values

namespace {

// Per-l aggregated coefficients: each observable is a static part plus sums
// of cos/sin against omega_l, omega'_l, omega''_l. Built once in O(n^2).
struct SpinTables {
    double x0 = 0;
    std::vector<double> xc, xcp, xcd;   // sigma_x: cos(omega), cos(omega'), cos(omega'')
    std::vector<double> yc, ycp, ycd;   // sigma_y: sin counterparts
    double z0 = 0;
    std::vector<double> zc, zcp;        // sigma_z: cos(omega), cos(omega')
};

SpinTables build_spin_tables(const PacketState& p, double a, double b) {
    const int n = p.n();
    SpinTables T;
    T.xc.assign(n, 0.0);
    T.xcp.assign(n, 0.0);
    T.xcd.assign(n, 0.0);
    T.yc.assign(n, 0.0);
    T.ycp.assign(n, 0.0);
    T.ycd.assign(n, 0.0);
    T.zc.assign(n, 0.0);
    T.zcp.assign(n, 0.0);
    const double a2 = a * a, b2 = b * b;
    const auto& W = p.weights;
    CompensatedSum x0, z0;
    for (int l = 0; l < n; ++l) {
        const RadialIntegralSet& S = p.integrals[l];
        const double d = 2.0 * l + 1.0;
        for (int m = -l; m <= l; m += 2) {
            const double w = W.at(l, m);
            if (w == 0.0) continue;
            const double w2 = w * w;
            const double lp1sq = static_cast<double>(l + 1) * (l + 1);
            const double lsq = static_cast<double>(l) * l;

            x0.add(w2 * (S.Gp * (lp1sq - m * m) / (d * d)
                         + S.Gm * (lsq - m * m) / (d * d)
                         - S.Fp * (lp1sq - m * m) / (d * (2.0 * l + 3.0))
                         - (l >= 1 ? S.Fm * (lsq - m * m) / (d * (2.0 * l - 1.0)) : 0.0)));
            if (l >= 1) {
                T.xc[l] += w2 * 2.0 * S.Gpm * (l * (l + 1.0) + m * m) / (d * d);
                T.yc[l] += w2 * 2.0 * m / d * S.Gpm;
            }

            // w_lm w_{l-2,m-2} against F-+, frequency omega''_l
            if (l >= 2) {
                const double w22 = W.at(l - 2, m - 2);
                if (w22 != 0.0 && l - 3 + m >= 0) {
                    const double rad = std::sqrt(
                        static_cast<double>(l + m) * (l - 1 + m) * (l - 2 + m) * (l - 3 + m)
                        / ((2.0 * l - 1.0) * (2.0 * l - 1.0) * d * (2.0 * l - 3.0)));
                    T.xcd[l] += w * w22 * S.Fmp * rad;
                    T.ycd[l] += w * w22 * S.Fmp * rad;
                }
            }

            // w_lm w_{l,m-2}: same-l cross terms
            {
                const double wm2 = W.at(l, m - 2);
                if (wm2 != 0.0) {
                    const double f1 = std::sqrt(static_cast<double>(l + m) * (l - 1 + m)) / d;
                    const double f2 = std::sqrt(static_cast<double>(l + 1 - m) * (l + 2 - m));
                    x0.add(w * wm2 * f1 * f2 * (S.Gp + S.Gm) / d);
                    T.xc[l] += w * wm2 * f1 * f2 * (-2.0 * S.Gpm) / d;
                    x0.add(-w * wm2 * f1 * f2
                           * ((l >= 1 ? S.Fm / (2.0 * l - 1.0) : 0.0)
                              + S.Fp / (2.0 * l + 3.0)));
                }
            }

            // w_lm w_{l-2,m} against F-+, frequency omega''_l
            if (l >= 2) {
                const double wsm = W.at(l - 2, m);
                if (wsm != 0.0 && lsq - m * m >= 0.0) {
                    const double rad = std::sqrt(
                        (lsq - m * m) * (static_cast<double>(l - 1) * (l - 1) - m * m)
                        / ((2.0 * l - 1.0) * (2.0 * l - 1.0) * d * (2.0 * l - 3.0)));
                    T.xcd[l] -= w * wsm * 2.0 * S.Fmp * rad;
                }
            }

            // w_lm w_{l+2,m-2} against F'-+, frequency omega'_l
            if (l + 2 <= n - 1) {
                const double wp2 = W.at(l + 2, m - 2);
                if (wp2 != 0.0) {
                    const double rad = std::sqrt(
                        static_cast<double>(l + 1 - m) * (l + 2 - m) * (l + 3 - m) * (l + 4 - m)
                        / (d * (2.0 * l + 3.0) * (2.0 * l + 3.0) * (2.0 * l + 5.0)));
                    T.xcp[l] += w * wp2 * S.Fmp_prime * rad;
                    T.ycp[l] -= w * wp2 * S.Fmp_prime * rad;
                }
            }

            // sigma_z
            z0.add(w2 * (a2 * (2.0 * m + 1.0) / d
                             * (S.Gp * (l + 1 + m) / d - S.Gm * (l - m) / d
                                - S.Fp * (l + 1 + m) / (2.0 * l + 3.0)
                                + (l >= 1 ? S.Fm * (l - m) / (2.0 * l - 1.0) : 0.0))
                         + b2 * (2.0 * m - 1.0) / d
                               * (S.Gp * (l + 1 - m) / d - S.Gm * (l + m) / d
                                  - S.Fp * (l + 1 - m) / (2.0 * l + 3.0)
                                  + (l >= 1 ? S.Fm * (l + m) / (2.0 * l - 1.0) : 0.0))));
            if (l >= 1)
                T.zc[l] += w2 * 4.0 * S.Gpm
                           * (a2 * (l - m) * (l + 1.0 + m) - b2 * (l + m) * (l + 1.0 - m))
                           / (d * d);
            if (l + 2 <= n - 1) {
                const double wz = W.at(l + 2, m);
                if (wz != 0.0) {
                    const double rad = std::sqrt(
                        (lp1sq - m * m) * (static_cast<double>(l + 2) * (l + 2) - m * m)
                        / (d * (2.0 * l + 3.0) * (2.0 * l + 3.0) * (2.0 * l + 5.0)));
                    T.zcp[l] += 4.0 * (a2 - b2) * w * wz * S.Fmp_prime * rad;
                }
            }
        }
    }
    T.x0 = x0.value();
    T.z0 = z0.value();
    return T;
}

}  // namespace

SpinSeries spin_expectation(const PacketState& packet, const std::vector<double>& times_au) {
    if (!packet.spec.spinor_is_real())
        throw std::invalid_argument(
            "spin_expectation: closed-form sums require a real spinor (a, b)");
    const double a = packet.spec.a.real();
    const double b = packet.spec.b.real();
    const int n = packet.n();
    SpinTables T = build_spin_tables(packet, a, b);

    SpinSeries out;
    out.times_au = times_au;
    out.sx.reserve(times_au.size());
    out.sy.reserve(times_au.size());
    out.sz.reserve(times_au.size());
    for (double t : times_au) {
        double sx = T.x0, sy = 0.0, sz = T.z0;
        for (int l = 1; l < n; ++l) {
            if (T.xc[l] != 0.0 || T.yc[l] != 0.0 || T.zc[l] != 0.0) {
                const double w = packet.freq.omega(l);
                const double c = std::cos(w * t), s = std::sin(w * t);
                sx += T.xc[l] * c;
                sy += T.yc[l] * s;
                sz += T.zc[l] * c;
            }
        }
        for (int l = 0; l + 2 <= n - 1; ++l) {
            if (T.xcp[l] != 0.0 || T.ycp[l] != 0.0 || T.zcp[l] != 0.0) {
                const double w = packet.freq.omega_prime(l);
                const double c = std::cos(w * t), s = std::sin(w * t);
                sx += T.xcp[l] * c;
                sy += T.ycp[l] * s;
                sz += T.zcp[l] * c;
            }
        }
        for (int l = 2; l < n; ++l) {
            if (T.xcd[l] != 0.0 || T.ycd[l] != 0.0) {
                const double w = packet.freq.omega_dprime(l);
                sx += T.xcd[l] * std::cos(w * t);
                sy += T.ycd[l] * std::sin(w * t);
            }
        }
        out.sx.push_back(2.0 * a * b * sx);
        out.sy.push_back(2.0 * a * b * sy);
        out.sz.push_back(sz);
    }
    return out;
}

}  // namespace rydberg
