#include "oracle.hpp"

#include <cmath>

namespace rydberg::testing {

namespace {

// spinor spherical harmonic components against Y_{l, m_j -+ 1/2}
// (Condon-Shortley convention); two_mj keeps half-integers exact
double omega_up(int l, int j_sign, int two_mj) {
    if (j_sign > 0) return std::sqrt((l + 0.5 * two_mj + 0.5) / (2.0 * l + 1.0));
    return -std::sqrt((l - 0.5 * two_mj + 0.5) / (2.0 * l + 1.0));
}
double omega_dn(int l, int j_sign, int two_mj) {
    if (j_sign > 0) return std::sqrt((l - 0.5 * two_mj + 0.5) / (2.0 * l + 1.0));
    return std::sqrt((l + 0.5 * two_mj + 0.5) / (2.0 * l + 1.0));
}

}  // namespace

DenseOracle::DenseOracle(const PacketState& packet) : pkt_(&packet) {
    const int n = packet.n();
    const auto a = packet.spec.a;
    const auto b = packet.spec.b;
    energy_.assign(2 * n, 0.0);
    level_exists_.assign(2 * n, false);
    pairs_.reserve(2 * n);
    for (int l = 0; l < n; ++l) {
        pairs_.emplace_back(n, -(l + 1), packet.spec.Z);
        energy_[2 * l] = packet.freq.E_plus[l];
        level_exists_[2 * l] = true;
        // the l = 0 minus slot holds a dummy evaluator, never referenced
        pairs_.emplace_back(n, l >= 1 ? l : -1, packet.spec.Z);
        if (l >= 1) {
            energy_[2 * l + 1] = packet.freq.E_minus[l];
            level_exists_[2 * l + 1] = true;
        }
    }

    auto put = [&](int comp, int lket, int two_mket, int level, int kind,
                   std::complex<double> coeff) {
        if (coeff == std::complex<double>(0.0) || lket < 0) return;
        if (std::abs(two_mket) > 2 * lket) return;
        terms_[{comp, lket, two_mket}].push_back({level, kind, coeff});
    };

    // |n l j m_j> promoted to the Dirac eigenstate: (g Omega_{l,j}; i f Omega_{l',j})
    // with l' = 2j - l
    auto add_level = [&](std::complex<double> amp, int l, int branch, int two_mj) {
        if (amp == std::complex<double>(0.0)) return;
        const int level = 2 * l + (branch < 0 ? 1 : 0);
        const int lsmall = branch > 0 ? l + 1 : l - 1;
        const int jsign_small = -branch;  // same j seen from the flipped orbital
        const std::complex<double> i_unit(0.0, 1.0);
        put(0, l, two_mj - 1, level, 0, amp * omega_up(l, branch, two_mj));
        put(1, l, two_mj + 1, level, 0, amp * omega_dn(l, branch, two_mj));
        put(2, lsmall, two_mj - 1, level, 1,
            amp * i_unit * omega_up(lsmall, jsign_small, two_mj));
        put(3, lsmall, two_mj + 1, level, 1,
            amp * i_unit * omega_dn(lsmall, jsign_small, two_mj));
    };

    for (const auto& e : packet.weights.entries()) {
        const int l = e.l, m = e.m;
        if (e.w == 0.0) continue;
        // |l m>|up> = sqrt((l+1+m)/(2l+1)) |j>, m+1/2> - sqrt((l-m)/(2l+1)) |j<, m+1/2>
        add_level(e.w * a * std::sqrt((l + 1.0 + m) / (2.0 * l + 1.0)), l, +1, 2 * m + 1);
        if (l >= 1)
            add_level(-e.w * a * std::sqrt((l - m) / (2.0 * l + 1.0)), l, -1, 2 * m + 1);
        // |l m>|dn> = sqrt((l+1-m)/(2l+1)) |j>, m-1/2> + sqrt((l+m)/(2l+1)) |j<, m-1/2>
        add_level(e.w * b * std::sqrt((l + 1.0 - m) / (2.0 * l + 1.0)), l, +1, 2 * m - 1);
        if (l >= 1)
            add_level(e.w * b * std::sqrt((l + m) / (2.0 * l + 1.0)), l, -1, 2 * m - 1);
    }
}

double DenseOracle::gram(int lev_a, int kind_a, int lev_b, int kind_b) const {
    auto key = std::make_tuple(lev_a, kind_a, lev_b, kind_b);
    auto it = gram_.find(key);
    if (it != gram_.end()) return it->second;
    double v = radial_overlap(pairs_[lev_a], kind_a ? 'f' : 'g',
                              pairs_[lev_b], kind_b ? 'f' : 'g', 6 * pkt_->n());
    gram_[key] = v;
    gram_[std::make_tuple(lev_b, kind_b, lev_a, kind_a)] = v;
    return v;
}

std::complex<double> DenseOracle::bracket(int comp_a, int comp_b, double t1, double t2) const {
    std::complex<double> tot = 0.0;
    for (const auto& [key, lst] : terms_) {
        if (std::get<0>(key) != comp_a) continue;
        auto itb = terms_.find({comp_b, std::get<1>(key), std::get<2>(key)});
        if (itb == terms_.end()) continue;
        for (const auto& ta : lst) {
            const std::complex<double> pa = std::polar(1.0, -energy_[ta.level] * t1);
            for (const auto& tb : itb->second) {
                const std::complex<double> pb = std::polar(1.0, -energy_[tb.level] * t2);
                tot += std::conj(ta.coeff * pa) * tb.coeff * pb
                       * gram(ta.level, ta.kind, tb.level, tb.kind);
            }
        }
    }
    return tot;
}

double DenseOracle::norm() const {
    double s = 0.0;
    for (int c = 0; c < 4; ++c) s += bracket(c, c, 0.0, 0.0).real();
    return s;
}

std::complex<double> DenseOracle::autocorr(double t) const {
    std::complex<double> s = 0.0;
    for (int c = 0; c < 4; ++c) s += bracket(c, c, 0.0, t);
    return s;
}

void DenseOracle::sigma(double t, double& sx, double& sy, double& sz) const {
    const std::complex<double> b12 = bracket(0, 1, t, t);
    const std::complex<double> b34 = bracket(2, 3, t, t);
    sx = 2.0 * (b12 + b34).real();
    sy = 2.0 * (b12 + b34).imag();
    sz = (bracket(0, 0, t, t) - bracket(1, 1, t, t) + bracket(2, 2, t, t)
          - bracket(3, 3, t, t)).real();
}

std::array<std::complex<double>, 4> DenseOracle::psi_at(double x, double y, double t) const {
    const double r = std::max(std::hypot(x, y), 1e-300);
    const double phi = std::atan2(y, x);
    std::vector<std::array<double, 2>> rad(pairs_.size());
    SignedLog gl, fl;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (!level_exists_[i]) {
            rad[i] = {0.0, 0.0};
            continue;
        }
        pairs_[i].eval_log(r, gl, fl);
        rad[i] = {gl.sign * std::exp(gl.log_abs), fl.sign * std::exp(fl.log_abs)};
    }
    std::array<std::complex<double>, 4> out{};
    for (const auto& [key, lst] : terms_) {
        const auto [comp, lket, two_m] = key;
        const int m = two_m / 2;
        const int am = std::abs(m);
        if (am > lket) continue;
        double th = std::sph_legendre(lket, am, M_PI / 2.0);
        if (m < 0 && (am & 1)) th = -th;
        const std::complex<double> Y = th * std::polar(1.0, m * phi);
        for (const auto& tr : lst)
            out[comp] += tr.coeff * std::polar(1.0, -energy_[tr.level] * t)
                         * rad[tr.level][tr.kind] * Y;
    }
    return out;
}

}  // namespace rydberg::testing
