#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "rydberg/packet.hpp"

namespace rydberg {

namespace {

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("RYDG_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(hw)) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

// Y_lm(pi/2, 0): real, zero for l+m odd; std::sph_legendre carries the
// Condon-Shortley phase, negative m via Y_{l,-m} = (-1)^m Y_{l,m} at phi = 0
double theta_lm(int l, int m) {
    int am = std::abs(m);
    if (am > l) return 0.0;
    double v = std::sph_legendre(l, am, M_PI / 2.0);
    if (m < 0 && (am & 1)) v = -v;
    return v;
}

// the component expansions over |l', m'> kets; the spinor may be complex
struct TermC {
    int level;
    int kind;
    int m_out;
    std::complex<double> coeff;
};

std::vector<std::vector<TermC>> build_terms(const PacketState& p) {
    const int n = p.n();
    std::vector<std::vector<double>> theta(n + 2);
    for (int l = 0; l <= n + 1; ++l) {
        theta[l].resize(2 * l + 1);
        for (int m = -l; m <= l; ++m) theta[l][m + l] = theta_lm(l, m);
    }
    const std::complex<double> a = p.spec.a;
    const std::complex<double> b = p.spec.b;
    std::vector<std::vector<TermC>> terms(4);
    auto put = [&](int comp, int l, int branch, int kind, int lo, int mo,
                   std::complex<double> coeff) {
        if (coeff == 0.0 || lo < 0 || lo > n + 1 || std::abs(mo) > lo) return;
        double th = theta[lo][mo + lo];
        if (th == 0.0) return;
        terms[comp].push_back({2 * l + (branch < 0 ? 1 : 0), kind, mo, coeff * th});
    };
    for (const auto& e : p.weights.entries()) {
        const int l = e.l, m = e.m;
        const double w = e.w;
        if (w == 0.0) continue;
        const double d = 2.0 * l + 1.0;
        const double sq_bm = std::sqrt(static_cast<double>(l + 1 - m) * (l + m));
        const double sq_ap = std::sqrt(static_cast<double>(l + 1 + m) * (l - m));
        // c1
        put(0, l, +1, 0, l, m, w * a * static_cast<double>(l + 1 + m) / d);
        put(0, l, +1, 0, l, m - 1, w * b * sq_bm / d);
        put(0, l, -1, 0, l, m, w * a * static_cast<double>(l - m) / d);
        put(0, l, -1, 0, l, m - 1, -w * b * sq_bm / d);
        // c2
        put(1, l, +1, 0, l, m, w * b * static_cast<double>(l + 1 - m) / d);
        put(1, l, +1, 0, l, m + 1, w * a * sq_ap / d);
        put(1, l, -1, 0, l, m, w * b * static_cast<double>(l + m) / d);
        put(1, l, -1, 0, l, m + 1, -w * a * sq_ap / d);
        // c3
        const double d3 = d * (2.0 * l + 3.0);
        const double d1 = d * (2.0 * l - 1.0);
        put(2, l, +1, 1, l + 1, m,
            w * a * std::sqrt(static_cast<double>(l + 1 + m) * (l + 1 - m) / d3));
        put(2, l, +1, 1, l + 1, m - 1,
            w * b * std::sqrt(static_cast<double>(l + 1 - m) * (l + 2 - m) / d3));
        if (l >= 1) {
            put(2, l, -1, 1, l - 1, m,
                w * a * std::sqrt(std::max(0.0, static_cast<double>(l + m) * (l - m)) / d1));
            put(2, l, -1, 1, l - 1, m - 1,
                -w * b * std::sqrt(std::max(0.0, static_cast<double>(l + m) * (l - 1 + m)) / d1));
        }
        // c4
        put(3, l, +1, 1, l + 1, m,
            -w * b * std::sqrt(static_cast<double>(l + 1 + m) * (l + 1 - m) / d3));
        put(3, l, +1, 1, l + 1, m + 1,
            -w * a * std::sqrt(static_cast<double>(l + 1 + m) * (l + 2 + m) / d3));
        if (l >= 1) {
            put(3, l, -1, 1, l - 1, m,
                -w * b * std::sqrt(std::max(0.0, static_cast<double>(l + m) * (l - m)) / d1));
            put(3, l, -1, 1, l - 1, m + 1,
                w * a * std::sqrt(std::max(0.0, static_cast<double>(l - m) * (l - 1 - m)) / d1));
        }
    }
    return terms;
}

}  // namespace

double DensityGrid::x_at(int ix) const {
    const double step = nx > 1 ? 2.0 * half_extent / (nx - 1) : 0.0;
    return (ix - (nx - 1) / 2.0) * step;
}
double DensityGrid::y_at(int iy) const {
    const double step = ny > 1 ? 2.0 * half_extent / (ny - 1) : 0.0;
    return (iy - (ny - 1) / 2.0) * step;
}

DensityGrid density_grid(const PacketState& packet, double t_au,
                         double half_extent, int nx, int ny) {
    if (nx < 2 || ny < 2 || nx > 2048 || ny > 2048)
        throw std::invalid_argument("density_grid: resolution must lie in [2, 2048]");
    if (!(half_extent > 0.0))
        throw std::invalid_argument("density_grid: half_extent must be positive");
    const int n = packet.n();

    auto terms = build_terms(packet);

    // radial evaluators and time phases per level
    std::vector<RadialPair> pairs;
    std::vector<std::complex<double>> phase;
    pairs.reserve(2 * n);
    phase.reserve(2 * n);
    for (int l = 0; l < n; ++l) {
        pairs.emplace_back(n, -(l + 1), packet.spec.Z);
        phase.push_back(std::polar(1.0, -packet.freq.E_plus[l] * t_au));
        if (l >= 1) {
            pairs.emplace_back(n, l, packet.spec.Z);
            phase.push_back(std::polar(1.0, -packet.freq.E_minus[l] * t_au));
        } else {
            pairs.emplace_back(n, -1, packet.spec.Z);  // placeholder, never referenced
            phase.push_back(0.0);
        }
    }

    DensityGrid grid;
    grid.half_extent = half_extent;
    grid.nx = nx;
    grid.ny = ny;
    grid.t_au = t_au;
    grid.rho_large.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    grid.rho_small.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    grid.rho_total.assign(static_cast<std::size_t>(nx) * ny, 0.0);

    // cache radial values per unique r^2 (grid symmetry makes mirrored radii
    // bit-identical)
    std::unordered_map<double, int> radius_index;
    std::vector<double> radii;
    for (int ix = 0; ix < nx; ++ix) {
        const double x = grid.x_at(ix);
        for (int iy = 0; iy < ny; ++iy) {
            const double y = grid.y_at(iy);
            const double r2 = x * x + y * y;
            if (radius_index.emplace(r2, static_cast<int>(radii.size())).second)
                radii.push_back(std::sqrt(r2));
        }
    }
    const int n_rad = static_cast<int>(radii.size());
    std::vector<double> radval(static_cast<std::size_t>(n_rad) * 2 * n * 2);
    {
        std::atomic<int> next{0};
        auto radial_worker = [&] {
            SignedLog gl, fl;
            for (int i = next.fetch_add(1); i < n_rad; i = next.fetch_add(1)) {
                const double r = std::max(radii[i], 1e-300);
                for (int lev = 0; lev < 2 * n; ++lev) {
                    if (lev % 2 == 1 && lev / 2 < 1) {
                        radval[(static_cast<std::size_t>(i) * 2 * n + lev) * 2 + 0] = 0.0;
                        radval[(static_cast<std::size_t>(i) * 2 * n + lev) * 2 + 1] = 0.0;
                        continue;
                    }
                    pairs[lev].eval_log(r, gl, fl);
                    radval[(static_cast<std::size_t>(i) * 2 * n + lev) * 2 + 0] =
                        gl.sign * std::exp(gl.log_abs);
                    radval[(static_cast<std::size_t>(i) * 2 * n + lev) * 2 + 1] =
                        fl.sign * std::exp(fl.log_abs);
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < worker_count(); ++w) pool.emplace_back(radial_worker);
        for (auto& th : pool) th.join();
    }

    // fold the time phase into per-term complex coefficients
    std::vector<std::vector<TermC>> tt(4);
    for (int c = 0; c < 4; ++c) {
        tt[c].reserve(terms[c].size());
        for (const auto& T : terms[c])
            tt[c].push_back({T.level, T.kind, T.m_out, T.coeff * phase[T.level]});
    }

    const int moff = n + 1;
    std::atomic<int> next_row{0};
    auto worker = [&] {
        std::vector<std::complex<double>> eim(2 * moff + 1);
        for (int ix = next_row.fetch_add(1); ix < nx; ix = next_row.fetch_add(1)) {
            const double x = grid.x_at(ix);
            for (int iy = 0; iy < ny; ++iy) {
                const double y = grid.y_at(iy);
                const double r2 = x * x + y * y;
                const int ri = radius_index.at(r2);
                const double* rv = &radval[static_cast<std::size_t>(ri) * 2 * n * 2];
                const double phi = std::atan2(y, x);
                const std::complex<double> e1 = std::polar(1.0, phi);
                eim[moff] = 1.0;
                for (int m = 1; m <= moff; ++m) {
                    eim[moff + m] = eim[moff + m - 1] * e1;
                    eim[moff - m] = std::conj(eim[moff + m]);
                }
                std::complex<double> c[4] = {0.0, 0.0, 0.0, 0.0};
                for (int comp = 0; comp < 4; ++comp) {
                    std::complex<double> acc = 0.0;
                    for (const auto& T : tt[comp])
                        acc += T.coeff * rv[T.level * 2 + T.kind] * eim[moff + T.m_out];
                    c[comp] = acc;
                }
                const double large = std::norm(c[0]) + std::norm(c[1]);
                const double small = std::norm(c[2]) + std::norm(c[3]);
                const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
                grid.rho_large[idx] = large;
                grid.rho_small[idx] = small;
                grid.rho_total[idx] = large + small;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < worker_count(); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return grid;
}

double precession_angle(const DensityGrid& grid) {
    // centred second moments of rho_total
    double m0 = 0, mx = 0, my = 0;
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double v = grid.rho_total[static_cast<std::size_t>(ix) * grid.ny + iy];
            m0 += v;
            mx += v * grid.x_at(ix);
            my += v * grid.y_at(iy);
        }
    if (m0 <= 0.0) throw std::domain_error("precession_angle: empty density");
    const double xb = mx / m0, yb = my / m0;
    double mxx = 0, myy = 0, mxy = 0;
    for (int ix = 0; ix < grid.nx; ++ix) {
        const double dx = grid.x_at(ix) - xb;
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double dy = grid.y_at(iy) - yb;
            const double v = grid.rho_total[static_cast<std::size_t>(ix) * grid.ny + iy];
            mxx += v * dx * dx;
            myy += v * dy * dy;
            mxy += v * dx * dy;
        }
    }
    mxx /= m0;
    myy /= m0;
    mxy /= m0;
    const double half_diff = 0.5 * (mxx - myy);
    const double radius = std::sqrt(half_diff * half_diff + mxy * mxy);
    const double mean = 0.5 * (mxx + myy);
    if (radius < 0.02 * mean)
        throw std::domain_error("precession_angle: density nearly circular, axis undefined");
    return 0.5 * std::atan2(2.0 * mxy, mxx - myy);
}

double precession_angle(const PacketState& packet, double t_au,
                        double half_extent_factor, int resolution) {
    const double half = half_extent_factor * static_cast<double>(packet.n()) * packet.n()
                        / packet.spec.Z;
    return precession_angle(density_grid(packet, t_au, half, resolution, resolution));
}

}  // namespace rydberg
