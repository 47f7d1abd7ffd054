#include "rydberg/radial_integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "rydberg/dirac_coulomb.hpp"

namespace rydberg {

namespace {

struct LevelQuartet {
    std::optional<RadialPair> plus;        // kappa = -(l+1)
    std::optional<RadialPair> minus;       // kappa = +l          (l >= 1)
    std::optional<RadialPair> plus_lm2;    // + level of l-2      (l >= 2)
    std::optional<RadialPair> plus_lp2;    // + level of l+2      (l <= n-3)
    std::optional<RadialPair> minus_lp2;   // - level of l+2      (l <= n-3)
};

RadialIntegralSet compute_with_nodes(const LevelQuartet& q, int l, int nodes) {
    RadialIntegralSet s;
    s.l = l;
    s.Gp = radial_overlap(*q.plus, 'g', *q.plus, 'g', nodes);
    s.Fp = radial_overlap(*q.plus, 'f', *q.plus, 'f', nodes);
    if (q.minus) {
        s.Gm = radial_overlap(*q.minus, 'g', *q.minus, 'g', nodes);
        s.Fm = radial_overlap(*q.minus, 'f', *q.minus, 'f', nodes);
        s.Gpm = radial_overlap(*q.plus, 'g', *q.minus, 'g', nodes);
        if (q.plus_lp2)
            s.Fpm = radial_overlap(*q.plus_lp2, 'f', *q.minus, 'f', nodes);
        if (q.plus_lm2)
            s.Fmp = radial_overlap(*q.plus_lm2, 'f', *q.minus, 'f', nodes);
    }
    if (q.minus_lp2)
        s.Fmp_prime = radial_overlap(*q.plus, 'f', *q.minus_lp2, 'f', nodes);
    return s;
}

double max_change(const RadialIntegralSet& a, const RadialIntegralSet& b) {
    double d = 0.0;
    d = std::max(d, std::fabs(a.Gp - b.Gp));
    d = std::max(d, std::fabs(a.Gm - b.Gm));
    d = std::max(d, std::fabs(a.Fp - b.Fp));
    d = std::max(d, std::fabs(a.Fm - b.Fm));
    d = std::max(d, std::fabs(a.Gpm - b.Gpm));
    d = std::max(d, std::fabs(a.Fpm - b.Fpm));
    d = std::max(d, std::fabs(a.Fmp - b.Fmp));
    d = std::max(d, std::fabs(a.Fmp_prime - b.Fmp_prime));
    return d;
}

RadialIntegralSet compute_uncached(int n, int l, int Z) {
    if (l < 0 || l > n - 1)
        throw std::invalid_argument("compute_integral_set: need 0 <= l <= n-1");
    LevelQuartet q;
    q.plus.emplace(n, -(l + 1), Z);
    if (l >= 1) q.minus.emplace(n, l, Z);
    if (l >= 2) q.plus_lm2.emplace(n, -(l - 1), Z);
    if (l + 2 <= n - 1) {
        q.plus_lp2.emplace(n, -(l + 3), Z);
        q.minus_lp2.emplace(n, l + 2, Z);
    }
    const int nodes = 4 * n;
    RadialIntegralSet s = compute_with_nodes(q, l, nodes);
    RadialIntegralSet s2 = compute_with_nodes(q, l, 2 * nodes);
    s.err_estimate = max_change(s, s2);
    if (s.err_estimate > 1e-9)
        throw QuadratureError("compute_integral_set: node doubling moved an integral by "
                              + std::to_string(s.err_estimate));
    return s;
}

}  // namespace

RadialIntegralSet compute_integral_set(int n, int l, int Z) {
    using Key = std::tuple<int, int, int>;
    static std::map<Key, RadialIntegralSet> cache;
    static std::shared_mutex mtx;
    const Key key{n, l, Z};
    {
        std::shared_lock lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    RadialIntegralSet s = compute_uncached(n, l, Z);  // may run concurrently, idempotent
    {
        std::unique_lock lock(mtx);
        cache.emplace(key, s);
    }
    return s;
}

SelftestReport quadrature_selftest(int n, int Z) {
    SelftestReport rep;
    rep.n = n;
    rep.Z = Z;
    std::vector<RadialIntegralSet> sets;
    sets.reserve(n);
    for (int l = 0; l < n; ++l) {
        RadialIntegralSet s = compute_integral_set(n, l, Z);
        rep.max_norm_dev = std::max(rep.max_norm_dev, std::fabs(s.Gp + s.Fp - 1.0));
        if (l >= 1)
            rep.max_norm_dev = std::max(rep.max_norm_dev, std::fabs(s.Gm + s.Fm - 1.0));
        rep.max_doubling_change = std::max(rep.max_doubling_change, s.err_estimate);
        sets.push_back(s);
    }
    for (int l = 2; l < n; ++l)
        rep.max_symmetry_dev = std::max(rep.max_symmetry_dev,
                                        std::fabs(sets[l].Fmp - sets[l - 2].Fmp_prime));
    return rep;
}

}  // namespace rydberg
