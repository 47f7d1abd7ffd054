#pragma once

#include <vector>

namespace rydberg {

// The eight radial overlaps entering the spin expectation values, per l:
//   Gp  = int (g+_l)^2 r^2 dr        Gm  = int (g-_l)^2 r^2 dr
//   Fp  = int (f+_l)^2 r^2 dr        Fm  = int (f-_l)^2 r^2 dr
//   Gpm = int g+_l g-_l r^2 dr
//   Fpm = int f+_{l+2} f-_l r^2 dr   Fmp = int f+_{l-2} f-_l r^2 dr
//   Fmp_prime = int f+_l f-_{l+2} r^2 dr   (= Fmp at l+2)
// Integrals whose partner level does not exist are zero.
struct RadialIntegralSet {
    int l = 0;
    double Gp = 0, Gm = 0, Fp = 0, Fm = 0;
    double Gpm = 0, Fpm = 0, Fmp = 0, Fmp_prime = 0;
    double err_estimate = 0;  // max change under node doubling
};

// Computed with generalized Gauss-Laguerre nodes matched to the joint decay
// scale; node count 4n by default, verified by node doubling. Results are
// cached per (n, l, Z); the cache is safe for concurrent use.
// Throws QuadratureError if node doubling moves any value by more than 1e-9.
RadialIntegralSet compute_integral_set(int n, int l, int Z);

struct SelftestReport {
    int n = 0;
    int Z = 0;
    double max_norm_dev = 0;        // max |Gp+Fp-1|, |Gm+Fm-1| over l
    double max_doubling_change = 0; // max integral change, 4n vs 8n nodes
    double max_symmetry_dev = 0;    // max |Fmp(l) - Fmp_prime(l-2)|
};

SelftestReport quadrature_selftest(int n, int Z);

}  // namespace rydberg
