#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rydberg/quadrature.hpp"

namespace rydberg {

// One bound level of the Dirac-Coulomb problem. kappa = -(l+1) for j = l+1/2,
// kappa = +l for j = l-1/2; energies depend on kappa only through k = |kappa|.
struct DiracLevel {
    int n;
    int kappa;
    int Z;
    int k;                  // |kappa| = j + 1/2
    int l;                  // orbital quantum number of the large component
    int n_r;                // n - k
    double gamma_k;         // sqrt(kappa^2 - (Z alpha)^2)
    double n_apparent;      // sqrt(n_r^2 + 2 n_r gamma_k + kappa^2)
    double energy_exact;    // total energy in units m0 c^2
    double binding_hartree; // energy_exact - 1, exactly: -Z^2 / (N (N + n_r + gamma_k))
    double energy_fs;       // lowest-order fine-structure value in Hartree (n-only constant omitted)
};

DiracLevel make_level(int n, int kappa, int Z);

// E in units of m0 c^2 (Sommerfeld formula)
double exact_energy(int n, int kappa, int Z);

// -(1/2) Z^4 alpha^2 / (n^3 (l + s + 1/2)) in Hartree, s_sign = +-1
double fine_structure_energy(int n, int l, int s_sign, int Z);

// Taylor budget of the exact energy in x = Z alpha around x = 0, in units of
// m0 c^2. delta4 is the k-dependent x^4 term, delta6 the full x^6 term.
// ratio64 is the closed-form sixth-to-fourth order correction ratio,
// derivative_correction the relative x^2 correction to dE/dk at this k.
struct ExpansionBudget {
    double delta4;
    double delta6;
    double ratio64;
    double derivative_correction;
};
ExpansionBudget expansion_budget(int n, int k, int Z);

// Radial wave functions g (large) and f (small) of one level, normalized to
// integral (g^2 + f^2) r^2 dr = 1, with g -> +R_nl in the Z alpha -> 0 limit.
class RadialPair {
  public:
    RadialPair(int n, int kappa, int Z);

    const DiracLevel& level() const { return level_; }
    double g(double r) const;
    double f(double r) const;
    // sign/log form of both components; the workhorse for quadrature
    void eval_log(double r, SignedLog& g_out, SignedLog& f_out) const;

    double lambda() const { return lambda_; }          // exponential scale: exp(-lambda r)
    double gamma_k() const { return level_.gamma_k; }

    // shared nodes for overlap integrals of this level with itself
    const GaussGenLaguerre& quadrature(int n_nodes) const;

  private:
    DiracLevel level_;
    double lambda_;
    double log_norm_;   // log of the overall positive constant
    double sign_;       // orientation making g match +R_nl in the nonrel limit
    mutable std::shared_ptr<GaussGenLaguerre> quad_;
};

RadialPair radial_pair(int n, int kappa, int Z);

// Schroedinger-Coulomb radial function R_nl, normalized to
// integral R^2 r^2 dr = 1; the nonrelativistic limit target for g.
class NonrelRadial {
  public:
    NonrelRadial(int n, int l, int Z);
    double operator()(double r) const;
    SignedLog eval_log(double r) const;

  private:
    int n_, l_, Z_;
    double log_norm_;
};

NonrelRadial nonrel_radial(int n, int l, int Z);

// overlap integral fa fb r^2 dr between two radial components
// (kind 'g' or 'f'), exact Gauss quadrature on the joint weight
double radial_overlap(const RadialPair& a, char kind_a,
                      const RadialPair& b, char kind_b, int n_nodes = 0);

}  // namespace rydberg
