#include "rydberg/dirac_coulomb.hpp"

#include <cmath>
#include <stdexcept>

#include "rydberg/constants.hpp"

namespace rydberg {

namespace {

void check_level_args(int n, int kappa, int Z) {
    if (n < 1) throw std::invalid_argument("dirac level: n must be >= 1");
    if (kappa == 0) throw std::invalid_argument("dirac level: kappa must be nonzero");
    int k = std::abs(kappa);
    if (k > n || (kappa == n))
        throw std::invalid_argument("dirac level: require |kappa| <= n and kappa != +n");
    if (kappa > 0 && kappa == n)
        throw std::invalid_argument("dirac level: kappa = +n does not exist");
    if (Z < 1) throw std::invalid_argument("dirac level: Z must be >= 1");
    double x = Z * kAlpha;
    if (x >= 1.0) throw std::invalid_argument("dirac level: Z alpha must be < 1");
    if (k * k <= x * x)
        throw std::invalid_argument("dirac level: supercritical kappa (k^2 <= (Z alpha)^2)");
}

}  // namespace

DiracLevel make_level(int n, int kappa, int Z) {
    check_level_args(n, kappa, Z);
    DiracLevel lv;
    lv.n = n;
    lv.kappa = kappa;
    lv.Z = Z;
    lv.k = std::abs(kappa);
    lv.l = kappa < 0 ? -kappa - 1 : kappa;
    lv.n_r = n - lv.k;
    const double x = Z * kAlpha;
    lv.gamma_k = std::sqrt(static_cast<double>(lv.k) * lv.k - x * x);
    lv.n_apparent = std::sqrt(static_cast<double>(lv.n_r) * lv.n_r
                              + 2.0 * lv.n_r * lv.gamma_k
                              + static_cast<double>(lv.k) * lv.k);
    lv.energy_exact = (lv.n_r + lv.gamma_k) / lv.n_apparent;
    // (E - 1) m0 c^2 without cancellation
    lv.binding_hartree = -static_cast<double>(Z) * Z
                         / (lv.n_apparent * (lv.n_apparent + lv.n_r + lv.gamma_k));
    lv.energy_fs = fine_structure_energy(n, lv.l, kappa < 0 ? +1 : -1, Z);
    return lv;
}

double exact_energy(int n, int kappa, int Z) { return make_level(n, kappa, Z).energy_exact; }

double fine_structure_energy(int n, int l, int s_sign, int Z) {
    if (l < 0 || l > n - 1)
        throw std::invalid_argument("fine_structure_energy: need 0 <= l <= n-1");
    if (s_sign != 1 && s_sign != -1)
        throw std::invalid_argument("fine_structure_energy: s_sign must be +-1");
    if (l == 0 && s_sign == -1)
        throw std::invalid_argument("fine_structure_energy: j = -1/2 does not exist at l = 0");
    const double denom = l + 0.5 * s_sign + 0.5;  // l + s + 1/2
    const double Z2 = static_cast<double>(Z) * Z;
    return -0.5 * Z2 * Z2 * kAlpha * kAlpha
           / (static_cast<double>(n) * n * n * denom);
}

ExpansionBudget expansion_budget(int n, int k, int Z) {
    if (k < 1 || k > n) throw std::invalid_argument("expansion_budget: need 1 <= k <= n");
    if (Z < 1 || Z * kAlpha >= 1.0) throw std::invalid_argument("expansion_budget: bad Z");
    const double x = Z * kAlpha;
    const double x2 = x * x;
    const double x4 = x2 * x2;
    const double n3 = static_cast<double>(n) * n * n;
    ExpansionBudget b;
    b.delta4 = -(x4 / (4.0 * n3)) * (2.0 / k);
    b.delta6 = -(x4 * x2 / (4.0 * n3))
               * (0.5 / (static_cast<double>(k) * k * k)
                  + 1.5 / (static_cast<double>(n) * k * k)
                  - 3.0 / (static_cast<double>(n) * n * k)
                  + 1.25 / n3);
    b.ratio64 = x2 * (1.0 / (static_cast<double>(k) * k)
                      + 0.75 / (static_cast<double>(n) * k)
                      - 1.5 / (static_cast<double>(n) * n)
                      + 0.625 * k / n3);
    b.derivative_correction = 1.5 * x2 * (0.5 / (static_cast<double>(k) * k)
                                          + 1.0 / (static_cast<double>(n) * k)
                                          - 1.0 / (static_cast<double>(n) * n));
    return b;
}

// ---------------------------------------------------------------------------
// radial functions

namespace {

// M(-n_r, b, rho) and M(1-n_r, b, rho) via the stable downward-a recurrence
// M(-(j+1)) = ((2j + b - rho) M(-j) - j M(-j+1)) / (b + j), carried with
// mantissa rescaling; returns sign/log of the two bracket combinations.
struct BracketPair {
    SignedLog g;  // (N - kappa) M_a - n_r M_b
    SignedLog f;  // (N - kappa) M_a + n_r M_b
};

BracketPair dirac_brackets(int n_r, double b, double n_app, int kappa, double rho) {
    double Ma = 1.0;  // M(0)
    double Mb = 0.0;
    double scale = 0.0;
    if (n_r >= 1) {
        Mb = 1.0;
        Ma = 1.0 - rho / b;  // M(-1)
        for (int j = 1; j < n_r; ++j) {
            double Mn = ((2.0 * j + b - rho) * Ma - j * Mb) / (b + j);
            Mb = Ma;
            Ma = Mn;
            double m = std::max(std::fabs(Ma), std::fabs(Mb));
            if (m > 1e150) {
                Ma /= m;
                Mb /= m;
                scale += std::log(m);
            }
        }
    }
    const double A = (n_app - kappa) * Ma;
    const double B = n_r * Mb;
    BracketPair out;
    auto pack = [&](double v) -> SignedLog {
        if (v == 0.0) return {0.0, -INFINITY};
        return {v > 0.0 ? 1.0 : -1.0, std::log(std::fabs(v)) + scale};
    };
    out.g = pack(A - B);
    out.f = pack(A + B);
    return out;
}

}  // namespace

RadialPair::RadialPair(int n, int kappa, int Z) : level_(make_level(n, kappa, Z)) {
    lambda_ = Z / level_.n_apparent;
    const double b = 2.0 * level_.gamma_k + 1.0;
    // normalization: C = sqrt(lambda G(b + n_r) / (2 N (N - kappa) n_r!)) / G(b),
    // overall factor 2 lambda from g = G/r
    log_norm_ = 0.5 * (std::log(lambda_) + std::lgamma(b + level_.n_r)
                       - std::log(2.0 * level_.n_apparent * (level_.n_apparent - kappa))
                       - log_factorial(level_.n_r))
                - std::lgamma(b) + std::log(2.0 * lambda_);
    // large component matches +R_nl in the nonrelativistic limit
    sign_ = kappa < 0 ? 1.0 : -1.0;
}

void RadialPair::eval_log(double r, SignedLog& g_out, SignedLog& f_out) const {
    if (!(r > 0.0)) {
        g_out = {0.0, -INFINITY};
        f_out = {0.0, -INFINITY};
        return;
    }
    const double rho = 2.0 * lambda_ * r;
    const double b = 2.0 * level_.gamma_k + 1.0;
    BracketPair br = dirac_brackets(level_.n_r, b, level_.n_apparent, level_.kappa, rho);
    const double base = log_norm_ + (level_.gamma_k - 1.0) * std::log(rho) - 0.5 * rho;
    const double E = level_.energy_exact;
    g_out.sign = sign_ * br.g.sign;
    g_out.log_abs = 0.5 * std::log1p(E) + base + br.g.log_abs;
    f_out.sign = -sign_ * br.f.sign;
    f_out.log_abs = 0.5 * std::log1p(-E) + base + br.f.log_abs;
}

double RadialPair::g(double r) const {
    SignedLog gl, fl;
    eval_log(r, gl, fl);
    return gl.sign * std::exp(gl.log_abs);
}

double RadialPair::f(double r) const {
    SignedLog gl, fl;
    eval_log(r, gl, fl);
    return fl.sign * std::exp(fl.log_abs);
}

const GaussGenLaguerre& RadialPair::quadrature(int n_nodes) const {
    if (!quad_ || static_cast<int>(quad_->node.size()) != n_nodes)
        quad_ = std::make_shared<GaussGenLaguerre>(
            gauss_gen_laguerre(n_nodes, 2.0 * level_.gamma_k));
    return *quad_;
}

RadialPair radial_pair(int n, int kappa, int Z) { return RadialPair(n, kappa, Z); }

NonrelRadial::NonrelRadial(int n, int l, int Z) : n_(n), l_(l), Z_(Z) {
    if (l < 0 || l > n - 1)
        throw std::invalid_argument("nonrel_radial: need 0 <= l <= n-1");
    if (Z < 1) throw std::invalid_argument("nonrel_radial: Z must be >= 1");
    log_norm_ = 1.5 * std::log(2.0 * Z / static_cast<double>(n))
                + 0.5 * (log_factorial(n + l) - std::log(2.0 * n) - log_factorial(n - l - 1))
                - log_factorial(2 * l + 1);
}

SignedLog NonrelRadial::eval_log(double r) const {
    if (!(r > 0.0)) return {0.0, -INFINITY};
    const double x = 2.0 * Z_ * r / n_;
    const int k = n_ - l_ - 1;
    const double b = 2.0 * l_ + 2.0;
    // M(-k, 2l+2, x) via the same scaled recurrence
    double Ma = 1.0, Mb = 0.0, scale = 0.0;
    if (k >= 1) {
        Mb = 1.0;
        Ma = 1.0 - x / b;
        for (int j = 1; j < k; ++j) {
            double Mn = ((2.0 * j + b - x) * Ma - j * Mb) / (b + j);
            Mb = Ma;
            Ma = Mn;
            double m = std::max(std::fabs(Ma), std::fabs(Mb));
            if (m > 1e150) {
                Ma /= m;
                Mb /= m;
                scale += std::log(m);
            }
        }
    }
    if (Ma == 0.0) return {0.0, -INFINITY};
    SignedLog out;
    out.sign = Ma > 0.0 ? 1.0 : -1.0;
    out.log_abs = log_norm_ - 0.5 * x + l_ * std::log(x) + std::log(std::fabs(Ma)) + scale;
    return out;
}

double NonrelRadial::operator()(double r) const {
    SignedLog v = eval_log(r);
    return v.sign * std::exp(v.log_abs);
}

NonrelRadial nonrel_radial(int n, int l, int Z) { return NonrelRadial(n, l, Z); }

double radial_overlap(const RadialPair& a, char kind_a,
                      const RadialPair& b, char kind_b, int n_nodes) {
    if (n_nodes <= 0) n_nodes = 4 * std::max(a.level().n, b.level().n);
    const double alpha = a.gamma_k() + b.gamma_k();
    const double s = a.lambda() + b.lambda();
    GaussGenLaguerre q = gauss_gen_laguerre(n_nodes, alpha);
    CompensatedSum acc;
    SignedLog ga, fa, gb, fb;
    for (int i = 0; i < n_nodes; ++i) {
        const double u = q.node[i];
        const double r = u / s;
        a.eval_log(r, ga, fa);
        b.eval_log(r, gb, fb);
        const SignedLog& va = (kind_a == 'g') ? ga : fa;
        const SignedLog& vb = (kind_b == 'g') ? gb : fb;
        if (va.sign == 0.0 || vb.sign == 0.0) continue;
        // integrand va vb r^2 dr against the u^alpha e^-u weight
        double lt = q.log_weight[i] + va.log_abs + vb.log_abs + 2.0 * std::log(r)
                    + u - alpha * std::log(u) - std::log(s);
        acc.add(va.sign * vb.sign * std::exp(lt));
    }
    return acc.value();
}

}  // namespace rydberg
