#pragma once

#include <stdexcept>
#include <vector>

namespace rydberg {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss quadrature for weight x^alpha e^-x on [0, inf). Weights are kept in
// log form: integral f(x) x^alpha e^-x dx = sum exp(log_w[i]) f(x[i]).
// Nodes come from the Jacobi-matrix eigenvalues; weights from the closed form
// w_i = G(N+alpha+1) x_i / (N! (N+1)^2 L^alpha_{N+1}(x_i)^2) evaluated in
// log space, which keeps far-tail weights meaningful where eigenvector
// components would underflow.
struct GaussGenLaguerre {
    double alpha;
    std::vector<double> node;
    std::vector<double> log_weight;
};

GaussGenLaguerre gauss_gen_laguerre(int n_nodes, double alpha);

// log k! with compensated accumulation; exact for small k
double log_factorial(int k);

// generalized Laguerre L^alpha_k(x) as sign * exp(log_abs); stable three-term
// recurrence with mantissa rescaling
struct SignedLog {
    double sign;     // -1, 0, +1
    double log_abs;  // -inf if sign == 0
};
SignedLog laguerre_signed_log(int k, double alpha, double x);

// Kahan-compensated accumulator
class CompensatedSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace rydberg
