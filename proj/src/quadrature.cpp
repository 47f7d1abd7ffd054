#include "rydberg/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <mutex>

namespace rydberg {

double log_factorial(int k) {
    static std::vector<double> table = [] {
        std::vector<double> t(1, 0.0);
        t.reserve(1024);
        CompensatedSum acc;
        for (int i = 1; i < 1024; ++i) {
            acc.add(std::log(static_cast<double>(i)));
            t.push_back(acc.value());
        }
        return t;
    }();
    if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
    if (k < static_cast<int>(table.size())) return table[k];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

SignedLog laguerre_signed_log(int k, double alpha, double x) {
    // three-term recurrence with mantissa rescaling to dodge overflow
    double p0 = 1.0;
    double p1 = 1.0 + alpha - x;
    double scale = 0.0;
    if (k == 0) p1 = 1.0;
    for (int j = 1; j < k; ++j) {
        double p2 = ((2.0 * j + 1.0 + alpha - x) * p1 - (j + alpha) * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
        double m = std::max(std::fabs(p0), std::fabs(p1));
        if (m > 1e150) {
            p0 /= m;
            p1 /= m;
            scale += std::log(m);
        }
    }
    if (p1 == 0.0) return {0.0, -INFINITY};
    return {p1 > 0.0 ? 1.0 : -1.0, std::log(std::fabs(p1)) + scale};
}

GaussGenLaguerre gauss_gen_laguerre(int n_nodes, double alpha) {
    if (n_nodes < 1 || !(alpha > -1.0))
        throw std::invalid_argument("gauss_gen_laguerre: bad node count or alpha");
    Eigen::VectorXd diag(n_nodes), sub(std::max(0, n_nodes - 1));
    for (int i = 0; i < n_nodes; ++i) diag[i] = 2.0 * i + alpha + 1.0;
    for (int i = 1; i < n_nodes; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw QuadratureError("gauss_gen_laguerre: eigenvalue iteration failed");

    GaussGenLaguerre q;
    q.alpha = alpha;
    q.node.resize(n_nodes);
    q.log_weight.resize(n_nodes);
    const double lg_head = std::lgamma(n_nodes + alpha + 1.0) - log_factorial(n_nodes)
                           - 2.0 * std::log(n_nodes + 1.0);
    for (int i = 0; i < n_nodes; ++i) {
        double x = es.eigenvalues()[i];
        q.node[i] = x;
        SignedLog L = laguerre_signed_log(n_nodes + 1, alpha, x);
        q.log_weight[i] = lg_head + std::log(x) - 2.0 * L.log_abs;
    }
    return q;
}

}  // namespace rydberg
