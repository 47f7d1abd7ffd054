#include "rydberg/elliptic_state.hpp"

#include <cmath>
#include <stdexcept>

#include "rydberg/constants.hpp"
#include "rydberg/quadrature.hpp"

namespace rydberg {

void EllipticSpec::validate() const {
    if (n < 1) throw std::invalid_argument("EllipticSpec: n must be >= 1");
    if (n > 200) throw std::invalid_argument("EllipticSpec: n > 200 not supported");
    if (!(eccentricity >= 0.0) || eccentricity >= 1.0)
        throw std::invalid_argument("EllipticSpec: eccentricity must lie in [0, 1)");
    if (Z < 1) throw std::invalid_argument("EllipticSpec: Z must be >= 1");
    if (Z * kAlpha >= 1.0)
        throw std::invalid_argument("EllipticSpec: Z alpha must be < 1 (bound states)");
    double norm = std::norm(a) + std::norm(b);
    if (std::fabs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("EllipticSpec: spinor must satisfy |a|^2 + |b|^2 = 1");
}

double EllipticSpec::gamma() const { return std::asin(eccentricity); }

bool EllipticSpec::spinor_is_real() const {
    return a.imag() == 0.0 && b.imag() == 0.0;
}

WeightTable::WeightTable(int n, double gamma, std::vector<double> packed)
    : n_(n), gamma_(gamma), packed_(std::move(packed)) {
    row_offset_.resize(n_ + 1);
    std::size_t off = 0;
    for (int l = 0; l < n_; ++l) {
        row_offset_[l] = off;
        off += static_cast<std::size_t>(l) + 1;
    }
    row_offset_[n_] = off;
    if (off != packed_.size())
        throw std::invalid_argument("WeightTable: packed size mismatch");
}

double WeightTable::at(int l, int m) const {
    if (l < 0 || l >= n_ || m < -l || m > l || ((l + m) & 1)) return 0.0;
    return packed_[row_offset_[l] + static_cast<std::size_t>((m + l) / 2)];
}

double WeightTable::row_weight(int l) const {
    if (l < 0 || l >= n_) return 0.0;
    CompensatedSum s;
    for (int i = 0; i <= l; ++i) {
        double w = packed_[row_offset_[l] + i];
        s.add(w * w);
    }
    return s.value();
}

double WeightTable::sum_squares() const {
    CompensatedSum s;
    for (double w : packed_) s.add(w * w);
    return s.value();
}

std::vector<WeightTable::Entry> WeightTable::entries() const {
    std::vector<Entry> out;
    out.reserve(packed_.size());
    for (int l = 0; l < n_; ++l)
        for (int i = 0; i <= l; ++i)
            out.push_back({l, 2 * i - l, packed_[row_offset_[l] + i]});
    return out;
}

WeightTable build_weight_table(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("build_weight_table: n must be >= 1");
    if (n > 200)
        throw std::invalid_argument("build_weight_table: n > 200 exceeds the validated range");
    if (!(gamma >= 0.0) || gamma > M_PI_2 + 1e-15)
        throw std::invalid_argument("build_weight_table: gamma must lie in [0, pi/2]");

    const double s2 = std::sin(gamma / 2.0);
    const double c2 = std::cos(gamma / 2.0);
    const double log_s2 = s2 > 0.0 ? std::log(s2) : 0.0;
    const double log_c2 = std::log(c2);

    std::vector<double> packed;
    packed.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int l = 0; l < n; ++l) {
        for (int m = -l; m <= l; m += 2) {
            const int es = n - m - 1;  // sin(gamma/2) exponent
            const int ec = n + m - 1;
            if (s2 == 0.0 && es > 0) {
                packed.push_back(0.0);
                continue;
            }
            double lg = (n - l - 1) * std::log(2.0) + log_factorial(n - 1)
                        - log_factorial((l - m) / 2) - log_factorial((l + m) / 2)
                        + 0.5 * (log_factorial(l + m) + log_factorial(l - m)
                                 + std::log(2.0 * l + 1.0)
                                 - log_factorial(n - l - 1) - log_factorial(n + l));
            lg += es * log_s2 + ec * log_c2;
            // (-1)^((l+m)/2) from the definition, times (-1)^(n-1) so that
            // the circular entry w_{n-1,n-1} comes out positive
            const int par = ((l + m) / 2 + (n - 1)) & 1;
            packed.push_back((par ? -1.0 : 1.0) * std::exp(lg));
        }
    }
    return WeightTable(n, gamma, std::move(packed));
}

double average_angular_momentum(const WeightTable& table) {
    CompensatedSum s;
    for (const auto& e : table.entries()) s.add(e.w * e.w * e.m);
    return s.value();
}

std::vector<std::pair<int, double>> weight_decay_profile(const WeightTable& table) {
    std::vector<std::pair<int, double>> out;
    for (int l = 2; l < table.n(); ++l) {
        double wll = table.at(l, l);
        if (wll == 0.0) continue;
        double best = 0.0;
        bool any = false;
        for (int m = -l; m < l; m += 2) {
            double w = table.at(l, m);
            if (w != 0.0) any = true;
            best = std::max(best, (w * w) / (wll * wll));
        }
        if (any) out.emplace_back(l, best);
    }
    return out;
}

}  // namespace rydberg
