#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace rydberg {

// Defining parameters of an elliptic packet: |n gamma> basis state mixed with
// a two-component spinor (a, b). gamma = arcsin(eccentricity), prograde branch.
struct EllipticSpec {
    int n = 50;
    double eccentricity = 0.4;
    int Z = 92;
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};

    // throws std::invalid_argument on violated preconditions
    void validate() const;
    double gamma() const;
    bool spinor_is_real() const;
};

// Coefficients w_lm of the elliptic coherent state for one (n, gamma).
// Entries exist for 0 <= l <= n-1, -l <= m <= l, l+m even; stored as a dense
// triangular array indexed by (l, (m+l)/2). Overall sign fixed by
// w_{n-1,n-1} > 0.
class WeightTable {
  public:
    WeightTable(int n, double gamma, std::vector<double> packed);

    int n() const { return n_; }
    double gamma() const { return gamma_; }
    std::size_t entry_count() const { return packed_.size(); }

    // weight at (l, m); zero for l+m odd or out-of-range indices
    double at(int l, int m) const;
    // sum over the l-row of w^2
    double row_weight(int l) const;
    double sum_squares() const;

    struct Entry {
        int l;
        int m;
        double w;
    };
    std::vector<Entry> entries() const;

  private:
    int n_;
    double gamma_;
    std::vector<double> packed_;   // rows concatenated, row l holds l+1 values
    std::vector<std::size_t> row_offset_;
};

// Eq.-style coherent-state weights, evaluated in log-gamma form so that
// factorial ratios stay finite up to n = 200.
WeightTable build_weight_table(int n, double gamma);

// sum of w^2 m over the table; equals (n-1) cos(gamma)
double average_angular_momentum(const WeightTable& table);

// per l >= 2: max over m < l of w_lm^2 / w_ll^2 (rows with w_ll = 0 skipped)
std::vector<std::pair<int, double>> weight_decay_profile(const WeightTable& table);

}  // namespace rydberg
