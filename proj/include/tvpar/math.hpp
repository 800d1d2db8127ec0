#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tvpar {

/// Compensated (Kahan) accumulator. Used for all long window sums so that
/// the estimators agree with exact-arithmetic oracles to ~1e-12 relative.
class KahanSum {
public:
    void add(double x) noexcept {
        const double y = x - carry_;
        const double t = total_ + y;
        carry_ = (t - total_) - y;
        total_ = t;
    }
    double value() const noexcept { return total_; }
    void reset() noexcept { total_ = 0.0; carry_ = 0.0; }

private:
    double total_ = 0.0;
    double carry_ = 0.0;
};

/// Quantile of the standard normal distribution (Wichura's PPND16,
/// accurate to full double precision). p must lie in (0,1).
double normal_quantile(double p);

/// Upper tail probability P(X > x) for a chi-square with `dof` degrees
/// of freedom, via the regularized incomplete gamma function.
double chi_square_upper_tail(double x, int dof);

/// Type-7 sample quantile (linear interpolation of order statistics) of a
/// sorted sequence. q in [0,1]; endpoints return min/max.
double quantile_type7_sorted(std::span<const double> sorted, double q);

/// Type-7 quantile of an arbitrary sequence (copies and sorts).
double quantile_type7(std::span<const double> values, double q);

inline double median(std::span<const double> values) { return quantile_type7(values, 0.5); }

}  // namespace tvpar
