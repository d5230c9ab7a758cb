#pragma once
// Statistical helpers for the Monte Carlo vs analytic comparisons: running
// moments, chi-square goodness of fit, two-sample Kolmogorov-Smirnov.

#include <cstddef>
#include <vector>

namespace detproc {

struct RunningStat {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / double(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / double(n - 1) : 0.0; }
    double std_error() const;
};

// Regularized upper incomplete gamma Q(a, x); Q(k/2, x/2) is the chi-square
// survival function with k degrees of freedom.
double gamma_q(double a, double x);

// Chi-square p-value for observed counts against expected counts.
double chi_square_pvalue(const std::vector<double>& observed,
                         const std::vector<double>& expected);

// Two-sample KS statistic and asymptotic p-value.
struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Standard normal CDF.
double normal_cdf(double x);

} // namespace detproc
