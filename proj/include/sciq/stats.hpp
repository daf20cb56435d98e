// stats.hpp - the nonparametric tests used to compare measurement methods:
// Kruskal-Wallis H and the D'Agostino-Pearson normality test, backed by a
// chi-square upper tail.
#pragma once

#include <string>
#include <vector>

namespace sciq {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double df = 0.0;
    std::string method;
};

/// Upper-tail probability of the chi-square distribution,
/// Q(df/2, x/2) via the regularized upper incomplete gamma function.
/// chi2_sf(x, 2) == exp(-x/2) exactly.
double chi2_sf(double x, double df);

/// Kruskal-Wallis H-test over >= 2 groups. Mid-ranks over the pooled
/// sample; the tie correction divides H by 1 - sum(t^3 - t)/(N^3 - N).
/// When every observation is equal the result is H = 0, p = 1.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

/// D'Agostino-Pearson K^2 normality test: K^2 = Z(g1)^2 + Z(g2)^2 with the
/// standard skewness and kurtosis normal approximations, p = chi2_sf(K^2, 2).
/// Requires n >= 20 (transform validity) and non-zero variance.
TestResult dagostino_pearson(const std::vector<double>& sample);

} // namespace sciq
