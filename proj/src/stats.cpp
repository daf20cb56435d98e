// stats.cpp - chi-square upper tail via the regularized incomplete gamma
// function, Kruskal-Wallis H-test with mid-ranks and tie correction, and the
// D'Agostino-Pearson K^2 normality test.

#include "sciq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sciq/errors.hpp"

namespace sciq {

namespace {

constexpr double kGammaTol = 1e-12;
constexpr int kGammaMaxIter = 500;

// Regularized lower incomplete gamma P(a, x) by series expansion; valid for
// x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kGammaMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kGammaTol)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction;
// valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kGammaTol)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

// Mid-ranks of the pooled sample (ties share the average rank).
std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]])
            ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double chi2_sf(double x, double df) {
    if (!(x >= 0.0))
        throw ValidationError("chi2_sf requires x >= 0");
    if (!(df > 0.0))
        throw ValidationError("chi2_sf requires df > 0");
    return gamma_q(df / 2.0, x / 2.0);
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2)
        throw ValidationError("Kruskal-Wallis needs at least 2 groups");
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.empty())
            throw ValidationError("Kruskal-Wallis groups must be non-empty");
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    const std::size_t n_total = pooled.size();
    if (n_total < 3)
        throw ValidationError("Kruskal-Wallis needs at least 3 observations");

    const std::vector<double> ranks = midranks(pooled);
    const double nd = static_cast<double>(n_total);
    const double grand_mean_rank = (nd + 1.0) / 2.0;

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            rank_sum += ranks[offset + i];
        offset += g.size();
        const double mean_rank = rank_sum / static_cast<double>(g.size());
        const double dev = mean_rank - grand_mean_rank;
        h += static_cast<double>(g.size()) * dev * dev;
    }
    h *= 12.0 / (nd * (nd + 1.0));

    // Tie correction: 1 - sum(t^3 - t) / (N^3 - N) over tie groups of size t.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_sum = 0.0;
    std::size_t i = 0;
    while (i < n_total) {
        std::size_t j = i;
        while (j + 1 < n_total && sorted[j + 1] == sorted[i])
            ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_sum += t * t * t - t;
        i = j + 1;
    }
    const double correction = 1.0 - tie_sum / (nd * nd * nd - nd);

    TestResult result;
    result.method = "kruskal-wallis";
    result.df = static_cast<double>(groups.size() - 1);
    if (correction == 0.0) {
        // every observation equal: no evidence of any difference
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    h = std::max(0.0, h / correction);
    result.statistic = h;
    result.p_value = chi2_sf(h, result.df);
    return result;
}

TestResult dagostino_pearson(const std::vector<double>& sample) {
    const std::size_t n_size = sample.size();
    if (n_size < 20)
        throw SampleSizeError("D'Agostino-Pearson requires n >= 20, got " +
                              std::to_string(n_size));
    const double n = static_cast<double>(n_size);

    const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : sample) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 == 0.0)
        throw DegenerateInputError("zero-variance sample: normality test undefined");

    const double g1 = m3 / std::pow(m2, 1.5);
    const double b2 = m4 / (m2 * m2);

    // Skewness transform (D'Agostino).
    const double y = g1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
    const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                         ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    const double z_skew = delta * std::asinh(y / alpha);

    // Kurtosis transform (Anscombe-Glynn).
    const double e_b2 = 3.0 * (n - 1.0) / (n + 1.0);
    const double var_b2 =
        24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    const double x = (b2 - e_b2) / std::sqrt(var_b2);
    const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                              std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
    const double a_const =
        6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
    const double denom = 1.0 + x * std::sqrt(2.0 / (a_const - 4.0));
    if (denom == 0.0)
        throw DegenerateInputError("kurtosis transform undefined for this sample");
    const double term1 = 1.0 - 2.0 / (9.0 * a_const);
    const double term2 = std::cbrt((1.0 - 2.0 / a_const) / denom);
    const double z_kurt = (term1 - term2) / std::sqrt(2.0 / (9.0 * a_const));

    TestResult result;
    result.method = "dagostino-pearson";
    result.statistic = z_skew * z_skew + z_kurt * z_kurt;
    result.df = 2.0;
    result.p_value = chi2_sf(result.statistic, 2.0);
    return result;
}

} // namespace sciq
