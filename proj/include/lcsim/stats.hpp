#pragma once

// Small statistics kit for the Monte Carlo harness: Wilson score intervals
// for violation frequencies (they stay sane near 0), standard errors for the
// one-sided bound tests, and normal / chi-square quantiles for the
// distributional checks.  All checks in the harness are deterministic given
// the seed; these routines only turn counts into pass/fail decisions.

#include <cmath>
#include <stdexcept>
#include <string>

namespace lcsim {

struct WilsonInterval {
    double lo = 0;
    double hi = 0;
};

// 95% score interval by default (z = 1.96).
inline WilsonInterval wilson_interval(long long successes, long long trials, double z = 1.96) {
    if (trials <= 0) throw std::invalid_argument("wilson interval needs trials >= 1");
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Binomial standard error at success probability p0.
inline double binomial_se(double p0, long long trials) {
    if (trials <= 0) throw std::invalid_argument("standard error needs trials >= 1");
    double p = std::min(1.0, std::max(0.0, p0));
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

// One-sided test of an upper bound: the empirical frequency may sit below the
// bound arbitrarily far, and fails only when it exceeds the bound by more
// than `z_fail` standard errors (computed at the bound itself).
inline bool upper_bound_holds(long long hits, long long trials, double bound,
                              double z_fail = 3.0) {
    double freq = static_cast<double>(hits) / static_cast<double>(trials);
    return freq <= bound + z_fail * binomial_se(bound, trials);
}

// One-sided test of "frequency is at least `bound`" (mirror image of the
// upper-bound test, for quantities guaranteed from below).
inline bool lower_bound_holds(long long hits, long long trials, double bound,
                              double z_fail = 3.0) {
    double freq = static_cast<double>(hits) / static_cast<double>(trials);
    return freq >= bound - z_fail * binomial_se(bound, trials);
}

// Two-sided test of an exact probability.
inline bool two_sided_holds(long long hits, long long trials, double prob, double z_fail = 3.0) {
    double freq = static_cast<double>(hits) / static_cast<double>(trials);
    return std::abs(freq - prob) <= z_fail * binomial_se(prob, trials) + 1e-15;
}

// Inverse standard normal cdf (Acklam's rational approximation; absolute
// error below 1.2e-9, ample for test thresholds).
inline double normal_quantile(double prob) {
    if (!(prob > 0.0) || !(prob < 1.0))
        throw std::invalid_argument("normal quantile needs prob in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double x;
    if (prob < plow) {
        double u = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    } else if (prob <= phigh) {
        double u = prob - 0.5, t = u * u;
        x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
            (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
    } else {
        double u = std::sqrt(-2.0 * std::log(1.0 - prob));
        x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    return x;
}

// Upper critical value of chi-square with dof degrees of freedom at tail
// probability alpha (Wilson-Hilferty cube approximation).
inline double chi_square_critical(int dof, double alpha) {
    if (dof < 1) throw std::invalid_argument("chi-square needs dof >= 1");
    double z = normal_quantile(1.0 - alpha);
    double t = 2.0 / (9.0 * static_cast<double>(dof));
    double cube = 1.0 - t + z * std::sqrt(t);
    return static_cast<double>(dof) * cube * cube * cube;
}

struct CheckResult {
    std::string name;
    double statistic = 0;  // the empirical quantity
    double reference = 0;  // the bound / expected value it is held against
    double z = 0;          // (statistic - reference) in reference standard errors
    bool pass = false;
    std::string detail;
};

// Signed distance from the reference in standard errors at the reference.
inline double z_score(long long hits, long long trials, double reference) {
    double se = binomial_se(reference, trials);
    if (se <= 0.0) return 0.0;
    double freq = static_cast<double>(hits) / static_cast<double>(trials);
    return (freq - reference) / se;
}

}  // namespace lcsim
