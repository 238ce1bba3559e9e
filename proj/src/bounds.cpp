#include "lcsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lcsim {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

SecurityParams compute_params(double f, double alpha, const DelayDistribution& delay) {
    if (!(f > 0.0) || !(f < 1.0)) throw std::invalid_argument("f must lie in (0,1)");
    if (!(alpha > 0.0) || alpha > 1.0) throw std::invalid_argument("alpha must lie in (0,1]");
    SecurityParams sp;
    sp.f = f;
    sp.alpha = alpha;
    // p = alpha * sum_{g>=1} f (1-f)^{g-1} P(Delta < g); q with <= instead.
    double plt = 0.0, ple = 0.0;
    double weight = 1.0;  // (1-f)^{g-1}
    int support = delay.finite_support_end();
    for (int g = 1;; ++g) {
        if (support >= 0 && g > support) {
            // cdf is flat from here on; close the geometric tail exactly
            plt += weight * delay.cdf_lt(g);
            ple += weight * delay.cdf_le(g);
            break;
        }
        if (weight < 1e-12) break;
        plt += f * weight * delay.cdf_lt(g);
        ple += f * weight * delay.cdf_le(g);
        weight *= 1.0 - f;
    }
    sp.p = alpha * plt;
    sp.q = ple;
    sp.eps = 2.0 * sp.p - 1.0;
    sp.applicable = sp.eps > 0.0;
    return sp;
}

SecurityParams compute_params(const LeaderConfig& leaders, const DelayDistribution& delay) {
    LeaderParams lp = leader_params(leaders);
    return compute_params(lp.f, lp.alpha, delay);
}

double unheard_coefficient(double eps) {
    return 2.0 / (1.0 - std::pow(0.5, eps / 2.0));
}

SettlementBound settlement_bound(const SecurityParams& sp, long long k, int observers) {
    SettlementBound b;
    b.applicable = sp.applicable;
    if (!b.applicable) return b;
    double kf = static_cast<double>(k) * sp.f;
    double e = sp.eps;
    b.p_settlement = std::exp(-kf * e * e * e / 12.0) + 3.0 * std::exp(-kf * e * e / 32.0);
    b.p_unheard = unheard_coefficient(e) * std::exp(-kf * e / 16.0);
    b.total_raw = b.p_settlement + static_cast<double>(observers) * b.p_unheard;
    b.total = clamp01(b.total_raw);
    return b;
}

ChainQualityBound chain_quality_bound(const SecurityParams& sp, double mu, long long k,
                                      int observers) {
    ChainQualityBound b;
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!sp.applicable) return b;  // no honest advantage, no guarantee to price
    if (mu >= sp.eps)
        throw std::domain_error("chain-quality bound requires mu < eps");
    b.applicable = true;
    double kf = static_cast<double>(k) * sp.f;
    double gap = sp.eps - mu;
    b.p_cq = 4.0 * std::exp(-kf * gap * gap / 48.0);
    b.p_unheard_tilde = unheard_coefficient(sp.eps) * std::exp(-kf * gap / 8.0);
    b.total_raw = b.p_cq + static_cast<double>(observers) * b.p_unheard_tilde;
    b.total = clamp01(b.total_raw);
    return b;
}

ExtensiveBounds extensive_bounds(const SecurityParams& sp, long long T, long long k,
                                 int observers, double mu) {
    ExtensiveBounds e;
    SettlementBound s = settlement_bound(sp, k, observers);
    if (s.applicable) {
        e.common_prefix_raw = static_cast<double>(T) * s.total_raw;
        e.common_prefix = clamp01(e.common_prefix_raw);
    }
    if (mu > 0.0 && mu < sp.eps) {
        ChainQualityBound c = chain_quality_bound(sp, mu, k, observers);
        if (c.applicable) {
            e.extensive_cq_raw = static_cast<double>(T) * c.total_raw;
            e.extensive_cq = clamp01(e.extensive_cq_raw);
        }
    }
    return e;
}

BoundsReport full_bounds_report(const SecurityParams& sp, long long k, int observers, double mu,
                                long long T) {
    BoundsReport r;
    r.params = sp;
    r.k = k;
    r.observers = observers;
    r.mu = mu;
    r.T = T;
    r.settlement = settlement_bound(sp, k, observers);
    if (mu > 0.0 && mu < sp.eps) r.cq = chain_quality_bound(sp, mu, k, observers);
    r.extensive = extensive_bounds(sp, T, k, observers, mu);
    return r;
}

DerivationConstants derivation_constants(const SecurityParams& sp, double mu, long long k) {
    DerivationConstants d;
    d.c_settlement = sp.eps / 2.0;
    d.k_prime_settlement =
        static_cast<long long>(std::ceil(3.0 * static_cast<double>(k) * sp.f / 4.0));
    d.gamma = (sp.eps - mu) / 4.0;
    d.cr = (mu + sp.eps) / 2.0;
    d.c_cq = (3.0 * sp.eps + mu) / 4.0;
    d.r = 2.0 * (mu + sp.eps) / (3.0 * sp.eps + mu);
    d.k_prime_cq = static_cast<long long>(std::ceil(d.r * static_cast<double>(k) * sp.f));
    return d;
}

double synchronous_threshold(double f_delta) {
    if (f_delta < 0.0) throw std::invalid_argument("f*Delta must be nonnegative");
    // root of beta = (1-beta)/(1 + (1-beta) f_delta) in (0, 1/2], written so
    // the f_delta -> 0 limit is exact
    double a = 2.0 + f_delta;
    return 2.0 / (a + std::sqrt(a * a - 4.0 * f_delta));
}

double exponential_boundary(double f_eta) {
    if (f_eta < 0.0) throw std::invalid_argument("f*eta must be nonnegative");
    if (f_eta > 1.0) return 0.0;  // empty security region
    return (1.0 - f_eta) / 2.0;
}

std::vector<Figure1Row> figure1_dataset(const std::vector<double>& f_eta_grid) {
    std::vector<Figure1Row> rows;
    rows.reserve(f_eta_grid.size());
    for (double x : f_eta_grid) {
        Figure1Row r;
        r.f_eta = x;
        r.beta_random_exp = exponential_boundary(x);
        r.beta_const_1 = synchronous_threshold(x);
        r.beta_const_4 = synchronous_threshold(4.0 * x);
        r.beta_const_16 = synchronous_threshold(16.0 * x);
        rows.push_back(r);
    }
    return rows;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    std::vector<double> g;
    long long n = static_cast<long long>(std::llround((hi - lo) / step));
    for (long long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "f_eta,beta_random_exp,beta_const_1,beta_const_4,beta_const_16\n";
    for (const auto& r : rows)
        out << r.f_eta << ',' << r.beta_random_exp << ',' << r.beta_const_1 << ','
            << r.beta_const_4 << ',' << r.beta_const_16 << '\n';
    return out.str();
}

double reach_tail_bound(double p, double a) {
    if (!(p > 0.5) || p > 1.0) throw std::invalid_argument("reach tail needs p in (0.5, 1]");
    return std::pow((1.0 - p) / p, a);
}

double walk_excursion_bound(double eps, double c, long long k) {
    if (!(eps > 0.0) || c < 0.0 || c >= eps)
        throw std::invalid_argument("walk bound needs 0 <= c < eps");
    double gap = eps - c;
    return 2.0 * std::exp(-static_cast<double>(k) * gap * gap / 3.0);
}

double walk_zero_excursion_bound(double eps, long long k) {
    if (!(eps > 0.0)) throw std::invalid_argument("walk bound needs eps > 0");
    return std::exp(-static_cast<double>(k) * eps * eps * eps / 3.0);
}

double unheard_tail_bound(double q, double a) {
    if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("unheard tail needs q in (0,1]");
    return std::pow(1.0 - q, a);
}

double unheard_excursion_bound(double q, double B, double c) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("excursion bound needs q in (0,1)");
    if (!(c > 0.0)) throw std::invalid_argument("excursion bound needs c > 0");
    double denom = (1.0 - q) * (1.0 - std::pow(1.0 - q, c));
    return std::exp(-B * q) / denom;
}

}  // namespace lcsim
