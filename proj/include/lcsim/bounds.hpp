#pragma once

// Closed-form security arithmetic.
//
// From the leader-election parameters (f, alpha) and the delay distribution
// we derive p = alpha * P(Delta < G) and q = P(Delta <= G), where G is the
// geometric renewal gap on {1,2,...} with P(G=g) = f(1-f)^{g-1}.  With
// p = (1+eps)/2 and eps > 0, the failure probabilities of settlement and
// chain quality admit explicit exponential bounds; this module evaluates
// them exactly as stated, keeping raw values (which may exceed 1) alongside
// presentation-clamped ones.

#include <string>
#include <vector>

#include "lcsim/delay.hpp"
#include "lcsim/leaders.hpp"

namespace lcsim {

struct SecurityParams {
    double f = 0;
    double alpha = 0;
    double p = 0;    // alpha * P(Delta < G)
    double q = 0;    // P(Delta <= G)
    double eps = 0;  // p = (1 + eps)/2
    bool applicable = false;  // eps > 0: the bounds below mean something
};

// p and q by summing the geometric gap law against the delay cdf; the series
// is truncated once the geometric tail drops below 1e-12 (closed exactly when
// the delay has finite support).
SecurityParams compute_params(double f, double alpha, const DelayDistribution& delay);
SecurityParams compute_params(const LeaderConfig& leaders, const DelayDistribution& delay);

// 2 / (1 - 2^{-eps/2}): multiplier of every per-observer unheard term.
double unheard_coefficient(double eps);

struct SettlementBound {
    double p_settlement = 0;  // exp(-kf eps^3/12) + 3 exp(-kf eps^2/32)
    double p_unheard = 0;     // coeff * exp(-kf eps/16), per observed party
    double total_raw = 0;     // p_settlement + observers * p_unheard
    double total = 0;         // clamped to [0, 1]
    bool applicable = false;
};
SettlementBound settlement_bound(const SecurityParams& sp, long long k, int observers);

struct ChainQualityBound {
    double p_cq = 0;            // 4 exp(-kf (eps-mu)^2/48)
    double p_unheard_tilde = 0; // coeff * exp(-kf (eps-mu)/8), per observed party
    double total_raw = 0;
    double total = 0;
    bool applicable = false;    // requires 0 < mu < eps
};
ChainQualityBound chain_quality_bound(const SecurityParams& sp, double mu, long long k,
                                      int observers);

// Extensive variants: every base slot s <= T, by union bound.
struct ExtensiveBounds {
    double common_prefix_raw = 0, common_prefix = 0;
    double extensive_cq_raw = 0, extensive_cq = 0;
};
ExtensiveBounds extensive_bounds(const SecurityParams& sp, long long T, long long k,
                                 int observers, double mu);

// Everything above in one report, for CSV emission.
struct BoundsReport {
    SecurityParams params;
    long long k = 0;
    int observers = 0;
    double mu = 0;
    long long T = 1;
    SettlementBound settlement;
    ChainQualityBound cq;
    ExtensiveBounds extensive;
};
BoundsReport full_bounds_report(const SecurityParams& sp, long long k, int observers, double mu,
                                long long T);

// Internal constants of the two bound derivations, exposed read-only so the
// statistical harness can exercise each step at the exact operating point.
struct DerivationConstants {
    // settlement path
    double c_settlement = 0;          // eps/2
    long long k_prime_settlement = 0; // ceil(3 k f / 4)
    // chain-quality path: mu < mu+gamma < c*r < c < eps (arithmetic steps of gamma)
    double gamma = 0;  // (eps - mu)/4
    double cr = 0;     // (mu + eps)/2
    double c_cq = 0;   // (3 eps + mu)/4
    double r = 0;      // 2(mu + eps)/(3 eps + mu)
    long long k_prime_cq = 0;  // ceil(r k f)
};
DerivationConstants derivation_constants(const SecurityParams& sp, double mu, long long k);

// Largest adversarial fraction beta solving beta = (1-beta)/(1 + (1-beta) fD)
// for synchronous (constant) delay D, as a function of the product fD.
// Evaluated in the cancellation-free form 2 / ((2+fD) + sqrt((2+fD)^2 - 4 fD)).
double synchronous_threshold(double f_delta);

// Honest-majority boundary (1 - f eta)/2 for the mean-eta random exponential
// delay; past f*eta = 1 the security region is empty.
double exponential_boundary(double f_eta);

struct Figure1Row {
    double f_eta = 0;
    double beta_random_exp = 0;  // exponential_boundary(f_eta)
    double beta_const_1 = 0;     // synchronous_threshold(1 * f_eta)
    double beta_const_4 = 0;     // synchronous_threshold(4 * f_eta)
    double beta_const_16 = 0;    // synchronous_threshold(16 * f_eta)
};
std::vector<Figure1Row> figure1_dataset(const std::vector<double>& f_eta_grid);
std::vector<double> uniform_grid(double lo, double hi, double step);
std::string figure1_csv(const std::vector<Figure1Row>& rows);

// Stationary reach tail: P(Reach >= a) <= ((1-p)/p)^a.
double reach_tail_bound(double p, double a);

// Biased +-1 walk with drift -eps: P(exists j >= k with W[j] >= -cj)
// <= 2 exp(-k (eps - c)^2 / 3), for 0 <= c < eps.
double walk_excursion_bound(double eps, double c, long long k);

// Same walk, excursion above zero forever: exp(-k eps^3 / 3).
double walk_zero_excursion_bound(double eps, long long k);

// Unheard tail P(Unheard[i] >= a) <= (1-q)^a and the renewal-excursion bound
// [1/((1-q)(1-(1-q)^c))] * exp(-B q).
double unheard_tail_bound(double q, double a);
double unheard_excursion_bound(double q, double B, double c);

}  // namespace lcsim
