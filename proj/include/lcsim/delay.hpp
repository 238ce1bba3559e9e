#pragma once

// Message delay distributions on {0, 1, 2, ...} with optional mass at
// "never delivered", their failure-rate view, and the stream-backed sampler
// that supports refreshed residuals.
//
// A delay X is drawn from its failure rates r[i] = P(X = i) / P(X >= i) as
//     X = min{ i >= 0 : U[i] <= r[i] }
// against a replayable uniform stream U.  Re-running the same rule with the
// stream shifted by d slots,
//     refresh_d = min{ i >= 0 : U[i + d] <= r[i] },
// yields a fresh copy of X that (a) has the exact original law, (b) depends
// only on U[d], U[d+1], ... and is therefore independent of min(X, d), and
// (c) when the failure rates are non-decreasing satisfies X <= d + refresh_d
// pointwise.  Those three facts are what the stationary special-slot
// construction leans on.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsim/rng.hpp"

namespace lcsim {

// Sentinel for "never delivered" (mass at infinity).
inline constexpr int kNever = std::numeric_limits<int>::max();

class DelayDistribution {
  public:
    enum class Kind { kConstant, kGeometric, kTable, kMixtureInf };

    // Delta == d with probability 1.
    static DelayDistribution constant(int d) {
        if (d < 0) throw std::invalid_argument("constant delay must be >= 0");
        DelayDistribution out;
        out.kind_ = Kind::kConstant;
        out.pmf_.assign(static_cast<size_t>(d) + 1, 0.0);
        out.pmf_.back() = 1.0;
        out.finish_table();
        return out;
    }

    // P(Delta = d) = q0 (1-q0)^d on {0, 1, ...}.
    static DelayDistribution geometric(double q0) {
        if (!(q0 > 0.0 && q0 <= 1.0)) throw std::invalid_argument("geometric q0 must be in (0, 1]");
        DelayDistribution out;
        out.kind_ = Kind::kGeometric;
        out.q0_ = q0;
        return out;
    }

    // Exponential with the given mean, discretized to whole slots:
    // P(Delta = d) = P(d <= X < d+1) for X ~ Exp(1/mean), which is geometric
    // with q0 = 1 - exp(-1/mean).
    static DelayDistribution discrete_exponential(double mean) {
        if (!(mean > 0.0)) throw std::invalid_argument("exponential mean must be > 0");
        return geometric(-std::expm1(-1.0 / mean));
    }

    // Explicit finite pmf starting at delay 0; must sum to 1 (tolerance 1e-9),
    // then is renormalized exactly.
    static DelayDistribution table(std::vector<double> pmf) {
        DelayDistribution out;
        out.kind_ = Kind::kTable;
        out.pmf_ = std::move(pmf);
        double sum = 0.0;
        for (double p : out.pmf_) {
            if (p < 0.0) throw std::invalid_argument("pmf entries must be >= 0");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("pmf must sum to 1");
        for (double& p : out.pmf_) p /= sum;
        out.finish_table();
        return out;
    }

    // Delta == d with probability 1 - miss, never delivered with probability
    // miss.  Only valid in the one-time leader model.
    static DelayDistribution mixture_inf(int d, double miss) {
        if (d < 0) throw std::invalid_argument("mixture delay must be >= 0");
        if (!(miss >= 0.0 && miss < 1.0)) throw std::invalid_argument("miss mass must be in [0, 1)");
        DelayDistribution out;
        out.kind_ = Kind::kMixtureInf;
        out.pmf_.assign(static_cast<size_t>(d) + 1, 0.0);
        out.pmf_.back() = 1.0 - miss;
        out.mass_inf_ = miss;
        out.finish_table();
        return out;
    }

    Kind kind() const { return kind_; }
    double mass_at_infinity() const { return mass_inf_; }

    double pmf(int d) const {
        if (d < 0) return 0.0;
        if (kind_ == Kind::kGeometric) return q0_ * std::pow(1.0 - q0_, d);
        return d < static_cast<int>(pmf_.size()) ? pmf_[static_cast<size_t>(d)] : 0.0;
    }

    // P(Delta >= d), counting the never-delivered mass.
    double tail(int d) const {
        if (d <= 0) return 1.0;
        if (kind_ == Kind::kGeometric) return std::pow(1.0 - q0_, d);
        if (d >= static_cast<int>(tail_.size())) return mass_inf_;
        return tail_[static_cast<size_t>(d)];
    }

    // P(Delta < d) / P(Delta <= d); never-delivered mass counts as "not less".
    double cdf_lt(int d) const { return 1.0 - tail(d); }
    double cdf_le(int d) const { return 1.0 - tail(d + 1); }

    // r[i] = P(X = i) / P(X >= i); 1 by convention once the tail is empty.
    double failure_rate(int i) const {
        if (kind_ == Kind::kGeometric) return q0_;
        double t = tail(i);
        if (t <= 0.0) return 1.0;
        return pmf(i) / t;
    }

    // Last delay with positive finite mass; -1 means unbounded support.
    int finite_support_end() const {
        return kind_ == Kind::kGeometric ? -1 : static_cast<int>(pmf_.size()) - 1;
    }

    // Required by the i.i.d. leader model (it makes refreshed residuals only
    // ever shorten a delay).  Geometric rates are constant; table rates are
    // checked over the support.
    bool non_decreasing_failure_rate() const {
        if (mass_inf_ > 0.0) return false;  // rates fall to 0 past the support
        if (kind_ == Kind::kGeometric) return true;
        double prev = 0.0;
        for (int i = 0; i <= finite_support_end(); ++i) {
            double r = failure_rate(i);
            if (r < prev - 1e-12) return false;
            prev = r;
        }
        return true;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::kConstant: return "constant(" + std::to_string(finite_support_end()) + ")";
            case Kind::kGeometric: return "geometric(q0=" + std::to_string(q0_) + ")";
            case Kind::kTable: return "table(n=" + std::to_string(pmf_.size()) + ")";
            case Kind::kMixtureInf:
                return "mixture_inf(d=" + std::to_string(finite_support_end()) +
                       ", miss=" + std::to_string(mass_inf_) + ")";
        }
        return "?";
    }

  private:
    void finish_table() {
        // Suffix sums: tail_[d] = sum_{j >= d} pmf[j] + mass_inf_.
        tail_.assign(pmf_.size() + 1, 0.0);
        tail_.back() = mass_inf_;
        for (size_t d = pmf_.size(); d-- > 0;) tail_[d] = tail_[d + 1] + pmf_[d];
    }

    Kind kind_ = Kind::kConstant;
    double q0_ = 0.0;        // geometric only
    std::vector<double> pmf_;  // table kinds only
    std::vector<double> tail_;
    double mass_inf_ = 0.0;
};

// A delay variable bound to its uniform stream.  sample() realizes it;
// refreshed(d) realizes the residual re-draw that consumes U[d], U[d+1], ...
class DelaySampler {
  public:
    DelaySampler(const DelayDistribution& dist, UniformStream stream)
        : dist_(&dist), u_(stream) {}

    int sample() const { return refreshed(0); }

    int refreshed(int elapsed) const {
        const int support_end = dist_->finite_support_end();
        // Past a finite support only the never-delivered mass remains.
        const int cap = support_end >= 0 ? support_end : (1 << 22);
        for (int i = 0; i <= cap; ++i) {
            if (u_[static_cast<uint64_t>(i + elapsed)] <= dist_->failure_rate(i)) return i;
        }
        if (support_end >= 0) return kNever;
        throw std::runtime_error("delay sampling did not terminate");
    }

  private:
    const DelayDistribution* dist_;
    UniformStream u_;
};

}  // namespace lcsim
