// Acceptance gate.  Seven end-to-end criteria, one [PASS]/[FAIL] line each,
// exit status 0 only when every line passes.  Each criterion carries its own
// wall-clock budget; blowing the budget fails the line even if the numbers
// come out right.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lcsim/bounds.hpp"
#include "lcsim/experiment.hpp"
#include "lcsim/sim.hpp"

using namespace lcsim;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        ok = false;
        detail += detail.empty() ? "" : "; ";
        detail += "over budget of " + std::to_string(budget_seconds) + "s";
    }
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

LeaderConfig iid_law(int population, std::vector<JointLawEntry> entries) {
    LeaderConfig cfg;
    cfg.model = LeaderModel::kIid;
    cfg.population = population;
    cfg.joint_law = std::move(entries);
    return cfg;
}

// The trace family the fork-validity and violation-sweep criteria run on:
// five parties, geometric(0.4) delays, a law with double elections and a
// mild adversary.
ExperimentConfig sweep_base() {
    ExperimentConfig cfg;
    cfg.leaders =
        iid_law(5, {{1, false, 0.10}, {0, true, 0.14}, {2, false, 0.01}, {0, false, 0.75}});
    cfg.delay = DelayDistribution::geometric(0.4);
    cfg.horizon = 400;
    cfg.s = 40;
    cfg.k_grid = {20};
    cfg.observers = {0, 1, 2, 3, 4};
    cfg.workers = 1;
    return cfg;
}

}  // namespace

int main() {
    // 1. The reach/margin recursions agree with the exhaustive fork oracle on
    //    every string with at most 6 leader symbols and 2 empty slots, for
    //    every base slot, and the balanced-fork predicate matches brute force.
    criterion(1, "recursions match the exhaustive fork oracle", 900.0, [](std::string& detail) {
        OracleReport r = run_oracle_suite(6, 2, true, 4, DisjointRule::kGeq);
        std::ostringstream out;
        out << "strings=" << r.strings << " comparisons=" << r.comparisons
            << " forks=" << r.forks_enumerated << " mismatches=" << r.mismatches.size();
        detail = out.str();
        return r.pass() && r.strings == 3711;
    });

    // 2. Every execution yields a legal fork of its characteristic string:
    //    100 seeds x horizon 2000 x each adversary policy, all five axioms.
    criterion(2, "simulated blocktrees satisfy the fork axioms", 300.0, [](std::string& detail) {
        ExperimentConfig base = sweep_base();
        SimConfig sim;
        sim.leaders = base.leaders;
        sim.delay = base.delay;
        sim.horizon = 2000;
        long long checked = 0, failed = 0;
        for (int which = 0; which < 3; ++which) {
            for (long long trial = 0; trial < 100; ++trial) {
                NullPolicy null_pol;
                PrivateChainPolicy priv(40, 20, 10, base.observers);
                MaxDelayBalancePolicy bal(base.observers);
                AdversaryPolicy* pol =
                    which == 0 ? static_cast<AdversaryPolicy*>(&null_pol)
                               : which == 1 ? static_cast<AdversaryPolicy*>(&priv)
                                            : static_cast<AdversaryPolicy*>(&bal);
                ExecutionTrace t = run_execution(sim, *pol, trial_seed(5, trial));
                ForkCheck fc = validate_trace_fork(t, sim.horizon);
                ++checked;
                if (!fc.ok) {
                    ++failed;
                    if (detail.empty()) detail = "first failure: axiom " + std::to_string(fc.axiom) +
                                                 " (" + fc.detail + ")";
                }
            }
        }
        if (detail.empty())
            detail = "executions=" + std::to_string(checked) + " failures=" + std::to_string(failed);
        return failed == 0 && checked == 300;
    });

    // 3. A violation sweep that actually produces violations: every one of
    //    them satisfies the margin / advantage necessary conditions exactly.
    criterion(3, "every observed violation passes the necessity audit", 600.0,
              [](std::string& detail) {
                  ExperimentConfig priv = sweep_base();
                  priv.name = "c3_private";
                  priv.policy = PolicyKind::kPrivateChain;
                  priv.anchor_slot = 20;  // fork below the base slot: genuine rewrites
                  priv.trials = 200;
                  priv.seed = 11;

                  ExperimentConfig bal = sweep_base();
                  bal.name = "c3_balance";
                  bal.leaders = iid_law(
                      5, {{1, false, 0.08}, {0, true, 0.15}, {2, false, 0.02}, {0, false, 0.75}});
                  bal.policy = PolicyKind::kMaxDelayBalance;
                  bal.mu = 0.25;
                  bal.trials = 100;
                  bal.seed = 12;

                  ExperimentReport a = run_experiment(priv);
                  ExperimentReport b = run_experiment(bal);

                  long long settle_trials = 0, cq_trials = 0, audited = 0, slots = 0;
                  long long contradictions = a.theory_contradictions + b.theory_contradictions;
                  for (const auto& rep : {a, b})
                      for (const auto& row : rep.rows) {
                          if (row.property == "settlement") settle_trials += row.violating_trials;
                          if (row.property == "chain_quality") cq_trials += row.violating_trials;
                          audited += row.audit_checked;
                          slots += row.violating_slots;
                          contradictions += row.audit_contradictions;
                      }
                  std::ostringstream out;
                  out << "settlement_trials=" << settle_trials << " cq_trials=" << cq_trials
                      << " violating_slots=" << slots << " audited=" << audited
                      << " contradictions=" << contradictions;
                  detail = out.str();
                  return settle_trials >= 50 && cq_trials >= 50 && audited == slots &&
                         audited > 0 && contradictions == 0;
              });

    // 4. Monte Carlo at an analytically meaningful operating point: the
    //    settlement bound is tuned to ~0.2 and the observed violation
    //    frequency must sit below it (one-sided, 3 standard errors).  The
    //    chain-quality bound at mu = eps/2 clamps to 1 here, so that row can
    //    only pass vacuously; it is still run and audited.
    criterion(4, "violation frequencies respect the analytical bounds", 1800.0,
              [](std::string& detail) {
                  SecurityParams sp = compute_params(0.05, 0.95, DelayDistribution::geometric(0.5));
                  if (!sp.applicable) {
                      detail = "operating point unexpectedly inapplicable";
                      return false;
                  }
                  long long kstar = -1;
                  for (long long k = 10; k <= 100000; k += 10)
                      if (settlement_bound(sp, k, 5).total <= 0.2) {
                          kstar = k;
                          break;
                      }
                  SettlementBound tuned = settlement_bound(sp, kstar, 5);
                  if (kstar != 2830 || tuned.total < 0.19 || tuned.total > 0.2) {
                      detail = "k tuning drifted: k=" + std::to_string(kstar) +
                               " bound=" + std::to_string(tuned.total);
                      return false;
                  }

                  ExperimentConfig cfg;
                  cfg.leaders =
                      iid_law(5, {{1, false, 0.0475}, {0, true, 0.0025}, {0, false, 0.95}});
                  cfg.delay = DelayDistribution::geometric(0.5);
                  cfg.s = 200;
                  cfg.k_grid = {static_cast<int>(kstar)};
                  cfg.horizon = 200 + 10 * static_cast<int>(kstar);
                  cfg.mu = sp.eps / 2.0;
                  cfg.observers = {0, 1, 2, 3, 4};
                  cfg.trials = 10000;
                  cfg.workers = 1;
                  cfg.seed = 20260822;

                  std::ostringstream out;
                  out << "k=" << kstar << " bound=" << tuned.total;
                  bool ok = true;
                  for (PolicyKind kind : {PolicyKind::kPrivateChain, PolicyKind::kMaxDelayBalance}) {
                      cfg.policy = kind;
                      cfg.name = "c4_" + to_string(kind);
                      ExperimentReport rep = run_experiment(cfg);
                      ok = ok && rep.pass();
                      for (const auto& row : rep.rows) {
                          out << " " << to_string(kind) << "/" << row.property << "="
                              << row.frequency << (row.pass ? "" : "(FAIL)");
                          ok = ok && row.pass;
                          if (row.property == "settlement")
                              ok = ok && row.bound > 0.19 && row.bound <= 0.2;
                          if (row.property == "chain_quality") ok = ok && row.bound == 1.0;
                      }
                  }
                  detail = out.str();
                  return ok;
              });

    // 5. Distributional self-checks at full scale: election law, delay law,
    //    refresh law, special-rate p and q, negative extension, at >= 1e5
    //    samples each, all within 3 standard errors.
    criterion(5, "statistical suite at full scale", 1200.0, [](std::string& detail) {
        std::vector<CheckResult> checks = statistical_suite(20260822, 1, 1.0);
        long long failed = 0;
        for (const CheckResult& c : checks)
            if (!c.pass) {
                ++failed;
                if (detail.empty()) detail = "first failure: " + c.name + " (" + c.detail + ")";
            }
        if (detail.empty()) detail = "checks=" + std::to_string(checks.size());
        return failed == 0 && !checks.empty();
    });

    // 6. The security-boundary dataset: exact endpoints and monotone decay
    //    of every constant-delay curve in both the slot rate and the delay.
    criterion(6, "security boundary curves have exact endpoints and decay", 10.0,
              [](std::string& detail) {
                  std::vector<Figure1Row> rows = figure1_dataset(uniform_grid(0.0, 1.0, 0.01));
                  if (rows.size() != 101) {
                      detail = "grid size " + std::to_string(rows.size());
                      return false;
                  }
                  bool ok = rows.front().beta_random_exp == 0.5 && rows.back().beta_random_exp == 0.0;
                  ok = ok && synchronous_threshold(0.0) == 0.5;
                  ok = ok && std::fabs(synchronous_threshold(1.0) - (3.0 - std::sqrt(5.0)) / 2.0) <=
                                 1e-9;
                  for (size_t i = 1; i < rows.size() && ok; ++i) {
                      ok = rows[i].beta_const_1 < rows[i - 1].beta_const_1 &&
                           rows[i].beta_const_4 < rows[i - 1].beta_const_4 &&
                           rows[i].beta_const_16 < rows[i - 1].beta_const_16;
                  }
                  for (const Figure1Row& r : rows)
                      ok = ok && (r.f_eta == 0.0 ||
                                  (r.beta_const_4 < r.beta_const_1 && r.beta_const_16 < r.beta_const_4));
                  detail = "rows=101";
                  return ok;
              });

    // 7. Replay determinism: the same experiment on 1 worker and on 4 workers
    //    emits byte-identical reports and violation logs.
    criterion(7, "reports replay byte-identically across worker counts", 120.0,
              [](std::string& detail) {
                  ExperimentConfig cfg = sweep_base();
                  cfg.name = "c7_replay";
                  cfg.policy = PolicyKind::kMaxDelayBalance;
                  cfg.mu = 0.25;
                  cfg.T = 60;
                  cfg.trials = 40;
                  cfg.seed = 77;
                  cfg.validate_forks = true;

                  cfg.workers = 1;
                  ExperimentReport one = run_experiment(cfg);
                  cfg.workers = 4;
                  ExperimentReport four = run_experiment(cfg);

                  bool ok = report_csv(one) == report_csv(four) &&
                            violations_csv(one) == violations_csv(four);
                  detail = ok ? "rows=" + std::to_string(one.rows.size()) +
                                    " violations=" + std::to_string(one.violations.size())
                              : "worker count changed the output";
                  return ok;
              });

    if (g_failures == 0) {
        std::printf("acceptance: all 7 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
