#pragma once

// Monte Carlo harness: JSON experiment configs, a seeded trial runner whose
// output is byte-identical for any worker count, violation/bound comparison
// rows, the exhaustive oracle sweep for the reach/margin recursions, and the
// distributional check suite.
//
// Determinism contract: every trial derives its seed from (base seed, trial
// index) alone; workers only fill disjoint per-trial slots; reduction happens
// sequentially in trial order after the pool joins.  No wall-clock values go
// into any CSV.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lcsim/bounds.hpp"
#include "lcsim/fork.hpp"
#include "lcsim/sim.hpp"
#include "lcsim/stats.hpp"

namespace lcsim {

// ---- configuration ----

enum class PolicyKind { kNull, kPrivateChain, kMaxDelayBalance };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from(const std::string& name);

struct ExperimentConfig {
    std::string name = "experiment";
    LeaderConfig leaders;
    DelayDistribution delay = DelayDistribution::constant(0);

    PolicyKind policy = PolicyKind::kNull;
    int anchor_slot = -1;  // private_chain fork point; -1 means "use s"

    int horizon = 0;
    int s = 1;
    std::vector<int> k_grid = {1};
    long long T = 0;    // > 0 turns on the every-base-slot (common prefix) check
    double mu = 0;      // > 0 turns on the chain-quality check
    CqMode cq_mode = CqMode::kSpecial;
    std::vector<int> observers;  // party set the properties quantify over

    long long trials = 1;
    uint64_t seed = 1;
    int workers = 1;

    bool check_settlement = true;
    bool audit_violations = true;  // assert the necessary conditions per violation
    bool validate_forks = false;   // blocktree axioms at the horizon, per trial
    bool emit_unheard = false;     // unheard.csv for trial 0
    int negext_max_renewals = 10000;

    void validate() const;
};

// Parse the structured key-value config (JSON).  Throws std::runtime_error
// with a readable message on any malformed field.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Parse the compact one-token delay form used on command lines:
// "constant:2", "geometric:0.5", "discrete_exponential:3.0",
// "mixture_inf:4:0.01", "table:0.5,0.3,0.2".
DelayDistribution parse_delay_spec(const std::string& spec);

// ---- experiment runner ----

uint64_t trial_seed(uint64_t base_seed, long long trial);

// Runs fn(trial) for every trial on `workers` threads.  fn must only touch
// state owned by its trial index.
void parallel_trials(long long trials, int workers, const std::function<void(long long)>& fn);

struct PropertyRow {
    std::string property;  // settlement | chain_quality | common_prefix
    int k = 0;
    long long trials = 0;
    long long violating_trials = 0;
    long long violating_slots = 0;
    double frequency = 0;
    WilsonInterval interval;
    bool bound_applicable = false;
    double bound_raw = 0;  // analytical upper bound before clamping
    double bound = 0;      // clamped to [0,1]
    bool pass = true;      // one-sided dominance (vacuous when inapplicable)
    long long audit_checked = 0;
    long long audit_contradictions = 0;
};

struct ViolationRecord {
    long long trial = 0;
    uint64_t seed = 0;
    std::string property;
    int k = 0;
    int first_slot = 0;
    long long slots = 0;
};

struct ExperimentReport {
    std::string name;
    SecurityParams params;
    std::vector<PropertyRow> rows;
    std::vector<ViolationRecord> violations;
    long long fork_checks = 0;
    long long fork_failures = 0;
    long long theory_contradictions = 0;
    long long first_contradiction_trial = -1;
    uint64_t first_contradiction_seed = 0;
    bool statistical_pass = true;  // all bound rows dominate

    bool pass() const {
        return statistical_pass && theory_contradictions == 0 && fork_failures == 0;
    }
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::string report_csv(const ExperimentReport& report);
std::string violations_csv(const ExperimentReport& report);

// Per-slot unheard diagnostics for one trace: trial,slot,party,latest_heard,unheard.
std::string unheard_csv(const ExecutionTrace& trace, const std::vector<int>& parties,
                        long long trial);

// Line-oriented deterministic trace export: per-slot election, block, message
// and tip-change records, then the final characteristic string.
std::string trace_export(const ExecutionTrace& trace);

// ---- exhaustive oracle sweep ----

struct OracleMismatch {
    std::string w;
    int s = 0;
    std::string kind;  // reach | margin | balanced
    long long recursion_value = 0;
    long long oracle_value = 0;
};

struct OracleReport {
    long long strings = 0;
    long long comparisons = 0;
    long long forks_enumerated = 0;
    std::vector<OracleMismatch> mismatches;
    bool pass() const { return mismatches.empty(); }
};

// Sweeps every string over {., 0, 1} with at most max_nonbot symbols from
// {0,1} and at most max_bot '.' symbols, comparing the reach/margin
// recursions against per-fork maxima over all closed forks, for every
// s in 1..|w|+1.  Optionally cross-checks the balanced-fork predicate for
// strings up to balanced_max_len symbols.
OracleReport run_oracle_suite(int max_nonbot, int max_bot, bool include_balanced,
                              int balanced_max_len, DisjointRule rule = DisjointRule::kGeq);

// Golden CSV (w,s,reach,margin) for every swept string.
std::string oracle_csv(int max_nonbot, int max_bot, DisjointRule rule = DisjointRule::kGeq);

// ---- distributional checks ----

// Fixed-seed Monte Carlo verification of the renewal label law, the
// compressed-string Bernoulli bound, the unheard tail and excursion bounds,
// the stationary reach tail, and the biased-walk excursion bounds.  `scale`
// multiplies every sample count (1.0 = the acceptance-grade sizes).
std::vector<CheckResult> statistical_suite(uint64_t seed, int workers, double scale = 1.0);

std::string checks_csv(const std::vector<CheckResult>& checks);

}  // namespace lcsim
