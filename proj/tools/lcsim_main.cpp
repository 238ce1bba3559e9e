// Command-line front end: seeded Monte Carlo experiments, closed-form bound
// tables, the exhaustive small-string oracle sweep, the distributional check
// suite, and single-trial replays with full trace dumps.
//
// Exit codes: 0 all checks pass, 1 a statistical comparison failed, 2 a
// theory assertion was contradicted (audit, fork axiom, oracle mismatch),
// 3 configuration or I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcsim/bounds.hpp"
#include "lcsim/experiment.hpp"
#include "lcsim/sim.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitContradiction = 2;
constexpr int kExitConfig = 3;

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("short write on '" + path.string() + "'");
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

int cmd_simulate(const std::string& config_path, uint64_t* seed, long long* trials, int* workers,
                 const std::string& out_dir) {
    lcsim::ExperimentConfig cfg = lcsim::load_experiment_config(config_path);
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (workers) cfg.workers = *workers;
    cfg.validate();

    lcsim::ExperimentReport report = lcsim::run_experiment(cfg);
    std::cout << "experiment " << report.name << ": trials=" << cfg.trials
              << " workers=" << cfg.workers << " seed=" << cfg.seed << '\n';
    std::cout << "params f=" << fmt(report.params.f) << " alpha=" << fmt(report.params.alpha)
              << " p=" << fmt(report.params.p) << " q=" << fmt(report.params.q)
              << " eps=" << fmt(report.params.eps)
              << (report.params.applicable ? "" : " (bounds not applicable)") << '\n';
    for (const lcsim::PropertyRow& r : report.rows) {
        std::cout << r.property << " k=" << r.k << ": " << r.violating_trials << '/' << r.trials
                  << " violating (freq " << fmt(r.frequency) << ")";
        if (r.bound_applicable)
            std::cout << " bound " << fmt(r.bound) << (r.pass ? " PASS" : " FAIL");
        if (r.audit_checked)
            std::cout << " audits " << r.audit_checked << " contradictions "
                      << r.audit_contradictions;
        std::cout << '\n';
    }
    if (report.fork_checks)
        std::cout << "fork validations " << report.fork_checks << " failures "
                  << report.fork_failures << '\n';
    if (!out_dir.empty()) {
        write_file(out_dir, "report.csv", lcsim::report_csv(report));
        write_file(out_dir, "violations.csv", lcsim::violations_csv(report));
        if (cfg.emit_unheard) {
            // per-slot unheard series are bulky; emit them for trial 0 only
            lcsim::SimConfig sim{cfg.leaders, cfg.delay, cfg.horizon, cfg.negext_max_renewals};
            lcsim::NullPolicy null_policy;
            lcsim::ExecutionTrace trace =
                lcsim::run_execution(sim, null_policy, lcsim::trial_seed(cfg.seed, 0));
            write_file(out_dir, "unheard.csv", lcsim::unheard_csv(trace, cfg.observers, 0));
        }
    }
    if (report.theory_contradictions > 0 || report.fork_failures > 0) {
        std::cout << "CONTRADICTION: first at trial " << report.first_contradiction_trial
                  << " seed " << report.first_contradiction_seed << '\n';
        return kExitContradiction;
    }
    if (!report.statistical_pass) {
        std::cout << "FAIL: empirical frequency exceeded an applicable bound\n";
        return kExitStatFail;
    }
    std::cout << "PASS\n";
    return kExitPass;
}

int cmd_bounds(const std::string& config_path, double f, double alpha,
               const std::string& delay_spec, long long k, double mu, long long T, int observers,
               const std::string& out_dir) {
    lcsim::SecurityParams sp;
    if (!config_path.empty()) {
        lcsim::ExperimentConfig cfg = lcsim::load_experiment_config(config_path);
        sp = lcsim::compute_params(cfg.leaders, cfg.delay);
        if (k <= 0) k = cfg.k_grid.front();
        if (mu < 0) mu = cfg.mu;
        if (T < 0) T = cfg.T;
        if (observers < 0) observers = static_cast<int>(cfg.observers.size());
    } else {
        if (f <= 0 || alpha <= 0 || delay_spec.empty())
            throw std::runtime_error("bounds needs either --config or --f/--alpha/--delay");
        sp = lcsim::compute_params(f, alpha, lcsim::parse_delay_spec(delay_spec));
    }
    if (k <= 0) throw std::runtime_error("bounds needs --k >= 1");
    if (mu < 0) mu = 0;
    if (T < 0) T = 0;
    if (observers < 0) observers = 1;

    lcsim::BoundsReport r = lcsim::full_bounds_report(sp, k, observers, mu, T);
    std::cout << "f=" << fmt(sp.f) << " alpha=" << fmt(sp.alpha) << " p=" << fmt(sp.p)
              << " q=" << fmt(sp.q) << " eps=" << fmt(sp.eps)
              << (sp.applicable ? "" : " (not applicable: eps <= 0)") << '\n';
    std::cout << "settlement k=" << k << " observers=" << observers << ": raw "
              << fmt(r.settlement.total_raw) << " clamped " << fmt(r.settlement.total) << '\n';
    if (r.cq.applicable)
        std::cout << "chain_quality mu=" << fmt(mu) << ": raw " << fmt(r.cq.total_raw)
                  << " clamped " << fmt(r.cq.total) << '\n';
    if (T > 0)
        std::cout << "extensive T=" << T << ": common_prefix " << fmt(r.extensive.common_prefix)
                  << " chain_quality " << fmt(r.extensive.extensive_cq) << '\n';
    if (!out_dir.empty()) {
        std::ostringstream csv;
        csv << "f,alpha,p,q,eps,applicable,k,observers,mu,T,"
               "p_settlement,p_unheard,settlement_raw,settlement,"
               "p_cq,p_unheard_tilde,cq_applicable,cq_raw,cq,"
               "common_prefix_raw,common_prefix,extensive_cq_raw,extensive_cq\n";
        csv << fmt(sp.f) << ',' << fmt(sp.alpha) << ',' << fmt(sp.p) << ',' << fmt(sp.q) << ','
            << fmt(sp.eps) << ',' << (sp.applicable ? 1 : 0) << ',' << k << ',' << observers
            << ',' << fmt(mu) << ',' << T << ',' << fmt(r.settlement.p_settlement) << ','
            << fmt(r.settlement.p_unheard) << ',' << fmt(r.settlement.total_raw) << ','
            << fmt(r.settlement.total) << ',' << fmt(r.cq.p_cq) << ','
            << fmt(r.cq.p_unheard_tilde) << ',' << (r.cq.applicable ? 1 : 0) << ','
            << fmt(r.cq.total_raw) << ',' << fmt(r.cq.total) << ','
            << fmt(r.extensive.common_prefix_raw) << ',' << fmt(r.extensive.common_prefix) << ','
            << fmt(r.extensive.extensive_cq_raw) << ',' << fmt(r.extensive.extensive_cq) << '\n';
        write_file(out_dir, "bounds.csv", csv.str());
    }
    return kExitPass;
}

int cmd_figure1(double lo, double hi, double step, const std::string& out_dir) {
    std::string csv = lcsim::figure1_csv(lcsim::figure1_dataset(lcsim::uniform_grid(lo, hi, step)));
    if (out_dir.empty())
        std::cout << csv;
    else
        write_file(out_dir, "figure1.csv", csv);
    return kExitPass;
}

int cmd_oracle(int max_nonbot, int max_bot, int balanced_max_len, const std::string& rule_name,
               const std::string& out_dir) {
    lcsim::DisjointRule rule;
    if (rule_name == "geq")
        rule = lcsim::DisjointRule::kGeq;
    else if (rule_name == "gt")
        rule = lcsim::DisjointRule::kGt;
    else
        throw std::runtime_error("--rule must be 'geq' or 'gt'");
    lcsim::OracleReport rep = lcsim::run_oracle_suite(max_nonbot, max_bot, balanced_max_len > 0,
                                                      balanced_max_len, rule);
    std::cout << "oracle sweep: " << rep.strings << " strings, " << rep.forks_enumerated
              << " closed forks, " << rep.comparisons << " comparisons, "
              << rep.mismatches.size() << " mismatches\n";
    for (const lcsim::OracleMismatch& m : rep.mismatches)
        std::cout << "MISMATCH w=" << (m.w.empty() ? "(empty)" : m.w) << " s=" << m.s << " "
                  << m.kind << ": recursion " << m.recursion_value << " oracle "
                  << m.oracle_value << '\n';
    if (!out_dir.empty())
        write_file(out_dir, "oracle.csv", lcsim::oracle_csv(max_nonbot, max_bot, rule));
    return rep.pass() ? kExitPass : kExitContradiction;
}

int cmd_stats(uint64_t seed, int workers, double scale, const std::string& out_dir) {
    std::vector<lcsim::CheckResult> checks = lcsim::statistical_suite(seed, workers, scale);
    bool ok = true;
    for (const lcsim::CheckResult& c : checks) {
        std::cout << (c.pass ? "pass " : "FAIL ") << c.name << ": statistic "
                  << fmt(c.statistic) << " reference " << fmt(c.reference) << " z=" << fmt(c.z)
                  << " (" << c.detail << ")\n";
        ok = ok && c.pass;
    }
    if (!out_dir.empty()) write_file(out_dir, "checks.csv", lcsim::checks_csv(checks));
    std::cout << (ok ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
    return ok ? kExitPass : kExitStatFail;
}

int cmd_replay(const std::string& config_path, uint64_t* seed, long long trial,
               const std::string& out_dir) {
    lcsim::ExperimentConfig cfg = lcsim::load_experiment_config(config_path);
    if (seed) cfg.seed = *seed;
    uint64_t tseed = lcsim::trial_seed(cfg.seed, trial);
    lcsim::SimConfig sim{cfg.leaders, cfg.delay, cfg.horizon, cfg.negext_max_renewals};

    // rebuild exactly the trace the experiment ran for this trial index
    int k = cfg.k_grid.front();
    std::unique_ptr<lcsim::AdversaryPolicy> policy;
    switch (cfg.policy) {
        case lcsim::PolicyKind::kNull: policy = std::make_unique<lcsim::NullPolicy>(); break;
        case lcsim::PolicyKind::kPrivateChain:
            policy = std::make_unique<lcsim::PrivateChainPolicy>(
                cfg.s, k, cfg.anchor_slot >= 0 ? cfg.anchor_slot : cfg.s, cfg.observers);
            break;
        case lcsim::PolicyKind::kMaxDelayBalance:
            policy = std::make_unique<lcsim::MaxDelayBalancePolicy>(cfg.observers);
            break;
    }
    lcsim::ExecutionTrace trace = lcsim::run_execution(sim, *policy, tseed);
    std::cout << "replayed trial " << trial << " seed " << tseed << ": "
              << trace.blocks.size() << " blocks, " << trace.messages.size() << " messages, "
              << trace.chars.special_slots.size() << " specials\n";
    std::string dir = out_dir.empty() ? std::string(".") : out_dir;
    write_file(dir, "trace.txt", lcsim::trace_export(trace));
    if (cfg.emit_unheard)
        write_file(dir, "unheard.csv", lcsim::unheard_csv(trace, cfg.observers, trial));
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"longest-chain protocol simulator and bound checker"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    uint64_t seed = 0;
    bool seed_set = false;
    long long trials = 0;
    int workers = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", config_path, "experiment config (JSON)");
        if (needs_config) copt->required();
        sub->add_option("--seed", seed, "base seed override")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--out", out_dir, "output directory for CSV/trace files");
        return sub;
    };

    CLI::App* sim = add_common(app.add_subcommand("simulate", "run a Monte Carlo experiment"),
                               true);
    sim->add_option("--trials", trials, "trial count override");
    sim->add_option("--workers", workers, "worker thread count override");

    CLI::App* bnd = add_common(
        app.add_subcommand("bounds", "closed-form failure bounds for given parameters"), false);
    double f = 0, alpha = 0, mu = -1;
    long long k = 0, T = -1;
    int observers = -1;
    std::string delay_spec;
    bnd->add_option("--f", f, "active-slot probability");
    bnd->add_option("--alpha", alpha, "honest-unique fraction of active slots");
    bnd->add_option("--delay", delay_spec,
                    "delay spec, e.g. constant:2 geometric:0.5 table:0.5,0.5");
    bnd->add_option("--k", k, "settlement depth");
    bnd->add_option("--mu", mu, "chain-quality threshold fraction");
    bnd->add_option("--T", T, "slot count for the extensive variants");
    bnd->add_option("--observers", observers, "number of observed parties");

    CLI::App* fig = app.add_subcommand("figure1", "adversarial-tolerance boundary dataset");
    double lo = 0.0, hi = 1.0, step = 0.01;
    fig->add_option("--lo", lo, "grid start");
    fig->add_option("--hi", hi, "grid end");
    fig->add_option("--step", step, "grid step");
    fig->add_option("--out", out_dir, "output directory (stdout if omitted)");

    CLI::App* ora = app.add_subcommand("oracle",
                                       "exhaustive recursion-vs-enumeration cross-check");
    int max_nonbot = 6, max_bot = 2, balanced_max_len = 4;
    std::string rule_name = "geq";
    ora->add_option("--max-nonbot", max_nonbot, "max non-empty symbols per string");
    ora->add_option("--max-bot", max_bot, "max empty symbols per string");
    ora->add_option("--balanced-max-len", balanced_max_len,
                    "balanced-fork cross-check cutoff (0 disables)");
    ora->add_option("--rule", rule_name, "disjointness convention: geq or gt");
    ora->add_option("--out", out_dir, "output directory for oracle.csv");

    CLI::App* sta = app.add_subcommand("stats", "distributional checks against the analytical bounds");
    uint64_t stats_seed = 20260822;
    int stats_workers = 4;
    double scale = 1.0;
    sta->add_option("--seed", stats_seed, "suite seed");
    sta->add_option("--workers", stats_workers, "worker thread count");
    sta->add_option("--scale", scale, "sample-count multiplier (testing aid)");
    sta->add_option("--out", out_dir, "output directory for checks.csv");

    CLI::App* rep = add_common(app.add_subcommand("replay", "re-run one trial and dump its trace"),
                               true);
    long long trial = 0;
    rep->add_option("--trial", trial, "trial index to replay");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed())
            return cmd_simulate(config_path, seed_set ? &seed : nullptr,
                                trials > 0 ? &trials : nullptr, workers > 0 ? &workers : nullptr,
                                out_dir);
        if (bnd->parsed())
            return cmd_bounds(config_path, f, alpha, delay_spec, k, mu, T, observers, out_dir);
        if (fig->parsed()) return cmd_figure1(lo, hi, step, out_dir);
        if (ora->parsed())
            return cmd_oracle(max_nonbot, max_bot, balanced_max_len, rule_name, out_dir);
        if (sta->parsed()) return cmd_stats(stats_seed, stats_workers, scale, out_dir);
        if (rep->parsed()) return cmd_replay(config_path, seed_set ? &seed : nullptr, trial,
                                             out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
