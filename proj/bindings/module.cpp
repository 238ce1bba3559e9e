// Python bindings for the core operations: reach/margin traces and their
// brute-force oracle, security bounds, experiment runs from JSON configs,
// the exhaustive oracle sweep, and the statistical suite.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcsim/bounds.hpp"
#include "lcsim/experiment.hpp"
#include "lcsim/sim.hpp"

namespace py = pybind11;
using namespace lcsim;

namespace {

py::dict params_dict(const SecurityParams& sp) {
    py::dict d;
    d["f"] = sp.f;
    d["alpha"] = sp.alpha;
    d["p"] = sp.p;
    d["q"] = sp.q;
    d["eps"] = sp.eps;
    d["applicable"] = sp.applicable;
    return d;
}

py::dict report_dict(const ExperimentReport& rep) {
    py::dict d;
    d["name"] = rep.name;
    d["params"] = params_dict(rep.params);
    d["pass"] = rep.pass();
    d["statistical_pass"] = rep.statistical_pass;
    d["theory_contradictions"] = rep.theory_contradictions;
    d["fork_failures"] = rep.fork_failures;
    d["fork_checks"] = rep.fork_checks;
    d["report_csv"] = report_csv(rep);
    d["violations_csv"] = violations_csv(rep);
    py::list rows;
    for (const PropertyRow& r : rep.rows) {
        py::dict row;
        row["property"] = r.property;
        row["k"] = r.k;
        row["trials"] = r.trials;
        row["violating_trials"] = r.violating_trials;
        row["violating_slots"] = r.violating_slots;
        row["frequency"] = r.frequency;
        row["wilson_lo"] = r.interval.lo;
        row["wilson_hi"] = r.interval.hi;
        row["bound_applicable"] = r.bound_applicable;
        row["bound_raw"] = r.bound_raw;
        row["bound"] = r.bound;
        row["pass"] = r.pass;
        row["audit_checked"] = r.audit_checked;
        row["audit_contradictions"] = r.audit_contradictions;
        rows.append(row);
    }
    d["rows"] = rows;
    return d;
}

}  // namespace

PYBIND11_MODULE(_lcsim, m) {
    m.doc() = "longest-chain security simulator: recursions, bounds, experiments";

    m.def(
        "reach_trace",
        [](const std::string& w) { return reach_sequence(TriString(w)); },
        py::arg("w"),
        "Per-slot reach values for a characteristic string over '.', '0', '1' "
        "(index 0 is the empty prefix).");
    m.def(
        "margin_trace",
        [](const std::string& w, int s) { return margin_sequence(TriString(w), s); },
        py::arg("w"), py::arg("s"),
        "Per-slot margin values relative to base slot s (index 0 is the empty prefix).");
    m.def(
        "oracle_reach_margin",
        [](const std::string& w, int s) {
            ReachMargin rm = brute_force_reach_margin(TriString(w), s);
            return py::make_tuple(rm.reach, rm.margin);
        },
        py::arg("w"), py::arg("s"),
        "(reach, margin) maximized over every closed fork of w, by enumeration.");
    m.def(
        "observer_transform",
        [](const std::string& w, int l) { return observer_transform(TriString(w), l).text(); },
        py::arg("w"), py::arg("l"),
        "Demote every leader slot after slot l to empty.");
    m.def(
        "balanced_fork_exists",
        [](const std::string& w, int s, int l) { return balanced_fork_exists(TriString(w), s, l); },
        py::arg("w"), py::arg("s"), py::arg("l"));

    m.def(
        "compute_params",
        [](double f, double alpha, const std::string& delay) {
            return params_dict(compute_params(f, alpha, parse_delay_spec(delay)));
        },
        py::arg("f"), py::arg("alpha"), py::arg("delay"),
        "Effective (p, q, eps) for a slot rate, honest fraction, and delay spec "
        "such as 'geometric:0.5' or 'constant:2'.");
    m.def(
        "settlement_bound",
        [](double f, double alpha, const std::string& delay, long long k, int observers) {
            SecurityParams sp = compute_params(f, alpha, parse_delay_spec(delay));
            SettlementBound b = settlement_bound(sp, k, observers);
            py::dict d;
            d["p_settlement"] = b.p_settlement;
            d["p_unheard"] = b.p_unheard;
            d["total_raw"] = b.total_raw;
            d["total"] = b.total;
            d["applicable"] = b.applicable;
            return d;
        },
        py::arg("f"), py::arg("alpha"), py::arg("delay"), py::arg("k"), py::arg("observers"));
    m.def(
        "chain_quality_bound",
        [](double f, double alpha, const std::string& delay, double mu, long long k,
           int observers) {
            SecurityParams sp = compute_params(f, alpha, parse_delay_spec(delay));
            ChainQualityBound b = chain_quality_bound(sp, mu, k, observers);
            py::dict d;
            d["p_cq"] = b.p_cq;
            d["p_unheard_tilde"] = b.p_unheard_tilde;
            d["total_raw"] = b.total_raw;
            d["total"] = b.total;
            d["applicable"] = b.applicable;
            return d;
        },
        py::arg("f"), py::arg("alpha"), py::arg("delay"), py::arg("mu"), py::arg("k"),
        py::arg("observers"));
    m.def(
        "extensive_bounds",
        [](double f, double alpha, const std::string& delay, long long T, long long k,
           int observers, double mu) {
            SecurityParams sp = compute_params(f, alpha, parse_delay_spec(delay));
            ExtensiveBounds b = extensive_bounds(sp, T, k, observers, mu);
            py::dict d;
            d["common_prefix_raw"] = b.common_prefix_raw;
            d["common_prefix"] = b.common_prefix;
            d["extensive_cq_raw"] = b.extensive_cq_raw;
            d["extensive_cq"] = b.extensive_cq;
            return d;
        },
        py::arg("f"), py::arg("alpha"), py::arg("delay"), py::arg("T"), py::arg("k"),
        py::arg("observers"), py::arg("mu"));
    m.def("synchronous_threshold", &synchronous_threshold, py::arg("f_delta"));
    m.def("exponential_boundary", &exponential_boundary, py::arg("f_eta"));
    m.def(
        "figure1_csv",
        [](double lo, double hi, double step) {
            return figure1_csv(figure1_dataset(uniform_grid(lo, hi, step)));
        },
        py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("step") = 0.01,
        "CSV of the security boundary curves over a product-parameter grid.");

    m.def(
        "run_config",
        [](const std::string& json_text) {
            return report_dict(run_experiment(parse_experiment_config(json_text)));
        },
        py::arg("json_text"),
        "Run a full experiment from a JSON config string and return the report.");
    m.def(
        "trace_dump",
        [](const std::string& json_text, long long trial) {
            ExperimentConfig cfg = parse_experiment_config(json_text);
            SimConfig sim;
            sim.leaders = cfg.leaders;
            sim.delay = cfg.delay;
            sim.horizon = cfg.horizon;
            sim.negext_max_renewals = cfg.negext_max_renewals;
            NullPolicy none;
            ExecutionTrace t = run_execution(sim, none, trial_seed(cfg.seed, trial));
            return trace_export(t);
        },
        py::arg("json_text"), py::arg("trial") = 0,
        "Deterministic line-oriented dump of one null-adversary trace of the config.");

    m.def(
        "oracle_suite",
        [](int max_nonbot, int max_bot, bool include_balanced, int balanced_max_len) {
            OracleReport r = run_oracle_suite(max_nonbot, max_bot, include_balanced,
                                              balanced_max_len);
            py::dict d;
            d["strings"] = r.strings;
            d["comparisons"] = r.comparisons;
            d["forks_enumerated"] = r.forks_enumerated;
            d["pass"] = r.pass();
            d["mismatches"] = static_cast<long long>(r.mismatches.size());
            return d;
        },
        py::arg("max_nonbot"), py::arg("max_bot"), py::arg("include_balanced") = false,
        py::arg("balanced_max_len") = 0);
    m.def("oracle_csv", [](int max_nonbot, int max_bot) { return oracle_csv(max_nonbot, max_bot); },
          py::arg("max_nonbot"), py::arg("max_bot"));

    m.def(
        "statistical_suite",
        [](uint64_t seed, int workers, double scale) {
            std::vector<CheckResult> checks = statistical_suite(seed, workers, scale);
            bool all = true;
            for (const CheckResult& c : checks) all = all && c.pass;
            py::dict d;
            d["pass"] = all;
            d["checks"] = static_cast<long long>(checks.size());
            d["csv"] = checks_csv(checks);
            return d;
        },
        py::arg("seed"), py::arg("workers") = 1, py::arg("scale") = 1.0);
}
