#include "lcsim/experiment.hpp"

#include <atomic>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace lcsim {

// ---- configuration ----

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::kNull: return "null";
        case PolicyKind::kPrivateChain: return "private_chain";
        case PolicyKind::kMaxDelayBalance: return "max_delay_balance";
    }
    return "?";
}

PolicyKind policy_kind_from(const std::string& name) {
    if (name == "null") return PolicyKind::kNull;
    if (name == "private_chain") return PolicyKind::kPrivateChain;
    if (name == "max_delay_balance") return PolicyKind::kMaxDelayBalance;
    throw std::runtime_error("config: unknown adversary policy '" + name + "'");
}

void ExperimentConfig::validate() const {
    leaders.validate();
    if (horizon < 1) throw std::runtime_error("config: horizon must be >= 1");
    if (s < 1) throw std::runtime_error("config: s must be >= 1");
    if (k_grid.empty()) throw std::runtime_error("config: k grid is empty");
    for (int k : k_grid) {
        if (k < 1) throw std::runtime_error("config: every k must be >= 1");
        if (horizon < s + k) throw std::runtime_error("config: horizon must reach s + k");
    }
    if (trials < 1) throw std::runtime_error("config: trials must be >= 1");
    if (workers < 1) throw std::runtime_error("config: workers must be >= 1");
    if (observers.empty()) throw std::runtime_error("config: observer party set is empty");
    int limit = leaders.model == LeaderModel::kIid ? leaders.population : leaders.observers;
    for (int p : observers)
        if (p < 0 || p >= limit)
            throw std::runtime_error("config: observer id out of range (observers must be " +
                                     std::string(leaders.model == LeaderModel::kIid
                                                     ? "population members"
                                                     : "designated observer parties") +
                                     ")");
    if (mu < 0 || mu >= 1) throw std::runtime_error("config: mu must lie in [0,1)");
    if (T < 0 || T > horizon) throw std::runtime_error("config: T must lie in [0, horizon]");
    if (negext_max_renewals < 1)
        throw std::runtime_error("config: negext_max_renewals must be >= 1");
}

namespace {

DelayDistribution parse_delay(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return DelayDistribution::constant(j.at("value").get<int>());
    if (kind == "geometric") return DelayDistribution::geometric(j.at("q0").get<double>());
    if (kind == "discrete_exponential")
        return DelayDistribution::discrete_exponential(j.at("mean").get<double>());
    if (kind == "table") return DelayDistribution::table(j.at("pmf").get<std::vector<double>>());
    if (kind == "mixture_inf")
        return DelayDistribution::mixture_inf(j.at("value").get<int>(),
                                              j.at("mass_at_infinity").get<double>());
    throw std::runtime_error("unknown delay kind '" + kind + "'");
}

LeaderConfig parse_leaders(const nlohmann::json& j) {
    LeaderConfig cfg;
    std::string model = j.at("model").get<std::string>();
    if (model == "iid")
        cfg.model = LeaderModel::kIid;
    else if (model == "one_time")
        cfg.model = LeaderModel::kOneTime;
    else
        throw std::runtime_error("unknown leader model '" + model + "'");
    for (const auto& row : j.at("joint_law")) {
        if (!row.is_array() || row.size() != 3)
            throw std::runtime_error("joint_law rows must be [honest, adversary, prob]");
        cfg.joint_law.push_back(
            {row.at(0).get<int>(), row.at(1).get<int>() != 0, row.at(2).get<double>()});
    }
    cfg.population = j.value("population", 0);
    cfg.observers = j.value("observers", 0);
    return cfg;
}

std::unique_ptr<AdversaryPolicy> make_policy(const ExperimentConfig& cfg, int k) {
    switch (cfg.policy) {
        case PolicyKind::kNull: return std::make_unique<NullPolicy>();
        case PolicyKind::kPrivateChain: {
            int anchor = cfg.anchor_slot >= 0 ? cfg.anchor_slot : cfg.s;
            return std::make_unique<PrivateChainPolicy>(cfg.s, k, anchor, cfg.observers);
        }
        case PolicyKind::kMaxDelayBalance:
            return std::make_unique<MaxDelayBalancePolicy>(cfg.observers);
    }
    throw std::logic_error("unhandled policy kind");
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config: not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.name = j.value("name", cfg.name);
        cfg.leaders = parse_leaders(j.at("leaders"));
        cfg.delay = parse_delay(j.at("delay"));
        if (j.contains("policy")) {
            const auto& p = j.at("policy");
            if (p.is_string()) {
                cfg.policy = policy_kind_from(p.get<std::string>());
            } else {
                cfg.policy = policy_kind_from(p.at("kind").get<std::string>());
                cfg.anchor_slot = p.value("anchor", -1);
            }
        }
        cfg.horizon = j.at("horizon").get<int>();
        cfg.s = j.value("s", 1);
        if (j.contains("k_grid"))
            cfg.k_grid = j.at("k_grid").get<std::vector<int>>();
        else if (j.contains("k"))
            cfg.k_grid = {j.at("k").get<int>()};
        cfg.T = j.value("T", 0);
        cfg.mu = j.value("mu", 0.0);
        if (j.contains("cq_mode")) {
            std::string m = j.at("cq_mode").get<std::string>();
            if (m == "special")
                cfg.cq_mode = CqMode::kSpecial;
            else if (m == "honest")
                cfg.cq_mode = CqMode::kHonest;
            else
                throw std::runtime_error("cq_mode must be 'special' or 'honest'");
        }
        if (j.contains("observers")) cfg.observers = j.at("observers").get<std::vector<int>>();
        cfg.trials = j.value("trials", 1);
        if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
        cfg.workers = j.value("workers", 1);
        if (j.contains("checks")) {
            const auto& c = j.at("checks");
            cfg.check_settlement = c.value("settlement", cfg.check_settlement);
            cfg.audit_violations = c.value("audit", cfg.audit_violations);
            cfg.validate_forks = c.value("fork_axioms", cfg.validate_forks);
            cfg.emit_unheard = c.value("emit_unheard", cfg.emit_unheard);
        }
        cfg.negext_max_renewals = j.value("negext_max_renewals", cfg.negext_max_renewals);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    if (cfg.observers.empty()) {
        int limit = cfg.leaders.model == LeaderModel::kIid ? cfg.leaders.population
                                                           : cfg.leaders.observers;
        for (int p = 0; p < limit; ++p) cfg.observers.push_back(p);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

DelayDistribution parse_delay_spec(const std::string& spec) {
    size_t colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "constant") return DelayDistribution::constant(std::stoi(rest));
    if (kind == "geometric") return DelayDistribution::geometric(std::stod(rest));
    if (kind == "discrete_exponential")
        return DelayDistribution::discrete_exponential(std::stod(rest));
    if (kind == "mixture_inf") {
        size_t second = rest.find(':');
        if (second == std::string::npos)
            throw std::runtime_error("mixture_inf needs 'mixture_inf:DELAY:MASS'");
        return DelayDistribution::mixture_inf(std::stoi(rest.substr(0, second)),
                                              std::stod(rest.substr(second + 1)));
    }
    if (kind == "table") {
        std::vector<double> pmf;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) pmf.push_back(std::stod(item));
        return DelayDistribution::table(pmf);
    }
    throw std::runtime_error("unknown delay spec '" + spec + "'");
}

// ---- trial runner ----

uint64_t trial_seed(uint64_t base_seed, long long trial) {
    return UniformStream(
               StreamKey{base_seed, Domain::kTrialStream, static_cast<uint64_t>(trial), 0})
        .bits(0);
}

void parallel_trials(long long trials, int workers, const std::function<void(long long)>& fn) {
    if (trials <= 0) return;
    if (workers <= 1 || trials == 1) {
        for (long long t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<long long> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    auto worker = [&]() {
        while (true) {
            long long t = next.fetch_add(1);
            if (t >= trials) return;
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (err) return;
            }
            try {
                fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    long long n = std::min<long long>(workers, trials);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

namespace {

struct PropOutcome {
    int first_slot = -1;
    long long slots = 0;
    long long audit_checked = 0;
    long long audit_bad = 0;
};

struct TrialResult {
    std::vector<PropOutcome> settlement;
    std::vector<PropOutcome> cq;
    std::vector<PropOutcome> prefix;
    int fork_checked = 0;
    int fork_ok = 1;
};

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.name = cfg.name;
    report.params = compute_params(cfg.leaders, cfg.delay);

    const size_t nk = cfg.k_grid.size();
    const bool want_cq = cfg.mu > 0.0;
    const bool want_prefix = cfg.T > 0;
    // the private-chain policy times its release around s+k, so its traces
    // depend on k; the other policies do not
    const bool per_k_trace = cfg.policy == PolicyKind::kPrivateChain && nk > 1;

    std::vector<TrialResult> results(static_cast<size_t>(cfg.trials));
    SimConfig sim;
    sim.leaders = cfg.leaders;
    sim.delay = cfg.delay;
    sim.horizon = cfg.horizon;
    sim.negext_max_renewals = cfg.negext_max_renewals;

    parallel_trials(cfg.trials, cfg.workers, [&](long long trial) {
        TrialResult& R = results[static_cast<size_t>(trial)];
        if (cfg.check_settlement) R.settlement.resize(nk);
        if (want_cq) R.cq.resize(nk);
        if (want_prefix) R.prefix.resize(nk);
        uint64_t tseed = trial_seed(cfg.seed, trial);
        ExecutionTrace trace;
        bool have_trace = false;
        for (size_t ki = 0; ki < nk; ++ki) {
            int k = cfg.k_grid[ki];
            if (!have_trace || per_k_trace) {
                std::unique_ptr<AdversaryPolicy> policy = make_policy(cfg, k);
                trace = run_execution(sim, *policy, tseed);
                have_trace = true;
            }
            if (cfg.check_settlement) {
                std::vector<int> v = settlement_violations(trace, cfg.s, k, cfg.observers);
                PropOutcome& o = R.settlement[ki];
                if (!v.empty()) {
                    o.first_slot = v.front();
                    o.slots = static_cast<long long>(v.size());
                    if (cfg.audit_violations) {
                        NecessityAudit audit =
                            audit_settlement_necessity(trace, cfg.s, k, cfg.observers, v);
                        o.audit_checked = audit.checked;
                        o.audit_bad = audit.contradictions;
                    }
                }
            }
            if (want_cq) {
                std::vector<int> v =
                    chain_quality_violations(trace, cfg.mu, cfg.s, k, cfg.observers, cfg.cq_mode);
                PropOutcome& o = R.cq[ki];
                if (!v.empty()) {
                    o.first_slot = v.front();
                    o.slots = static_cast<long long>(v.size());
                    if (cfg.audit_violations && cfg.cq_mode == CqMode::kSpecial) {
                        NecessityAudit audit =
                            audit_cq_necessity(trace, cfg.mu, cfg.s, k, cfg.observers, v);
                        o.audit_checked = audit.checked;
                        o.audit_bad = audit.contradictions;
                    }
                }
            }
            if (want_prefix) {
                CommonPrefixOutcome cp =
                    check_common_prefix(trace, static_cast<int>(cfg.T), k, cfg.observers);
                if (!cp.holds) {
                    R.prefix[ki].first_slot = cp.slot;
                    R.prefix[ki].slots = 1;
                }
            }
        }
        if (cfg.validate_forks) {
            R.fork_checked = 1;
            R.fork_ok = validate_trace_fork(trace, cfg.horizon).ok ? 1 : 0;
        }
    });

    auto note_contradiction = [&](long long trial, long long bad) {
        if (bad <= 0) return;
        report.theory_contradictions += bad;
        if (report.first_contradiction_trial < 0) {
            report.first_contradiction_trial = trial;
            report.first_contradiction_seed = trial_seed(cfg.seed, trial);
        }
    };

    auto reduce_rows = [&](const char* property, bool enabled,
                           const std::vector<PropOutcome> TrialResult::*member) {
        if (!enabled) return;
        for (size_t ki = 0; ki < nk; ++ki) {
            int k = cfg.k_grid[ki];
            PropertyRow row;
            row.property = property;
            row.k = k;
            row.trials = cfg.trials;
            for (long long t = 0; t < cfg.trials; ++t) {
                const PropOutcome& o = (results[static_cast<size_t>(t)].*member)[ki];
                if (o.first_slot >= 0) {
                    ++row.violating_trials;
                    row.violating_slots += o.slots;
                    report.violations.push_back(ViolationRecord{t, trial_seed(cfg.seed, t),
                                                                property, k, o.first_slot,
                                                                o.slots});
                }
                row.audit_checked += o.audit_checked;
                row.audit_contradictions += o.audit_bad;
                note_contradiction(t, o.audit_bad);
            }
            row.frequency =
                static_cast<double>(row.violating_trials) / static_cast<double>(row.trials);
            row.interval = wilson_interval(row.violating_trials, row.trials);
            if (row.property == "settlement") {
                SettlementBound b =
                    settlement_bound(report.params, k, static_cast<int>(cfg.observers.size()));
                row.bound_applicable = b.applicable;
                row.bound_raw = b.total_raw;
                row.bound = b.total;
            } else if (row.property == "chain_quality" && cfg.cq_mode == CqMode::kSpecial &&
                       report.params.applicable && cfg.mu < report.params.eps) {
                ChainQualityBound b = chain_quality_bound(report.params, cfg.mu, k,
                                                          static_cast<int>(cfg.observers.size()));
                row.bound_applicable = b.applicable;
                row.bound_raw = b.total_raw;
                row.bound = b.total;
            } else if (row.property == "common_prefix" && report.params.applicable) {
                ExtensiveBounds b = extensive_bounds(report.params, cfg.T, k,
                                                     static_cast<int>(cfg.observers.size()), 0.0);
                row.bound_applicable = true;
                row.bound_raw = b.common_prefix_raw;
                row.bound = b.common_prefix;
            }
            if (row.bound_applicable)
                row.pass = upper_bound_holds(row.violating_trials, row.trials, row.bound);
            report.rows.push_back(row);
            if (!row.pass) report.statistical_pass = false;
        }
    };

    reduce_rows("settlement", cfg.check_settlement, &TrialResult::settlement);
    reduce_rows("chain_quality", want_cq, &TrialResult::cq);
    reduce_rows("common_prefix", want_prefix, &TrialResult::prefix);

    for (long long t = 0; t < cfg.trials; ++t) {
        const TrialResult& R = results[static_cast<size_t>(t)];
        report.fork_checks += R.fork_checked;
        if (R.fork_checked && !R.fork_ok) {
            ++report.fork_failures;
            note_contradiction(t, 1);
        }
    }
    return report;
}

// ---- CSV / export ----

std::string report_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "name,property,k,trials,violating_trials,violating_slots,frequency,"
           "wilson_lo,wilson_hi,bound_applicable,bound_raw,bound,pass,"
           "audit_checked,audit_contradictions\n";
    for (const PropertyRow& r : report.rows) {
        out << report.name << ',' << r.property << ',' << r.k << ',' << r.trials << ','
            << r.violating_trials << ',' << r.violating_slots << ','
            << format_double(r.frequency) << ',' << format_double(r.interval.lo) << ','
            << format_double(r.interval.hi) << ',' << (r.bound_applicable ? 1 : 0) << ','
            << format_double(r.bound_raw) << ',' << format_double(r.bound) << ','
            << (r.pass ? 1 : 0) << ',' << r.audit_checked << ',' << r.audit_contradictions
            << '\n';
    }
    return out.str();
}

std::string violations_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "trial,seed,property,k,first_slot,slots\n";
    for (const ViolationRecord& v : report.violations)
        out << v.trial << ',' << v.seed << ',' << v.property << ',' << v.k << ',' << v.first_slot
            << ',' << v.slots << '\n';
    return out.str();
}

std::string unheard_csv(const ExecutionTrace& trace, const std::vector<int>& parties,
                        long long trial) {
    std::ostringstream out;
    out << "trial,slot,party,latest_heard,unheard\n";
    for (int p : parties) {
        UnheardSeries series = party_unheard(trace, p);
        for (int i = 1; i <= trace.horizon; ++i) {
            int latest = series.latest_at(i);
            out << trial << ',' << i << ',' << p << ',' << (latest == kNeverHeard ? -1 : latest)
                << ',' << series.unheard_at(i) << '\n';
        }
    }
    return out.str();
}

namespace {

std::string arrival_text(int slot) {
    return slot == kNever ? "never" : std::to_string(slot);
}

}  // namespace

std::string trace_export(const ExecutionTrace& trace) {
    std::ostringstream out;
    out << "trace seed=" << trace.seed << " horizon=" << trace.horizon
        << " tracked=" << trace.tracked << '\n';
    out << "block id=0 parent=-1 ts=0 proposer=-1 created=0\n";
    size_t bi = 1, mi = 0;
    std::vector<int> prev_tip(static_cast<size_t>(trace.tracked), 0);
    for (int slot = 1; slot <= trace.horizon; ++slot) {
        const SlotLeaders& L = trace.schedule[static_cast<size_t>(slot - 1)];
        if (!L.honest.empty() || L.adversary) {
            out << "election slot=" << slot << " honest=";
            if (L.honest.empty()) out << '-';
            for (size_t x = 0; x < L.honest.size(); ++x) out << (x ? ";" : "") << L.honest[x];
            out << " adversary=" << (L.adversary ? 1 : 0) << '\n';
        }
        for (; bi < trace.blocks.size() && trace.blocks[bi].created_slot == slot; ++bi) {
            const Block& b = trace.blocks[bi];
            out << "block id=" << b.id << " parent=" << b.parent << " ts=" << b.timestamp
                << " proposer=" << b.proposer << " created=" << b.created_slot << '\n';
        }
        for (; mi < trace.messages.size() && trace.messages[mi].sender_slot == slot; ++mi) {
            const Message& m = trace.messages[mi];
            out << "message idx=" << mi << " slot=" << m.sender_slot << " sender=" << m.sender
                << " recipient=" << m.recipient << " block=" << m.block
                << " scheduled=" << arrival_text(m.scheduled)
                << " actual=" << arrival_text(m.actual) << '\n';
        }
        for (int p = 0; p < trace.tracked; ++p) {
            int tip = trace.tip_at(slot, p);
            if (tip != prev_tip[static_cast<size_t>(p)]) {
                out << "tip slot=" << slot << " party=" << p << " block=" << tip << '\n';
                prev_tip[static_cast<size_t>(p)] = tip;
            }
        }
    }
    for (size_t j = 0; j < trace.chars.special_slots.size(); ++j)
        out << "special slot=" << trace.chars.special_slots[j]
            << " block=" << trace.special_block[j] << '\n';
    out << "charstring " << trace.chars.str.text() << '\n';
    return out.str();
}

// ---- oracle sweep ----

namespace {

template <typename Fn>
void sweep_strings(int max_nonbot, int max_bot, Fn&& fn) {
    int max_len = max_nonbot + max_bot;
    for (int len = 0; len <= max_len; ++len) {
        std::vector<int> sym(static_cast<size_t>(len), 0);  // 0='.', 1='0', 2='1'
        while (true) {
            int bots = 0;
            for (int v : sym) bots += v == 0;
            if (bots <= max_bot && len - bots <= max_nonbot) {
                TriString w;
                for (int v : sym)
                    w.push_back(v == 0 ? TriSym::kBot : v == 1 ? TriSym::kZero : TriSym::kOne);
                fn(w);
            }
            size_t i = 0;
            while (i < sym.size() && sym[i] == 2) {
                sym[i] = 0;
                ++i;
            }
            if (i == sym.size()) break;
            ++sym[i];
        }
    }
}

}  // namespace

OracleReport run_oracle_suite(int max_nonbot, int max_bot, bool include_balanced,
                              int balanced_max_len, DisjointRule rule) {
    OracleReport rep;
    sweep_strings(max_nonbot, max_bot, [&](const TriString& w) {
        ++rep.strings;
        ForkSweep sweep = enumerate_closed_forks(w, rule);
        rep.forks_enumerated += sweep.closed_forks;
        std::vector<int> reach = reach_sequence(w);
        ++rep.comparisons;
        if (reach.back() != sweep.reach)
            rep.mismatches.push_back({w.text(), 0, "reach", reach.back(), sweep.reach});
        if (rule != DisjointRule::kGeq) return;  // the recursions encode the kGeq convention
        for (int s = 1; s <= w.size() + 1; ++s) {
            ++rep.comparisons;
            int rec = margin_sequence(w, s).back();
            int ora = sweep.margin_by_s[static_cast<size_t>(s)];
            if (rec != ora) rep.mismatches.push_back({w.text(), s, "margin", rec, ora});
        }
        if (include_balanced && w.size() <= balanced_max_len) {
            for (int s = 1; s <= w.size(); ++s)
                for (int l = 0; l <= w.size(); ++l) {
                    ++rep.comparisons;
                    bool rec = balanced_fork_exists(w, s, l);
                    bool ora = brute_force_balanced_fork(w, s, l, rule);
                    if (rec != ora)
                        rep.mismatches.push_back({w.text(), s, "balanced", rec, ora});
                }
        }
    });
    return rep;
}

std::string oracle_csv(int max_nonbot, int max_bot, DisjointRule rule) {
    std::ostringstream out;
    out << "w,s,reach,margin\n";
    sweep_strings(max_nonbot, max_bot, [&](const TriString& w) {
        ForkSweep sweep = enumerate_closed_forks(w, rule);
        for (int s = 1; s <= w.size() + 1; ++s)
            out << w.text() << ',' << s << ',' << sweep.reach << ','
                << sweep.margin_by_s[static_cast<size_t>(s)] << '\n';
    });
    return out.str();
}

// ---- distributional checks ----

namespace {

long long scaled(long long n, double scale) {
    long long v = static_cast<long long>(std::llround(static_cast<double>(n) * scale));
    return v < 1 ? 1 : v;
}

uint64_t check_seed(uint64_t seed, uint64_t check_id) { return mix64(seed + kGolden * check_id); }

CharString sample_charstring(const LeaderConfig& leaders, const DelayDistribution& delay,
                             uint64_t seed, int horizon) {
    std::vector<SlotLeaders> schedule = build_leader_schedule(leaders, seed, horizon);
    return build_char_string(schedule, leaders, delay, seed);
}

LeaderConfig iid_leaders(int population, std::vector<JointLawEntry> law) {
    LeaderConfig cfg;
    cfg.model = LeaderModel::kIid;
    cfg.population = population;
    cfg.joint_law = std::move(law);
    double used = 0.0;
    for (const JointLawEntry& e : cfg.joint_law) used += e.prob;
    cfg.joint_law.push_back({0, false, 1.0 - used});  // empty slots
    cfg.validate();
    return cfg;
}

// Renewal labels bucketed by the preceding gap: P(0 | gap = g) must equal
// alpha * P(Delta < g) for every g.
void check_label_law(uint64_t seed, int workers, double scale, std::vector<CheckResult>& out) {
    LeaderConfig leaders = iid_leaders(5, {{1, 0, 0.16}, {0, 1, 0.03}, {2, 0, 0.01}});
    DelayDistribution delay = DelayDistribution::geometric(0.5);
    const int horizon = 600;
    const long long trials = scaled(9000, scale);
    constexpr int kMaxGap = 4;
    struct Counts {
        long long hits[kMaxGap + 1] = {};
        long long total[kMaxGap + 1] = {};
    };
    std::vector<Counts> per(static_cast<size_t>(trials));
    uint64_t base = check_seed(seed, 1);
    parallel_trials(trials, workers, [&](long long t) {
        CharString cs = sample_charstring(leaders, delay, trial_seed(base, t), horizon);
        std::vector<int> slots = cs.str.nonempty_slots();
        Counts& c = per[static_cast<size_t>(t)];
        for (size_t j = 1; j < slots.size(); ++j) {
            int gap = slots[j] - slots[j - 1];
            if (gap > kMaxGap) continue;
            ++c.total[gap];
            c.hits[gap] += cs.str.at(slots[j]) == TriSym::kZero;
        }
    });
    double alpha = leader_params(leaders).alpha;
    for (int g = 1; g <= kMaxGap; ++g) {
        long long hits = 0, total = 0;
        for (const Counts& c : per) {
            hits += c.hits[g];
            total += c.total[g];
        }
        CheckResult r;
        r.name = "label_law_gap_" + std::to_string(g);
        r.statistic = static_cast<double>(hits) / static_cast<double>(total);
        r.reference = alpha * delay.cdf_lt(g);
        r.z = z_score(hits, total, r.reference);
        r.pass = two_sided_holds(hits, total, r.reference);
        r.detail = "two-sided, n=" + std::to_string(total);
        out.push_back(r);
    }
}

// Compressed-string entries after a base slot: the first is 0 with
// probability at least p, later ones with probability exactly p.
void check_compressed_law(uint64_t seed, int workers, double scale,
                          std::vector<CheckResult>& out) {
    LeaderConfig leaders = iid_leaders(5, {{1, 0, 0.16}, {0, 1, 0.03}, {2, 0, 0.01}});
    DelayDistribution delay = DelayDistribution::geometric(0.5);
    const int horizon = 80, s = 25;
    constexpr int kEntries = 4;
    const long long trials = scaled(120000, scale);
    struct Counts {
        int have[kEntries + 1] = {};
        int zero[kEntries + 1] = {};
    };
    std::vector<Counts> per(static_cast<size_t>(trials));
    uint64_t base = check_seed(seed, 2);
    parallel_trials(trials, workers, [&](long long t) {
        CharString cs = sample_charstring(leaders, delay, trial_seed(base, t), horizon);
        std::vector<TriSym> comp = compressed_char_string(cs.str, s, kEntries);
        Counts& c = per[static_cast<size_t>(t)];
        for (int j = 1; j <= kEntries && j < static_cast<int>(comp.size()); ++j) {
            c.have[j] = 1;
            c.zero[j] = comp[static_cast<size_t>(j)] == TriSym::kZero;
        }
    });
    double p = compute_params(leaders, delay).p;
    for (int j = 1; j <= kEntries; ++j) {
        long long hits = 0, total = 0;
        for (const Counts& c : per) {
            total += c.have[j];
            hits += c.zero[j];
        }
        CheckResult r;
        r.name = "compressed_entry_" + std::to_string(j);
        r.statistic = static_cast<double>(hits) / static_cast<double>(total);
        r.reference = p;
        r.z = z_score(hits, total, p);
        if (j == 1) {
            r.pass = lower_bound_holds(hits, total, p);
            r.detail = "one-sided lower, n=" + std::to_string(total);
        } else {
            r.pass = two_sided_holds(hits, total, p);
            r.detail = "two-sided, n=" + std::to_string(total);
        }
        out.push_back(r);
    }
}

// Tail of the per-party unheard count against (1-q)^a.
void check_unheard_tail(uint64_t seed, int workers, double scale,
                        std::vector<CheckResult>& out) {
    LeaderConfig leaders = iid_leaders(2, {{1, 0, 0.09}, {0, 1, 0.01}});
    DelayDistribution delay = DelayDistribution::geometric(0.3);
    const int horizon = 150;
    const long long trials = scaled(100000, scale);
    constexpr int kMaxA = 10;
    std::vector<int> value(static_cast<size_t>(trials), 0);
    uint64_t base = check_seed(seed, 3);
    parallel_trials(trials, workers, [&](long long t) {
        uint64_t ts = trial_seed(base, t);
        CharString cs = sample_charstring(leaders, delay, ts, horizon);
        std::vector<HeardEvent> events = scheduled_special_events(cs, delay, ts, 0);
        UnheardSeries series = build_unheard_series(cs.str, events, horizon);
        value[static_cast<size_t>(t)] = series.unheard_at(horizon);
    });
    double q = compute_params(leaders, delay).q;
    for (int a = 0; a <= kMaxA; a += 2) {
        long long hits = 0;
        for (int v : value) hits += v > a;
        CheckResult r;
        r.name = "unheard_tail_gt_" + std::to_string(a);
        r.statistic = static_cast<double>(hits) / static_cast<double>(trials);
        r.reference = unheard_tail_bound(q, a);
        r.z = z_score(hits, trials, r.reference);
        r.pass = upper_bound_holds(hits, trials, r.reference);
        r.detail = "one-sided upper, n=" + std::to_string(trials);
        out.push_back(r);
    }
}

// Renewal-sampled unheard staying under the line B + c(j - k').
void check_unheard_excursion(uint64_t seed, int workers, double scale,
                             std::vector<CheckResult>& out) {
    LeaderConfig leaders = iid_leaders(2, {{1, 0, 0.09}, {0, 1, 0.01}});
    DelayDistribution delay = DelayDistribution::geometric(0.3);
    const int horizon = 800, s = 50, kPrime = 10;
    const double B = 8.0, c = 1.0;
    const long long trials = scaled(100000, scale);
    std::vector<int> hit(static_cast<size_t>(trials), 0);
    uint64_t base = check_seed(seed, 4);
    parallel_trials(trials, workers, [&](long long t) {
        uint64_t ts = trial_seed(base, t);
        CharString cs = sample_charstring(leaders, delay, ts, horizon);
        std::vector<HeardEvent> events = scheduled_special_events(cs, delay, ts, 0);
        UnheardSeries series = build_unheard_series(cs.str, events, horizon);
        std::vector<int> comp = compressed_unheard(series, cs.str, s);
        for (int j = kPrime; j < static_cast<int>(comp.size()); ++j)
            if (static_cast<double>(comp[static_cast<size_t>(j)]) >= B + c * (j - kPrime)) {
                hit[static_cast<size_t>(t)] = 1;
                break;
            }
    });
    long long hits = 0;
    for (int h : hit) hits += h;
    double q = compute_params(leaders, delay).q;
    CheckResult r;
    r.name = "unheard_excursion";
    r.statistic = static_cast<double>(hits) / static_cast<double>(trials);
    r.reference = unheard_excursion_bound(q, B, c);
    r.z = z_score(hits, trials, r.reference);
    r.pass = upper_bound_holds(hits, trials, r.reference);
    r.detail = "one-sided upper, n=" + std::to_string(trials);
    out.push_back(r);
}

// Reach tail against the stationary geometric bound ((1-p)/p)^a.
void check_reach_tail(uint64_t seed, int workers, double scale, std::vector<CheckResult>& out) {
    LeaderConfig leaders = iid_leaders(5, {{1, 0, 0.14}, {0, 1, 0.05}, {2, 0, 0.01}});
    DelayDistribution delay = DelayDistribution::constant(0);
    const int horizon = 5000;
    const long long trials = scaled(100000, scale);
    std::vector<int> value(static_cast<size_t>(trials), 0);
    uint64_t base = check_seed(seed, 5);
    parallel_trials(trials, workers, [&](long long t) {
        CharString cs = sample_charstring(leaders, delay, trial_seed(base, t), horizon);
        value[static_cast<size_t>(t)] = reach_sequence(cs.str).back();
    });
    double p = compute_params(leaders, delay).p;
    for (int a = 1; a <= 8; ++a) {
        long long hits = 0;
        for (int v : value) hits += v >= a;
        CheckResult r;
        r.name = "reach_tail_ge_" + std::to_string(a);
        r.statistic = static_cast<double>(hits) / static_cast<double>(trials);
        r.reference = reach_tail_bound(p, a);
        r.z = z_score(hits, trials, r.reference);
        r.pass = upper_bound_holds(hits, trials, r.reference);
        r.detail = "one-sided upper, n=" + std::to_string(trials);
        out.push_back(r);
    }
}

// Biased +-1 walk: excursions above the -cj line and above zero.
void check_walks(uint64_t seed, int workers, double scale, std::vector<CheckResult>& out) {
    const double eps = 0.3;
    const int k = 200, horizon = 5000;
    const long long trials = scaled(100000, scale);
    struct Hits {
        int line = 0;
        int zero = 0;
    };
    std::vector<Hits> hit(static_cast<size_t>(trials));
    uint64_t base = check_seed(seed, 6);
    parallel_trials(trials, workers, [&](long long t) {
        SequentialRng rng(StreamKey{base, Domain::kTrialStream, static_cast<uint64_t>(t), 1});
        long long w = 0;
        Hits& h = hit[static_cast<size_t>(t)];
        for (int j = 1; j <= horizon; ++j) {
            w += rng.next_unit() < (1.0 - eps) / 2.0 ? 1 : -1;
            if (j < k) continue;
            // c = 0.15: test W >= -0.15 j without floating point
            if (!h.line && 20 * w + 3 * j >= 0) h.line = 1;
            if (!h.zero && w >= 0) h.zero = 1;
            if (h.zero) break;  // zero-hit implies line-hit stays set
        }
    });
    long long line_hits = 0, zero_hits = 0;
    for (const Hits& h : hit) {
        line_hits += h.line;
        zero_hits += h.zero;
    }
    {
        CheckResult r;
        r.name = "walk_line_excursion";
        r.statistic = static_cast<double>(line_hits) / static_cast<double>(trials);
        r.reference = walk_excursion_bound(eps, 0.15, k);
        r.z = z_score(line_hits, trials, r.reference);
        r.pass = upper_bound_holds(line_hits, trials, r.reference);
        r.detail = "one-sided upper, n=" + std::to_string(trials);
        out.push_back(r);
    }
    {
        CheckResult r;
        r.name = "walk_zero_excursion";
        r.statistic = static_cast<double>(zero_hits) / static_cast<double>(trials);
        r.reference = walk_zero_excursion_bound(eps, k);
        r.z = z_score(zero_hits, trials, r.reference);
        r.pass = upper_bound_holds(zero_hits, trials, r.reference);
        r.detail = "one-sided upper, n=" + std::to_string(trials);
        out.push_back(r);
    }
    {
        // the always-down walk can never climb back to the line
        long long down_hits = 0;
        for (long long t = 0; t < 1000; ++t) {
            long long w = 0;
            bool any = false;
            for (int j = 1; j <= 1000; ++j) {
                w -= 1;
                if (j >= k && 2 * w + j >= 0) any = true;  // c = 0.5
            }
            down_hits += any;
        }
        CheckResult r;
        r.name = "walk_always_down";
        r.statistic = static_cast<double>(down_hits) / 1000.0;
        r.reference = walk_excursion_bound(1.0, 0.5, k);
        r.z = z_score(down_hits, 1000, r.reference);
        r.pass = down_hits == 0;
        r.detail = "exact, n=1000";
        out.push_back(r);
    }
}

}  // namespace

std::vector<CheckResult> statistical_suite(uint64_t seed, int workers, double scale) {
    std::vector<CheckResult> out;
    check_label_law(seed, workers, scale, out);
    check_compressed_law(seed, workers, scale, out);
    check_unheard_tail(seed, workers, scale, out);
    check_unheard_excursion(seed, workers, scale, out);
    check_reach_tail(seed, workers, scale, out);
    check_walks(seed, workers, scale, out);
    return out;
}

std::string checks_csv(const std::vector<CheckResult>& checks) {
    std::ostringstream out;
    out << "name,statistic,reference,z,pass,detail\n";
    for (const CheckResult& c : checks)
        out << c.name << ',' << format_double(c.statistic) << ',' << format_double(c.reference)
            << ',' << format_double(c.z) << ',' << (c.pass ? 1 : 0) << ',' << c.detail << '\n';
    return out.str();
}

}  // namespace lcsim
