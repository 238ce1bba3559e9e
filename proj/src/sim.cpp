#include "lcsim/sim.hpp"

#include <algorithm>

namespace lcsim {

class Execution {
  public:
    Execution(const SimConfig& cfg, AdversaryPolicy& policy, uint64_t seed)
        : cfg_(cfg), policy_(policy) {
        cfg_.leaders.validate();
        trace_.seed = seed;
        trace_.horizon = cfg.horizon;
        trace_.leaders_cfg = cfg.leaders;
        trace_.delay = cfg.delay;
        trace_.schedule = build_leader_schedule(cfg.leaders, seed, cfg.horizon);
        trace_.leader_str = leader_string(trace_.schedule);
        trace_.chars = build_char_string(trace_.schedule, cfg.leaders, cfg.delay, seed,
                                         cfg.negext_max_renewals);
        if (cfg.leaders.model == LeaderModel::kIid) {
            tracked_ = cfg.leaders.population;
        } else {
            int max_id = cfg.leaders.observers - 1;
            for (const auto& L : trace_.schedule)
                for (int h : L.honest) max_id = std::max(max_id, h);
            tracked_ = max_id + 1;
        }
        trace_.tracked = tracked_;
        rng_ = SequentialRng(StreamKey{seed, Domain::kPolicy, 0, 0});
    }

    ExecutionTrace run() {
        trace_.blocks.push_back(Block{0, -1, 0, -1, 0});
        trace_.block_depth.push_back(0);
        tip_.assign(static_cast<size_t>(tracked_), 0);
        inbox_.assign(static_cast<size_t>(tracked_), {});
        pending_.assign(static_cast<size_t>(cfg_.horizon) + 2, {});
        trace_.tips.assign(static_cast<size_t>(cfg_.horizon) * static_cast<size_t>(tracked_), 0);
        unique_honest_block_.assign(static_cast<size_t>(cfg_.horizon) + 1, -1);

        AdversaryApi api(*this);
        for (slot_ = 1; slot_ <= cfg_.horizon; ++slot_) {
            const SlotLeaders& L = trace_.schedule[static_cast<size_t>(slot_ - 1)];
            // Honest send: append to own chain, broadcast to everyone.
            for (int h : L.honest) {
                int b = add_block(tip_[static_cast<size_t>(h)], slot_, h);
                tip_[static_cast<size_t>(h)] = b;
                if (L.honest.size() == 1) unique_honest_block_[static_cast<size_t>(slot_)] = b;
                for (int r = 0; r < tracked_; ++r) {
                    int d = DelaySampler(cfg_.delay, message_delay_stream(trace_.seed, slot_, h, r))
                                .sample();
                    int sched = d == kNever ? kNever : slot_ + d;
                    // Own copy is held immediately; the sampled self-delay still
                    // exists for the analysis-side unheard accounting.
                    int actual = r == h ? slot_ : sched;
                    trace_.messages.push_back(Message{slot_, h, r, b, sched, actual});
                    if (r != h && actual != kNever && actual <= cfg_.horizon)
                        pending_[static_cast<size_t>(actual)].push_back(
                            static_cast<int>(trace_.messages.size()) - 1);
                }
            }
            // Adversarial send.
            policy_.act(api);
            // Deliver everything due this slot, in scheduling order.
            for (int idx : pending_[static_cast<size_t>(slot_)]) {
                const Message& m = trace_.messages[static_cast<size_t>(idx)];
                if (m.actual != slot_) continue;  // moved by a later acceleration
                inbox_[static_cast<size_t>(m.recipient)].push_back(m.block);
            }
            // Adopt: only strictly longer chains; ties go to the adversary.
            for (int p = 0; p < tracked_; ++p) {
                auto& cand = inbox_[static_cast<size_t>(p)];
                if (!cand.empty()) {
                    int cur = trace_.block_depth[static_cast<size_t>(tip_[static_cast<size_t>(p)])];
                    int best = cur;
                    for (int b : cand)
                        best = std::max(best, trace_.block_depth[static_cast<size_t>(b)]);
                    if (best > cur) {
                        top_.clear();
                        for (int b : cand)
                            if (trace_.block_depth[static_cast<size_t>(b)] == best)
                                top_.push_back(b);
                        int pick = 0;
                        if (top_.size() > 1) {
                            pick = policy_.tie_break(p, slot_, top_);
                            if (pick < 0 || pick >= static_cast<int>(top_.size())) pick = 0;
                        }
                        tip_[static_cast<size_t>(p)] = top_[static_cast<size_t>(pick)];
                    }
                    cand.clear();
                }
                trace_.tips[static_cast<size_t>(slot_ - 1) * static_cast<size_t>(tracked_) +
                            static_cast<size_t>(p)] = tip_[static_cast<size_t>(p)];
            }
        }
        for (int t : trace_.chars.special_slots)
            trace_.special_block.push_back(unique_honest_block_[static_cast<size_t>(t)]);
        return std::move(trace_);
    }

  private:
    friend class AdversaryApi;

    int add_block(int parent, int timestamp, int proposer) {
        int id = static_cast<int>(trace_.blocks.size());
        trace_.blocks.push_back(Block{id, parent, timestamp, proposer, slot_});
        trace_.block_depth.push_back(trace_.block_depth[static_cast<size_t>(parent)] + 1);
        return id;
    }

    SimConfig cfg_;
    AdversaryPolicy& policy_;
    ExecutionTrace trace_;
    int tracked_ = 0;
    int slot_ = 0;
    std::vector<int> tip_;
    std::vector<std::vector<int>> inbox_;
    std::vector<std::vector<int>> pending_;
    std::vector<int> unique_honest_block_;
    std::vector<int> top_;
    SequentialRng rng_;
};

int AdversaryApi::slot() const { return ex_.slot_; }
int AdversaryApi::tracked() const { return ex_.tracked_; }
const SlotLeaders& AdversaryApi::leaders() const {
    return ex_.trace_.schedule[static_cast<size_t>(ex_.slot_ - 1)];
}
bool AdversaryApi::adversary_led(int slot) const {
    if (slot < 1 || slot > ex_.slot_)
        throw PolicyViolation("adversary may inspect elections only up to the current slot");
    return ex_.trace_.schedule[static_cast<size_t>(slot - 1)].adversary;
}
const std::vector<Block>& AdversaryApi::blocks() const { return ex_.trace_.blocks; }
int AdversaryApi::depth(int block) const {
    return ex_.trace_.block_depth.at(static_cast<size_t>(block));
}
int AdversaryApi::chain_tip(int party) const { return ex_.tip_.at(static_cast<size_t>(party)); }
int AdversaryApi::ancestor_at(int block, int max_ts) const {
    return ex_.trace_.ancestor_at(block, max_ts);
}
const std::vector<Message>& AdversaryApi::messages() const { return ex_.trace_.messages; }
SequentialRng& AdversaryApi::rng() { return ex_.rng_; }

int AdversaryApi::mint(int timestamp, int parent) {
    if (timestamp < 1 || timestamp > ex_.slot_)
        throw PolicyViolation("block timestamp must be an elapsed slot");
    if (!ex_.trace_.schedule[static_cast<size_t>(timestamp - 1)].adversary)
        throw PolicyViolation("adversary was not elected in the claimed slot");
    if (parent < 0 || parent >= static_cast<int>(ex_.trace_.blocks.size()))
        throw PolicyViolation("unknown parent block");
    if (ex_.trace_.blocks[static_cast<size_t>(parent)].timestamp >= timestamp)
        throw PolicyViolation("parent timestamp must precede the block timestamp");
    return ex_.add_block(parent, timestamp, -1);
}

void AdversaryApi::send(int block, const std::vector<int>& recipients) {
    if (block < 0 || block >= static_cast<int>(ex_.trace_.blocks.size()))
        throw PolicyViolation("unknown block");
    if (recipients.empty()) throw PolicyViolation("empty recipient set");
    for (int r : recipients) {
        if (r < 0 || r >= ex_.tracked_) throw PolicyViolation("unknown recipient");
        ex_.trace_.messages.push_back(Message{ex_.slot_, -1, r, block, ex_.slot_, ex_.slot_});
        ex_.pending_[static_cast<size_t>(ex_.slot_)].push_back(
            static_cast<int>(ex_.trace_.messages.size()) - 1);
    }
}

void AdversaryApi::accelerate(size_t message_index, int arrival) {
    if (message_index >= ex_.trace_.messages.size()) throw PolicyViolation("unknown message");
    Message& m = ex_.trace_.messages[message_index];
    if (m.sender < 0) throw PolicyViolation("only honest messages ride the schedule");
    if (m.recipient == m.sender) throw PolicyViolation("self copies are held from the start");
    if (m.actual <= ex_.slot_ && m.actual != kNever)
        throw PolicyViolation("message already delivered");
    if (arrival < ex_.slot_ || arrival > m.actual)
        throw PolicyViolation("deliveries may be moved earlier only");
    if (arrival == m.actual) return;
    m.actual = arrival;
    if (arrival <= ex_.trace_.horizon)
        ex_.pending_[static_cast<size_t>(arrival)].push_back(static_cast<int>(message_index));
}

ExecutionTrace run_execution(const SimConfig& cfg, AdversaryPolicy& policy, uint64_t seed) {
    return Execution(cfg, policy, seed).run();
}

// ---- policies ----

void PrivateChainPolicy::act(AdversaryApi& api) {
    int i = api.slot();
    if (!anchored_ && i > anchor_) {
        private_tip_ = api.ancestor_at(api.chain_tip(targets_.front()), anchor_);
        anchored_ = true;
    }
    if (!anchored_) return;
    if (api.leaders().adversary) private_tip_ = api.mint(i, private_tip_);
    if (i >= s_ + k_ && private_tip_ != last_sent_) {
        int longest = 0;
        for (int p : targets_) longest = std::max(longest, api.depth(api.chain_tip(p)));
        if (api.depth(private_tip_) > longest) {
            api.send(private_tip_, targets_);
            last_sent_ = private_tip_;
        }
    }
}

MaxDelayBalancePolicy::MaxDelayBalancePolicy(std::vector<int> targets) {
    std::sort(targets.begin(), targets.end());
    size_t h = (targets.size() + 1) / 2;
    half_[0].assign(targets.begin(), targets.begin() + static_cast<long>(h));
    half_[1].assign(targets.begin() + static_cast<long>(h), targets.end());
}

void MaxDelayBalancePolicy::act(AdversaryApi& api) {
    if (!api.leaders().adversary) return;
    int i = api.slot();
    for (int b = 0; b < 2; ++b) {
        if (half_[b].empty()) continue;
        tip_[b] = api.mint(i, tip_[b]);
        api.send(tip_[b], half_[b]);
    }
}

// ---- property checks ----

namespace {

// Memoized deepest-ancestor-at-or-before-s lookup over the block tree.
class AnchorIndex {
  public:
    AnchorIndex(const ExecutionTrace& t, int s) : t_(t), s_(s), memo_(t.blocks.size(), -1) {}

    int operator()(int block) {
        path_.clear();
        int x = block;
        while (t_.blocks[static_cast<size_t>(x)].timestamp > s_ && memo_[static_cast<size_t>(x)] < 0) {
            path_.push_back(x);
            x = t_.blocks[static_cast<size_t>(x)].parent;
        }
        int a = t_.blocks[static_cast<size_t>(x)].timestamp <= s_ ? x
                                                                  : memo_[static_cast<size_t>(x)];
        for (int v : path_) memo_[static_cast<size_t>(v)] = a;
        return a;
    }

  private:
    const ExecutionTrace& t_;
    int s_;
    std::vector<int> memo_;
    std::vector<int> path_;
};

}  // namespace

std::vector<int> settlement_violations(const ExecutionTrace& t, int s, int k,
                                       const std::vector<int>& parties) {
    std::vector<int> out;
    if (parties.empty()) return out;
    int start = std::max(s + k, 1);
    if (start > t.horizon) return out;
    AnchorIndex anchor(t, s);
    std::vector<int> prev, cur;
    for (int i = start; i <= t.horizon; ++i) {
        cur.clear();
        for (int p : parties) cur.push_back(anchor(t.tip_at(i, p)));
        if (i > start) {  // some party's settled prefix moved between i-1 and i
            for (size_t j = 0; j < parties.size(); ++j)
                if (prev[j] != cur[j]) {
                    if (out.empty() || out.back() != i - 1) out.push_back(i - 1);
                    break;
                }
        }
        for (size_t j = 1; j < parties.size(); ++j)
            if (cur[j] != cur[0]) {  // two parties disagree at i
                if (out.empty() || out.back() != i) out.push_back(i);
                break;
            }
        std::swap(prev, cur);
    }
    return out;
}

CommonPrefixOutcome check_common_prefix(const ExecutionTrace& t, int T, int k,
                                        const std::vector<int>& parties) {
    for (int s = 1; s <= T; ++s) {
        std::vector<int> v = settlement_violations(t, s, k, parties);
        if (!v.empty()) return {false, s, v.front()};
    }
    return {};
}

std::vector<int> chain_quality_violations(const ExecutionTrace& t, double mu, int s, int k,
                                          const std::vector<int>& parties, CqMode mode) {
    std::vector<int> out;
    if (parties.empty()) return out;
    int start = std::max(s + k, 1);
    if (start > t.horizon) return out;
    double threshold = static_cast<double>(k) * leader_params(t.leaders_cfg).f * mu;

    std::vector<bool> counts_kind(t.blocks.size(), false);
    if (mode == CqMode::kSpecial) {
        for (int b : t.special_block)
            if (b >= 0) counts_kind[static_cast<size_t>(b)] = true;
    } else {
        for (const auto& b : t.blocks)
            if (b.proposer >= 0) counts_kind[static_cast<size_t>(b.id)] = true;
    }
    // window_count[b] = matching blocks with timestamp in (s, s+k] on b's chain
    std::vector<int> memo(t.blocks.size(), -1);
    std::vector<int> path;
    auto window_count = [&](int block) {
        path.clear();
        int x = block;
        while (x >= 0 && memo[static_cast<size_t>(x)] < 0) {
            path.push_back(x);
            x = t.blocks[static_cast<size_t>(x)].parent;
        }
        int acc = x >= 0 ? memo[static_cast<size_t>(x)] : 0;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            const Block& b = t.blocks[static_cast<size_t>(*it)];
            acc += counts_kind[static_cast<size_t>(*it)] && b.timestamp > s && b.timestamp <= s + k;
            memo[static_cast<size_t>(*it)] = acc;
        }
        return memo[static_cast<size_t>(block)];
    };

    for (int i = start; i <= t.horizon; ++i)
        for (int p : parties)
            if (static_cast<double>(window_count(t.tip_at(i, p))) <= threshold) {
                out.push_back(i);
                break;
            }
    return out;
}

UnheardSeries party_unheard(const ExecutionTrace& t, int party, bool actual_basis) {
    std::vector<HeardEvent> events;
    if (!actual_basis) {
        events = scheduled_special_events(t.chars, t.delay, t.seed, party);
    } else {
        // Realized arrivals of the special broadcasts at this party.
        events.reserve(t.chars.special_slots.size());
        size_t mi = 0;
        for (size_t j = 0; j < t.chars.special_slots.size(); ++j) {
            int slot = t.chars.special_slots[j];
            int leader = t.chars.special_leader[j];
            int arrival = kNever;
            while (mi < t.messages.size() && t.messages[mi].sender_slot < slot) ++mi;
            for (size_t x = mi; x < t.messages.size() && t.messages[x].sender_slot == slot; ++x)
                if (t.messages[x].sender == leader && t.messages[x].recipient == party)
                    arrival = t.messages[x].actual;
            events.push_back({slot, arrival});
        }
    }
    return build_unheard_series(t.chars.str, events, t.horizon);
}

UnheardSeries set_unheard(const ExecutionTrace& t, const std::vector<int>& parties,
                          bool actual_basis) {
    std::vector<UnheardSeries> parts;
    parts.reserve(parties.size());
    for (int p : parties) parts.push_back(party_unheard(t, p, actual_basis));
    return combine_worst(parts, t.chars.str, t.horizon);
}

NecessityAudit audit_settlement_necessity(const ExecutionTrace& t, int s, int k,
                                          const std::vector<int>& parties,
                                          const std::vector<int>& violation_slots) {
    NecessityAudit audit;
    if (violation_slots.empty()) return audit;
    (void)k;
    std::vector<int> margins = margin_sequence(t.chars.str, s);
    UnheardSeries unheard = set_unheard(t, parties, false);
    for (int i : violation_slots) {
        ++audit.checked;
        if (margins[static_cast<size_t>(i)] + unheard.unheard_at(i) < 0) {
            ++audit.contradictions;
            if (audit.first_bad_slot < 0) audit.first_bad_slot = i;
        }
    }
    return audit;
}

NecessityAudit audit_cq_necessity(const ExecutionTrace& t, double mu, int s, int k,
                                  const std::vector<int>& parties,
                                  const std::vector<int>& violation_slots) {
    NecessityAudit audit;
    if (violation_slots.empty()) return audit;
    std::vector<int> reach = reach_sequence(t.chars.str);
    UnheardSeries unheard = set_unheard(t, parties, false);
    double f = leader_params(t.leaders_cfg).f;
    // cumulative symbol counts for the advantage walk
    std::vector<int> n0(static_cast<size_t>(t.horizon) + 1, 0), n1(n0);
    for (int i = 1; i <= t.horizon; ++i) {
        n0[static_cast<size_t>(i)] =
            n0[static_cast<size_t>(i - 1)] + (t.chars.str.at(i) == TriSym::kZero);
        n1[static_cast<size_t>(i)] =
            n1[static_cast<size_t>(i - 1)] + (t.chars.str.at(i) == TriSym::kOne);
    }
    // a violation at slot i promises a witness slot j somewhere in [s+k, i],
    // not at i itself
    for (int i : violation_slots) {
        ++audit.checked;
        bool witnessed = false;
        for (int j = s + k; j <= i && !witnessed; ++j) {
            double advantage = (n1[static_cast<size_t>(j)] - n1[static_cast<size_t>(s)]) -
                               (n0[static_cast<size_t>(j)] - n0[static_cast<size_t>(s)]) +
                               static_cast<double>(k) * f * mu + reach[static_cast<size_t>(s)];
            witnessed = advantage + unheard.unheard_at(j) >= 0;
        }
        if (!witnessed) {
            ++audit.contradictions;
            if (audit.first_bad_slot < 0) audit.first_bad_slot = i;
        }
    }
    return audit;
}

Fork fork_at(const ExecutionTrace& t, int upto, std::vector<int>* vertex_block) {
    Fork f;
    f.label.clear();
    f.parent.clear();
    std::vector<int> remap(t.blocks.size(), -1);
    if (vertex_block) vertex_block->clear();
    for (const auto& b : t.blocks) {
        if (b.created_slot > upto) continue;
        int v = static_cast<int>(f.label.size());
        remap[static_cast<size_t>(b.id)] = v;
        f.label.push_back(b.timestamp);
        f.parent.push_back(b.parent < 0 ? -1 : remap[static_cast<size_t>(b.parent)]);
        if (vertex_block) vertex_block->push_back(b.id);
    }
    return f;
}

ForkCheck validate_trace_fork(const ExecutionTrace& t, int upto) {
    return validate_fork(fork_at(t, upto), t.chars.str.prefix(std::min(upto, t.chars.str.size())));
}

bool check_viability(const ExecutionTrace& t, int party, int slot) {
    UnheardSeries series = party_unheard(t, party, false);
    int l = series.latest_at(slot);
    if (l < 1) return true;
    int len = t.depth(t.tip_at(slot, party));
    for (size_t j = 0; j < t.chars.special_slots.size() && t.chars.special_slots[j] <= l; ++j)
        if (t.depth(t.special_block[j]) > len) return false;
    return true;
}

bool check_prefix_length_bound(const ExecutionTrace& t, int party, int slot, int s) {
    int lhs = t.depth(t.ancestor_at(t.tip_at(slot, party), s));
    int special_len = 0;
    for (size_t j = 0; j < t.chars.special_slots.size() && t.chars.special_slots[j] <= s; ++j)
        special_len = t.depth(t.special_block[j]);
    std::vector<int> reach = reach_sequence(t.chars.str);
    return lhs <= special_len + reach[static_cast<size_t>(s)];
}

bool check_special_chain_growth(const ExecutionTrace& t) {
    int prev = 0;
    for (int b : t.special_block) {
        if (t.depth(b) <= prev) return false;
        prev = t.depth(b);
    }
    return true;
}

}  // namespace lcsim
