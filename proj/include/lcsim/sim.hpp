#pragma once

// Longest-chain protocol execution.
//
// Each slot runs five phases in order: leader election, honest send,
// adversarial send, deliver, adopt.  Honest leaders append a block to their
// own chain and broadcast it; per-recipient delays come from the addressed
// per-message streams (so the characteristic string construction sees the
// same realizations).  The adversary may mint blocks with timestamps of any
// slot it led (several per slot if it likes), send any block to any subset
// of honest parties with same-slot delivery, and deliver pending honest
// messages ahead of schedule -- never later.  Honest parties switch only to
// strictly longer chains; length ties among new candidates go to the
// adversary's tie_break.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcsim/charstring.hpp"
#include "lcsim/delay.hpp"
#include "lcsim/fork.hpp"
#include "lcsim/leaders.hpp"
#include "lcsim/tristring.hpp"
#include "lcsim/unheard.hpp"

namespace lcsim {

struct Block {
    int id = 0;
    int parent = -1;
    int timestamp = 0;     // the slot whose election authorizes the block
    int proposer = -1;     // party id; -1 = adversary (id 0 is the genesis block)
    int created_slot = 0;  // when the block came into existence (withheld blocks age)
};

struct Message {
    int sender_slot = 0;
    int sender = -1;  // -1 = adversary
    int recipient = 0;
    int block = 0;      // tip conveyed; the whole chain travels with it
    int scheduled = 0;  // arrival slot under the sampled network delay (kNever allowed)
    int actual = 0;     // realized arrival (<= scheduled; == sender_slot for self copies)
};

struct ExecutionTrace {
    uint64_t seed = 0;
    int horizon = 0;
    LeaderConfig leaders_cfg;
    DelayDistribution delay;
    std::vector<SlotLeaders> schedule;
    TriString leader_str;
    CharString chars;

    int tracked = 0;  // parties 0..tracked-1 are materialized slot by slot
    std::vector<Block> blocks;
    std::vector<int> block_depth;
    std::vector<Message> messages;
    std::vector<int> tips;          // row-major [slot-1][party]: tip at END of slot
    std::vector<int> special_block; // block id per chars.special_slots entry

    int tip_at(int slot, int party) const {
        return tips[static_cast<size_t>(slot - 1) * static_cast<size_t>(tracked) +
                    static_cast<size_t>(party)];
    }
    int depth(int block) const { return block_depth[static_cast<size_t>(block)]; }
    // Deepest ancestor with timestamp <= max_ts (possibly the block itself).
    int ancestor_at(int block, int max_ts) const {
        while (blocks[static_cast<size_t>(block)].timestamp > max_ts)
            block = blocks[static_cast<size_t>(block)].parent;
        return block;
    }
};

struct PolicyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Execution;

// The adversary's window into the run: everything up to the current slot,
// plus the action verbs.  No future information is reachable from here.
class AdversaryApi {
  public:
    explicit AdversaryApi(Execution& ex) : ex_(ex) {}

    int slot() const;
    int tracked() const;
    const SlotLeaders& leaders() const;            // current slot's election
    bool adversary_led(int slot) const;            // any slot <= current
    const std::vector<Block>& blocks() const;
    int depth(int block) const;
    int chain_tip(int party) const;                // mid-slot view
    int ancestor_at(int block, int max_ts) const;
    // Honest messages broadcast this slot, with their sampled delays.
    const std::vector<Message>& messages() const;  // full log, current slot at the tail
    SequentialRng& rng();

    int mint(int timestamp, int parent);
    void send(int block, const std::vector<int>& recipients);
    void accelerate(size_t message_index, int arrival);

  private:
    Execution& ex_;
};

class AdversaryPolicy {
  public:
    virtual ~AdversaryPolicy() = default;
    virtual void act(AdversaryApi&) {}
    // Pick among equally long new candidate tips (indices into `candidates`);
    // the engine ignores out-of-range answers.
    virtual int tie_break(int /*party*/, int /*slot*/, const std::vector<int>& /*candidates*/) {
        return 0;
    }
};

struct SimConfig {
    LeaderConfig leaders;
    DelayDistribution delay = DelayDistribution::constant(0);
    int horizon = 0;
    int negext_max_renewals = 10000;
};

ExecutionTrace run_execution(const SimConfig& cfg, AdversaryPolicy& policy, uint64_t seed);

// ---- Built-in adversary policies ----

// Follows the protocol and never acts.
class NullPolicy : public AdversaryPolicy {};

// Withholds a chain grown from the adversary's elected slots, rooted at the
// honest chain's state at anchor_slot, and releases it to the target parties
// once it is strictly longer than all of their chains at or after slot s+k.
class PrivateChainPolicy : public AdversaryPolicy {
  public:
    PrivateChainPolicy(int s, int k, int anchor_slot, std::vector<int> targets)
        : s_(s), k_(k), anchor_(anchor_slot), targets_(std::move(targets)) {}
    void act(AdversaryApi& api) override;

  private:
    int s_, k_, anchor_;
    std::vector<int> targets_;
    bool anchored_ = false;
    int private_tip_ = 0;
    int last_sent_ = -1;
};

// Grows two withheld branches in lockstep (two blocks per elected slot) and
// keeps disjoint halves of the target set on opposite branches.  Never
// delivers anything early.
class MaxDelayBalancePolicy : public AdversaryPolicy {
  public:
    explicit MaxDelayBalancePolicy(std::vector<int> targets);
    void act(AdversaryApi& api) override;

  private:
    std::vector<int> half_[2];
    int tip_[2] = {0, 0};
};

// ---- Property checks over a finished trace ----

// Slots i >= s+k where the s-prefix is unsettled: two parties disagree at i,
// or some party's s-prefix changes between i and i+1.
std::vector<int> settlement_violations(const ExecutionTrace& t, int s, int k,
                                       const std::vector<int>& parties);

// Settlement for every base slot s <= T (the common-prefix property).
struct CommonPrefixOutcome {
    bool holds = true;
    int s = -1, slot = -1;  // earliest violated base slot and where
};
CommonPrefixOutcome check_common_prefix(const ExecutionTrace& t, int T, int k,
                                        const std::vector<int>& parties);

enum class CqMode { kSpecial, kHonest };

// Slots i >= s+k where some party's chain window (s, s+k] carries at most
// k*f*mu blocks of the required kind.
std::vector<int> chain_quality_violations(const ExecutionTrace& t, double mu, int s, int k,
                                          const std::vector<int>& parties, CqMode mode);

// Scheduled-basis unheard series for one party / the worst of a party set.
UnheardSeries party_unheard(const ExecutionTrace& t, int party, bool actual_basis = false);
UnheardSeries set_unheard(const ExecutionTrace& t, const std::vector<int>& parties,
                          bool actual_basis = false);

// Every settlement violation must satisfy Margin_s(w[1:i]) + Unheard[i] >= 0;
// every special chain-quality violation must satisfy
// Advantage_s(w[1:i]) + Unheard[i] >= 0 with
// Advantage = N_1(w[s+1:i]) - N_0(w[s+1:i]) + k*f*mu + Reach(w[1:s]).
// A contradiction in either is a theory failure, not a statistics failure.
struct NecessityAudit {
    long long checked = 0;
    long long contradictions = 0;
    int first_bad_slot = -1;
};
NecessityAudit audit_settlement_necessity(const ExecutionTrace& t, int s, int k,
                                          const std::vector<int>& parties,
                                          const std::vector<int>& violation_slots);
NecessityAudit audit_cq_necessity(const ExecutionTrace& t, double mu, int s, int k,
                                  const std::vector<int>& parties,
                                  const std::vector<int>& violation_slots);

// The global blocktree at the end of slot `upto` (withheld blocks included),
// as a fork of the characteristic string prefix.
Fork fork_at(const ExecutionTrace& t, int upto, std::vector<int>* vertex_block = nullptr);
ForkCheck validate_trace_fork(const ExecutionTrace& t, int upto);

// Every chain a party holds is viable: at least as long as the depth of
// every special block it has provably heard of (scheduled basis).
bool check_viability(const ExecutionTrace& t, int party, int slot);

// Prefix-length bound at the base slot: the s-prefix of any held chain is at
// most Reach(w[1:s]) blocks longer than the special chain at s.
bool check_prefix_length_bound(const ExecutionTrace& t, int party, int slot, int s);

// Special blocks sit at strictly increasing depths, each at least one deeper
// than the previous (so the special chain grows by N_0 over any window).
bool check_special_chain_growth(const ExecutionTrace& t);

}  // namespace lcsim
