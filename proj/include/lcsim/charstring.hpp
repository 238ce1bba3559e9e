#pragma once

// Characteristic strings: refine the leader string by marking which
// uniquely-honest slots are *special* -- the leader heard the most recent
// special broadcast strictly before its own slot, so its block strictly
// extends the previous special chain.
//
// Writing T_1 < T_2 < ... for the non-empty slots and T_{j*} for the last
// special slot at or before T_{j-1}, a uniquely-honest T_j led by h_j is
// special iff R_j < T_j - T_{j-1}, where
//
//   one_time model:  R_j = delay(T_{j*} -> h_j)                (the raw delay)
//   iid model:       R_j = refresh_{T_{j-1} - T_{j*}}(delay(T_{j*} -> h_j))
//
// The refresh makes the i.i.d. construction stationary: whatever portion of
// the delay was already "used up" by slots before T_{j-1} is redrawn from the
// unconsumed part of the message's uniform stream.  Because the simulator
// draws the actual delivery delay of that same message from the same stream,
// special slots are guaranteed (not just likely) to extend the special chain.
//
// The process is extended to slots <= 0 so that slot 1 has a well-defined
// history: pre-genesis renewals are walked backwards, each labeled special
// with probability alpha * P(Delta < gap), until a special one is found.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lcsim/delay.hpp"
#include "lcsim/leaders.hpp"
#include "lcsim/rng.hpp"
#include "lcsim/tristring.hpp"

namespace lcsim {

// The uniform stream of one broadcast message (sender slot may be <= 0 for
// the virtual pre-genesis senders; sender -1 likewise marks a virtual or
// adversarial sender).  Simulator deliveries and characteristic-string
// residuals must read the same stream, so this helper is the single source
// of message stream keys.
inline UniformStream message_delay_stream(uint64_t seed, int64_t sender_slot, int sender,
                                          int recipient) {
    return UniformStream(StreamKey{
        seed, Domain::kMessageDelay, encode_slot(sender_slot),
        (static_cast<uint64_t>(static_cast<uint32_t>(sender + 1)) << 32) |
            static_cast<uint64_t>(static_cast<uint32_t>(recipient + 1))});
}

// Geometric gap on {1, 2, ...} with success rate f, by inversion of one
// uniform: P(G = g) = f (1-f)^{g-1}.
inline int sample_geometric_gap(double u, double f) {
    if (f >= 1.0) return 1;
    int g = 1 + static_cast<int>(std::log1p(-u) / std::log1p(-f));
    return g < 1 ? 1 : g;
}

struct NegativeExtension {
    std::vector<int> renewal_slots;  // T_0 >= T_-1 >= ... (all <= 0), walked backwards
    std::vector<bool> special;       // label of each walked renewal
    int last_special_slot = 0;       // the virtual "previous special" for slot 1
    bool hit_cutoff = false;         // walked max_renewals without a special label
};

// Walk the stationary pre-genesis renewals back to the first special one.
// If none shows up within max_renewals (probability (1-p)^max_renewals), the
// oldest walked renewal is declared special so the construction can proceed.
inline NegativeExtension sample_negative_extension(double f, double alpha,
                                                   const DelayDistribution& delay, uint64_t seed,
                                                   int max_renewals = 10000) {
    if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("non-empty slot rate must be in (0,1]");
    NegativeExtension out;
    SequentialRng rng(StreamKey{seed, Domain::kNegativeExtension, 0, 0});
    // T_0 is the last non-empty slot <= 0: at distance geom(f) - 1 behind slot 0.
    int t = -(sample_geometric_gap(rng.next_unit(), f) - 1);
    for (int walked = 0; walked < max_renewals; ++walked) {
        int gap = sample_geometric_gap(rng.next_unit(), f);
        bool is_special = rng.bernoulli(alpha * delay.cdf_lt(gap));
        out.renewal_slots.push_back(t);
        out.special.push_back(is_special);
        if (is_special) {
            out.last_special_slot = t;
            return out;
        }
        t -= gap;
    }
    out.hit_cutoff = true;
    out.last_special_slot = out.renewal_slots.back();
    out.special.back() = true;
    return out;
}

struct CharString {
    TriString str;                    // slots 1..horizon over {'.', '0', '1'}
    NegativeExtension pre;            // pre-genesis part of the construction
    std::vector<int> special_slots;   // positive special slots, ascending
    std::vector<int> special_leader;  // leader id of each special slot
};

// Mark special slots against the leader schedule.  Delay realizations are
// read from the per-message streams keyed by (seed, sender slot, sender,
// recipient); in the i.i.d. model the simulator's deliveries read the very
// same streams.
inline CharString build_char_string(const std::vector<SlotLeaders>& schedule,
                                    const LeaderConfig& leaders_cfg,
                                    const DelayDistribution& delay, uint64_t seed,
                                    int negext_max_renewals = 10000) {
    if (leaders_cfg.model == LeaderModel::kIid && !delay.non_decreasing_failure_rate())
        throw std::invalid_argument(
            "iid leader model requires a delay law with non-decreasing failure rates");

    LeaderParams params = leader_params(leaders_cfg);
    CharString out;
    out.pre = sample_negative_extension(params.f, params.alpha, delay, seed, negext_max_renewals);

    int prev_renewal = out.pre.renewal_slots.empty() ? 0 : out.pre.renewal_slots.front();
    int last_special = out.pre.last_special_slot;
    int last_special_leader = -1;  // virtual pre-genesis senders have no identity

    for (const auto& L : schedule) {
        TriSym sym = leader_symbol(L);
        if (sym == TriSym::kBot) {
            out.str.push_back(TriSym::kBot);
            continue;
        }
        if (sym == TriSym::kZero) {
            int h = L.honest.front();
            int gap = L.slot - prev_renewal;
            DelaySampler sampler(delay,
                                 message_delay_stream(seed, last_special, last_special_leader, h));
            int residual = leaders_cfg.model == LeaderModel::kOneTime
                               ? sampler.sample()
                               : sampler.refreshed(prev_renewal - last_special);
            if (residual != kNever && residual < gap) {
                out.str.push_back(TriSym::kZero);
                out.special_slots.push_back(L.slot);
                out.special_leader.push_back(h);
                last_special = L.slot;
                last_special_leader = h;
            } else {
                out.str.push_back(TriSym::kOne);
            }
        } else {
            out.str.push_back(TriSym::kOne);
        }
        prev_renewal = L.slot;
    }
    return out;
}

// Compressed characteristic string from base slot s: entry 0 is the symbol
// at slot s itself (bot if s = 0), entry j the symbol at the j-th non-empty
// slot after s.
inline std::vector<TriSym> compressed_char_string(const TriString& cs, int s, int max_terms = -1) {
    RenewalIndex renewals(cs);
    return compress_process<TriSym>(
        [&](int slot) { return slot >= 1 ? cs.at(slot) : TriSym::kBot; }, renewals, s, max_terms);
}

}  // namespace lcsim
