#pragma once

// Unheard special-slot counts.
//
// For an honest party h at slot i, LatestHeard_h[i] is the latest special
// slot whose broadcast chain h holds by slot i (the sender's own copy counts
// via a pretend self-message), and Unheard_h[i] counts special slots after
// max{0, LatestHeard_h[i]} up to i -- the special chain growth h has not yet
// caught up with.  Settlement and chain-quality failures charge exactly this
// quantity on top of the string margin, so its tail behaviour is what the
// analytic bounds are made of.
//
// Two bases: "scheduled" uses the sampled network delays (what the analysis
// bounds; adversarial early delivery only helps the party), "actual" uses
// the delivery slots realized in an execution.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <vector>

#include "lcsim/charstring.hpp"
#include "lcsim/delay.hpp"
#include "lcsim/tristring.hpp"

namespace lcsim {

inline constexpr int kNeverHeard = INT_MIN / 4;

struct HeardEvent {
    int special_slot = 0;  // the '0' slot that was broadcast
    int arrival = 0;       // slot the chain reaches the party (kNever allowed)
};

// Latest special slot heard by slot i; kNeverHeard if none.
inline int latest_heard(const std::vector<HeardEvent>& events, int i) {
    int best = kNeverHeard;
    for (const auto& e : events)
        if (e.arrival != kNever && e.arrival <= i && e.special_slot > best) best = e.special_slot;
    return best;
}

struct UnheardSeries {
    std::vector<int> latest;   // per slot 1..horizon; kNeverHeard when nothing arrived
    std::vector<int> unheard;  // per slot 1..horizon

    int latest_at(int slot) const { return latest.at(static_cast<size_t>(slot - 1)); }
    int unheard_at(int slot) const { return unheard.at(static_cast<size_t>(slot - 1)); }
};

// Slot-by-slot series for one party over slots 1..horizon.
inline UnheardSeries build_unheard_series(const TriString& cs, const std::vector<HeardEvent>& events,
                                          int horizon) {
    UnheardSeries out;
    out.latest.assign(static_cast<size_t>(horizon), kNeverHeard);
    out.unheard.assign(static_cast<size_t>(horizon), 0);
    // cumulative '0' counts: zeros_upto[i] = N_0(cs[1:i])
    std::vector<int> zeros_upto(static_cast<size_t>(horizon) + 1, 0);
    for (int i = 1; i <= horizon; ++i)
        zeros_upto[static_cast<size_t>(i)] =
            zeros_upto[static_cast<size_t>(i) - 1] + (i <= cs.size() && cs.at(i) == TriSym::kZero);
    std::vector<std::vector<int>> arriving(static_cast<size_t>(horizon) + 1);
    for (const auto& e : events)
        if (e.arrival != kNever && e.arrival <= horizon)
            arriving[static_cast<size_t>(e.arrival < 1 ? 1 : e.arrival)].push_back(e.special_slot);
    int latest = kNeverHeard;
    for (int i = 1; i <= horizon; ++i) {
        for (int sp : arriving[static_cast<size_t>(i)])
            if (sp > latest) latest = sp;
        out.latest[static_cast<size_t>(i - 1)] = latest;
        int from = latest < 0 ? 0 : latest;
        out.unheard[static_cast<size_t>(i - 1)] =
            zeros_upto[static_cast<size_t>(i)] - zeros_upto[static_cast<size_t>(from)];
    }
    return out;
}

// Worst member of a party set: the smallest latest-heard slot, hence the
// largest unheard count, at every slot.
inline UnheardSeries combine_worst(const std::vector<UnheardSeries>& parts, const TriString& cs,
                                   int horizon) {
    UnheardSeries out;
    out.latest.assign(static_cast<size_t>(horizon), kNeverHeard);
    out.unheard.assign(static_cast<size_t>(horizon), 0);
    std::vector<int> zeros_upto(static_cast<size_t>(horizon) + 1, 0);
    for (int i = 1; i <= horizon; ++i)
        zeros_upto[static_cast<size_t>(i)] =
            zeros_upto[static_cast<size_t>(i) - 1] + (i <= cs.size() && cs.at(i) == TriSym::kZero);
    for (int i = 1; i <= horizon; ++i) {
        int latest = parts.empty() ? kNeverHeard : parts.front().latest_at(i);
        for (const auto& p : parts) latest = std::min(latest, p.latest_at(i));
        out.latest[static_cast<size_t>(i - 1)] = latest;
        int from = latest < 0 ? 0 : latest;
        out.unheard[static_cast<size_t>(i - 1)] =
            zeros_upto[static_cast<size_t>(i)] - zeros_upto[static_cast<size_t>(from)];
    }
    return out;
}

// Unheard count sampled at the base slot s and at every renewal after it.
inline std::vector<int> compressed_unheard(const UnheardSeries& series, const TriString& cs, int s,
                                           int max_terms = -1) {
    RenewalIndex renewals(cs);
    return compress_process<int>(
        [&](int slot) { return slot >= 1 ? series.unheard_at(slot) : 0; }, renewals, s, max_terms);
}

// Scheduled arrivals of every special broadcast at one recipient, read from
// the same per-message streams the simulator delivers with.
inline std::vector<HeardEvent> scheduled_special_events(const CharString& cs,
                                                        const DelayDistribution& delay,
                                                        uint64_t seed, int recipient) {
    std::vector<HeardEvent> out;
    out.reserve(cs.special_slots.size());
    for (size_t j = 0; j < cs.special_slots.size(); ++j) {
        int t = cs.special_slots[j];
        int h = cs.special_leader[j];
        if (h == recipient) {  // the leader holds its own chain immediately
            out.push_back({t, t});
            continue;
        }
        int d = DelaySampler(delay, message_delay_stream(seed, t, h, recipient)).sample();
        out.push_back({t, d == kNever ? kNever : t + d});
    }
    return out;
}

}  // namespace lcsim
