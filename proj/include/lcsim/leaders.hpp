#pragma once

// Slot leader election.
//
// Each slot independently draws (N, A) from a finite joint law: N honest
// seats and whether the adversary leads.  Two population models:
//
//  * iid      -- a fixed set of honest parties {0..population-1}; the N seats
//                go to N distinct parties drawn uniformly.  Every party also
//                observes.
//  * one_time -- fresh miners, each elected at most once: ids are consumed in
//                order starting right after the observer ids [0..observers).
//                Observers are never elected.  This model tolerates delay
//                distributions with mass at "never".
//
// The derived scalars are f = P(N + A > 0) (non-empty slot rate) and
// alpha = P(N = 1, A = 0 | non-empty) (uniquely-honest fraction).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lcsim/rng.hpp"
#include "lcsim/tristring.hpp"

namespace lcsim {

enum class LeaderModel { kIid, kOneTime };

struct JointLawEntry {
    int honest = 0;        // N: number of honest seats
    bool adversary = false;  // A: adversary elected
    double prob = 0.0;
};

struct LeaderConfig {
    LeaderModel model = LeaderModel::kIid;
    std::vector<JointLawEntry> joint_law;
    int population = 0;   // iid: number of honest parties
    int observers = 0;    // one_time: ids [0, observers) never elected

    void validate() const {
        double sum = 0.0;
        int max_honest = 0;
        for (const auto& e : joint_law) {
            if (e.honest < 0 || e.prob < 0.0) throw std::invalid_argument("bad joint law entry");
            sum += e.prob;
            if (e.honest > max_honest) max_honest = e.honest;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("joint law must sum to 1");
        if (model == LeaderModel::kIid && population < max_honest)
            throw std::invalid_argument("population smaller than max honest seat count");
        if (model == LeaderModel::kOneTime && observers < 0)
            throw std::invalid_argument("observer count must be >= 0");
    }
};

struct LeaderParams {
    double f = 0.0;      // P(slot non-empty)
    double alpha = 0.0;  // P(uniquely honest | non-empty)
};

inline LeaderParams leader_params(const LeaderConfig& cfg) {
    LeaderParams out;
    double unique = 0.0;
    for (const auto& e : cfg.joint_law) {
        if (e.honest + (e.adversary ? 1 : 0) > 0) out.f += e.prob;
        if (e.honest == 1 && !e.adversary) unique += e.prob;
    }
    out.alpha = out.f > 0.0 ? unique / out.f : 0.0;
    return out;
}

struct SlotLeaders {
    int slot = 0;
    std::vector<int> honest;  // party ids holding the N seats
    bool adversary = false;
};

// The (N, A) outcome of one slot: CDF inversion over the law entries in
// config order against one addressed uniform.
inline const JointLawEntry& draw_slot_outcome(const LeaderConfig& cfg, uint64_t seed, int slot) {
    UniformStream u(StreamKey{seed, Domain::kLeaderDraw, static_cast<uint64_t>(slot), 0});
    double x = u[0];
    double acc = 0.0;
    for (const auto& e : cfg.joint_law) {
        acc += e.prob;
        if (x < acc) return e;
    }
    return cfg.joint_law.back();  // guard against rounding at the top end
}

// Full schedule for slots 1..horizon.  One-time miner ids are consumed in
// slot order, then seat order.
inline std::vector<SlotLeaders> build_leader_schedule(const LeaderConfig& cfg, uint64_t seed,
                                                      int horizon) {
    cfg.validate();
    std::vector<SlotLeaders> out(static_cast<size_t>(horizon));
    int next_miner = cfg.observers;
    for (int slot = 1; slot <= horizon; ++slot) {
        const JointLawEntry& e = draw_slot_outcome(cfg, seed, slot);
        SlotLeaders& L = out[static_cast<size_t>(slot - 1)];
        L.slot = slot;
        L.adversary = e.adversary;
        if (e.honest > 0) {
            L.honest.reserve(static_cast<size_t>(e.honest));
            if (cfg.model == LeaderModel::kIid) {
                // N distinct parties: partial Fisher-Yates over {0..pop-1}.
                UniformStream u(
                    StreamKey{seed, Domain::kLeaderIdentity, static_cast<uint64_t>(slot), 0});
                std::vector<int> pool(static_cast<size_t>(cfg.population));
                for (int p = 0; p < cfg.population; ++p) pool[static_cast<size_t>(p)] = p;
                for (int j = 0; j < e.honest; ++j) {
                    auto pick = static_cast<size_t>(
                        to_unit(u.bits(static_cast<uint64_t>(j))) * static_cast<double>(cfg.population - j));
                    std::swap(pool[static_cast<size_t>(j)], pool[static_cast<size_t>(j) + pick]);
                    L.honest.push_back(pool[static_cast<size_t>(j)]);
                }
            } else {
                for (int j = 0; j < e.honest; ++j) L.honest.push_back(next_miner++);
            }
        }
    }
    return out;
}

// Characteristic symbol of a slot before delays are considered:
// '.' empty, '0' uniquely honest, '1' adversarial or multiply honest.
inline TriSym leader_symbol(const SlotLeaders& L) {
    if (L.adversary || L.honest.size() > 1) return TriSym::kOne;
    if (L.honest.size() == 1) return TriSym::kZero;
    return TriSym::kBot;
}

inline TriString leader_string(const std::vector<SlotLeaders>& schedule) {
    TriString out;
    for (const auto& L : schedule) out.push_back(leader_symbol(L));
    return out;
}

}  // namespace lcsim
