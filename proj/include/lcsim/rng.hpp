#pragma once

// Counter-based random streams.
//
// Every random quantity in the simulator is addressed, not drawn from shared
// mutable state: a stream is identified by (seed, domain, k1, k2) and position
// i within the stream.  This is what makes refreshed delay residuals, replay,
// and multi-worker runs deterministic -- the i-th uniform of a message's delay
// stream has the same value no matter when or on which thread it is read.

#include <cstdint>

namespace lcsim {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer: a well-mixed bijection on 64-bit words.
inline constexpr uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline constexpr double to_unit(uint64_t bits) {
    // 53 mantissa bits -> uniform double in [0, 1).
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream identities.  Domains keep unrelated uses of the same key fields
// (e.g. slot numbers) from colliding.
enum class Domain : uint64_t {
    kLeaderDraw = 1,       // per-slot leader election outcome
    kLeaderIdentity = 2,   // which honest parties got the seats
    kMessageDelay = 3,     // per (sender slot, sender, recipient) delay stream
    kNegativeExtension = 4,// pre-genesis renewal labels
    kTrialStream = 5,      // per-trial sequential generator
    kPolicy = 6,           // adversary-internal randomness
};

struct StreamKey {
    uint64_t seed = 0;
    Domain domain = Domain::kTrialStream;
    uint64_t k1 = 0;
    uint64_t k2 = 0;
};

// Signed slot indices (negative-time extension) map to well-separated u64s.
inline constexpr uint64_t encode_slot(int64_t slot) {
    return static_cast<uint64_t>(slot) + (1ull << 40);
}

// A replayable uniform stream: position i -> U[i] in [0,1).
class UniformStream {
  public:
    UniformStream() = default;
    explicit UniformStream(const StreamKey& key) {
        uint64_t h = mix64(key.seed + kGolden);
        h = mix64(h ^ (static_cast<uint64_t>(key.domain) * kGolden));
        h = mix64(h ^ (key.k1 * 0xD6E8FEB86659FD93ull));
        h = mix64(h ^ (key.k2 * 0xCA5A826395121157ull));
        base_ = h;
    }

    uint64_t bits(uint64_t i) const { return mix64(base_ + i * kGolden); }
    double operator[](uint64_t i) const { return to_unit(bits(i)); }

  private:
    uint64_t base_ = 0;
};

// Cheap sequential generator for bulk Monte Carlo (SplitMix64 proper).
class SequentialRng {
  public:
    SequentialRng() = default;
    explicit SequentialRng(uint64_t seed) : state_(mix64(seed + kGolden)) {}
    explicit SequentialRng(const StreamKey& key) : state_(UniformStream(key).bits(0)) {}

    uint64_t next_bits() {
        state_ += kGolden;
        return mix64(state_);
    }
    double next_unit() { return to_unit(next_bits()); }
    bool bernoulli(double p) { return next_unit() < p; }

    // Uniform integer in [0, n) by rejection-free scaling (n << 2^64).
    uint64_t next_below(uint64_t n) {
        return static_cast<uint64_t>(next_unit() * static_cast<double>(n));
    }

  private:
    uint64_t state_ = 0;
};

}  // namespace lcsim
