#pragma once

// Ternary slot strings over {'.', '0', '1'} and their renewal structure.
//
// Slots are 1-based throughout: position i of a string describes slot i.
// '.' marks an empty slot (no leader), '0' a uniquely-honest (or special
// honest) slot, '1' an adversarial or multiply-led slot.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lcsim {

enum class TriSym : uint8_t { kBot = 0, kZero = 1, kOne = 2 };

inline char to_char(TriSym s) {
    switch (s) {
        case TriSym::kBot: return '.';
        case TriSym::kZero: return '0';
        case TriSym::kOne: return '1';
    }
    return '?';
}

inline TriSym sym_from_char(char c) {
    switch (c) {
        case '.': return TriSym::kBot;
        case '0': return TriSym::kZero;
        case '1': return TriSym::kOne;
        default: throw std::invalid_argument(std::string("bad slot symbol '") + c + "'");
    }
}

class TriString {
  public:
    TriString() = default;
    explicit TriString(std::vector<TriSym> syms) : s_(std::move(syms)) {}
    explicit TriString(std::string_view text) {
        s_.reserve(text.size());
        for (char c : text) s_.push_back(sym_from_char(c));
    }

    int size() const { return static_cast<int>(s_.size()); }
    bool empty() const { return s_.empty(); }

    // 1-based slot access.
    TriSym at(int i) const { return s_.at(static_cast<size_t>(i - 1)); }
    void set(int i, TriSym v) { s_.at(static_cast<size_t>(i - 1)) = v; }
    void push_back(TriSym v) { s_.push_back(v); }

    std::string text() const {
        std::string out;
        out.reserve(s_.size());
        for (TriSym s : s_) out.push_back(to_char(s));
        return out;
    }

    // Count of a symbol over slots [lo, hi]; empty range -> 0.
    int count(TriSym v, int lo, int hi) const {
        if (lo < 1) lo = 1;
        if (hi > size()) hi = size();
        int n = 0;
        for (int i = lo; i <= hi; ++i)
            if (at(i) == v) ++n;
        return n;
    }
    int count_zero(int lo, int hi) const { return count(TriSym::kZero, lo, hi); }
    int count_one(int lo, int hi) const { return count(TriSym::kOne, lo, hi); }
    int count_nonempty(int lo, int hi) const {
        return count_zero(lo, hi) + count_one(lo, hi);
    }

    // Slots of all non-'.' symbols, ascending.
    std::vector<int> nonempty_slots() const {
        std::vector<int> out;
        for (int i = 1; i <= size(); ++i)
            if (at(i) != TriSym::kBot) out.push_back(i);
        return out;
    }
    std::vector<int> slots_of(TriSym v) const {
        std::vector<int> out;
        for (int i = 1; i <= size(); ++i)
            if (at(i) == v) out.push_back(i);
        return out;
    }

    TriString prefix(int i) const {
        if (i < 0 || i > size()) throw std::out_of_range("prefix length");
        return TriString(std::vector<TriSym>(s_.begin(), s_.begin() + i));
    }

    bool operator==(const TriString& o) const { return s_ == o.s_; }

  private:
    std::vector<TriSym> s_;
};

// Positions of non-empty slots ("renewal" slots) of a string, with the
// shifted view used by compressed processes: the j-th renewal strictly after
// a base slot s.
class RenewalIndex {
  public:
    explicit RenewalIndex(const TriString& w) : slots_(w.nonempty_slots()) {}
    explicit RenewalIndex(std::vector<int> slots) : slots_(std::move(slots)) {}

    int count() const { return static_cast<int>(slots_.size()); }
    // 1-based: T(j) = slot of the j-th non-empty symbol.
    int T(int j) const { return slots_.at(static_cast<size_t>(j - 1)); }
    const std::vector<int>& slots() const { return slots_; }

    // Number of renewals in slots [s+1, s+i]; i.e. N(w[s+1 : s+i]).
    // T_after(s, j) = offset i of the j-th such renewal: min{i : N(...) = j}.
    int count_after(int s) const {
        return count() - static_cast<int>(first_after(s));
    }
    int T_after(int s, int j) const {
        size_t idx = first_after(s) + static_cast<size_t>(j - 1);
        if (j < 1 || idx >= slots_.size()) throw std::out_of_range("renewal index");
        return slots_[idx] - s;
    }

  private:
    size_t first_after(int s) const {
        size_t lo = 0;
        while (lo < slots_.size() && slots_[lo] <= s) ++lo;  // slots_ short; linear is fine
        return lo;
    }

    std::vector<int> slots_;
};

// Compressed view of a slot-indexed process: sample at the base slot s, then
// at every renewal strictly after s.  out[0] = value at s, out[j] = value at
// slot s + T_after(s, j).  Values at slot 0 come from `at_zero` when s = 0.
template <typename T, typename F>
std::vector<T> compress_process(const F& value_at_slot, const RenewalIndex& renewals, int s,
                                int max_terms = -1) {
    std::vector<T> out;
    int n = renewals.count_after(s);
    if (max_terms >= 0 && max_terms < n) n = max_terms;
    out.reserve(static_cast<size_t>(n) + 1);
    out.push_back(value_at_slot(s));
    for (int j = 1; j <= n; ++j) out.push_back(value_at_slot(s + renewals.T_after(s, j)));
    return out;
}

}  // namespace lcsim
