#include "lcsim/fork.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace lcsim {

namespace {
constexpr int kMinusInf = INT_MIN / 4;
}  // namespace

std::vector<int> fork_depths(const Fork& f) {
    int n = f.size();
    std::vector<int> d(static_cast<size_t>(n), -1);
    if (n == 0) return d;
    d[0] = 0;
    std::vector<int> path;
    for (int v = 1; v < n; ++v) {
        if (d[static_cast<size_t>(v)] >= 0) continue;
        path.clear();
        int u = v;
        while (u > 0 && d[static_cast<size_t>(u)] < 0) {
            path.push_back(u);
            u = f.parent[static_cast<size_t>(u)];
            if (static_cast<int>(path.size()) > n) throw std::invalid_argument("fork has a cycle");
        }
        if (u < 0) throw std::invalid_argument("fork has a second root");
        int base = d[static_cast<size_t>(u)];
        for (auto it = path.rbegin(); it != path.rend(); ++it) d[static_cast<size_t>(*it)] = ++base;
    }
    return d;
}

ForkCheck validate_fork(const Fork& f, const TriString& w) {
    int n = f.size();
    if (n == 0 || f.parent[0] != -1 || static_cast<int>(f.parent.size()) != n)
        return {false, 1, "vertex 0 must be the unique root"};
    for (int v = 1; v < n; ++v) {
        int p = f.parent[static_cast<size_t>(v)];
        if (p < 0 || p >= n) return {false, 1, "non-root vertex without a valid parent"};
    }
    for (int v = 0; v < n; ++v) {  // every parent chain must reach the root
        int u = v, steps = 0;
        while (u != 0) {
            u = f.parent[static_cast<size_t>(u)];
            if (u < 0 || ++steps > n) return {false, 1, "parent chain does not reach the root"};
        }
    }
    if (f.label[0] != 0) return {false, 2, "root must be labeled 0"};
    for (int v = 1; v < n; ++v) {
        int lab = f.label[static_cast<size_t>(v)];
        if (lab < 1 || lab > w.size() || w.at(lab) == TriSym::kBot)
            return {false, 2, "vertex labels must be non-empty slots"};
    }
    for (int v = 1; v < n; ++v)
        if (f.label[static_cast<size_t>(f.parent[static_cast<size_t>(v)])] >=
            f.label[static_cast<size_t>(v)])
            return {false, 3, "labels must strictly increase along edges"};
    std::vector<int> zeros = w.slots_of(TriSym::kZero);
    std::vector<int> seen(static_cast<size_t>(w.size()) + 1, 0);
    for (int v = 1; v < n; ++v)
        if (w.at(f.label[static_cast<size_t>(v)]) == TriSym::kZero)
            ++seen[static_cast<size_t>(f.label[static_cast<size_t>(v)])];
    for (int z : zeros)
        if (seen[static_cast<size_t>(z)] != 1)
            return {false, 4, "slot " + std::to_string(z) + " must label exactly one vertex"};
    std::vector<int> depth = fork_depths(f);
    int prev = 0;  // root depth; first special must sit strictly below the root
    std::vector<int> depth_of_zero(static_cast<size_t>(w.size()) + 1, -1);
    for (int v = 1; v < n; ++v)
        if (w.at(f.label[static_cast<size_t>(v)]) == TriSym::kZero)
            depth_of_zero[static_cast<size_t>(f.label[static_cast<size_t>(v)])] =
                depth[static_cast<size_t>(v)];
    for (int z : zeros) {
        if (depth_of_zero[static_cast<size_t>(z)] <= prev)
            return {false, 5, "special depths must strictly increase in slot order"};
        prev = depth_of_zero[static_cast<size_t>(z)];
    }
    return {};
}

Fork closure(const Fork& f, const TriString& w) {
    int n = f.size();
    std::vector<int> child_count(static_cast<size_t>(n), 0);
    for (int v = 1; v < n; ++v) ++child_count[static_cast<size_t>(f.parent[static_cast<size_t>(v)])];
    std::vector<bool> removed(static_cast<size_t>(n), false);
    std::vector<int> stack;
    for (int v = 1; v < n; ++v)
        if (child_count[static_cast<size_t>(v)] == 0 &&
            w.at(f.label[static_cast<size_t>(v)]) != TriSym::kZero)
            stack.push_back(v);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        removed[static_cast<size_t>(v)] = true;
        int p = f.parent[static_cast<size_t>(v)];
        if (--child_count[static_cast<size_t>(p)] == 0 && p != 0 &&
            w.at(f.label[static_cast<size_t>(p)]) != TriSym::kZero)
            stack.push_back(p);
    }
    // Rebuild parent-first (children of the fork are visited root-down).
    std::vector<std::vector<int>> kids(static_cast<size_t>(n));
    for (int v = 1; v < n; ++v)
        if (!removed[static_cast<size_t>(v)])
            kids[static_cast<size_t>(f.parent[static_cast<size_t>(v)])].push_back(v);
    Fork out;
    out.label = {0};
    out.parent = {-1};
    std::vector<int> remap(static_cast<size_t>(n), -1);
    remap[0] = 0;
    std::vector<int> order = {0};
    for (size_t qi = 0; qi < order.size(); ++qi) {
        for (int c : kids[static_cast<size_t>(order[qi])]) {
            remap[static_cast<size_t>(c)] =
                out.add(f.label[static_cast<size_t>(c)], remap[static_cast<size_t>(order[qi])]);
            order.push_back(c);
        }
    }
    return out;
}

TineMetrics tine_metrics(const Fork& closed, const TriString& w, int vertex) {
    std::vector<int> depth = fork_depths(closed);
    int deepest = 0;
    for (int d : depth) deepest = std::max(deepest, d);
    TineMetrics m;
    m.gap = deepest - depth[static_cast<size_t>(vertex)];
    m.reserve = w.count_one(closed.label[static_cast<size_t>(vertex)] + 1, w.size());
    m.reach = m.reserve - m.gap;
    return m;
}

std::vector<int> reach_sequence(const TriString& w) {
    std::vector<int> out(static_cast<size_t>(w.size()) + 1, 0);
    int r = 0;
    for (int i = 1; i <= w.size(); ++i) {
        switch (w.at(i)) {
            case TriSym::kBot: break;
            case TriSym::kOne: ++r; break;
            case TriSym::kZero: r = std::max(r - 1, 0); break;
        }
        out[static_cast<size_t>(i)] = r;
    }
    return out;
}

std::vector<int> margin_sequence(const TriString& w, int s) {
    if (s < 1) throw std::invalid_argument("margin base slot s must be >= 1");
    std::vector<int> out(static_cast<size_t>(w.size()) + 1, 0);
    int r = 0, m = 0;
    for (int i = 1; i <= w.size(); ++i) {
        int prev_r = r, prev_m = m;
        switch (w.at(i)) {
            case TriSym::kBot: break;
            case TriSym::kOne:
                ++r;
                ++m;
                break;
            case TriSym::kZero:
                r = std::max(r - 1, 0);
                if (i < s) {
                    m = r;  // margin coincides with reach before s
                } else if (prev_r > prev_m && prev_m == 0) {
                    m = 0;  // a deep-enough alternative tine absorbs the special
                } else {
                    m = prev_m - 1;
                }
                break;
        }
        if (i < s) m = r;  // identical before s whatever the symbol
        out[static_cast<size_t>(i)] = m;
    }
    return out;
}

TriString observer_transform(const TriString& w, int l) {
    if (l < 0) throw std::invalid_argument("observer horizon l must be >= 0");
    TriString out = w;
    for (int i = l + 1; i <= w.size(); ++i)
        if (out.at(i) == TriSym::kZero) out.set(i, TriSym::kBot);
    return out;
}

namespace {

// Every closed fork of w, visited exactly once.
//
// Specials are placed in slot order.  A closed fork decomposes uniquely by
// walking, for each special, the deepest ancestor already present for an
// earlier special: the remainder of its root path is a fresh chain of '1'
// vertices with increasing labels.  So the enumeration is: pick the attach
// vertex, pick the subset of available '1' slots forming the fresh chain
// (ascending), insert the special, respecting the strictly-increasing
// special depth rule.  Every generated tree is a closed fork and every
// closed fork is generated once.
class ClosedForkEnumerator {
  public:
    explicit ClosedForkEnumerator(const TriString& w) : w_(w) {
        zeros_ = w.slots_of(TriSym::kZero);
        ones_ = w.slots_of(TriSym::kOne);
        label_ = {0};
        parent_ = {-1};
        depth_ = {0};
    }

    struct View {
        const std::vector<int>& label;
        const std::vector<int>& parent;
        const std::vector<int>& depth;
        int deepest;  // depth of the deepest vertex (the last special)
    };

    template <typename Cb>
    void visit(Cb&& cb) {
        recurse(0, 0, cb);
    }

  private:
    template <typename Cb>
    void recurse(size_t zi, int last_special_depth, Cb&& cb) {
        if (zi == zeros_.size()) {
            cb(View{label_, parent_, depth_, last_special_depth});
            return;
        }
        int slot = zeros_[zi];
        size_t have = label_.size();
        for (size_t u = 0; u < have; ++u) {
            // '1' slots available for the fresh chain under u.
            std::vector<int> pool;
            for (int o : ones_)
                if (o > label_[u] && o < slot) pool.push_back(o);
            unsigned subsets = 1u << pool.size();
            for (unsigned mask = 0; mask < subsets; ++mask) {
                int len = __builtin_popcount(mask);
                if (depth_[u] + len + 1 <= last_special_depth) continue;
                int at = static_cast<int>(u);
                for (size_t b = 0; b < pool.size(); ++b) {
                    if (!(mask & (1u << b))) continue;
                    label_.push_back(pool[b]);
                    parent_.push_back(at);
                    depth_.push_back(depth_[static_cast<size_t>(at)] + 1);
                    at = static_cast<int>(label_.size()) - 1;
                }
                label_.push_back(slot);
                parent_.push_back(at);
                depth_.push_back(depth_[static_cast<size_t>(at)] + 1);
                recurse(zi + 1, depth_.back(), cb);
                label_.resize(label_.size() - static_cast<size_t>(len) - 1);
                parent_.resize(label_.size());
                depth_.resize(label_.size());
            }
        }
    }

    const TriString& w_;
    std::vector<int> zeros_, ones_;
    std::vector<int> label_, parent_, depth_;
};

// Best min-over-pair value, bucketed by the label of the pair's last shared
// vertex.  For each vertex a, the candidate pairs whose shared prefix ends
// exactly at a combine the best values of distinct child subtrees of a (and
// a itself); two picks from the same subtree would share a deeper vertex.
void accumulate_pair_bests(const ClosedForkEnumerator::View& v, const std::vector<int>& value,
                           std::vector<int>& best_by_lca) {
    size_t n = v.label.size();
    // subtree_best[a] = max value over the subtree rooted at a
    std::vector<int> subtree_best(value);
    for (size_t a = n; a-- > 1;)
        subtree_best[static_cast<size_t>(v.parent[a])] =
            std::max(subtree_best[static_cast<size_t>(v.parent[a])], subtree_best[a]);
    // For each vertex: own value, plus second-best among {own, child subtrees}.
    std::vector<int> top1(n, kMinusInf), top2(n, kMinusInf);
    for (size_t a = 0; a < n; ++a) top1[a] = value[a];
    for (size_t c = 1; c < n; ++c) {
        auto p = static_cast<size_t>(v.parent[c]);
        int x = subtree_best[c];
        if (x >= top1[p]) {
            top2[p] = top1[p];
            top1[p] = x;
        } else if (x > top2[p]) {
            top2[p] = x;
        }
    }
    for (size_t a = 0; a < n; ++a) {
        int pair_best = std::max(value[a], top2[a]);  // top2 == min(top1, top2)
        auto lab = static_cast<size_t>(v.label[a]);
        if (pair_best > best_by_lca[lab]) best_by_lca[lab] = pair_best;
    }
}

}  // namespace

ForkSweep enumerate_closed_forks(const TriString& w, DisjointRule rule) {
    ForkSweep sweep;
    sweep.reach = kMinusInf;
    std::vector<int> best_by_lca(static_cast<size_t>(w.size()) + 1, kMinusInf);

    // reserve lookup: ones strictly after slot x
    std::vector<int> ones_after(static_cast<size_t>(w.size()) + 2, 0);
    for (int i = w.size(); i >= 0; --i)
        ones_after[static_cast<size_t>(i)] = ones_after[static_cast<size_t>(i) + 1] +
                                             (i >= 1 && w.at(i) == TriSym::kOne ? 1 : 0);

    ClosedForkEnumerator en(w);
    std::vector<int> reach;
    en.visit([&](const ClosedForkEnumerator::View& v) {
        ++sweep.closed_forks;
        size_t n = v.label.size();
        reach.assign(n, 0);
        for (size_t i = 0; i < n; ++i) {
            reach[i] =
                ones_after[static_cast<size_t>(v.label[i]) + 1] - (v.deepest - v.depth[i]);
            if (reach[i] > sweep.reach) sweep.reach = reach[i];
        }
        accumulate_pair_bests(v, reach, best_by_lca);
    });

    // margin_by_s[s] = best pair value whose shared prefix stays below s
    sweep.margin_by_s.assign(static_cast<size_t>(w.size()) + 2, kMinusInf);
    int run = kMinusInf;
    for (int s = 1; s <= w.size() + 1; ++s) {
        int cutoff = rule == DisjointRule::kGeq ? s - 1 : s;
        if (cutoff <= w.size()) run = std::max(run, best_by_lca[static_cast<size_t>(cutoff)]);
        // (kGt at s = |w|+1 would peek past the table; labels end at |w|)
        sweep.margin_by_s[static_cast<size_t>(s)] = run;
    }
    return sweep;
}

ReachMargin brute_force_reach_margin(const TriString& w, int s, DisjointRule rule) {
    if (s < 1) throw std::invalid_argument("margin base slot s must be >= 1");
    ForkSweep sweep = enumerate_closed_forks(w, rule);
    int idx = std::min(s, w.size() + 1);
    return {sweep.reach, sweep.margin_by_s[static_cast<size_t>(idx)]};
}

bool balanced_fork_exists(const TriString& w, int s, int l) {
    TriString seen = observer_transform(w, l);
    if (seen.size() == 0) return true;  // two bare root tines
    return margin_sequence(seen, s).back() >= 0;
}

bool brute_force_balanced_fork(const TriString& w, int s, int l, DisjointRule rule) {
    if (s < 1) throw std::invalid_argument("base slot s must be >= 1");
    std::vector<int> ones_after(static_cast<size_t>(w.size()) + 2, 0);
    for (int i = w.size(); i >= 0; --i)
        ones_after[static_cast<size_t>(i)] = ones_after[static_cast<size_t>(i) + 1] +
                                             (i >= 1 && w.at(i) == TriSym::kOne ? 1 : 0);
    bool found = false;
    ClosedForkEnumerator en(w);
    std::vector<int> extended;
    std::vector<int> best_by_lca;
    en.visit([&](const ClosedForkEnumerator::View& v) {
        if (found) return;
        size_t n = v.label.size();
        // viability threshold: depth of every special known by slot l
        int need = 0;
        for (size_t i = 1; i < n; ++i)
            if (v.label[i] <= l && w.at(v.label[i]) == TriSym::kZero)
                need = std::max(need, v.depth[i]);
        // a tine may be extended by every '1' slot after its endpoint label
        extended.assign(n, 0);
        for (size_t i = 0; i < n; ++i)
            extended[i] = v.depth[i] + ones_after[static_cast<size_t>(v.label[i]) + 1];
        best_by_lca.assign(static_cast<size_t>(w.size()) + 1, kMinusInf);
        accumulate_pair_bests(v, extended, best_by_lca);
        int cutoff = rule == DisjointRule::kGeq ? s - 1 : s;
        cutoff = std::min(cutoff, w.size());
        int best = kMinusInf;
        for (int lab = 0; lab <= cutoff; ++lab)
            best = std::max(best, best_by_lca[static_cast<size_t>(lab)]);
        if (best >= need) found = true;
    });
    return found;
}

}  // namespace lcsim
