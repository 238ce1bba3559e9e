#pragma once

// Fork calculus over ternary slot strings.
//
// A fork of w is a rooted tree of blocks: vertex labels are slot numbers,
// strictly increasing away from the root (label 0), with every '0' slot of w
// appearing exactly once and the '0'-slot depths strictly increasing in slot
// order.  '1' slots may label any number of vertices (the adversary can make
// several blocks per slot), '.' slots none.
//
// A tine is a root path (equivalently: a vertex).  In a *closed* fork every
// leaf is a '0' vertex; then for a tine t ending at vertex v,
//     gap(t)     = depth of deepest vertex - depth(v)
//     reserve(t) = number of '1' slots of w after label(v)
//     reach(t)   = reserve(t) - gap(t)
// Reach(w) maximizes reach over closed forks and tines; Margin_s(w)
// maximizes min(reach(t1), reach(t2)) over pairs of tines whose shared
// prefix stays below slot s.  Both have linear-time prefix recursions, and
// both are recomputed here by explicit enumeration of all closed forks so
// the recursions can be checked against the definitions.

#include <string>
#include <vector>

#include "lcsim/tristring.hpp"

namespace lcsim {

struct Fork {
    // Vertex 0 is the root (label 0, parent -1).
    std::vector<int> label;
    std::vector<int> parent;

    int size() const { return static_cast<int>(label.size()); }

    static Fork root_only() { return Fork{{0}, {-1}}; }
    // Append a vertex, returning its index.
    int add(int lab, int par) {
        label.push_back(lab);
        parent.push_back(par);
        return size() - 1;
    }
};

struct ForkCheck {
    bool ok = true;
    int axiom = 0;  // 1..5 = first violated axiom, 0 = malformed tree
    std::string detail;
};

// The five fork axioms, checked in order; axiom numbering:
//   1 rooted tree, edges away from the root
//   2 root labeled 0, non-root labels are non-'.' slots of w
//   3 labels strictly increase along every path
//   4 every '0' slot of w labels exactly one vertex
//   5 depths of '0'-slot vertices strictly increase in slot order
ForkCheck validate_fork(const Fork& f, const TriString& w);

std::vector<int> fork_depths(const Fork& f);

// Drop trailing '1' vertices (iteratively remove every leaf not labeled with
// a '0' slot) so that all leaves are special; vertex order is preserved.
Fork closure(const Fork& f, const TriString& w);

struct TineMetrics {
    int gap = 0;
    int reserve = 0;
    int reach = 0;
};
// Metrics of the tine ending at `vertex` inside a closed fork.
TineMetrics tine_metrics(const Fork& closed, const TriString& w, int vertex);

// Prefix recursions; out[i] is the value for w[1:i], i = 0..|w|.
std::vector<int> reach_sequence(const TriString& w);
std::vector<int> margin_sequence(const TriString& w, int s);

// What an observer that heard everything up to slot l knows for certain:
// '0' slots strictly after l may still be missing, so they are blanked.
TriString observer_transform(const TriString& w, int l);

// Two tines conflict about slot s when their shared prefix reaches s:
// kGeq (default) means "share a vertex with label >= s"; kGt is the stricter
// legacy variant "label > s".  The prefix recursions correspond to kGeq.
enum class DisjointRule { kGeq, kGt };

struct ReachMargin {
    int reach = 0;
    int margin = 0;
};

// Definition-level evaluation by enumeration of every closed fork of w.
ReachMargin brute_force_reach_margin(const TriString& w, int s,
                                     DisjointRule rule = DisjointRule::kGeq);

// One enumeration pass serving all s at once: returns reach plus margins[s]
// for s = 1..|w|+1 (margins[0] unused).  Also reports the number of closed
// forks visited.
struct ForkSweep {
    int reach = 0;
    std::vector<int> margin_by_s;  // index s, valid for 1..|w|+1
    long long closed_forks = 0;
};
ForkSweep enumerate_closed_forks(const TriString& w, DisjointRule rule = DisjointRule::kGeq);

// Existence of a pair of l-viable tines with no shared vertex at/after s
// (an "(s,l)-balanced" fork): the recursion form evaluates
// Margin_s(observer_transform(w, l)) >= 0; the brute-force form enumerates
// closed forks and maximal adversarial extensions of tine pairs.
bool balanced_fork_exists(const TriString& w, int s, int l);
bool brute_force_balanced_fork(const TriString& w, int s, int l,
                               DisjointRule rule = DisjointRule::kGeq);

}  // namespace lcsim
