#pragma once

#include "sst/images.hpp"
#include "sst/transducer.hpp"

#include <vector>

namespace sst {

// Edge (x, q~, p~) for every pi(x,p) = q, writing reverse(lambda(x,p)).
// State q~ carries the name of q with a trailing '~'.
NondetTransducer rev(const DetTransducer& t);
// T with single-letter input edges.
NondetTransducer as_nondet(const DetTransducer& t);
// Edge (lambda(x,q), q, pi(x,q)) writing x.
NondetTransducer nd_inverse_view(const DetTransducer& t);

// Depth-k words readable from state s of a letter-input machine, reduced.
Antichain rev_domain(const NondetTransducer& nd, int s, int k);

// Longest common edge path of the admissible infinite paths from s whose
// input begins with w.  `consumed` is its input (a prefix of w).
struct NdPath {
    std::vector<int> edges;
    Word consumed;
    Word output;
    int end = 0;
};
int default_nd_bound(const NondetTransducer& nd);
NdPath nd_path_gcp(ConeAnalyzer& dom, const NondetTransducer& nd, const std::vector<std::vector<int>>& out_edges, int s,
                   const Word& w, int bound);
NdPath nd_path_gcp(const NondetTransducer& nd, int s, const Word& w, int bound = -1);

// Deterministic machine on pairs (w, q) with U_w in dom(q) and empty path
// gcp; core only.
DetTransducer rec(const NondetTransducer& nd, int bound = -1);

// minimal(rec(rev(t)))
DetTransducer rev_automorphism(const DetTransducer& t);
// sig of the reverse automorphism image.
int rev_sig(const DetTransducer& t);
// Sum over reversed states of their output-image cover sizes, mod n-1.
int rev_sig_by_counts(const DetTransducer& t);

// Synchronous, bijective output map at every state, bisynchronizing.
bool in_Hn(const DetTransducer& t);

struct ProbeQ1 {
    int rev_sig = 0;
    int inverse_sig = 0;
    bool agree() const { return rev_sig == inverse_sig; }
};
ProbeQ1 probe_q1(const DetTransducer& t);

} // namespace sst
