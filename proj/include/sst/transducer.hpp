#pragma once

#include "sst/word.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sst {

// Deterministic letter-input, word-output transducer over X_n.
// States are 0..size()-1; names are kept for I/O.
struct DetTransducer {
    int n = 2;
    std::vector<std::string> names;
    std::vector<int> next;  // next[q*n + x]
    std::vector<Word> out;  // out[q*n + x]

    DetTransducer() = default;
    DetTransducer(int alphabet, int states);

    int size() const { return static_cast<int>(names.size()); }
    int to(int q, Letter x) const { return next[static_cast<std::size_t>(q * n + x)]; }
    const Word& emit(int q, Letter x) const { return out[static_cast<std::size_t>(q * n + x)]; }
    void set(int q, Letter x, int dst, Word w);

    int index_of(const std::string& name) const;  // -1 if absent
    int max_output() const;
    bool synchronous() const;

    // (pi(w,q), lambda(w,q))
    std::pair<int, Word> run(int q, const Word& w) const;
    int state_after(int q, const Word& w) const;
};

struct InitialDetTransducer {
    DetTransducer base;
    int initial = 0;
};

// Degenerate single-state machine emitting x on every letter.
struct ZxTransducer {
    int n = 2;
    Word x;
};

struct NdEdge {
    Word input;
    int src = 0;
    int dst = 0;
    Word output;
};

struct NondetTransducer {
    int n = 2;
    std::vector<std::string> names;
    std::vector<NdEdge> edges;

    int size() const { return static_cast<int>(names.size()); }
    std::vector<std::vector<int>> out_edges() const;  // edge ids per source
};

DetTransducer identity_machine(int n);
// Sigma_n: state i reads x, moves to x, writes i.
DetTransducer shift_machine(int n);
DetTransducer permutation_machine(const std::vector<int>& perm);
DetTransducer relabel(const DetTransducer& t, const std::vector<std::string>& names);

// Throws FormatError on a malformed table, DomainError on an empty-output cycle.
void validate(const DetTransducer& t);
void validate(const NondetTransducer& t);

DetTransducer product(const DetTransducer& t, const DetTransducer& u);

// Greatest common prefix of the outputs read from q after w.  When the
// outputs from q form a single sequence the result is infinite and equals
// prefix . period^omega.
struct GcpResult {
    bool infinite = false;
    Word prefix;
    Word period;
};
GcpResult lambda_gcp(const DetTransducer& t, int q, const Word& w, int depth_bound = -1);
int default_depth_bound(const DetTransducer& t);

// |Lambda(eps,q)| for every state, or nullopt if some state is degenerate.
std::optional<std::vector<Word>> all_lambda_eps(const DetTransducer& t);

// Incomplete-response removal.  The initial version adds a fresh initial
// state (named "q-1") and keeps every other state.
InitialDetTransducer remove_incomplete_response(const InitialDetTransducer& t);
// Non-initial version: every state q emits Lambda(x,q) - Lambda(eps,q).
DetTransducer remove_incomplete_response(const DetTransducer& t);

// Coarsest partition compatible with single-letter outputs and transitions.
// block[q] is the class of q; the quotient keeps the first member's name.
struct Quotient {
    DetTransducer machine;
    std::vector<int> block;
};
Quotient merge_omega_equivalent(const DetTransducer& t);

// Result of full reduction: the minimal machine (or its Z_x collapse) plus
// bookkeeping from the original states: map[q] is the image state (-1 if
// outside the core) and lag[q] = |Lambda(eps,q)|.
struct Reduction {
    DetTransducer machine;
    std::optional<ZxTransducer> zx;
    std::vector<int> map;
    std::vector<int> lag;
};
Reduction reduce(const DetTransducer& t);

struct Minimized {
    std::optional<DetTransducer> machine;
    std::optional<ZxTransducer> zx;
    bool is_zx() const { return zx.has_value(); }
};
Minimized minimize(const DetTransducer& t);
// minimize() that treats the Z_x outcome as a DomainError.
DetTransducer minimal(const DetTransducer& t);
// Group product: the minimal representative of Core(T*U).
DetTransducer multiply(const DetTransducer& t, const DetTransducer& u);

bool is_identity(const DetTransducer& t);
bool is_isomorphic(const DetTransducer& a, const DetTransducer& b);
// f[q] is the state of b matched with state q of a.
std::optional<std::vector<int>> find_isomorphism(const DetTransducer& a, const DetTransducer& b);

// Initial machines: minimal means no incomplete response, no omega-equivalent
// pair, everything accessible from the initial state.
InitialDetTransducer minimize_initial(const InitialDetTransducer& t);
InitialDetTransducer product_initial(const InitialDetTransducer& a, const InitialDetTransducer& b);
bool is_isomorphic_initial(const InitialDetTransducer& a, const InitialDetTransducer& b);

} // namespace sst
