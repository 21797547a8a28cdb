#pragma once

#include "sst/transducer.hpp"

#include <optional>
#include <vector>

namespace sst {

// Outcome of the subset exploration.  When synchronizing, every word of
// length `level` drives every state to a single state, and `core` lists the
// states hit that way.  Otherwise `witness` is a non-singleton subset lying
// on a cycle of the subset graph.
struct SyncResult {
    bool synchronizing = false;
    int level = 0;
    std::vector<int> core;
    std::vector<int> witness;
};

// max_k < 0 selects the default |Q|^2.  Throws DomainError when the level
// exceeds max_k or the subset graph grows past its exploration cap.
SyncResult sync_level(const DetTransducer& t, int max_k = -1);
// Non-deterministic machines: every prime input word up to length `bound`
// must label exactly one circuit (counted from one rotation).  Word inputs
// are split into letter chains.  bound < 0 selects min(2 |edges|, 12).
struct NdCircuitCheck {
    bool ok = true;
    int verified_up_to = 0;
    Word witness;          // a prime word with the wrong circuit count
    long long circuits = 0;
};
NdCircuitCheck nd_circuit_check(const NondetTransducer& t, int bound = -1);

// Throws DomainError unless t is strongly synchronizing.
SyncResult require_sync(const DetTransducer& t);
// The state forced by w (|w| at least the level).
int forced_state(const DetTransducer& t, const Word& w);

// Restriction to the core.  old_to_new receives -1 for dropped states.
DetTransducer core(const DetTransducer& t, std::vector<int>* old_to_new = nullptr);

// Measured level of Core(T*U); asserts it does not exceed level(T)+level(U).
int check_product_level(const DetTransducer& t, const DetTransducer& u);

// Levels of T and of its inverse.
struct BisyncLevels {
    int forward = 0;
    int backward = 0;
};
BisyncLevels is_bisynchronizing(const DetTransducer& t);

} // namespace sst
