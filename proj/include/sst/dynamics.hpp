#pragma once

#include "sst/signatures.hpp"
#include "sst/transducer.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>

namespace sst {

// alpha(pi(x,q)) = alpha(q) + |lambda(x,q)| - 1 on every edge.
bool is_annotation(const DetTransducer& t, const Annotation& a);
// Length potential shifted so that its minimum is 0.  Throws DomainError
// outside L_n.
Annotation canonical_annotation(const DetTransducer& t);

// (T, alpha): output for x_i at state q is written from index i + alpha(q).
struct Pair {
    DetTransducer machine;
    Annotation alpha;
};
Pair identity_pair(int n, int shift = 0);
// Minimal machine with the annotation carried through reduction.
Pair reduce_pair(const DetTransducer& t, const Annotation& a);
Pair reduce_pair(const Pair& p);
// Apply a, then b.
Pair pair_product(const Pair& a, const Pair& b);
Pair pair_inverse(const Pair& p);
bool pair_equal(const Pair& a, const Pair& b);
// Identity machine with annotation c; nullopt if not of that form.
std::optional<int> identity_shift(const Pair& p);

// ...uuu v www... with x_t = v[0] (or w[0] when v is empty).
struct BiInfiniteSeq {
    Word left;    // non-empty, repeats leftwards; x_(t-1) is its last letter
    Word center;
    Word right;   // non-empty, repeats rightwards from t + |center|
    long long offset = 0;

    Letter at(long long i) const;
    // Primitive periods, shortest center.
    BiInfiniteSeq normalized() const;
    std::string str() const;
};
bool operator==(const BiInfiniteSeq& a, const BiInfiniteSeq& b);
// "(u)^-inf . v . (w)^inf @ t"
BiInfiniteSeq parse_seq(const std::string& s);
// y_i = x_(i-s)
BiInfiniteSeq shift_seq(const BiInfiniteSeq& x, long long s = 1);
BiInfiniteSeq random_seq(std::mt19937_64& rng, int n, int max_len = 6);

BiInfiniteSeq apply(const Pair& p, const BiInfiniteSeq& x);

// y_i = table[x_(i-memory) ... x_(i+m-1-memory)], windows indexed as base-n
// numbers, most significant letter first.
struct LocalRule {
    int n = 2;
    int m = 1;
    int memory = 0;
    std::vector<Letter> table;

    Letter eval(const Word& window) const;
};
LocalRule make_rule(int n, int m, int memory, const std::function<Letter(const Word&)>& f);
// De Bruijn machine on the last m-1 letters with annotation -(m-1-memory),
// then reduced.
Pair local_rule_to_pair(const LocalRule& f);
bool is_right_permutive(const LocalRule& f);
bool is_left_permutive(const LocalRule& f);

// [gamma] -> [prime root of the output of the gamma-circuit], for Lyndon
// words gamma up to length k_max.
std::map<Word, Word> pi_action(const DetTransducer& t, int k_max);

} // namespace sst
