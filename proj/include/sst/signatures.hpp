#pragma once

#include "sst/images.hpp"
#include "sst/transducer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sst {

// Integer state labelling; entry q belongs to state q.
using Annotation = std::vector<int>;

// Prime factorization with primes ascending.
struct Factorization {
    std::vector<int> primes;
    std::vector<int> exponents;
};
Factorization factorize(int n);

// Element of the quotient of <primes of n> by m ~ m*n, stored as an
// exponent vector reduced modulo the lattice spanned by the exponents of n.
struct MnElement {
    int n = 2;
    std::vector<long long> v;

    bool is_identity() const;
    MnElement operator*(const MnElement& o) const;
    bool operator==(const MnElement& o) const;
    // 0 when the order is infinite.
    long long order() const;
    std::string str() const;
};
MnElement mn_class(int n, long long m);
MnElement mn_identity(int n);
// From an exponent vector directly.
MnElement mn_from_exponents(int n, std::vector<long long> v);

// Z^(r-1) x Z/lZ with l the gcd of the exponents of n.
struct MnStructure {
    int free_rank = 0;
    long long torsion = 1;
};
MnStructure mn_structure(int n);

// Cone count mod n-1, represented in [1, n-1].  Evaluated at every state;
// disagreement throws.
int sig(const DetTransducer& t);
MnElement sig_omega(const DetTransducer& t);
// s * n^(-(D + alpha(q))) mod n^k - 1, represented in [1, n^k - 1].
long long sig_k(const DetTransducer& t, const Annotation& alpha, int k);

// T(d, e): letters are digit tuples in ascending prime order, most
// significant first; d picks, per prime, how many trailing digits are
// carried as state.
DetTransducer generator(int n, int d, int e);

// Potential p with p(pi(x,q)) = p(q) + |lambda(x,q)| - 1, anchored at 0 on
// the first state of each component, or nullopt when some circuit changes
// length.
std::optional<Annotation> length_potential(const DetTransducer& t);

struct Membership {
    bool member = false;
    std::string reason;   // why not, when not
    std::string witness;  // offending state name, if any
};
Membership in_On(const DetTransducer& t);
Membership in_Onr(const DetTransducer& t, int r);
Membership in_Ln(const DetTransducer& t);
Membership in_Kn(const DetTransducer& t);
Membership in_Dn(const DetTransducer& t);

// The state reached after reading x^k, k the synchronizing level.
int loop_state(const DetTransducer& t, Letter x);

} // namespace sst
