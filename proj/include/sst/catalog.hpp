#pragma once

#include "sst/transducer.hpp"

#include <vector>

namespace sst {

// The six-state n = 2 machine whose 0-loop state a1 is not a homeomorphism
// state; it lies in K_2 but not D_2.
DetTransducer fixture_fig1();

// Two-state synchronous machine: y_i = tau(x_i) if x_{i-1} lies in c, else
// x_i.  tau must map c onto itself.
DetTransducer conditional_permutation(int n, const std::vector<int>& c, const std::vector<int>& tau);

} // namespace sst
