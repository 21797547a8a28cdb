#pragma once

#include "sst/transducer.hpp"

#include <string>
#include <vector>

namespace sst {

struct PoolEntry {
    std::string name;
    DetTransducer machine;
};
// O_n members over n in {2,3,4,6}: generators, marker automorphisms,
// conveyor images, conditional permutations, the six-state fixture and
// products of these.
std::vector<PoolEntry> acceptance_pool();

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};
// Criteria 1..11.  With `parallel` the criteria run on separate threads;
// the result order is fixed either way.
std::vector<CriterionResult> run_acceptance(bool parallel = false);
CriterionResult run_criterion(int id);

} // namespace sst
