#include "sst/catalog.hpp"

#include "sst/errors.hpp"

#include <algorithm>

namespace sst {

DetTransducer fixture_fig1() {
    DetTransducer t(2, 6);
    t.names = {"a6", "a3", "a1", "a5", "a4", "a2"};
    enum { a6, a3, a1, a5, a4, a2 };
    t.set(a6, 0, a3, {0});
    t.set(a6, 1, a6, {1});
    t.set(a3, 0, a1, {});
    t.set(a3, 1, a5, {});
    t.set(a1, 0, a1, {0});
    t.set(a1, 1, a2, {});
    t.set(a5, 0, a3, {1, 0});
    t.set(a5, 1, a4, {});
    t.set(a4, 0, a3, {0, 1, 0});
    t.set(a4, 1, a6, {1, 1, 1});
    t.set(a2, 0, a3, {1, 1, 0});
    t.set(a2, 1, a4, {0});
    return t;
}

DetTransducer conditional_permutation(int n, const std::vector<int>& c, const std::vector<int>& tau) {
    if (static_cast<int>(tau.size()) != n) throw FormatError("permutation has the wrong length");
    std::vector<int> sorted = tau;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) throw FormatError("not a permutation");
    auto in_c = [&](int x) { return std::find(c.begin(), c.end(), x) != c.end(); };
    for (int x : c)
        if (x < 0 || x >= n || !in_c(tau[static_cast<std::size_t>(x)])) throw DomainError("permutation must preserve the set");
    // state 0: previous letter outside c; state 1: inside.
    DetTransducer t(n, 2);
    t.names = {"p", "c"};
    for (int s = 0; s < 2; ++s)
        for (int x = 0; x < n; ++x) t.set(s, x, in_c(x) ? 1 : 0, {s ? tau[static_cast<std::size_t>(x)] : x});
    return t;
}

} // namespace sst
