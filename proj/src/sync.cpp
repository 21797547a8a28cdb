#include "sst/sync.hpp"

#include "sst/errors.hpp"
#include "sst/images.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

namespace sst {

namespace {

constexpr std::size_t kSubsetCap = 4'000'000;

using Subset = std::vector<int>;

// Longest path in the graph of non-singleton subsets reachable from the
// full set.  `step(S, x)` returns the successor subset.
template <class Step>
SyncResult explore(int states, int n, int max_k, Step step) {
    SyncResult res;
    if (max_k < 0) max_k = static_cast<int>(std::min<long long>(static_cast<long long>(states) * states, std::numeric_limits<int>::max()));
    Subset full(static_cast<std::size_t>(states));
    for (int q = 0; q < states; ++q) full[static_cast<std::size_t>(q)] = q;
    if (states <= 1) {
        res.synchronizing = true;
        return res;
    }
    std::map<Subset, int> id;
    std::vector<Subset> nodes;
    std::vector<std::vector<int>> succ;
    std::size_t total = 0;
    auto intern = [&](Subset s) {
        auto [it, fresh] = id.emplace(std::move(s), static_cast<int>(nodes.size()));
        if (fresh) {
            total += it->first.size();
            nodes.push_back(it->first);
            succ.emplace_back();
        }
        return it->second;
    };
    intern(full);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (total > kSubsetCap) throw DomainError("sync_level: subset exploration cap exceeded (inconclusive)");
        for (int x = 0; x < n; ++x) {
            Subset s = step(nodes[i], x);
            if (s.size() >= 2) {
                int j = intern(std::move(s));
                succ[i].push_back(j);
            }
        }
    }
    // Kahn's algorithm for a longest path; leftover nodes lie on or after a cycle.
    const std::size_t N = nodes.size();
    std::vector<int> indeg(N, 0), dist(N, 0);
    for (const auto& v : succ)
        for (int j : v) ++indeg[static_cast<std::size_t>(j)];
    std::queue<int> q;
    for (std::size_t i = 0; i < N; ++i)
        if (!indeg[i]) q.push(static_cast<int>(i));
    std::size_t seen = 0;
    int longest = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++seen;
        longest = std::max(longest, dist[static_cast<std::size_t>(v)]);
        for (int j : succ[static_cast<std::size_t>(v)]) {
            dist[static_cast<std::size_t>(j)] = std::max(dist[static_cast<std::size_t>(j)], dist[static_cast<std::size_t>(v)] + 1);
            if (--indeg[static_cast<std::size_t>(j)] == 0) q.push(j);
        }
    }
    if (seen < N) {
        for (std::size_t i = 0; i < N; ++i)
            if (indeg[i] > 0) {
                res.witness = nodes[i];
                break;
            }
        return res;
    }
    res.synchronizing = true;
    res.level = longest + 1;
    if (res.level > max_k)
        throw DomainError("sync_level: level " + std::to_string(res.level) + " exceeds max_k " + std::to_string(max_k));
    return res;
}

} // namespace

SyncResult sync_level(const DetTransducer& t, int max_k) {
    SyncResult r = explore(t.size(), t.n, max_k, [&](const Subset& s, int x) {
        Subset o;
        o.reserve(s.size());
        for (int q : s) o.push_back(t.to(q, x));
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
        return o;
    });
    if (r.synchronizing) {
        int start = t.state_after(0, Word(static_cast<std::size_t>(r.level), 0));
        std::vector<char> mark(static_cast<std::size_t>(t.size()), 0);
        std::vector<int> stack{start};
        mark[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int x = 0; x < t.n; ++x) {
                int d = t.to(q, x);
                if (!mark[static_cast<std::size_t>(d)]) {
                    mark[static_cast<std::size_t>(d)] = 1;
                    stack.push_back(d);
                }
            }
        }
        for (int q = 0; q < t.size(); ++q)
            if (mark[static_cast<std::size_t>(q)]) r.core.push_back(q);
    }
    return r;
}

NdCircuitCheck nd_circuit_check(const NondetTransducer& t, int bound) {
    if (bound < 0) bound = std::min(2 * static_cast<int>(t.edges.size()), 12);
    // letter graph: edges with longer inputs get intermediate states
    int states = t.size();
    std::vector<std::vector<std::pair<int, int>>> by;  // per letter: (src, dst)
    by.resize(static_cast<std::size_t>(t.n));
    for (const auto& e : t.edges) {
        if (e.input.empty()) throw DomainError("circuit check needs non-empty input labels");
        int cur = e.src;
        for (std::size_t i = 0; i < e.input.size(); ++i) {
            const int nxt = i + 1 == e.input.size() ? e.dst : states++;
            by[static_cast<std::size_t>(e.input[i])].push_back({cur, nxt});
            cur = nxt;
        }
    }
    const std::size_t S = static_cast<std::size_t>(states);
    NdCircuitCheck res;
    // DFS over words keeping the path-count matrix of the prefix.
    using Mat = std::vector<long long>;
    auto mul = [&](const Mat& m, int x) {
        Mat r(S * S, 0);
        for (auto [a, b] : by[static_cast<std::size_t>(x)])
            for (std::size_t i = 0; i < S; ++i) {
                const long long v = m[i * S + static_cast<std::size_t>(a)];
                if (v) r[i * S + static_cast<std::size_t>(b)] = std::min<long long>(r[i * S + static_cast<std::size_t>(b)] + v, 1LL << 40);
            }
        return r;
    };
    Mat id(S * S, 0);
    for (std::size_t i = 0; i < S; ++i) id[i * S + i] = 1;
    std::vector<Mat> stack{id};
    Word w;
    bool failed = false;
    auto rec = [&](auto&& self) -> void {
        if (failed) return;
        if (!w.empty() && is_prime(w) && canonical_rotation(w) == w) {
            long long tr = 0;
            for (std::size_t i = 0; i < static_cast<std::size_t>(t.size()); ++i) tr += stack.back()[i * S + i];
            if (tr != 1) {
                res.ok = false;
                res.witness = w;
                res.circuits = tr;
                failed = true;
                return;
            }
        }
        if (static_cast<int>(w.size()) == bound) return;
        for (int x = 0; x < t.n && !failed; ++x) {
            stack.push_back(mul(stack.back(), x));
            w.push_back(x);
            self(self);
            w.pop_back();
            stack.pop_back();
        }
    };
    rec(rec);
    res.verified_up_to = failed ? static_cast<int>(res.witness.size()) - 1 : bound;
    return res;
}

SyncResult require_sync(const DetTransducer& t) {
    SyncResult r = sync_level(t);
    if (!r.synchronizing) throw DomainError("not strongly synchronizing");
    return r;
}

int forced_state(const DetTransducer& t, const Word& w) { return t.state_after(0, w); }

DetTransducer core(const DetTransducer& t, std::vector<int>* old_to_new) {
    SyncResult s = require_sync(t);
    std::vector<int> map(static_cast<std::size_t>(t.size()), -1);
    for (std::size_t i = 0; i < s.core.size(); ++i) map[static_cast<std::size_t>(s.core[i])] = static_cast<int>(i);
    DetTransducer c(t.n, static_cast<int>(s.core.size()));
    for (std::size_t i = 0; i < s.core.size(); ++i) {
        const int q = s.core[i];
        c.names[i] = t.names[static_cast<std::size_t>(q)];
        for (int x = 0; x < t.n; ++x) c.set(static_cast<int>(i), x, map[static_cast<std::size_t>(t.to(q, x))], t.emit(q, x));
    }
    if (old_to_new) *old_to_new = std::move(map);
    return c;
}

int check_product_level(const DetTransducer& t, const DetTransducer& u) {
    const int j = require_sync(t).level, k = require_sync(u).level;
    SyncResult p = sync_level(product(t, u), (t.size() * u.size()) * (t.size() * u.size()));
    if (!p.synchronizing) throw DomainError("product is not synchronizing");
    if (p.level > j + k)
        throw DomainError("product level " + std::to_string(p.level) + " exceeds " + std::to_string(j) + "+" + std::to_string(k));
    return p.level;
}

BisyncLevels is_bisynchronizing(const DetTransducer& t) {
    BisyncLevels b;
    b.forward = require_sync(t).level;
    DetTransducer inv = invert(t);
    b.backward = require_sync(inv).level;
    return b;
}

} // namespace sst
