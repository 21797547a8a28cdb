#include "sst/reverse.hpp"

#include "sst/errors.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <map>

namespace sst {

namespace {

std::vector<std::string> barred(const DetTransducer& t) {
    std::vector<std::string> n;
    for (const auto& s : t.names) n.push_back(s + "~");
    return n;
}

} // namespace

NondetTransducer rev(const DetTransducer& t) {
    NondetTransducer r;
    r.n = t.n;
    r.names = barred(t);
    for (int p = 0; p < t.size(); ++p)
        for (int x = 0; x < t.n; ++x) r.edges.push_back({{x}, t.to(p, x), p, reverse(t.emit(p, x))});
    return r;
}

NondetTransducer as_nondet(const DetTransducer& t) {
    NondetTransducer r;
    r.n = t.n;
    r.names = t.names;
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) r.edges.push_back({{x}, q, t.to(q, x), t.emit(q, x)});
    return r;
}

NondetTransducer nd_inverse_view(const DetTransducer& t) {
    NondetTransducer r;
    r.n = t.n;
    r.names = t.names;
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) r.edges.push_back({t.emit(q, x), q, t.to(q, x), {x}});
    return r;
}

Antichain rev_domain(const NondetTransducer& nd, int s, int k) {
    ConeAnalyzer dom(input_graph(nd));
    std::vector<Word> hit;
    for (const auto& w : all_words(nd.n, k))
        if (dom.readable(s, w)) hit.push_back(w);
    return reduce_antichain(std::move(hit), nd.n);
}

int default_nd_bound(const NondetTransducer& nd) {
    std::size_t m = 0;
    for (const auto& e : nd.edges) m = std::max(m, e.input.size());
    return (nd.n + 1) * nd.size() * (1 + static_cast<int>(m));
}

NdPath nd_path_gcp(ConeAnalyzer& dom, const NondetTransducer& nd, const std::vector<std::vector<int>>& out_edges, int s,
                   const Word& w, int bound) {
    NdPath p;
    p.end = s;
    Word r = w;
    const int limit = bound + static_cast<int>(w.size()) + nd.size() + 1;
    for (int steps = 0;; ++steps) {
        if (steps > limit)
            throw DomainError("nd_path_gcp: no common path prefix within " + std::to_string(bound) +
                              " letters (the edge-space injection bound guarantees one)");
        int viable = 0, pick = -1;
        for (int e : out_edges[static_cast<std::size_t>(p.end)]) {
            const NdEdge& ed = nd.edges[static_cast<std::size_t>(e)];
            if (ed.input.size() >= r.size()) {
                if (!is_prefix(r, ed.input)) continue;
            } else {
                if (!is_prefix(ed.input, r)) continue;
                if (!dom.readable(ed.dst, drop(r, ed.input.size()))) continue;
            }
            pick = e;
            if (++viable > 1) break;
        }
        if (viable == 0)
            throw DomainError("nd_path_gcp: " + to_string(w) + " is not in the domain of " + nd.names[static_cast<std::size_t>(s)]);
        if (viable > 1) break;
        const NdEdge& ed = nd.edges[static_cast<std::size_t>(pick)];
        if (ed.input.size() > r.size()) break;
        p.edges.push_back(pick);
        p.consumed.insert(p.consumed.end(), ed.input.begin(), ed.input.end());
        p.output.insert(p.output.end(), ed.output.begin(), ed.output.end());
        r = drop(r, ed.input.size());
        p.end = ed.dst;
    }
    return p;
}

NdPath nd_path_gcp(const NondetTransducer& nd, int s, const Word& w, int bound) {
    ConeAnalyzer dom(input_graph(nd));
    return nd_path_gcp(dom, nd, nd.out_edges(), s, w, bound < 0 ? default_nd_bound(nd) : bound);
}

DetTransducer rec(const NondetTransducer& nd, int bound) {
    validate(nd);
    if (bound < 0) bound = default_nd_bound(nd);
    ConeAnalyzer dom(input_graph(nd));
    const auto oe = nd.out_edges();
    using Key = std::pair<Word, int>;
    std::map<Key, int> id;
    std::vector<Key> states;
    auto intern = [&](Key k) {
        if (static_cast<int>(k.first.size()) > bound) throw DomainError("rec: remainder exceeds bound " + std::to_string(bound));
        auto [it, fresh] = id.emplace(k, static_cast<int>(states.size()));
        if (fresh) states.push_back(std::move(k));
        return it->second;
    };
    {
        Antichain a = dom.cover(0);
        if (a.words.empty()) throw DomainError("rec: empty domain");
        const Word& nu = a.words.front();
        NdPath p = nd_path_gcp(dom, nd, oe, 0, nu, bound);
        intern({drop(nu, p.consumed.size()), p.end});
    }
    std::vector<std::vector<std::pair<int, Word>>> edges;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states.size() > 400000) throw DomainError("rec: state exploration exceeded");
        edges.emplace_back();
        for (int a = 0; a < nd.n; ++a) {
            Word wa = states[i].first;
            wa.push_back(a);
            NdPath p = nd_path_gcp(dom, nd, oe, states[i].second, wa, bound);
            int j = intern({drop(wa, p.consumed.size()), p.end});
            edges[i].push_back({j, std::move(p.output)});
        }
    }
    DetTransducer r(nd.n, static_cast<int>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
        r.names[i] = "(" + to_string(states[i].first) + "|" + nd.names[static_cast<std::size_t>(states[i].second)] + ")";
        for (int a = 0; a < nd.n; ++a)
            r.set(static_cast<int>(i), a, edges[i][static_cast<std::size_t>(a)].first, edges[i][static_cast<std::size_t>(a)].second);
    }
    validate(r);
    return core(r);
}

DetTransducer rev_automorphism(const DetTransducer& t) { return minimal(rec(rev(t))); }

int rev_sig(const DetTransducer& t) { return sig(rev_automorphism(t)); }

int rev_sig_by_counts(const DetTransducer& t) {
    const NondetTransducer r = rev(t);
    ConeAnalyzer img(output_graph(r));
    const long long m = t.n - 1;
    long long sum = 0;
    for (int q = 0; q < r.size(); ++q) sum = (sum + static_cast<long long>(img.cover(q).words.size())) % m;
    return sum == 0 ? static_cast<int>(m) : static_cast<int>(sum);
}

bool in_Hn(const DetTransducer& t) {
    if (!t.synchronous() || !is_automaton_invertible(t)) return false;
    try {
        SyncResult s = sync_level(t);
        if (!s.synchronizing || static_cast<int>(s.core.size()) != t.size()) return false;
        is_bisynchronizing(t);
    } catch (const DomainError&) {
        return false;
    }
    return true;
}

ProbeQ1 probe_q1(const DetTransducer& t) { return {rev_sig(t), sig(invert(t))}; }

} // namespace sst
