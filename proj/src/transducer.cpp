#include "sst/transducer.hpp"

#include "sst/errors.hpp"
#include "sst/sync.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace sst {

DetTransducer::DetTransducer(int alphabet, int states)
    : n(alphabet),
      names(static_cast<std::size_t>(states)),
      next(static_cast<std::size_t>(states * alphabet), 0),
      out(static_cast<std::size_t>(states * alphabet)) {
    for (int q = 0; q < states; ++q) names[static_cast<std::size_t>(q)] = "q" + std::to_string(q);
}

void DetTransducer::set(int q, Letter x, int dst, Word w) {
    next[static_cast<std::size_t>(q * n + x)] = dst;
    out[static_cast<std::size_t>(q * n + x)] = std::move(w);
}

int DetTransducer::index_of(const std::string& name) const {
    for (int q = 0; q < size(); ++q)
        if (names[static_cast<std::size_t>(q)] == name) return q;
    return -1;
}

int DetTransducer::max_output() const {
    std::size_t m = 0;
    for (const auto& w : out) m = std::max(m, w.size());
    return static_cast<int>(m);
}

bool DetTransducer::synchronous() const {
    return std::all_of(out.begin(), out.end(), [](const Word& w) { return w.size() == 1; });
}

std::pair<int, Word> DetTransducer::run(int q, const Word& w) const {
    Word o;
    for (Letter x : w) {
        if (x < 0 || x >= n) throw FormatError("letter " + std::to_string(x) + " outside alphabet");
        const Word& e = emit(q, x);
        o.insert(o.end(), e.begin(), e.end());
        q = to(q, x);
    }
    return {q, std::move(o)};
}

int DetTransducer::state_after(int q, const Word& w) const {
    for (Letter x : w) q = to(q, x);
    return q;
}

std::vector<std::vector<int>> NondetTransducer::out_edges() const {
    std::vector<std::vector<int>> r(static_cast<std::size_t>(size()));
    for (std::size_t e = 0; e < edges.size(); ++e) r[static_cast<std::size_t>(edges[e].src)].push_back(static_cast<int>(e));
    return r;
}

DetTransducer identity_machine(int n) {
    DetTransducer t(n, 1);
    t.names[0] = "id";
    for (int x = 0; x < n; ++x) t.set(0, x, 0, {x});
    return t;
}

DetTransducer shift_machine(int n) {
    DetTransducer t(n, n);
    for (int i = 0; i < n; ++i) {
        t.names[static_cast<std::size_t>(i)] = "a" + std::to_string(i + 1);
        for (int x = 0; x < n; ++x) t.set(i, x, x, {i});
    }
    return t;
}

DetTransducer permutation_machine(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    DetTransducer t(n, 1);
    t.names[0] = "p";
    for (int x = 0; x < n; ++x) t.set(0, x, 0, {perm[static_cast<std::size_t>(x)]});
    return t;
}

DetTransducer relabel(const DetTransducer& t, const std::vector<std::string>& names) {
    DetTransducer r = t;
    r.names = names;
    return r;
}

namespace {

// Cycle detection in the subgraph of edges selected by `keep`.
template <class Adj>
bool has_cycle(int states, const Adj& adj) {
    std::vector<int> color(static_cast<std::size_t>(states), 0);
    for (int s = 0; s < states; ++s) {
        if (color[static_cast<std::size_t>(s)]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
        color[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            const auto& nb = adj[static_cast<std::size_t>(v)];
            if (i < nb.size()) {
                int w = nb[i++];
                if (color[static_cast<std::size_t>(w)] == 1) return true;
                if (color[static_cast<std::size_t>(w)] == 0) {
                    color[static_cast<std::size_t>(w)] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[static_cast<std::size_t>(v)] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace

void validate(const DetTransducer& t) {
    if (t.n < 2) throw FormatError("alphabet size must be at least 2");
    if (t.size() < 1) throw FormatError("transducer has no states");
    const std::size_t cells = static_cast<std::size_t>(t.size() * t.n);
    if (t.next.size() != cells || t.out.size() != cells) throw FormatError("transition table has wrong shape");
    std::vector<std::vector<int>> eps(static_cast<std::size_t>(t.size()));
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) {
            int d = t.to(q, x);
            if (d < 0 || d >= t.size()) throw FormatError("transition to unknown state");
            check_letters(t.emit(q, x), t.n);
            if (t.emit(q, x).empty()) eps[static_cast<std::size_t>(q)].push_back(d);
        }
    if (has_cycle(t.size(), eps)) throw DomainError("degenerate: a cycle has empty output");
}

void validate(const NondetTransducer& t) {
    if (t.n < 2) throw FormatError("alphabet size must be at least 2");
    std::vector<std::vector<int>> ein(static_cast<std::size_t>(t.size())), eout(static_cast<std::size_t>(t.size()));
    for (const auto& e : t.edges) {
        if (e.src < 0 || e.src >= t.size() || e.dst < 0 || e.dst >= t.size()) throw FormatError("edge to unknown state");
        check_letters(e.input, t.n);
        check_letters(e.output, t.n);
        if (e.input.empty()) ein[static_cast<std::size_t>(e.src)].push_back(e.dst);
        if (e.output.empty()) eout[static_cast<std::size_t>(e.src)].push_back(e.dst);
    }
    if (has_cycle(t.size(), ein)) throw DomainError("degenerate: a circuit has empty input");
    if (has_cycle(t.size(), eout)) throw DomainError("degenerate: a circuit has empty output");
}

DetTransducer product(const DetTransducer& t, const DetTransducer& u) {
    if (t.n != u.n) throw DomainError("alphabet mismatch in product");
    const int m = u.size();
    DetTransducer r(t.n, t.size() * m);
    for (int p = 0; p < t.size(); ++p)
        for (int q = 0; q < m; ++q) {
            const int s = p * m + q;
            r.names[static_cast<std::size_t>(s)] = t.names[static_cast<std::size_t>(p)] + "," + u.names[static_cast<std::size_t>(q)];
            for (int x = 0; x < t.n; ++x) {
                auto [q2, o] = u.run(q, t.emit(p, x));
                r.set(s, x, t.to(p, x) * m + q2, std::move(o));
            }
        }
    return r;
}

int default_depth_bound(const DetTransducer& t) { return 2 * t.size() * (1 + t.max_output()); }

namespace {

using Position = std::pair<int, Word>;  // state, output still owed

// Expand positions with nothing owed until every position owes a letter.
std::vector<Position> normalize(const DetTransducer& t, std::vector<Position> conf) {
    std::set<Position> done;
    std::set<int> expanded;
    while (!conf.empty()) {
        Position p = std::move(conf.back());
        conf.pop_back();
        if (!p.second.empty()) {
            done.insert(std::move(p));
            continue;
        }
        if (!expanded.insert(p.first).second) continue;
        for (int x = 0; x < t.n; ++x) conf.push_back({t.to(p.first, x), t.emit(p.first, x)});
    }
    return {done.begin(), done.end()};
}

GcpResult gcp_exact(const DetTransducer& t, int q, long bound) {
    std::map<std::vector<Position>, std::size_t> seen;
    Word emitted;
    std::vector<Position> conf = normalize(t, {{q, {}}});
    while (true) {
        auto [it, fresh] = seen.emplace(conf, emitted.size());
        if (!fresh) {
            GcpResult r;
            r.infinite = true;
            r.prefix = Word(emitted.begin(), emitted.begin() + static_cast<std::ptrdiff_t>(it->second));
            r.period = drop(emitted, it->second);
            return r;
        }
        const Letter c = conf.front().second.front();
        for (const auto& p : conf)
            if (p.second.front() != c) return {false, emitted, {}};
        emitted.push_back(c);
        if (bound >= 0 && static_cast<long>(emitted.size()) > bound)
            throw DomainError("lambda_gcp: depth bound " + std::to_string(bound) + " exceeded at state " +
                              t.names[static_cast<std::size_t>(q)]);
        for (auto& p : conf) p.second.erase(p.second.begin());
        conf = normalize(t, std::move(conf));
    }
}

} // namespace

GcpResult lambda_gcp(const DetTransducer& t, int q, const Word& w, int depth_bound) {
    if (q < 0 || q >= t.size()) throw FormatError("unknown state");
    auto [p, o] = t.run(q, w);
    GcpResult r = gcp_exact(t, p, depth_bound < 0 ? default_depth_bound(t) : depth_bound);
    r.prefix = concat(o, r.prefix);
    return r;
}

std::optional<std::vector<Word>> all_lambda_eps(const DetTransducer& t) {
    const int Q = t.size();
    std::vector<Word> cur(static_cast<std::size_t>(Q)), nxt(static_cast<std::size_t>(Q));
    // Fixpoint: L_{i+1}(q) = gcp_x lambda(x,q) L_i(pi(x,q)); L_i(q) is the
    // gcp of outputs of inputs of length i, stable once it stops changing.
    const long cap = 4L * Q * (1 + t.max_output()) + 16;
    for (long it = 0; it < cap; ++it) {
        bool changed = false;
        for (int q = 0; q < Q; ++q) {
            auto at = [&](int x, std::size_t i) -> Letter {
                const Word& a = t.emit(q, x);
                if (i < a.size()) return a[i];
                const Word& b = cur[static_cast<std::size_t>(t.to(q, x))];
                i -= a.size();
                return i < b.size() ? b[i] : -1;
            };
            auto len = [&](int x) {
                return t.emit(q, x).size() + cur[static_cast<std::size_t>(t.to(q, x))].size();
            };
            std::size_t L = len(0);
            for (int x = 1; x < t.n; ++x) {
                std::size_t k = 0, lx = std::min(L, len(x));
                while (k < lx && at(x, k) == at(0, k)) ++k;
                L = k;
            }
            Word w(L);
            for (std::size_t i = 0; i < L; ++i) w[i] = at(0, i);
            if (w != cur[static_cast<std::size_t>(q)]) changed = true;
            nxt[static_cast<std::size_t>(q)] = std::move(w);
        }
        cur.swap(nxt);
        if (!changed) return cur;
    }
    // Slow convergence or a degenerate state: settle each state exactly.
    std::vector<Word> res(static_cast<std::size_t>(Q));
    for (int q = 0; q < Q; ++q) {
        GcpResult g = gcp_exact(t, q, -1);
        if (g.infinite) return std::nullopt;
        res[static_cast<std::size_t>(q)] = std::move(g.prefix);
    }
    return res;
}

namespace {

Word responded(const DetTransducer& t, const std::vector<Word>& L, int q, Letter x) {
    Word full = concat(t.emit(q, x), L[static_cast<std::size_t>(t.to(q, x))]);
    const Word& lq = L[static_cast<std::size_t>(q)];
    if (!is_prefix(lq, full)) throw DomainError("internal: Lambda(eps,q) is not a prefix of Lambda(x,q)");
    return drop(full, lq.size());
}

std::vector<Word> require_lambdas(const DetTransducer& t) {
    auto L = all_lambda_eps(t);
    if (!L) throw DomainError("degenerate: Z_x case (some state has a single output sequence)");
    return *L;
}

} // namespace

DetTransducer remove_incomplete_response(const DetTransducer& t) {
    const auto L = require_lambdas(t);
    DetTransducer r = t;
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) r.set(q, x, t.to(q, x), responded(t, L, q, x));
    return r;
}

InitialDetTransducer remove_incomplete_response(const InitialDetTransducer& it) {
    const DetTransducer& t = it.base;
    const auto L = require_lambdas(t);
    const int Q = t.size();
    DetTransducer r(t.n, Q + 1);
    for (int q = 0; q < Q; ++q) {
        r.names[static_cast<std::size_t>(q)] = t.names[static_cast<std::size_t>(q)];
        for (int x = 0; x < t.n; ++x) r.set(q, x, t.to(q, x), responded(t, L, q, x));
    }
    r.names[static_cast<std::size_t>(Q)] = "q-1";
    for (int x = 0; x < t.n; ++x)
        r.set(Q, x, t.to(it.initial, x), concat(t.emit(it.initial, x), L[static_cast<std::size_t>(t.to(it.initial, x))]));
    return {r, Q};
}

Quotient merge_omega_equivalent(const DetTransducer& t) {
    const int Q = t.size();
    std::vector<int> block(static_cast<std::size_t>(Q));
    int count = 0;
    {
        std::map<std::vector<Word>, int> ids;
        for (int q = 0; q < Q; ++q) {
            std::vector<Word> key(t.out.begin() + q * t.n, t.out.begin() + (q + 1) * t.n);
            auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
            block[static_cast<std::size_t>(q)] = it->second;
        }
        count = static_cast<int>(ids.size());
    }
    while (true) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> nb(static_cast<std::size_t>(Q));
        std::vector<int> key(static_cast<std::size_t>(t.n + 1));
        for (int q = 0; q < Q; ++q) {
            key[0] = block[static_cast<std::size_t>(q)];
            for (int x = 0; x < t.n; ++x) key[static_cast<std::size_t>(x + 1)] = block[static_cast<std::size_t>(t.to(q, x))];
            auto [it, fresh] = ids.emplace(key, static_cast<int>(ids.size()));
            nb[static_cast<std::size_t>(q)] = it->second;
        }
        const int c = static_cast<int>(ids.size());
        block.swap(nb);
        if (c == count) break;
        count = c;
    }
    // Renumber blocks by first member.
    std::vector<int> ren(static_cast<std::size_t>(count), -1), rep;
    for (int q = 0; q < Q; ++q) {
        int& b = ren[static_cast<std::size_t>(block[static_cast<std::size_t>(q)])];
        if (b < 0) {
            b = static_cast<int>(rep.size());
            rep.push_back(q);
        }
    }
    for (auto& b : block) b = ren[static_cast<std::size_t>(b)];
    DetTransducer m(t.n, static_cast<int>(rep.size()));
    for (std::size_t b = 0; b < rep.size(); ++b) {
        const int q = rep[b];
        m.names[b] = t.names[static_cast<std::size_t>(q)];
        for (int x = 0; x < t.n; ++x) m.set(static_cast<int>(b), x, block[static_cast<std::size_t>(t.to(q, x))], t.emit(q, x));
    }
    return {m, block};
}

namespace {

// Renumber states in BFS order from `root`, letters ascending; drops
// unreachable states.  perm[old] = new or -1.
DetTransducer bfs_order(const DetTransducer& t, int root, std::vector<int>* perm_out) {
    std::vector<int> perm(static_cast<std::size_t>(t.size()), -1), order;
    perm[static_cast<std::size_t>(root)] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int x = 0; x < t.n; ++x) {
            int d = t.to(order[i], x);
            if (perm[static_cast<std::size_t>(d)] < 0) {
                perm[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
                order.push_back(d);
            }
        }
    DetTransducer r(t.n, static_cast<int>(order.size()));
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int q = order[i];
        r.names[i] = t.names[static_cast<std::size_t>(q)];
        for (int x = 0; x < t.n; ++x) r.set(static_cast<int>(i), x, perm[static_cast<std::size_t>(t.to(q, x))], t.emit(q, x));
    }
    if (perm_out) *perm_out = std::move(perm);
    return r;
}

} // namespace

Reduction reduce(const DetTransducer& t) {
    validate(t);
    Reduction red;
    std::vector<int> to_core;
    DetTransducer c = core(t, &to_core);
    auto L = all_lambda_eps(c);
    red.map.assign(static_cast<std::size_t>(t.size()), -1);
    red.lag.assign(static_cast<std::size_t>(t.size()), 0);
    if (!L) {
        GcpResult g;
        for (int q = 0; q < c.size(); ++q) {
            g = gcp_exact(c, q, -1);
            if (g.infinite) break;
        }
        red.zx = ZxTransducer{t.n, canonical_rotation(prime_root(g.period))};
        DetTransducer z(t.n, 1);
        z.names[0] = "z";
        for (int x = 0; x < t.n; ++x) z.set(0, x, 0, red.zx->x);
        red.machine = z;
        for (int q = 0; q < t.size(); ++q)
            if (to_core[static_cast<std::size_t>(q)] >= 0) red.map[static_cast<std::size_t>(q)] = 0;
        return red;
    }
    DetTransducer nr = c;
    for (int q = 0; q < c.size(); ++q)
        for (int x = 0; x < c.n; ++x) nr.set(q, x, c.to(q, x), responded(c, *L, q, x));
    Quotient qt = merge_omega_equivalent(nr);
    // Canonical numbering: BFS from the loop state of letter 0.
    const int root = forced_state(qt.machine, Word(static_cast<std::size_t>(require_sync(qt.machine).level), 0));
    std::vector<int> perm;
    red.machine = bfs_order(qt.machine, root, &perm);
    for (int q = 0; q < t.size(); ++q) {
        const int cq = to_core[static_cast<std::size_t>(q)];
        if (cq < 0) continue;
        red.map[static_cast<std::size_t>(q)] = perm[static_cast<std::size_t>(qt.block[static_cast<std::size_t>(cq)])];
        red.lag[static_cast<std::size_t>(q)] = static_cast<int>((*L)[static_cast<std::size_t>(cq)].size());
    }
    return red;
}

Minimized minimize(const DetTransducer& t) {
    Reduction r = reduce(t);
    Minimized m;
    if (r.zx)
        m.zx = r.zx;
    else
        m.machine = std::move(r.machine);
    return m;
}

DetTransducer minimal(const DetTransducer& t) {
    Reduction r = reduce(t);
    if (r.zx) throw DomainError("degenerate: minimizes to Z_" + to_string(r.zx->x));
    return r.machine;
}

DetTransducer multiply(const DetTransducer& t, const DetTransducer& u) {
    DetTransducer m = minimal(product(t, u));
    for (int q = 0; q < m.size(); ++q) m.names[static_cast<std::size_t>(q)] = "s" + std::to_string(q);
    return m;
}

bool is_identity(const DetTransducer& t) {
    if (t.size() != 1) return false;
    for (int x = 0; x < t.n; ++x)
        if (t.emit(0, x) != Word{x}) return false;
    return true;
}

namespace {

bool try_match(const DetTransducer& a, int qa, const DetTransducer& b, int qb, bool need_bijection,
               std::vector<int>* map_out = nullptr) {
    std::vector<int> f(static_cast<std::size_t>(a.size()), -1), g(static_cast<std::size_t>(b.size()), -1);
    std::deque<std::pair<int, int>> work{{qa, qb}};
    f[static_cast<std::size_t>(qa)] = qb;
    g[static_cast<std::size_t>(qb)] = qa;
    std::size_t matched = 1;
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        for (int x = 0; x < a.n; ++x) {
            if (a.emit(p, x) != b.emit(q, x)) return false;
            int p2 = a.to(p, x), q2 = b.to(q, x);
            int& fp = f[static_cast<std::size_t>(p2)];
            int& gq = g[static_cast<std::size_t>(q2)];
            if (fp < 0 && gq < 0) {
                fp = q2;
                gq = p2;
                ++matched;
                work.push_back({p2, q2});
            } else if (fp != q2 || gq != p2) {
                return false;
            }
        }
    }
    if (need_bijection && matched != static_cast<std::size_t>(a.size())) return false;
    if (map_out) *map_out = std::move(f);
    return true;
}

} // namespace

std::optional<std::vector<int>> find_isomorphism(const DetTransducer& a, const DetTransducer& b) {
    if (a.n != b.n || a.size() != b.size()) return std::nullopt;
    std::vector<int> f;
    // Anchor on the loop state of letter 0 when both machines synchronize.
    try {
        const int la = require_sync(a).level, lb = require_sync(b).level;
        const int k = std::max(la, lb);
        Word z(static_cast<std::size_t>(k), 0);
        if (try_match(a, forced_state(a, z), b, forced_state(b, z), true, &f)) return f;
        return std::nullopt;
    } catch (const DomainError&) {
    }
    for (int q = 0; q < b.size(); ++q)
        if (try_match(a, 0, b, q, true, &f)) return f;
    return std::nullopt;
}

bool is_isomorphic(const DetTransducer& a, const DetTransducer& b) { return find_isomorphism(a, b).has_value(); }

InitialDetTransducer minimize_initial(const InitialDetTransducer& it) {
    validate(it.base);
    // Only the part accessible from the initial state matters.
    std::vector<int> perm;
    DetTransducer acc = bfs_order(it.base, it.initial, &perm);
    InitialDetTransducer r = remove_incomplete_response(InitialDetTransducer{acc, 0});
    DetTransducer acc2 = bfs_order(r.base, r.initial, &perm);
    Quotient qt = merge_omega_equivalent(acc2);
    DetTransducer out = bfs_order(qt.machine, qt.block[0], &perm);
    out.names[0] = "q0";
    return {out, 0};
}

InitialDetTransducer product_initial(const InitialDetTransducer& a, const InitialDetTransducer& b) {
    DetTransducer p = product(a.base, b.base);
    std::vector<int> perm;
    DetTransducer acc = bfs_order(p, a.initial * b.base.size() + b.initial, &perm);
    return {acc, 0};
}

bool is_isomorphic_initial(const InitialDetTransducer& a, const InitialDetTransducer& b) {
    if (a.base.n != b.base.n || a.base.size() != b.base.size()) return false;
    return try_match(a.base, a.initial, b.base, b.initial, true);
}

} // namespace sst
