#include "sst/images.hpp"

#include "sst/errors.hpp"
#include "sst/sync.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace sst {

int Antichain::depth() const {
    std::size_t d = 0;
    for (const auto& w : words) d = std::max(d, w.size());
    return static_cast<int>(d);
}

Antichain reduce_antichain(std::vector<Word> words, int n) {
    std::set<Word> s(words.begin(), words.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = s.begin(); it != s.end(); ++it) {
            if (it->empty()) continue;
            Word parent(it->begin(), it->end() - 1);
            bool full = true;
            for (int x = 0; x < n && full; ++x) {
                Word c = parent;
                c.push_back(x);
                full = s.count(c) > 0;
            }
            if (full) {
                for (int x = 0; x < n; ++x) {
                    Word c = parent;
                    c.push_back(x);
                    s.erase(c);
                }
                s.insert(parent);
                changed = true;
                break;
            }
        }
    }
    return Antichain{{s.begin(), s.end()}};
}

std::string to_string(const Antichain& a) {
    std::string s = "{";
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        if (i) s += " ";
        s += a.words[i].empty() ? std::string("eps") : to_string(a.words[i]);
    }
    return s + "}";
}

LabelGraph output_graph(const DetTransducer& t) {
    LabelGraph g;
    g.n = t.n;
    g.states = t.size();
    g.adj.resize(static_cast<std::size_t>(t.size()));
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) g.adj[static_cast<std::size_t>(q)].push_back({t.to(q, x), t.emit(q, x)});
    return g;
}

LabelGraph output_graph(const NondetTransducer& t) {
    LabelGraph g;
    g.n = t.n;
    g.states = t.size();
    g.adj.resize(static_cast<std::size_t>(t.size()));
    for (const auto& e : t.edges) g.adj[static_cast<std::size_t>(e.src)].push_back({e.dst, e.output});
    return g;
}

LabelGraph input_graph(const NondetTransducer& t) {
    LabelGraph g;
    g.n = t.n;
    g.states = t.size();
    g.adj.resize(static_cast<std::size_t>(t.size()));
    for (const auto& e : t.edges) g.adj[static_cast<std::size_t>(e.src)].push_back({e.dst, e.input});
    return g;
}

ConeAnalyzer::ConeAnalyzer(LabelGraph g, std::size_t cap) : g_(std::move(g)), cap_(cap) {
    for (int s = 0; s < g_.states; ++s)
        for (std::size_t i = 0; i < g_.adj[static_cast<std::size_t>(s)].size(); ++i) {
            edge_base_.push_back(static_cast<int>(pos_.size()));
            const Word& l = g_.adj[static_cast<std::size_t>(s)][i].label;
            for (std::size_t o = 0; o < l.size(); ++o) {
                pos_.push_back({s, static_cast<int>(i)});
                pos_offset_.push_back(static_cast<int>(o));
            }
        }
    // first position of each edge, by (state, edge)
    std::vector<std::vector<int>> first(static_cast<std::size_t>(g_.states));
    {
        std::size_t k = 0;
        for (int s = 0; s < g_.states; ++s)
            for (std::size_t i = 0; i < g_.adj[static_cast<std::size_t>(s)].size(); ++i)
                first[static_cast<std::size_t>(s)].push_back(edge_base_[k++]);
    }
    closure_.resize(static_cast<std::size_t>(g_.states));
    for (int s = 0; s < g_.states; ++s) {
        std::vector<char> seen(static_cast<std::size_t>(g_.states), 0);
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        std::vector<int>& out = closure_[static_cast<std::size_t>(s)];
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const auto& adj = g_.adj[static_cast<std::size_t>(v)];
            for (std::size_t i = 0; i < adj.size(); ++i) {
                if (adj[i].label.empty()) {
                    if (!seen[static_cast<std::size_t>(adj[i].dst)]) {
                        seen[static_cast<std::size_t>(adj[i].dst)] = 1;
                        stack.push_back(adj[i].dst);
                    }
                } else {
                    out.push_back(first[static_cast<std::size_t>(v)][i]);
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
}

int ConeAnalyzer::intern(Node s) {
    auto [it, fresh] = ids_.emplace(std::move(s), static_cast<int>(nodes_.size()));
    if (fresh) {
        if (nodes_.size() >= cap_) throw DomainError("image exploration exceeded its subset cap");
        nodes_.push_back(it->first);
        trans_.emplace_back(static_cast<std::size_t>(g_.n), -1);
        status_.push_back(it->first.empty() ? 0 : -1);
    }
    return it->second;
}

int ConeAnalyzer::start(int state) { return intern(closure_[static_cast<std::size_t>(state)]); }

int ConeAnalyzer::step(int node, Letter c) {
    int cached = trans_[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)];
    if (cached >= 0) return cached;
    Node out;
    const Node cur = nodes_[static_cast<std::size_t>(node)];
    for (int p : cur) {
        auto [s, i] = pos_[static_cast<std::size_t>(p)];
        const auto& e = g_.adj[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
        const int off = pos_offset_[static_cast<std::size_t>(p)];
        if (e.label[static_cast<std::size_t>(off)] != c) continue;
        if (off + 1 < static_cast<int>(e.label.size()))
            out.push_back(p + 1);
        else {
            const auto& cl = closure_[static_cast<std::size_t>(e.dst)];
            out.insert(out.end(), cl.begin(), cl.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    int id = intern(std::move(out));
    trans_[static_cast<std::size_t>(node)][static_cast<std::size_t>(c)] = id;
    return id;
}

bool ConeAnalyzer::universal(int node) {
    if (status_[static_cast<std::size_t>(node)] >= 0) return status_[static_cast<std::size_t>(node)] == 1;
    // Explore everything reachable through undecided nodes.
    std::vector<int> region{node};
    std::unordered_map<int, int> local{{node, 0}};
    for (std::size_t i = 0; i < region.size(); ++i) {
        int v = region[i];
        for (int c = 0; c < g_.n; ++c) {
            int w = step(v, c);
            if (status_[static_cast<std::size_t>(w)] < 0 && !local.count(w)) {
                local.emplace(w, static_cast<int>(region.size()));
                region.push_back(w);
            }
        }
    }
    std::vector<std::vector<int>> rev(region.size());
    std::deque<int> bad;
    std::vector<char> isbad(region.size(), 0);
    for (std::size_t i = 0; i < region.size(); ++i) {
        for (int c = 0; c < g_.n; ++c) {
            int w = trans_[static_cast<std::size_t>(region[i])][static_cast<std::size_t>(c)];
            auto it = local.find(w);
            if (it != local.end())
                rev[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
            else if (status_[static_cast<std::size_t>(w)] == 0 && !isbad[i]) {
                isbad[i] = 1;
                bad.push_back(static_cast<int>(i));
            }
        }
    }
    while (!bad.empty()) {
        int i = bad.front();
        bad.pop_front();
        for (int j : rev[static_cast<std::size_t>(i)])
            if (!isbad[static_cast<std::size_t>(j)]) {
                isbad[static_cast<std::size_t>(j)] = 1;
                bad.push_back(j);
            }
    }
    for (std::size_t i = 0; i < region.size(); ++i) status_[static_cast<std::size_t>(region[i])] = isbad[i] ? 0 : 1;
    return status_[static_cast<std::size_t>(node)] == 1;
}

bool ConeAnalyzer::readable(int state, const Word& w) {
    int v = start(state);
    for (Letter c : w) {
        if (nodes_[static_cast<std::size_t>(v)].empty()) return false;
        v = step(v, c);
    }
    return !nodes_[static_cast<std::size_t>(v)].empty();
}

bool ConeAnalyzer::covers(int state, const Word& w) {
    int v = start(state);
    for (Letter c : w) v = step(v, c);
    return universal(v);
}

Antichain ConeAnalyzer::cover(int state) {
    Antichain res;
    struct Frame {
        int node;
        int next;
    };
    std::vector<Frame> stack;
    std::vector<char> onpath;
    Word word;
    std::size_t visited = 0;
    auto enter = [&](int v) -> bool {  // true if the frame must be expanded
        if (nodes_[static_cast<std::size_t>(v)].empty()) return false;
        if (universal(v)) {
            res.words.push_back(word);
            return false;
        }
        if (onpath.size() < nodes_.size()) onpath.resize(nodes_.size(), 0);
        if (onpath[static_cast<std::size_t>(v)])
            throw DomainError("image is not clopen (a boundary point lies on the cycle read by " + to_string(word) + ")");
        if (++visited > cap_) throw DomainError("image exploration exceeded its bound");
        onpath[static_cast<std::size_t>(v)] = 1;
        stack.push_back({v, 0});
        return true;
    };
    if (!enter(start(state))) return res;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next == g_.n) {
            onpath[static_cast<std::size_t>(f.node)] = 0;
            stack.pop_back();
            if (!word.empty() && !stack.empty()) word.pop_back();
            continue;
        }
        const int c = f.next++;
        const int w = step(f.node, c);
        word.push_back(c);
        if (!enter(w)) word.pop_back();
    }
    return res;
}

Antichain image_antichain(const DetTransducer& t, int q) {
    ConeAnalyzer a(output_graph(t));
    return a.cover(q);
}

ConeCount uniform_cone_count(const Antichain& a, int n) {
    ConeCount c;
    c.depth = a.depth();
    unsigned __int128 s = 0;
    for (const auto& w : a.words) {
        unsigned __int128 p = 1;
        for (std::size_t i = w.size(); i < static_cast<std::size_t>(c.depth); ++i) p *= static_cast<unsigned>(n);
        s += p;
        if (s > (static_cast<unsigned __int128>(1) << 62)) throw DomainError("cone count overflow");
    }
    c.s = static_cast<long long>(s);
    return c;
}

ConeCount uniform_cone_count(const DetTransducer& t, int q) { return uniform_cone_count(image_antichain(t, q), t.n); }

int default_remainder_bound(const DetTransducer& t) { return (t.n + 1) * t.size() * (1 + t.max_output()); }

Word remainder_L(ConeAnalyzer& img, const DetTransducer& t, int q, const Word& w, int bound) {
    Word u, r = w;
    int p = q;
    for (int steps = 0;; ++steps) {
        if (r.empty()) return u;
        if (steps > bound + static_cast<int>(w.size()))
            throw DomainError("remainder_L: bound " + std::to_string(bound) + " exceeded");
        int live = 0;
        Letter pick = -1;
        Word pick_rest;
        for (int x = 0; x < t.n && live < 2; ++x) {
            const Word& o = t.emit(p, x);
            Word rest;
            if (o.size() >= r.size()) {
                if (!is_prefix(r, o)) continue;
            } else {
                if (!is_prefix(o, r)) continue;
                rest = drop(r, o.size());
                if (!img.readable(t.to(p, x), rest)) continue;
            }
            ++live;
            pick = x;
            pick_rest = std::move(rest);
        }
        if (live == 0) throw DomainError("remainder_L: " + to_string(w) + " is not in the image of " + t.names[static_cast<std::size_t>(q)]);
        if (live > 1) return u;
        u.push_back(pick);
        p = t.to(p, pick);
        r = std::move(pick_rest);
    }
}

Word remainder_L(const DetTransducer& t, int q, const Word& w, int bound) {
    ConeAnalyzer img(output_graph(t));
    return remainder_L(img, t, q, w, bound < 0 ? default_remainder_bound(t) : bound);
}

DetTransducer inverse_construction(const DetTransducer& t, int bound) {
    validate(t);
    if (bound < 0) bound = default_remainder_bound(t);
    ConeAnalyzer img(output_graph(t));
    using Key = std::pair<Word, int>;
    std::map<Key, int> id;
    std::vector<Key> states;
    auto intern = [&](Key k) {
        if (static_cast<int>(k.first.size()) > bound)
            throw DomainError("invert: not invertible within bound " + std::to_string(bound));
        auto [it, fresh] = id.emplace(k, static_cast<int>(states.size()));
        if (fresh) states.push_back(std::move(k));
        return it->second;
    };
    // A starting pair from the first cone of im(q0).
    {
        Antichain a = img.cover(0);
        if (a.words.empty()) throw DomainError("invert: empty image");
        const Word& nu = a.words.front();
        Word u = remainder_L(img, t, 0, nu, bound);
        auto [p, o] = t.run(0, u);
        if (!is_prefix(o, nu)) throw DomainError("invert: inconsistent remainder");
        intern({drop(nu, o.size()), p});
    }
    std::vector<std::vector<std::pair<int, Word>>> edges;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states.size() > 200000) throw DomainError("invert: state exploration exceeded");
        edges.emplace_back();
        for (int a = 0; a < t.n; ++a) {
            Word wa = states[i].first;
            wa.push_back(a);
            const int q = states[i].second;
            Word u = remainder_L(img, t, q, wa, bound);
            auto [p, o] = t.run(q, u);
            if (!is_prefix(o, wa)) throw DomainError("invert: output of the forced input overshoots");
            int j = intern({drop(wa, o.size()), p});
            edges[i].push_back({j, std::move(u)});
        }
    }
    DetTransducer r(t.n, static_cast<int>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
        r.names[i] = "(" + to_string(states[i].first) + "|" + t.names[static_cast<std::size_t>(states[i].second)] + ")";
        for (int a = 0; a < t.n; ++a) r.set(static_cast<int>(i), a, edges[i][static_cast<std::size_t>(a)].first, edges[i][static_cast<std::size_t>(a)].second);
    }
    validate(r);
    return core(r);
}

DetTransducer invert(const DetTransducer& t, int bound) { return minimal(inverse_construction(t, bound)); }

bool is_homeomorphism_state(const DetTransducer& t, int q) {
    Antichain a = image_antichain(t, q);
    bool homeo = a.words.size() == 1 && a.words[0].empty();
    if (homeo && !remainder_L(t, q, {}).empty())
        throw DomainError("internal: surjective state with non-empty remainder");
    return homeo;
}

bool is_automaton_invertible(const DetTransducer& t) {
    if (!t.synchronous()) throw DomainError("automaton invertibility needs a synchronous machine");
    for (int q = 0; q < t.size(); ++q) {
        std::vector<char> hit(static_cast<std::size_t>(t.n), 0);
        for (int x = 0; x < t.n; ++x) {
            Letter y = t.emit(q, x)[0];
            if (hit[static_cast<std::size_t>(y)]) return false;
            hit[static_cast<std::size_t>(y)] = 1;
        }
    }
    return true;
}

} // namespace sst
