#include "sst/markers.hpp"

#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace sst {

namespace {

bool block_eq(const Word& x, std::size_t at, const Word& z) {
    if (at + z.size() > x.size()) return false;
    return std::equal(z.begin(), z.end(), x.begin() + static_cast<std::ptrdiff_t>(at));
}

// y over [lb, rb + |right|) from a finite evaluator with `margin` letters of
// context on each side.
BiInfiniteSeq apply_finite(const BiInfiniteSeq& x, long long margin, const std::function<Word(const Word&)>& image) {
    const long long P = static_cast<long long>(x.left.size()), Q = static_cast<long long>(x.right.size());
    const long long lb = x.offset - P - margin, rb = x.offset + static_cast<long long>(x.center.size()) + margin;
    const long long from = lb - margin, to = rb + Q + margin;
    Word in;
    for (long long i = from; i < to; ++i) in.push_back(x.at(i));
    const Word out = image(in);
    BiInfiniteSeq y;
    auto at = [&](long long j) { return out[static_cast<std::size_t>(j - from)]; };
    for (long long j = lb; j < lb + P; ++j) y.left.push_back(at(j));
    for (long long j = lb + P; j < rb; ++j) y.center.push_back(at(j));
    for (long long j = rb; j < rb + Q; ++j) y.right.push_back(at(j));
    y.offset = lb + P;
    return y.normalized();
}

// The rule's own alignment is exact; this confirms it against the direct
// evaluator and otherwise looks for the constant that makes them agree.
Pair calibrate(Pair p, const std::vector<BiInfiniteSeq>& samples, const std::function<BiInfiniteSeq(const BiInfiniteSeq&)>& direct,
               int range) {
    std::vector<BiInfiniteSeq> want, got;
    for (const auto& x : samples) {
        want.push_back(direct(x));
        got.push_back(apply(p, x));
    }
    for (int d = 0; d <= range; ++d)
        for (int c : {d, -d}) {
            bool all = true;
            for (std::size_t i = 0; i < samples.size() && all; ++i) all = shift_seq(got[i], c) == want[i];
            if (all) {
                for (int& v : p.alpha) v += c;
                return p;
            }
        }
    throw DomainError("no annotation constant matches the direct evaluator");
}

Word random_word(std::mt19937_64& rng, int n, int len) {
    Word w(static_cast<std::size_t>(len));
    for (auto& c : w) c = static_cast<Letter>(rng() % static_cast<unsigned>(n));
    return w;
}

} // namespace

Check validate_marker_pair(int n, const Word& a, const Word& b) {
    try {
        check_letters(a, n);
        check_letters(b, n);
    } catch (const FormatError& e) {
        return {false, e.what()};
    }
    if (a.size() != b.size()) return {false, "a and b differ in length"};
    if (a.size() < 2) return {false, "length must be at least 2"};
    if (a == b) return {false, "a and b must be distinct"};
    const std::size_t l = a.size();
    for (const Word* c : {&a, &b})
        for (const Word* d : {&a, &b}) {
            const Word s = concat(*c, *d);
            for (std::size_t o = 1; o < l; ++o)
                for (const Word* z : {&a, &b})
                    if (block_eq(s, o, *z))
                        return {false, to_string(*z) + " occurs at offset " + std::to_string(o) + " of " + to_string(s)};
        }
    return {true, {}};
}

std::vector<MarkerPair> search_marker_pairs(int n, int l, std::size_t count) {
    std::vector<MarkerPair> res;
    const auto words = all_words(n, l);
    for (std::size_t i = 0; i < words.size() && res.size() < count; ++i)
        for (std::size_t j = i + 1; j < words.size() && res.size() < count; ++j)
            if (validate_marker_pair(n, words[i], words[j]).ok) res.push_back({n, words[i], words[j]});
    return res;
}

std::optional<MarkerPair> search_marker_pair(int n, int l) {
    auto r = search_marker_pairs(n, l, 1);
    if (r.empty()) return std::nullopt;
    return r.front();
}

Word marker_image(const MarkerPair& p, const Word& x) {
    const std::size_t l = p.a.size();
    Word y = x;
    std::vector<char> set(x.size(), 0);
    auto ab = [&](std::size_t at) { return block_eq(x, at, p.a) || block_eq(x, at, p.b); };
    for (std::size_t s = 2 * l; s + 3 * l <= x.size(); ++s) {
        bool run = true;
        for (int k = -2; k <= 2 && run; ++k) run = ab(static_cast<std::size_t>(static_cast<long long>(s) + k * static_cast<long long>(l)));
        if (!run) continue;
        const Word& to = block_eq(x, s, p.a) ? p.b : p.a;
        for (std::size_t i = 0; i < l; ++i) {
            if (set[s + i] && y[s + i] != to[i]) throw DomainError("marker segments conflict at " + std::to_string(s + i));
            y[s + i] = to[i];
            set[s + i] = 1;
        }
    }
    return y;
}

BiInfiniteSeq marker_apply(const MarkerPair& p, const BiInfiniteSeq& x) {
    return apply_finite(x, 3 * static_cast<long long>(p.a.size()), [&](const Word& w) { return marker_image(p, w); });
}

Pair marker_automorphism(const MarkerPair& p) {
    Check c = validate_marker_pair(p.n, p.a, p.b);
    if (!c.ok) throw DomainError("invalid marker pair: " + c.reason);
    const int l = static_cast<int>(p.a.size());
    LocalRule f = extract_rule(p.n, [&](const Word& w) { return marker_image(p, w); }, 3 * l - 1, 3 * l - 1);
    Pair pr = local_rule_to_pair(f);
    std::mt19937_64 rng(17);
    std::vector<BiInfiniteSeq> samples;
    for (int i = 0; i < 6; ++i) {
        BiInfiniteSeq x;
        x.left = random_word(rng, p.n, 1 + i % 3);
        x.right = random_word(rng, p.n, 1 + (i + 1) % 3);
        x.center = random_word(rng, p.n, 3);
        for (int k = 0; k < 6 + i; ++k) {
            const Word& z = (rng() & 1) ? p.a : p.b;
            x.center.insert(x.center.end(), z.begin(), z.end());
        }
        const Word tail = random_word(rng, p.n, 3);
        x.center.insert(x.center.end(), tail.begin(), tail.end());
        samples.push_back(x);
    }
    return calibrate(std::move(pr), samples, [&](const BiInfiniteSeq& x) { return marker_apply(p, x); }, 6 * l);
}

std::vector<int> ConveyorRule::apply(const std::vector<int>& u, int alphabet) const {
    switch (kind) {
    case Kind::Perm: {
        std::vector<int> r;
        for (int v : u) r.push_back(perm[static_cast<std::size_t>(v)]);
        return r;
    }
    case Kind::Local: {
        std::vector<int> r;
        const long long k = static_cast<long long>(u.size());
        for (long long i = 0; i < k; ++i) {
            std::size_t idx = 0;
            for (long long j = i - delta; j <= i + delta; ++j)
                idx = idx * static_cast<std::size_t>(alphabet + 1) +
                      static_cast<std::size_t>(j < 0 || j >= k ? alphabet : u[static_cast<std::size_t>(j)]);
            r.push_back(table[idx]);
        }
        return r;
    }
    case Kind::Composite: {
        std::vector<int> r = u;
        for (const auto& p : parts) r = p.apply(r, alphabet);
        return r;
    }
    }
    return u;
}

int ConveyorRule::radius() const {
    switch (kind) {
    case Kind::Perm:
        return 0;
    case Kind::Local:
        return delta;
    case Kind::Composite: {
        int s = 0;
        for (const auto& p : parts) s += p.radius();
        return s;
    }
    }
    return 0;
}

ConveyorRule perm_rule(std::vector<int> perm) {
    ConveyorRule r;
    r.kind = ConveyorRule::Kind::Perm;
    r.perm = std::move(perm);
    return r;
}

ConveyorRule local_rule(int alphabet, int delta, const std::function<int(const std::vector<int>&)>& f) {
    ConveyorRule r;
    r.kind = ConveyorRule::Kind::Local;
    r.delta = delta;
    const int m = 2 * delta + 1;
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(alphabet + 1);
    r.table.assign(total, 0);
    std::vector<int> win(static_cast<std::size_t>(m));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        for (int i = m - 1; i >= 0; --i) {
            win[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::size_t>(alphabet + 1));
            v /= static_cast<std::size_t>(alphabet + 1);
        }
        r.table[idx] = win[static_cast<std::size_t>(delta)] == alphabet ? 0 : f(win);
    }
    return r;
}

Check validate_conveyor(const ConveyorSystem& c, int k_check) {
    if (c.w.size() < 2) return {false, "|w| must be at least 2"};
    if (c.U.empty()) return {false, "U is empty"};
    const std::size_t l = c.U[0].size();
    try {
        check_letters(c.w, c.n);
        for (const auto& u : c.U) {
            check_letters(u, c.n);
            if (u.size() != l || l == 0) return {false, "words of U must share a positive length"};
        }
    } catch (const FormatError& e) {
        return {false, e.what()};
    }
    if (std::set<Word>(c.U.begin(), c.U.end()).size() != c.U.size()) return {false, "U has repeated words"};
    std::vector<Word> wuw;
    for (const auto& u : c.U) wuw.push_back(concat(concat(c.w, u), c.w));
    for (const auto& s : wuw)
        for (const auto& t : wuw)
            for (std::size_t o = 1; o < s.size(); ++o) {
                if (o == c.w.size()) continue;
                if (std::equal(s.end() - static_cast<std::ptrdiff_t>(o), s.end(), t.begin()))
                    return {false, to_string(s) + " and " + to_string(t) + " overlap in " + std::to_string(o) + " letters"};
            }
    const int A = static_cast<int>(c.U.size());
    auto in_range = [&](const std::vector<int>& v) {
        for (int x : v)
            if (x < 0 || x >= A) return false;
        return true;
    };
    if (c.rule.kind == ConveyorRule::Kind::Perm && static_cast<int>(c.rule.perm.size()) != A) return {false, "permutation size differs from |U|"};
    for (int k = 1; k <= k_check; ++k) {
        std::set<std::vector<int>> seen;
        std::vector<int> u(static_cast<std::size_t>(k), 0);
        while (true) {
            auto img = c.rule.apply(u, A);
            if (img.size() != u.size() || !in_range(img)) return {false, "rule leaves U^" + std::to_string(k)};
            if (!seen.insert(img).second) {
                std::string s;
                for (int v : u) s += std::to_string(v) + " ";
                return {false, "not injective on (wU)^" + std::to_string(k) + "w, repeated image of " + s};
            }
            std::size_t i = 0;
            while (i < u.size() && ++u[i] == A) u[i++] = 0;
            if (i == u.size()) break;
        }
    }
    return {true, {}};
}

Word conveyor_image(const ConveyorSystem& c, const Word& x) {
    const std::size_t lw = c.w.size(), l = c.U[0].size(), step = lw + l;
    std::vector<int> link(x.size(), -1);
    for (std::size_t p = 0; p + step + lw <= x.size(); ++p) {
        if (!block_eq(x, p, c.w) || !block_eq(x, p + step, c.w)) continue;
        for (std::size_t i = 0; i < c.U.size(); ++i)
            if (block_eq(x, p + lw, c.U[i])) {
                link[p] = static_cast<int>(i);
                break;
            }
    }
    Word y = x;
    std::vector<char> set(x.size(), 0);
    for (std::size_t p = 0; p < x.size(); ++p) {
        if (link[p] < 0 || (p >= step && link[p - step] >= 0)) continue;
        std::vector<int> u;
        for (std::size_t q = p; q < x.size() && link[q] >= 0; q += step) u.push_back(link[q]);
        const auto img = c.rule.apply(u, static_cast<int>(c.U.size()));
        for (std::size_t i = 0; i < u.size(); ++i) {
            const Word& to = c.U[static_cast<std::size_t>(img[i])];
            const std::size_t at = p + i * step + lw;
            for (std::size_t j = 0; j < l; ++j) {
                if (set[at + j] && y[at + j] != to[j]) throw DomainError("conveyor runs conflict");
                y[at + j] = to[j];
                set[at + j] = 1;
            }
        }
    }
    return y;
}

BiInfiniteSeq conveyor_apply(const ConveyorSystem& c, const BiInfiniteSeq& x) {
    const long long step = static_cast<long long>(c.w.size() + c.U[0].size());
    return apply_finite(x, (c.rule.radius() + 3) * step, [&](const Word& w) { return conveyor_image(c, w); });
}

ConveyorSystem conveyor_compose(const ConveyorSystem& a, const ConveyorSystem& b) {
    if (a.n != b.n || a.w != b.w || a.U != b.U) throw DomainError("conveyor systems differ in w or U");
    ConveyorSystem r = a;
    r.rule = ConveyorRule{};
    r.rule.kind = ConveyorRule::Kind::Composite;
    r.rule.parts = {a.rule, b.rule};
    return r;
}

Pair conveyor_automorphism(const ConveyorSystem& c) {
    Check v = validate_conveyor(c);
    if (!v.ok) throw DomainError("invalid conveyor system: " + v.reason);
    const int lw = static_cast<int>(c.w.size()), l = static_cast<int>(c.U[0].size());
    const int R = (2 * c.rule.radius() + 3) * (lw + l);
    LocalRule f = extract_rule(c.n, [&](const Word& x) { return conveyor_image(c, x); }, lw + l - 1, R, lw + l);
    Pair pr = local_rule_to_pair(f);
    std::mt19937_64 rng(23);
    std::vector<BiInfiniteSeq> samples;
    for (int i = 0; i < 6; ++i) {
        BiInfiniteSeq x;
        x.left = random_word(rng, c.n, 1 + i % 3);
        x.right = random_word(rng, c.n, 1 + (i + 2) % 3);
        x.center = random_word(rng, c.n, 2);
        for (int k = 0; k < 3 + i; ++k) {
            x.center.insert(x.center.end(), c.w.begin(), c.w.end());
            const Word& u = c.U[rng() % c.U.size()];
            x.center.insert(x.center.end(), u.begin(), u.end());
        }
        x.center.insert(x.center.end(), c.w.begin(), c.w.end());
        samples.push_back(x);
    }
    Pair out = calibrate(std::move(pr), samples, [&](const BiInfiniteSeq& x) { return conveyor_apply(c, x); }, 2 * R);
    // Injectivity on finite runs does not reach bi-infinite ones.
    Membership m = in_On(out.machine);
    if (!m.member) throw DomainError("rule is not bijective on bi-infinite runs: " + m.reason);
    return out;
}

ConveyorSystem parse_conveyor(const std::string& text) {
    ConveyorSystem c;
    bool have_rule = false;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        if (auto h = line.find('%'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string dir;
        if (!(ls >> dir)) continue;
        const std::string where = "line " + std::to_string(ln) + ": ";
        if (dir == "alphabet") {
            if (!(ls >> c.n) || c.n < 2) throw FormatError(where + "bad alphabet");
        } else if (dir == "w") {
            std::string s;
            if (!(ls >> s)) throw FormatError(where + "missing w");
            c.w = parse_word(s);
        } else if (dir == "U") {
            std::string s;
            while (ls >> s) c.U.push_back(parse_word(s));
        } else if (dir == "rule") {
            std::string kind;
            ls >> kind;
            if (kind == "perm") {
                std::vector<int> p;
                int v;
                while (ls >> v) p.push_back(v);
                c.rule = perm_rule(p);
            } else if (kind == "local") {
                int d;
                if (!(ls >> d) || d < 0) throw FormatError(where + "bad radius");
                if (c.U.empty()) throw FormatError(where + "U must precede a local rule");
                c.rule = local_rule(static_cast<int>(c.U.size()), d, [d](const std::vector<int>& win) { return win[static_cast<std::size_t>(d)]; });
            } else {
                throw FormatError(where + "unknown rule kind '" + kind + "'");
            }
            have_rule = true;
        } else if (dir == "map") {
            if (!have_rule || c.rule.kind != ConveyorRule::Kind::Local) throw FormatError(where + "map needs a local rule");
            const int A = static_cast<int>(c.U.size());
            std::size_t idx = 0;
            int count = 0;
            std::string tok;
            while (ls >> tok && tok != "->") {
                int v = tok == "#" ? A : std::stoi(tok);
                if (v < 0 || v > A) throw FormatError(where + "bad window letter");
                idx = idx * static_cast<std::size_t>(A + 1) + static_cast<std::size_t>(v);
                ++count;
            }
            int val;
            if (tok != "->" || !(ls >> val) || count != 2 * c.rule.delta + 1 || val < 0 || val >= A)
                throw FormatError(where + "map needs 2*delta+1 letters, '->' and a value");
            c.rule.table[idx] = val;
        } else {
            throw FormatError(where + "unknown directive '" + dir + "'");
        }
    }
    if (c.w.empty() || c.U.empty() || !have_rule) throw FormatError("conveyor spec needs w, U and a rule");
    return c;
}

LocalRule extract_rule(int n, const std::function<Word(const Word&)>& image, int r_start, int r_max, int ext) {
    const auto pads = all_words(n, ext);
    for (int r = r_start; r <= r_max; ++r) {
        const int m = 2 * r + 1;
        std::size_t total = 1;
        for (int i = 0; i < m; ++i) {
            total *= static_cast<std::size_t>(n);
            if (total > 5'000'000) throw DomainError("rule extraction: window space too large at radius " + std::to_string(r));
        }
        LocalRule f{n, m, r, std::vector<Letter>(total)};
        Word win(static_cast<std::size_t>(m), 0);
        bool ok = true;
        std::string conflict;
        for (std::size_t idx = 0; idx < total && ok; ++idx) {
            std::size_t v = idx;
            for (int i = m - 1; i >= 0; --i) {
                win[static_cast<std::size_t>(i)] = static_cast<Letter>(v % static_cast<std::size_t>(n));
                v /= static_cast<std::size_t>(n);
            }
            const Letter val = image(win)[static_cast<std::size_t>(r)];
            f.table[idx] = val;
            for (std::size_t a = 0; a < pads.size() && ok; ++a) {
                if (image(concat(pads[a], win))[static_cast<std::size_t>(r + ext)] != val) ok = false;
                if (image(concat(win, pads[a]))[static_cast<std::size_t>(r)] != val) ok = false;
            }
            if (!ok) conflict = to_string(win);
        }
        if (ok) return f;
        if (r == r_max) throw DomainError("radius insufficient: window " + conflict + " depends on letters beyond radius " + std::to_string(r));
    }
    throw DomainError("radius insufficient");
}

RootedLift lift_to_initial(const DetTransducer& d, int r) {
    if (r < 1 || r >= d.n) throw DomainError("r must lie in [1, n-1]");
    Membership m = in_Dn(d);
    if (!m.member) throw DomainError("not in D_n: " + m.reason + (m.witness.empty() ? "" : " (" + m.witness + ")"));
    DetTransducer b(d.n, d.size() + 1);
    const int q0 = d.size();
    for (int q = 0; q < d.size(); ++q) {
        b.names[static_cast<std::size_t>(q)] = d.names[static_cast<std::size_t>(q)];
        for (int x = 0; x < d.n; ++x) b.set(q, x, d.to(q, x), d.emit(q, x));
    }
    b.names[static_cast<std::size_t>(q0)] = "q0";
    for (int x = 0; x < d.n; ++x) {
        const int l = loop_state(d, x);
        b.set(q0, x, l, d.emit(l, x));
    }
    return {r, minimize_initial({b, q0})};
}

RootedLift lift_product(const RootedLift& a, const RootedLift& b) {
    if (a.r != b.r) throw DomainError("lifts live on different rooted spaces");
    return {a.r, minimize_initial(product_initial(a.body, b.body))};
}

bool lift_equal(const RootedLift& a, const RootedLift& b) {
    return a.r == b.r && is_isomorphic_initial(minimize_initial(a.body), minimize_initial(b.body));
}

bool lift_is_identity(const RootedLift& a) {
    InitialDetTransducer m = minimize_initial(a.body);
    return is_identity(m.base);
}

Check check_lift_bijective(const RootedLift& a, int depth) {
    const DetTransducer& t = a.body.base;
    ConeAnalyzer img(output_graph(t));
    std::vector<Antichain> covers(static_cast<std::size_t>(t.size()));
    std::vector<char> have(static_cast<std::size_t>(t.size()), 0);
    std::vector<Word> cones;
    for (int root = 0; root < a.r; ++root)
        for (const Word& u : all_words(t.n, depth)) {
            auto [s, o] = t.run(a.body.initial, u);
            if (!have[static_cast<std::size_t>(s)]) {
                try {
                    covers[static_cast<std::size_t>(s)] = img.cover(s);
                } catch (const DomainError& e) {
                    return {false, std::string("state ") + t.names[static_cast<std::size_t>(s)] + ": " + e.what()};
                }
                have[static_cast<std::size_t>(s)] = 1;
            }
            for (const Word& v : covers[static_cast<std::size_t>(s)].words) {
                Word c{root};
                c.insert(c.end(), o.begin(), o.end());
                c.insert(c.end(), v.begin(), v.end());
                cones.push_back(std::move(c));
            }
        }
    std::sort(cones.begin(), cones.end());
    for (std::size_t i = 1; i < cones.size(); ++i)
        if (is_prefix(cones[i - 1], cones[i]))
            return {false, "cylinder images overlap at " + to_string(cones[i - 1]) + " and " + to_string(cones[i])};
    std::size_t lmax = 0;
    for (const auto& c : cones) lmax = std::max(lmax, c.size() - 1);
    unsigned __int128 top = 1, sum = 0;
    for (std::size_t i = 0; i < lmax; ++i) {
        top *= static_cast<unsigned>(t.n);
        if (top > (static_cast<unsigned __int128>(1) << 100)) throw DomainError("cylinder measure overflow");
    }
    for (const auto& c : cones) {
        unsigned __int128 p = 1;
        for (std::size_t i = c.size() - 1; i < lmax; ++i) p *= static_cast<unsigned>(t.n);
        sum += p;
    }
    if (sum != top * static_cast<unsigned>(a.r)) return {false, "cylinder images do not cover the space"};
    return {true, {}};
}

} // namespace sst
