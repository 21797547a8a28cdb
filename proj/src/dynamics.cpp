#include "sst/dynamics.hpp"

#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/sync.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

namespace sst {

bool is_annotation(const DetTransducer& t, const Annotation& a) {
    if (static_cast<int>(a.size()) != t.size()) return false;
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x)
            if (a[static_cast<std::size_t>(t.to(q, x))] != a[static_cast<std::size_t>(q)] + static_cast<int>(t.emit(q, x).size()) - 1)
                return false;
    return true;
}

Annotation canonical_annotation(const DetTransducer& t) {
    auto p = length_potential(t);
    if (!p) throw DomainError("not in L_n: some circuit changes length");
    const int lo = *std::min_element(p->begin(), p->end());
    for (int& v : *p) v -= lo;
    return *p;
}

Pair identity_pair(int n, int shift) { return {identity_machine(n), {shift}}; }

Pair reduce_pair(const DetTransducer& t, const Annotation& a) {
    if (!is_annotation(t, a)) throw DomainError("not an annotation of the machine");
    Reduction r = reduce(t);
    if (r.zx) throw DomainError("degenerate: minimizes to Z_" + to_string(r.zx->x));
    std::vector<std::optional<int>> b(static_cast<std::size_t>(r.machine.size()));
    for (int q = 0; q < t.size(); ++q) {
        const int m = r.map[static_cast<std::size_t>(q)];
        if (m < 0) continue;
        const int v = a[static_cast<std::size_t>(q)] + r.lag[static_cast<std::size_t>(q)];
        auto& slot = b[static_cast<std::size_t>(m)];
        if (slot && *slot != v) throw DomainError("annotation does not descend to the minimal machine");
        slot = v;
    }
    Pair p{std::move(r.machine), {}};
    for (const auto& v : b) {
        if (!v) throw DomainError("internal: minimal state without a preimage");
        p.alpha.push_back(*v);
    }
    return p;
}

Pair reduce_pair(const Pair& p) { return reduce_pair(p.machine, p.alpha); }

Pair pair_product(const Pair& a, const Pair& b) {
    DetTransducer m = product(a.machine, b.machine);
    Annotation al(static_cast<std::size_t>(m.size()));
    for (int s = 0; s < a.machine.size(); ++s)
        for (int t = 0; t < b.machine.size(); ++t)
            al[static_cast<std::size_t>(s * b.machine.size() + t)] = a.alpha[static_cast<std::size_t>(s)] + b.alpha[static_cast<std::size_t>(t)];
    return reduce_pair(m, al);
}

std::optional<int> identity_shift(const Pair& p) {
    if (!is_identity(p.machine)) return std::nullopt;
    return p.alpha[0];
}

Pair pair_inverse(const Pair& p) {
    DetTransducer inv = invert(p.machine);
    Pair q{inv, canonical_annotation(inv)};
    auto c = identity_shift(pair_product(p, q));
    if (!c) throw DomainError("internal: product with the inverse is not the identity");
    for (int& v : q.alpha) v -= *c;
    return q;
}

bool pair_equal(const Pair& a, const Pair& b) {
    Pair x = reduce_pair(a), y = reduce_pair(b);
    auto f = find_isomorphism(x.machine, y.machine);
    if (!f) return false;
    for (int q = 0; q < x.machine.size(); ++q)
        if (x.alpha[static_cast<std::size_t>(q)] != y.alpha[static_cast<std::size_t>((*f)[static_cast<std::size_t>(q)])]) return false;
    return true;
}

namespace {

long long mod_ll(long long a, long long m) { return ((a % m) + m) % m; }

} // namespace

Letter BiInfiniteSeq::at(long long i) const {
    const long long v = static_cast<long long>(center.size());
    if (i < offset) return left[static_cast<std::size_t>(mod_ll(i - offset, static_cast<long long>(left.size())))];
    if (i < offset + v) return center[static_cast<std::size_t>(i - offset)];
    return right[static_cast<std::size_t>(mod_ll(i - offset - v, static_cast<long long>(right.size())))];
}

BiInfiniteSeq BiInfiniteSeq::normalized() const {
    BiInfiniteSeq s = *this;
    s.left = prime_root(s.left);
    s.right = prime_root(s.right);
    // absorb center letters that continue a period
    while (!s.center.empty() && s.center.front() == s.left.front()) {
        s.left = rotate(s.left, 1);
        s.center.erase(s.center.begin());
        ++s.offset;
    }
    while (!s.center.empty() && s.center.back() == s.right.back()) {
        s.right = rotate(s.right, s.right.size() - 1);
        s.center.pop_back();
    }
    return s;
}

std::string BiInfiniteSeq::str() const {
    return "(" + to_string(left) + ")^-inf . " + to_string(center) + " . (" + to_string(right) + ")^inf @ " +
           std::to_string(offset);
}

bool operator==(const BiInfiniteSeq& a, const BiInfiniteSeq& b) {
    const long long pl = std::lcm(static_cast<long long>(a.left.size()), static_cast<long long>(b.left.size()));
    const long long pr = std::lcm(static_cast<long long>(a.right.size()), static_cast<long long>(b.right.size()));
    const long long lo = std::min(a.offset, b.offset) - pl - 1;
    const long long hi = std::max(a.offset + static_cast<long long>(a.center.size()), b.offset + static_cast<long long>(b.center.size())) + pr + 1;
    for (long long i = lo; i <= hi; ++i)
        if (a.at(i) != b.at(i)) return false;
    return true;
}

BiInfiniteSeq parse_seq(const std::string& s) {
    static const std::regex re(R"(^\s*\(([^)]*)\)\s*\^\s*-inf\s*\.\s*([^.]*?)\s*\.\s*\(([^)]*)\)\s*\^\s*inf\s*(?:@\s*(-?\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw FormatError("bad sequence literal: " + s);
    auto word = [](std::string w) {
        w.erase(std::remove_if(w.begin(), w.end(), [](unsigned char c) { return std::isspace(c); }), w.end());
        return parse_word(w.empty() ? "-" : w);
    };
    BiInfiniteSeq x{word(m[1]), word(m[2]), word(m[3]), m[4].matched ? std::stoll(m[4]) : 0};
    if (x.left.empty() || x.right.empty()) throw FormatError("sequence periods must be non-empty");
    return x;
}

BiInfiniteSeq shift_seq(const BiInfiniteSeq& x, long long s) {
    BiInfiniteSeq y = x;
    y.offset += s;
    return y;
}

BiInfiniteSeq random_seq(std::mt19937_64& rng, int n, int max_len) {
    auto word = [&](int lo) {
        std::uniform_int_distribution<int> len(lo, max_len), let(0, n - 1);
        Word w(static_cast<std::size_t>(len(rng)));
        for (auto& c : w) c = let(rng);
        return w;
    };
    BiInfiniteSeq x;
    x.left = word(1);
    x.center = word(0);
    x.right = word(1);
    x.offset = std::uniform_int_distribution<long long>(-10, 10)(rng);
    return x;
}

BiInfiniteSeq apply(const Pair& p, const BiInfiniteSeq& x) {
    const DetTransducer& t = p.machine;
    if (!is_annotation(t, p.alpha)) throw DomainError("apply: not an annotated L_n element");
    for (Letter c : x.left) check_letters({c}, t.n);
    check_letters(x.center, t.n);
    check_letters(x.right, t.n);
    const long long k = require_sync(t).level;
    const long long amin = *std::min_element(p.alpha.begin(), p.alpha.end());
    const long long amax = *std::max_element(p.alpha.begin(), p.alpha.end());
    const long long P = static_cast<long long>(x.left.size()), Q = static_cast<long long>(x.right.size());
    const long long V = static_cast<long long>(x.center.size());
    // y_j depends on x over [j - amax - k, j - amin]
    const long long lb = x.offset + amin - P;
    const long long rb = x.offset + V + amax + k;
    const long long ilo = lb - amax - 1, ihi = rb + Q - amin;
    Word pre;
    for (long long i = ilo - k; i < ilo; ++i) pre.push_back(x.at(i));
    int q = t.state_after(0, pre);
    const long long base = lb;
    std::vector<int> y(static_cast<std::size_t>(rb + Q - lb), -1);
    for (long long i = ilo; i <= ihi; ++i) {
        const Letter c = x.at(i);
        const Word& o = t.emit(q, c);
        long long pos = i + p.alpha[static_cast<std::size_t>(q)];
        for (Letter l : o) {
            if (pos >= base && pos < rb + Q) y[static_cast<std::size_t>(pos - base)] = l;
            ++pos;
        }
        q = t.to(q, c);
    }
    for (int v : y)
        if (v < 0) throw DomainError("internal: apply left a gap in the output window");
    BiInfiniteSeq r;
    r.left.assign(y.begin(), y.begin() + P);
    r.center.assign(y.begin() + P, y.begin() + (rb - lb));
    r.right.assign(y.begin() + (rb - lb), y.end());
    r.offset = lb + P;
    return r.normalized();
}

Letter LocalRule::eval(const Word& window) const {
    if (static_cast<int>(window.size()) != m) throw FormatError("window length mismatch");
    std::size_t idx = 0;
    for (Letter c : window) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(c);
    return table[idx];
}

LocalRule make_rule(int n, int m, int memory, const std::function<Letter(const Word&)>& f) {
    if (m < 1 || memory < 0 || memory >= m) throw FormatError("bad local rule shape");
    LocalRule r{n, m, memory, {}};
    Word w(static_cast<std::size_t>(m), 0);
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
    r.table.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t v = idx;
        for (int i = m - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<Letter>(v % static_cast<std::size_t>(n));
            v /= static_cast<std::size_t>(n);
        }
        const Letter y = f(w);
        if (y < 0 || y >= n) throw FormatError("local rule value out of range");
        r.table[idx] = y;
    }
    return r;
}

Pair local_rule_to_pair(const LocalRule& f) {
    int states = 1;
    for (int i = 0; i < f.m - 1; ++i) states *= f.n;
    DetTransducer t(f.n, states);
    for (int v = 0; v < states; ++v) {
        std::string name = "w";
        for (int i = f.m - 2, u = v; i >= 0; --i) {
            int div = 1;
            for (int j = 0; j < i; ++j) div *= f.n;
            name += std::to_string((u / div) % f.n);
        }
        t.names[static_cast<std::size_t>(v)] = name;
        for (int x = 0; x < f.n; ++x) {
            const std::size_t idx = static_cast<std::size_t>(v) * static_cast<std::size_t>(f.n) + static_cast<std::size_t>(x);
            t.set(v, x, static_cast<int>(idx % static_cast<std::size_t>(states)), {f.table[idx]});
        }
    }
    return reduce_pair(t, Annotation(static_cast<std::size_t>(states), -(f.m - 1 - f.memory)));
}

namespace {

bool permutive(const LocalRule& f, bool right) {
    std::size_t blocks = 1;
    for (int i = 0; i < f.m - 1; ++i) blocks *= static_cast<std::size_t>(f.n);
    for (std::size_t a = 0; a < blocks; ++a) {
        std::vector<char> hit(static_cast<std::size_t>(f.n), 0);
        for (int x = 0; x < f.n; ++x) {
            const std::size_t idx = right ? a * static_cast<std::size_t>(f.n) + static_cast<std::size_t>(x)
                                          : static_cast<std::size_t>(x) * blocks + a;
            char& h = hit[static_cast<std::size_t>(f.table[idx])];
            if (h) return false;
            h = 1;
        }
    }
    return true;
}

} // namespace

bool is_right_permutive(const LocalRule& f) { return permutive(f, true); }
bool is_left_permutive(const LocalRule& f) { return permutive(f, false); }

std::map<Word, Word> pi_action(const DetTransducer& t, int k_max) {
    const int k = require_sync(t).level;
    std::map<Word, Word> res;
    for (int len = 1; len <= k_max; ++len)
        for (const Word& g : enumerate_prime_classes(t.n, len)) {
            Word pw;
            const int reps = std::max(1, (k + len - 1) / len);
            for (int i = 0; i < reps; ++i) pw.insert(pw.end(), g.begin(), g.end());
            const int q = t.state_after(0, pw);
            auto [back, out] = t.run(q, g);
            if (back != q) throw DomainError("internal: circuit state is not fixed");
            if (out.empty()) throw DomainError("circuit with empty output");
            res[g] = canonical_rotation(prime_root(out));
        }
    return res;
}

} // namespace sst
