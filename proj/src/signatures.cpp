#include "sst/signatures.hpp"

#include "sst/errors.hpp"
#include "sst/sync.hpp"

#include <numeric>
#include <queue>

namespace sst {

Factorization factorize(int n) {
    if (n < 2) throw FormatError("alphabet size must be at least 2");
    Factorization f;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.primes.push_back(p);
            f.exponents.push_back(e);
        }
    if (n > 1) {
        f.primes.push_back(n);
        f.exponents.push_back(1);
    }
    return f;
}

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void normalize(MnElement& e) {
    const Factorization f = factorize(e.n);
    const std::size_t r = f.primes.size();
    const long long last = f.exponents[r - 1];
    const long long c = floor_div(e.v[r - 1], last);
    for (std::size_t i = 0; i < r; ++i) e.v[i] -= c * f.exponents[i];
}

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

long long mul_mod(long long a, long long b, long long m) {
    return static_cast<long long>(static_cast<__int128>(a) * b % m);
}

long long pow_mod(long long b, long long e, long long m) {
    long long r = 1 % m;
    b = mod_pos(b, m);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace

MnElement mn_from_exponents(int n, std::vector<long long> v) {
    const Factorization f = factorize(n);
    if (v.size() != f.primes.size()) throw FormatError("exponent vector has the wrong length");
    MnElement e{n, std::move(v)};
    normalize(e);
    return e;
}

MnElement mn_class(int n, long long m) {
    if (m < 1) throw DomainError("M_n classes need a positive integer");
    const Factorization f = factorize(n);
    std::vector<long long> v(f.primes.size(), 0);
    for (std::size_t i = 0; i < f.primes.size(); ++i)
        while (m % f.primes[i] == 0) {
            m /= f.primes[i];
            ++v[i];
        }
    if (m != 1) throw DomainError("prime factor " + std::to_string(m) + " does not divide " + std::to_string(n));
    return mn_from_exponents(n, std::move(v));
}

MnElement mn_identity(int n) { return mn_class(n, 1); }

bool MnElement::is_identity() const {
    for (long long x : v)
        if (x) return false;
    return true;
}

MnElement MnElement::operator*(const MnElement& o) const {
    if (n != o.n) throw DomainError("M_n elements over different n");
    std::vector<long long> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] + o.v[i];
    return mn_from_exponents(n, std::move(w));
}

bool MnElement::operator==(const MnElement& o) const { return n == o.n && v == o.v; }

long long MnElement::order() const {
    // v = (a/b) L for a rational a/b exactly when the order is b.
    const Factorization f = factorize(n);
    const std::size_t r = v.size();
    // a/b = v[r-1] / L[r-1]; check parallelism via cross products.
    for (std::size_t i = 0; i < r; ++i)
        if (v[i] * f.exponents[r - 1] != v[r - 1] * f.exponents[i]) return 0;
    long long a = v[r - 1], b = f.exponents[r - 1];
    return b / std::gcd(a, b);
}

std::string MnElement::str() const {
    const Factorization f = factorize(n);
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += "*";
        s += std::to_string(f.primes[i]) + "^" + std::to_string(v[i]);
    }
    return s;
}

MnStructure mn_structure(int n) {
    const Factorization f = factorize(n);
    MnStructure s;
    s.free_rank = static_cast<int>(f.primes.size()) - 1;
    long long g = 0;
    for (int e : f.exponents) g = std::gcd(g, static_cast<long long>(e));
    s.torsion = g;
    return s;
}

namespace {

std::vector<ConeCount> all_counts(const DetTransducer& t) {
    std::vector<ConeCount> c;
    ConeAnalyzer img(output_graph(t));
    for (int q = 0; q < t.size(); ++q) c.push_back(uniform_cone_count(img.cover(q), t.n));
    return c;
}

} // namespace

int sig(const DetTransducer& t) {
    const int m = t.n - 1;
    std::optional<int> val;
    auto counts = all_counts(t);
    for (int q = 0; q < t.size(); ++q) {
        int r = static_cast<int>(counts[static_cast<std::size_t>(q)].s % m);
        if (r == 0) r = m;
        if (val && *val != r)
            throw DomainError("sig differs between states (" + std::to_string(*val) + " vs " + std::to_string(r) + " at " +
                              t.names[static_cast<std::size_t>(q)] + ")");
        val = r;
    }
    return *val;
}

MnElement sig_omega(const DetTransducer& t) {
    std::optional<MnElement> val;
    auto counts = all_counts(t);
    for (int q = 0; q < t.size(); ++q) {
        MnElement e = mn_class(t.n, counts[static_cast<std::size_t>(q)].s);
        if (val && !(*val == e))
            throw DomainError("sig_omega differs between states (at " + t.names[static_cast<std::size_t>(q)] + ")");
        val = e;
    }
    return *val;
}

long long sig_k(const DetTransducer& t, const Annotation& alpha, int k) {
    if (k < 1) throw DomainError("sig_k needs k >= 1");
    if (static_cast<int>(alpha.size()) != t.size()) throw FormatError("annotation size does not match the machine");
    long long nk = 1;
    for (int i = 0; i < k; ++i) {
        if (nk > (1LL << 40)) throw DomainError("sig_k: n^k too large");
        nk *= t.n;
    }
    const long long m = nk - 1;
    std::optional<long long> val;
    auto counts = all_counts(t);
    for (int q = 0; q < t.size(); ++q) {
        const auto& c = counts[static_cast<std::size_t>(q)];
        const long long b = mod_pos(-(static_cast<long long>(c.depth) + alpha[static_cast<std::size_t>(q)]), k);
        long long r = mul_mod(mod_pos(c.s, m), pow_mod(t.n, b, m), m);
        if (r == 0) r = m;
        if (val && *val != r) throw DomainError("sig_k differs between states (at " + t.names[static_cast<std::size_t>(q)] + ")");
        val = r;
    }
    return *val;
}

DetTransducer generator(int n, int d, int e) {
    if (d < 2 || e < 1 || static_cast<long long>(d) * e != n)
        throw DomainError("generator needs d*e = n with d > 1");
    const Factorization f = factorize(n);
    const std::size_t r = f.primes.size();
    std::vector<int> s(r, 0);
    int rest = d;
    for (std::size_t i = 0; i < r; ++i)
        while (rest % f.primes[i] == 0) {
            rest /= f.primes[i];
            ++s[i];
        }
    // digit layout: part i holds exponents[i] digits base primes[i]
    std::vector<int> radix;
    std::vector<std::size_t> part_start;
    for (std::size_t i = 0; i < r; ++i) {
        part_start.push_back(radix.size());
        for (int j = 0; j < f.exponents[i]; ++j) radix.push_back(f.primes[i]);
    }
    auto digits = [&](int m) {
        std::vector<int> dg(radix.size());
        for (std::size_t j = radix.size(); j-- > 0;) {
            dg[j] = m % radix[j];
            m /= radix[j];
        }
        return dg;
    };
    auto number = [&](const std::vector<int>& dg) {
        int m = 0;
        for (std::size_t j = 0; j < radix.size(); ++j) m = m * radix[j] + dg[j];
        return m;
    };
    // state radix: for each part, s[i] digits base primes[i]
    std::vector<int> srad;
    for (std::size_t i = 0; i < r; ++i)
        for (int j = 0; j < s[i]; ++j) srad.push_back(f.primes[i]);
    DetTransducer t(n, d);
    auto state_digits = [&](int q) {
        std::vector<int> dg(srad.size());
        for (std::size_t j = srad.size(); j-- > 0;) {
            dg[j] = q % srad[j];
            q /= srad[j];
        }
        return dg;
    };
    for (int q = 0; q < d; ++q) {
        auto x = state_digits(q);
        std::string name = "q";
        for (int v : x) name += std::to_string(v);
        t.names[static_cast<std::size_t>(q)] = name;
    }
    for (int q = 0; q < d; ++q) {
        const auto x = state_digits(q);
        for (int m = 0; m < n; ++m) {
            auto g = digits(m);
            std::vector<int> out = g, y;
            std::size_t xi = 0;
            for (std::size_t i = 0; i < r; ++i) {
                const std::size_t a = part_start[i], L = static_cast<std::size_t>(f.exponents[i]), si = static_cast<std::size_t>(s[i]);
                // next state: the last s_i digits of the part
                for (std::size_t j = L - si; j < L; ++j) y.push_back(g[a + j]);
                // output: state digits, then the part without its last s_i digits
                for (std::size_t j = 0; j < si; ++j) out[a + j] = x[xi + j];
                for (std::size_t j = 0; j + si < L; ++j) out[a + si + j] = g[a + j];
                xi += si;
            }
            int dst = 0;
            for (std::size_t j = 0; j < y.size(); ++j) dst = dst * srad[j] + y[j];
            t.set(q, m, dst, {number(out)});
        }
    }
    return t;
}

std::optional<Annotation> length_potential(const DetTransducer& t) {
    Annotation p(static_cast<std::size_t>(t.size()), 0);
    std::vector<char> seen(static_cast<std::size_t>(t.size()), 0);
    // undirected propagation along edges in both directions
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(t.size()));
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x) {
            const int w = static_cast<int>(t.emit(q, x).size()) - 1;
            adj[static_cast<std::size_t>(q)].push_back({t.to(q, x), w});
            adj[static_cast<std::size_t>(t.to(q, x))].push_back({q, -w});
        }
    for (int root = 0; root < t.size(); ++root) {
        if (seen[static_cast<std::size_t>(root)]) continue;
        seen[static_cast<std::size_t>(root)] = 1;
        std::queue<int> bfs;
        bfs.push(root);
        while (!bfs.empty()) {
            int q = bfs.front();
            bfs.pop();
            for (auto [d, w] : adj[static_cast<std::size_t>(q)]) {
                const int v = p[static_cast<std::size_t>(q)] + w;
                if (!seen[static_cast<std::size_t>(d)]) {
                    seen[static_cast<std::size_t>(d)] = 1;
                    p[static_cast<std::size_t>(d)] = v;
                    bfs.push(d);
                } else if (p[static_cast<std::size_t>(d)] != v) {
                    return std::nullopt;
                }
            }
        }
    }
    return p;
}

namespace {

Membership no(std::string reason, std::string witness = {}) { return {false, std::move(reason), std::move(witness)}; }

} // namespace

Membership in_On(const DetTransducer& t) {
    try {
        SyncResult s = sync_level(t);
        if (!s.synchronizing) return no("not strongly synchronizing");
        if (static_cast<int>(s.core.size()) != t.size()) return no("not equal to its core");
        Minimized m = minimize(t);
        if (m.is_zx()) return no("degenerate (single-point image)");
        is_bisynchronizing(*m.machine);
    } catch (const DomainError& e) {
        return no(e.what());
    }
    return {true, {}, {}};
}

Membership in_Onr(const DetTransducer& t, int r) {
    if (r < 1 || r >= t.n) throw DomainError("r must lie in [1, n-1]");
    Membership m = in_On(t);
    if (!m.member) return m;
    const int mod = t.n - 1;
    const int s = sig(t);
    if ((static_cast<long long>(r) * s) % mod != r % mod)
        return no("r*sig = " + std::to_string(r) + "*" + std::to_string(s) + " is not " + std::to_string(r) + " mod " +
                  std::to_string(mod));
    return m;
}

Membership in_Ln(const DetTransducer& t) {
    Membership m = in_On(t);
    if (!m.member) return m;
    if (!length_potential(t)) return no("some circuit changes length");
    return m;
}

Membership in_Kn(const DetTransducer& t) {
    Membership m = in_Ln(t);
    if (!m.member) return m;
    MnElement s = sig_omega(t);
    if (!s.is_identity()) return no("sig_omega = " + s.str() + " is not trivial");
    return m;
}

int loop_state(const DetTransducer& t, Letter x) {
    const int k = require_sync(t).level;
    return forced_state(t, Word(static_cast<std::size_t>(std::max(k, 1)), x));
}

Membership in_Dn(const DetTransducer& t) {
    Membership m = in_Kn(t);
    if (!m.member) return m;
    for (int x = 0; x < t.n; ++x) {
        const int q = loop_state(t, x);
        if (!is_homeomorphism_state(t, q))
            return no("loop state is not a homeomorphism state", t.names[static_cast<std::size_t>(q)]);
    }
    return m;
}

} // namespace sst
