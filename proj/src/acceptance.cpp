#include "sst/acceptance.hpp"

#include "sst/catalog.hpp"
#include "sst/dynamics.hpp"
#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/markers.hpp"
#include "sst/reverse.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace sst {

namespace {

const std::vector<std::pair<int, int>> kMarkerSizes = {{2, 3}, {3, 2}};

ConveyorSystem binary_conveyor(ConveyorRule r) { return {2, parse_word("0,1"), {parse_word("0"), parse_word("1")}, std::move(r)}; }

ConveyorSystem ternary_conveyor(ConveyorRule r) {
    return {2, parse_word("0,0,1"), {parse_word("1,0"), parse_word("1,1"), parse_word("0,1")}, std::move(r)};
}

ConveyorRule conditional_swap() {
    return local_rule(3, 1, [](const std::vector<int>& w) { return w[0] == 0 && w[1] > 0 ? 3 - w[1] : w[1]; });
}

struct Named {
    std::string name;
    DetTransducer t;
};

std::vector<Named> marker_machines(int n, int l) {
    std::vector<Named> r;
    for (const auto& p : search_marker_pairs(n, l, 3))
        r.push_back({"marker(" + to_string(p.a) + "|" + to_string(p.b) + ")", marker_automorphism(p).machine});
    return r;
}

// D_n machines for the lift criterion, per r.
std::vector<Named> lift_machines(int r) {
    if (r == 1) {
        auto v = marker_machines(2, 3);
        v.push_back({"conveyor-flip", conveyor_automorphism(binary_conveyor(perm_rule({1, 0}))).machine});
        v.push_back({"conveyor-cycle", conveyor_automorphism(ternary_conveyor(perm_rule({1, 2, 0}))).machine});
        v.push_back({"conveyor-swap", conveyor_automorphism(ternary_conveyor(conditional_swap())).machine});
        return v;
    }
    auto v = marker_machines(3, 2);
    v.push_back({"cperm(3,{0},021)", conditional_permutation(3, {0}, {0, 2, 1})});
    v.push_back({"cperm(3,{1,2},021)", conditional_permutation(3, {1, 2}, {0, 2, 1})});
    return v;
}

struct Report {
    std::ostringstream fails;
    int checks = 0, bad = 0;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && bad++ < 4) fails << (bad > 1 ? "; " : "") << what;
    }
    CriterionResult done(int id, std::string title) {
        CriterionResult r{id, std::move(title), bad == 0, {}};
        r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " checks";
        if (bad) r.detail += ": " + fails.str();
        return r;
    }
};

// Residue in [1, m], the reporting convention for cone counts.
long long residue(long long v, long long m) {
    long long r = v % m;
    return r == 0 ? m : r;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

CriterionResult c1() {
    Report rep;
    rep.check(sig(generator(6, 2, 3)) == 3, "sig T(2,3)");
    rep.check(sig(generator(6, 3, 2)) == 2, "sig T(3,2)");
    rep.check(sig(generator(6, 6, 1)) == 1, "sig T(6,1)");
    for (int n : {4, 6})
        for (int d = 2; d <= n; ++d) {
            if (n % d) continue;
            const int e = n / d;
            auto t = generator(n, d, e);
            for (int k = 1; k <= 4; ++k) {
                const long long m = ipow(n, k) - 1;
                rep.check(sig_k(t, Annotation(static_cast<std::size_t>(t.size()), 0), k) == residue(e * ipow(n, k - 1), m),
                          "sig_k T(" + std::to_string(d) + "," + std::to_string(e) + ") k=" + std::to_string(k));
            }
        }
    return rep.done(1, "generator signatures");
}

CriterionResult c2() {
    Report rep;
    std::mt19937_64 rng(2024);
    for (int n : {2, 3, 4, 6}) {
        auto m = minimize(shift_machine(n));
        rep.check(m.machine && m.machine->size() == 1 && is_identity(*m.machine), "minimize shift n=" + std::to_string(n));
        const auto sh = shift_machine(n);
        Pair s = reduce_pair(sh, Annotation(static_cast<std::size_t>(sh.size()), 0));
        rep.check(identity_shift(s) == 1, "shift pair n=" + std::to_string(n));
        for (int i = 0; i < 50; ++i) {
            auto x = random_seq(rng, n);
            rep.check(apply(identity_pair(n, 1), x) == shift_seq(x, 1), "shift on " + x.str());
        }
    }
    return rep.done(2, "shift realization");
}

CriterionResult c3() {
    Report rep;
    auto pool = acceptance_pool();
    rep.check(pool.size() >= 30, "pool has only " + std::to_string(pool.size()) + " machines");
    for (const auto& e : pool) {
        const auto& t = e.machine;
        auto inv = invert(t);
        rep.check(is_identity(minimal(core(product(t, inv)))), e.name + ": T*T^-1");
        rep.check(is_isomorphic(minimal(invert(inv)), t), e.name + ": double inverse");
    }
    int sync_pairs = 0;
    // the level bound is a statement about synchronous machines
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = 0; j < pool.size(); ++j) {
            const auto &t = pool[i].machine, &u = pool[j].machine;
            if (t.n != u.n || !t.synchronous() || !u.synchronous()) continue;
            const int a = require_sync(t).level, b = require_sync(u).level;
            auto p = sync_level(core(product(t, u)));
            rep.check(p.synchronizing && p.level <= a + b, pool[i].name + "*" + pool[j].name + " level");
            ++sync_pairs;
        }
    rep.check(sync_pairs >= 10, "too few synchronous pairs");
    return rep.done(3, "group laws");
}

CriterionResult c4() {
    Report rep;
    auto pool = acceptance_pool();
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i; j < pool.size() && j < i + 3; ++j) {
            const auto &t = pool[i].machine, &u = pool[j].machine;
            if (t.n != u.n) continue;
            auto p = multiply(t, u);
            const int m = t.n - 1;
            rep.check(residue(static_cast<long long>(sig(t)) * sig(u), m) == sig(p), pool[i].name + "*" + pool[j].name + " sig");
            rep.check(sig_omega(t) * sig_omega(u) == sig_omega(p), pool[i].name + "*" + pool[j].name + " sig_omega");
        }
    for (const auto& e : pool) {
        if (!in_Ln(e.machine).member) continue;
        const int m = e.machine.n - 1;
        rep.check(residue(static_cast<long long>(sig(e.machine)) * rev_sig(e.machine), m) == residue(1, m), e.name + ": sig*rev_sig");
    }
    return rep.done(4, "signature homomorphisms");
}

CriterionResult c5() {
    Report rep;
    for (int n : {2, 3}) {
        auto s = mn_structure(n);
        rep.check(s.free_rank == 0 && s.torsion == 1, "M_" + std::to_string(n) + " trivial");
        rep.check(mn_class(n, 1).is_identity(), "M_" + std::to_string(n) + " class of 1");
    }
    auto s4 = mn_structure(4);
    rep.check(s4.free_rank == 0 && s4.torsion == 2, "M_4 structure");
    rep.check(mn_class(4, 2).order() == 2 && !mn_class(4, 2).is_identity(), "M_4 class of 2");
    auto s6 = mn_structure(6);
    rep.check(s6.free_rank == 1, "M_6 free rank");
    std::set<std::string> seen;
    for (int j = 0; j <= 6; ++j) {
        auto c = mn_class(6, ipow(2, j));
        rep.check(seen.insert(c.str()).second, "M_6 class of 2^" + std::to_string(j) + " repeats");
        if (j > 0) rep.check(c.order() == 0, "M_6 class of 2^" + std::to_string(j) + " has finite order");
    }
    return rep.done(5, "M_n structure");
}

Word rev_class(const Word& g) { return canonical_rotation(reverse(g)); }

CriterionResult c6() {
    Report rep;
    auto pool = acceptance_pool();
    std::map<std::string, DetTransducer> ra;
    for (const auto& e : pool) {
        auto r = rev_automorphism(e.machine);
        ra.emplace(e.name, r);
        rep.check(is_isomorphic(rev_automorphism(r), e.machine), e.name + ": involution");
        rep.check(is_isomorphic(minimal(rec(as_nondet(e.machine))), e.machine), e.name + ": rec");
        auto pt = pi_action(e.machine, 8), pr = pi_action(r, 8);
        for (const auto& [g, img] : pr) {
            auto it = pt.find(rev_class(g));
            rep.check(it != pt.end() && rev_class(it->second) == img, e.name + ": Pi conjugation at " + to_string(g));
        }
    }
    for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
        const auto &a = pool[i], &b = pool[i + 1];
        if (a.machine.n != b.machine.n) continue;
        rep.check(is_isomorphic(rev_automorphism(multiply(a.machine, b.machine)), multiply(ra.at(a.name), ra.at(b.name))),
                  a.name + "*" + b.name + ": multiplicative");
    }
    return rep.done(6, "reverse automorphism");
}

CriterionResult c7() {
    Report rep;
    const std::vector<DetTransducer> hs = {
        conditional_permutation(3, {0}, {0, 2, 1}),    conditional_permutation(3, {1}, {2, 1, 0}),
        conditional_permutation(3, {2}, {1, 0, 2}),    conditional_permutation(3, {1, 2}, {0, 2, 1}),
        conditional_permutation(4, {0}, {0, 2, 3, 1}), conditional_permutation(4, {0, 1}, {1, 0, 3, 2})};
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto& h = hs[i];
        const std::string tag = "cperm#" + std::to_string(i);
        rep.check(h.size() > 1 && is_automaton_invertible(h) && in_Hn(h), tag + " in H_n");
        auto r = rev_automorphism(h);
        rep.check(!in_Hn(r), tag + ": image stays in H_n");
        rep.check(!r.synchronous() || !is_automaton_invertible(r), tag + ": image automaton-invertible");
    }
    for (const auto& perm : std::vector<std::vector<int>>{{1, 0}, {1, 2, 0}, {0, 2, 1}, {3, 2, 1, 0}, {0, 1, 2, 3, 5, 4}}) {
        auto p = permutation_machine(perm);
        rep.check(in_Hn(p) && is_isomorphic(rev_automorphism(p), p), "1-state permutation fixed");
    }
    return rep.done(7, "H_n expulsion");
}

CriterionResult c8() {
    Report rep;
    auto t = fixture_fig1();
    rep.check(in_Ln(t).member, "in L_2");
    rep.check(in_Kn(t).member, "in K_2");
    auto pot = length_potential(t);
    rep.check(pot && *pot == Annotation{0, 0, -1, -1, -2, -2}, "potential");
    rep.check(canonical_annotation(t) == Annotation{2, 2, 1, 1, 0, 0}, "annotation");
    int a1 = -1;
    for (int q = 0; q < t.size(); ++q)
        if (t.names[static_cast<std::size_t>(q)] == "a1") a1 = q;
    rep.check(a1 >= 0 && !is_homeomorphism_state(t, a1), "a1 not a homeomorphism state");
    auto d = in_Dn(t);
    rep.check(!d.member && d.witness == "a1", "not in D_2 with witness a1");
    return rep.done(8, "fixture facts");
}

CriterionResult c9() {
    Report rep;
    std::mt19937_64 rng(99);
    for (auto [n, l] : kMarkerSizes) {
        auto pairs = search_marker_pairs(n, l, 3);
        rep.check(pairs.size() == 3, "three pairs for n=" + std::to_string(n));
        for (const auto& p : pairs) {
            const std::string tag = to_string(p.a) + "|" + to_string(p.b);
            Pair m = marker_automorphism(p);
            rep.check(pair_equal(pair_product(m, m), identity_pair(n)), tag + ": square");
            rep.check(in_Dn(m.machine).member, tag + ": D_n");
            for (Letter x = 0; x < n; ++x)
                rep.check(m.alpha[static_cast<std::size_t>(loop_state(m.machine, x))] == 0, tag + ": loop annotation");
            auto pi = pi_action(m.machine, l);
            const Word ca = canonical_rotation(p.a), cb = canonical_rotation(p.b);
            rep.check(pi.at(ca) == cb && pi.at(cb) == ca, tag + ": Pi swaps [a],[b]");
            for (const auto& [g, img] : pi)
                if (static_cast<int>(g.size()) < l) rep.check(img == g, tag + ": Pi moves " + to_string(g));
            for (int i = 0; i < 100; ++i) {
                BiInfiniteSeq x = random_seq(rng, n, 3);
                if (i % 2) {
                    for (int k = 0; k < 7; ++k) {
                        const Word& z = (rng() & 1) ? p.a : p.b;
                        x.center.insert(x.center.end(), z.begin(), z.end());
                    }
                    if (i % 4 == 1) x.right = concat(p.a, p.b);
                }
                rep.check(apply(m, x) == marker_apply(p, x), tag + ": apply on " + x.str());
            }
        }
    }
    return rep.done(9, "markers");
}

CriterionResult c10() {
    Report rep;
    auto id = binary_conveyor(perm_rule({0, 1})), flip = binary_conveyor(perm_rule({1, 0}));
    Pair pid = conveyor_automorphism(id), pflip = conveyor_automorphism(flip);
    rep.check(!pair_equal(pid, pflip), "images distinct");
    rep.check(in_Dn(pid.machine).member && in_Dn(pflip.machine).member, "images in D_2");
    for (const auto* a : {&id, &flip})
        for (const auto* b : {&id, &flip}) {
            Pair pa = conveyor_automorphism(*a), pb = conveyor_automorphism(*b);
            rep.check(pair_equal(pair_product(pa, pb), conveyor_automorphism(conveyor_compose(*a, *b))),
                      std::string(a == &id ? "id" : "flip") + "*" + (b == &id ? "id" : "flip"));
        }
    return rep.done(10, "conveyor embedding");
}

CriterionResult c11() {
    Report rep;
    for (int r : {1, 2}) {
        auto ms = lift_machines(r);
        rep.check(ms.size() >= 5, "five machines for r=" + std::to_string(r));
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const auto& e = ms[i];
            const std::string tag = e.name + " r=" + std::to_string(r);
            if (!in_Dn(e.t).member) {
                rep.check(false, tag + ": not in D_n");
                continue;
            }
            auto L = lift_to_initial(e.t, r);
            auto Li = lift_to_initial(invert(e.t), r);
            rep.check(lift_is_identity(lift_product(L, Li)), tag + ": inverse");
            rep.check(lift_is_identity(lift_product(Li, L)), tag + ": inverse (left)");
            const auto& f = ms[(i + 1) % ms.size()];
            rep.check(lift_equal(lift_product(L, lift_to_initial(f.t, r)), lift_to_initial(multiply(e.t, f.t), r)),
                      tag + ": product with " + f.name);
            const int depth = require_sync(e.t).level + 2;
            Check b = check_lift_bijective(L, depth);
            rep.check(b.ok, tag + ": bijectivity at depth " + std::to_string(depth) + " " + b.reason);
        }
    }
    return rep.done(11, "lift");
}

} // namespace

std::vector<PoolEntry> acceptance_pool() {
    std::vector<PoolEntry> pool;
    auto add = [&](std::string name, DetTransducer t) { pool.push_back({std::move(name), minimal(t)}); };
    add("fixture", fixture_fig1());
    for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 2}, {4, 4}, {6, 2}, {6, 3}, {6, 6}})
        add("T" + std::to_string(n) + "(" + std::to_string(d) + "," + std::to_string(n / d) + ")", generator(n, d, n / d));
    for (auto [n, l] : kMarkerSizes)
        for (auto& m : marker_machines(n, l)) add(m.name, m.t);
    add("conveyor-flip", conveyor_automorphism(binary_conveyor(perm_rule({1, 0}))).machine);
    add("conveyor-cycle", conveyor_automorphism(ternary_conveyor(perm_rule({1, 2, 0}))).machine);
    add("conveyor-swap", conveyor_automorphism(ternary_conveyor(conditional_swap())).machine);
    add("cperm(3,{0},021)", conditional_permutation(3, {0}, {0, 2, 1}));
    add("cperm(3,{1},210)", conditional_permutation(3, {1}, {2, 1, 0}));
    add("cperm(3,{2},102)", conditional_permutation(3, {2}, {1, 0, 2}));
    add("cperm(4,{0},0231)", conditional_permutation(4, {0}, {0, 2, 3, 1}));
    add("cperm(4,{0,1},1032)", conditional_permutation(4, {0, 1}, {1, 0, 3, 2}));
    // products, kept grouped by alphabet
    const std::size_t base = pool.size();
    for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = 0; j < base; ++j) {
            if (pool.size() >= base + 14) break;
            const auto &a = pool[i], &b = pool[j];
            if (i == j || a.machine.n != b.machine.n || (i + j) % 3 != 0) continue;
            auto p = multiply(a.machine, b.machine);
            if (p.size() > 40 || is_identity(p)) continue;
            pool.push_back({a.name + "*" + b.name, p});
        }
    std::stable_sort(pool.begin(), pool.end(), [](const PoolEntry& a, const PoolEntry& b) { return a.machine.n < b.machine.n; });
    return pool;
}

CriterionResult run_criterion(int id) {
    static const std::vector<std::pair<std::string, CriterionResult (*)()>> table = {
        {"generator signatures", c1}, {"shift realization", c2}, {"group laws", c3},  {"signature homomorphisms", c4},
        {"M_n structure", c5},        {"reverse automorphism", c6}, {"H_n expulsion", c7}, {"fixture facts", c8},
        {"markers", c9},              {"conveyor embedding", c10},  {"lift", c11}};
    if (id < 1 || id > static_cast<int>(table.size())) throw DomainError("no criterion " + std::to_string(id));
    const auto& [title, fn] = table[static_cast<std::size_t>(id - 1)];
    try {
        return fn();
    } catch (const std::exception& e) {
        return {id, title, false, std::string("exception: ") + e.what()};
    }
}

std::vector<CriterionResult> run_acceptance(bool parallel) {
    std::vector<CriterionResult> out;
    if (!parallel) {
        for (int i = 1; i <= 11; ++i) out.push_back(run_criterion(i));
        return out;
    }
    std::vector<std::future<CriterionResult>> fs;
    for (int i = 1; i <= 11; ++i) fs.push_back(std::async(std::launch::async, run_criterion, i));
    for (auto& f : fs) out.push_back(f.get());
    return out;
}

} // namespace sst
