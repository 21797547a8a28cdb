#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/catalog.hpp"
#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/sync.hpp"
#include "sst/transducer.hpp"

#include <random>

using namespace sst;

namespace {

Word w(const char* s) { return parse_word(s); }

// All outputs of length-d inputs from q, compared through their gcp.
Word brute_lambda(const DetTransducer& t, int q, const Word& pre, int d) {
    std::optional<Word> g;
    for (const auto& tail : all_words(t.n, d)) {
        Word o = t.run(q, concat(pre, tail)).second;
        g = g ? common_prefix(*g, o) : o;
    }
    return *g;
}

} // namespace

TEST_CASE("run") {
    auto id = identity_machine(2);
    CHECK(id.run(0, w("0,1,1")) == std::pair<int, Word>{0, w("0,1,1")});
    auto s = shift_machine(2);
    CHECK(s.names[0] == "a1");
    CHECK(s.run(0, w("1")) == std::pair<int, Word>{1, w("0")});
    CHECK(s.run(0, w("1,0")) == std::pair<int, Word>{0, w("0,1")});
    CHECK(s.run(1, Word{}) == std::pair<int, Word>{1, Word{}});
}

TEST_CASE("validate rejects empty-output cycles") {
    DetTransducer t(2, 1);
    t.set(0, 0, 0, {});
    t.set(0, 1, 0, {1});
    CHECK_THROWS_AS(validate(t), DomainError);
    CHECK_NOTHROW(validate(fixture_fig1()));
}

TEST_CASE("product") {
    auto s = shift_machine(3);
    auto p = product(s, s);
    CHECK(p.size() == 9);
    CHECK(p.names[0] == "a1,a1");
    auto t = fixture_fig1();
    CHECK(is_isomorphic(minimal(product(identity_machine(2), t)), minimal(t)));
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        Word x;
        for (int j = 0; j < 8; ++j) x.push_back(static_cast<int>(rng() % 2));
        int p0 = static_cast<int>(rng() % 6), p1 = static_cast<int>(rng() % 2);
        auto [ts, to] = t.run(p0, x);
        auto [us, uo] = shift_machine(2).run(p1, to);
        auto [ps, po] = product(t, shift_machine(2)).run(p0 * 2 + p1, x);
        CHECK(ps == ts * 2 + us);
        CHECK(po == uo);
    }
}

TEST_CASE("lambda_gcp") {
    auto s = shift_machine(3);
    for (int i = 0; i < 3; ++i) {
        auto g = lambda_gcp(s, i, Word{});
        CHECK_FALSE(g.infinite);
        CHECK(g.prefix == Word{i});
    }
    auto id = identity_machine(2);
    CHECK(lambda_gcp(id, 0, w("1,0,1")).prefix == w("1,0,1"));
    DetTransducer z(2, 1);
    z.set(0, 0, 0, {1});
    z.set(0, 1, 0, {1});
    auto g = lambda_gcp(z, 0, Word{});
    CHECK(g.infinite);
    CHECK(g.period == w("1"));
    // fixture against brute-force enumeration
    auto t = fixture_fig1();
    for (int q = 0; q < t.size(); ++q)
        for (const auto& pre : all_words(2, 3)) CHECK(lambda_gcp(t, q, pre).prefix == brute_lambda(t, q, pre, 10));
}

TEST_CASE("remove_incomplete_response") {
    auto id = identity_machine(2);
    CHECK(is_isomorphic(remove_incomplete_response(id), id));
    auto s = shift_machine(2);
    auto r = remove_incomplete_response(s);
    for (int q = 0; q < 2; ++q)
        for (int x = 0; x < 2; ++x) CHECK(r.emit(q, x) == Word{x});
    CHECK(merge_omega_equivalent(r).machine.size() == 1);
    // fixture: a1 and a2 have no incomplete response
    auto t = fixture_fig1();
    auto lam = all_lambda_eps(t);
    REQUIRE(lam);
    CHECK((*lam)[2].empty());
    CHECK((*lam)[5].empty());
    // initial version realizes Lambda(w, q0)
    for (int q0 = 0; q0 < t.size(); ++q0) {
        auto ri = remove_incomplete_response(InitialDetTransducer{t, q0});
        for (int len = 0; len <= 6; ++len)
            for (const auto& u : all_words(2, len))
                CHECK(ri.base.run(ri.initial, u).second == lambda_gcp(t, q0, u).prefix);
    }
}

TEST_CASE("merge_omega_equivalent") {
    DetTransducer d(2, 2);
    for (int q = 0; q < 2; ++q)
        for (int x = 0; x < 2; ++x) d.set(q, x, 1 - q, {x});
    CHECK(merge_omega_equivalent(d).machine.size() == 1);
    CHECK(merge_omega_equivalent(shift_machine(3)).machine.size() == 3);
}

TEST_CASE("minimize") {
    for (int n : {2, 3, 4, 6}) {
        auto m = minimize(shift_machine(n));
        REQUIRE(m.machine);
        CHECK(is_identity(*m.machine));
        CHECK(m.machine->size() == 1);
    }
    CHECK(is_identity(minimal(identity_machine(3))));
    DetTransducer z(2, 1);
    z.set(0, 0, 0, {1, 0});
    z.set(0, 1, 0, {1, 0});
    auto mz = minimize(z);
    REQUIRE(mz.is_zx());
    CHECK(mz.zx->x == w("0,1"));
    CHECK_THROWS_AS(minimal(z), DomainError);
    auto t = fixture_fig1();
    auto mt = minimal(t);
    CHECK(mt.size() == 6);
    CHECK(is_isomorphic(minimal(mt), mt));
}

TEST_CASE("reduce bookkeeping") {
    auto r = reduce(shift_machine(2));
    CHECK(r.machine.size() == 1);
    CHECK(r.lag == std::vector<int>{1, 1});
}

TEST_CASE("is_isomorphic") {
    auto t = fixture_fig1();
    CHECK(is_isomorphic(t, t));
    CHECK_FALSE(is_isomorphic(identity_machine(2), shift_machine(2)));
    // renamed and reordered copy
    std::vector<int> perm{3, 5, 0, 1, 2, 4};
    DetTransducer u(2, 6);
    for (int q = 0; q < 6; ++q) {
        u.names[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] = "z" + std::to_string(q);
        for (int x = 0; x < 2; ++x)
            u.set(perm[static_cast<std::size_t>(q)], x, perm[static_cast<std::size_t>(t.to(q, x))], t.emit(q, x));
    }
    CHECK(is_isomorphic(t, u));
    CHECK_FALSE(is_isomorphic(t, minimal(product(t, t))));
}

TEST_CASE("multiply with inverse") {
    auto t = fixture_fig1();
    auto inv = invert(t);
    CHECK(is_identity(multiply(t, inv)));
    CHECK(is_identity(multiply(inv, t)));
}

TEST_CASE("initial machines") {
    auto s = InitialDetTransducer{shift_machine(2), 0};
    auto m = minimize_initial(s);
    // from a1 the shift writes 0 then the delayed input
    CHECK(m.base.size() >= 2);
    for (const auto& u : all_words(2, 5)) {
        Word a = m.base.run(m.initial, u).second;
        Word b = lambda_gcp(shift_machine(2), 0, u).prefix;
        CHECK(a == b);
    }
    auto p = minimize_initial(product_initial(s, s));
    CHECK(is_isomorphic_initial(p, minimize_initial(product_initial(s, s))));
    CHECK_FALSE(is_isomorphic_initial(p, m));
}
