#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/catalog.hpp"
#include "sst/errors.hpp"
#include "sst/sync.hpp"

#include <random>

using namespace sst;

TEST_CASE("levels") {
    CHECK(sync_level(identity_machine(3)).level == 0);
    CHECK(sync_level(shift_machine(3)).level == 1);
    auto t = fixture_fig1();
    auto r = sync_level(t);
    REQUIRE(r.synchronizing);
    // every word of the level forces one state; shorter words do not
    std::mt19937 rng(1);
    for (int i = 0; i < 200; ++i) {
        Word x;
        for (int j = 0; j < r.level; ++j) x.push_back(static_cast<int>(rng() % 2));
        const int f = forced_state(t, x);
        for (int q = 0; q < t.size(); ++q) CHECK(t.state_after(q, x) == f);
    }
    bool shorter_forces_all = true;
    for (const auto& x : all_words(2, r.level - 1)) {
        for (int q = 1; q < t.size(); ++q)
            if (t.state_after(q, x) != t.state_after(0, x)) shorter_forces_all = false;
    }
    CHECK_FALSE(shorter_forces_all);
    // level-(k+1) forcing factors through level k
    for (const auto& x : all_words(2, r.level + 1)) CHECK(forced_state(t, x) == forced_state(t, Word(x.begin() + 1, x.end())));
}

TEST_CASE("de Bruijn machine has level m-1") {
    // states = last two letters read, n = 2, m = 3
    DetTransducer t(2, 4);
    for (int v = 0; v < 4; ++v) {
        t.names[static_cast<std::size_t>(v)] = std::to_string(v);
        for (int x = 0; x < 2; ++x) t.set(v, x, ((v << 1) | x) & 3, {(v >> 1) ^ x});
    }
    CHECK(sync_level(t).level == 2);
    CHECK(core(t).size() <= 4);
}

TEST_CASE("not synchronizing") {
    DetTransducer t(2, 2);
    for (int q = 0; q < 2; ++q)
        for (int x = 0; x < 2; ++x) t.set(q, x, 1 - q, {x});
    auto r = sync_level(t);
    CHECK_FALSE(r.synchronizing);
    CHECK(r.witness.size() == 2);
    CHECK_THROWS_AS(core(t), DomainError);
}

TEST_CASE("core") {
    auto s = shift_machine(2);
    CHECK(core(s).size() == 2);
    auto p = product(fixture_fig1(), fixture_fig1());
    auto c = core(p);
    CHECK(c.size() <= 36);
    CHECK(core(c).size() == c.size());
    CHECK(sync_level(c).synchronizing);
}

TEST_CASE("product levels add") {
    CHECK(check_product_level(shift_machine(2), shift_machine(2)) <= 2);
    auto t = fixture_fig1();
    CHECK(check_product_level(identity_machine(2), t) == sync_level(t).level);
    CHECK(check_product_level(t, t) <= 2 * sync_level(t).level);
}

TEST_CASE("bisynchronizing") {
    auto b = is_bisynchronizing(fixture_fig1());
    CHECK(b.forward == sync_level(fixture_fig1()).level);
    CHECK(b.backward >= 1);
    auto h = is_bisynchronizing(conditional_permutation(3, {0}, {0, 2, 1}));
    CHECK(h.forward == 1);
    CHECK(h.backward == 1);
}
