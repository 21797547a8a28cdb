#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/catalog.hpp"
#include "sst/errors.hpp"
#include "sst/reverse.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <set>
#include <tuple>

using namespace sst;

namespace {

std::vector<DetTransducer> h_pool() {
    return {conditional_permutation(3, {0}, {0, 2, 1}),   conditional_permutation(3, {1}, {2, 1, 0}),
            conditional_permutation(3, {2}, {1, 0, 2}),   conditional_permutation(3, {1, 2}, {0, 2, 1}),
            conditional_permutation(4, {0}, {0, 2, 3, 1}), conditional_permutation(4, {0, 1}, {1, 0, 3, 2})};
}

} // namespace

TEST_CASE("rev structure") {
    auto r = rev(identity_machine(2));
    CHECK(r.size() == 1);
    for (const auto& e : r.edges) CHECK(e.input == e.output);
    auto p = rev(permutation_machine({2, 0, 1}));
    for (const auto& e : p.edges) CHECK(e.output == Word{(e.input[0] + 2) % 3});
    auto s = rev(shift_machine(2));
    std::set<std::tuple<int, int, int>> got, want;
    for (const auto& e : s.edges) got.insert({e.input[0], e.src, e.dst});
    for (int x = 0; x < 2; ++x)
        for (int j = 0; j < 2; ++j) want.insert({x, x, j});
    CHECK(got == want);
    auto c = nd_circuit_check(s, 10);
    CHECK(c.ok);
    CHECK(c.verified_up_to == 10);
    CHECK(nd_circuit_check(rev(fixture_fig1()), 10).ok);
    // two copies of the identity: every word labels two circuits
    NondetTransducer two = as_nondet(identity_machine(2));
    two.names.push_back("b");
    two.edges.push_back({{0}, 1, 1, {0}});
    two.edges.push_back({{1}, 1, 1, {1}});
    CHECK_FALSE(nd_circuit_check(two, 4).ok);
}

TEST_CASE("rev_domain") {
    CHECK(rev_domain(rev(identity_machine(2)), 0, 2).words == std::vector<Word>{Word{}});
    auto s = rev(shift_machine(3));
    for (int i = 0; i < 3; ++i) CHECK(rev_domain(s, i, 1).words == std::vector<Word>{Word{i}});
    // fixture: depth-k domains partition X_2^k according to the forced state
    auto t = fixture_fig1();
    const int k = sync_level(t).level;
    auto r = rev(t);
    std::size_t total = 0;
    for (int q = 0; q < t.size(); ++q) {
        auto dom = rev_domain(r, q, k);
        for (const auto& w : dom.words) {
            std::size_t cnt = 1;
            for (std::size_t i = w.size(); i < static_cast<std::size_t>(k); ++i) cnt *= 2;
            total += cnt;
            // any completion of the reversed word forces q
            Word full = w;
            full.resize(static_cast<std::size_t>(k), 0);
            CHECK(forced_state(t, reverse(full)) == q);
        }
    }
    CHECK(total == (std::size_t{1} << k));
}

TEST_CASE("nd_path_gcp") {
    auto id = as_nondet(identity_machine(2));
    auto p = nd_path_gcp(id, 0, parse_word("1,0,1"));
    CHECK(p.consumed == parse_word("1,0,1"));
    auto s = rev(shift_machine(2));
    // from 0~ reading 0 there are two edges (to a1~ and a2~): nothing is common
    auto g = nd_path_gcp(s, 0, parse_word("0"));
    CHECK(g.edges.empty());
    auto g2 = nd_path_gcp(s, 0, parse_word("0,1"));
    CHECK(g2.edges.size() == 1);
}

TEST_CASE("rec") {
    auto t = fixture_fig1();
    CHECK(is_isomorphic(rec(as_nondet(t)), t));
    CHECK(is_identity(minimal(rec(rev(identity_machine(3))))));
    auto p = permutation_machine({1, 2, 0});
    CHECK(is_isomorphic(minimal(rec(rev(p))), p));
    for (const DetTransducer& m : {t, generator(6, 2, 3), generator(6, 3, 2)})
        CHECK(is_isomorphic(minimal(rec(nd_inverse_view(m))), invert(m)));
}

TEST_CASE("reverse automorphism") {
    auto t = fixture_fig1();
    auto r = rev_automorphism(t);
    CHECK(is_isomorphic(rev_automorphism(r), minimal(t)));
    CHECK(is_identity(rev_automorphism(identity_machine(2))));
    CHECK(in_Ln(r).member);
    auto t23 = generator(6, 2, 3);
    CHECK(rev_sig(t23) == 2);
    CHECK(rev_sig_by_counts(t23) == 2);
    CHECK(rev_sig(identity_machine(4)) == 1);
    CHECK(rev_sig(t) == rev_sig_by_counts(t));
    CHECK(probe_q1(t23).agree());
}

TEST_CASE("H_n expulsion") {
    for (const auto& h : h_pool()) {
        REQUIRE(in_Hn(h));
        REQUIRE(minimal(h).size() > 1);
        auto r = rev_automorphism(h);
        CHECK_FALSE(in_Hn(r));
        CHECK(is_isomorphic(rev_automorphism(r), minimal(h)));
    }
    auto p = permutation_machine({1, 0, 2});
    CHECK(in_Hn(p));
    CHECK(is_isomorphic(rev_automorphism(p), p));
}
