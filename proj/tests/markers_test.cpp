#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/errors.hpp"
#include "sst/markers.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <random>

using namespace sst;

namespace {

// Random sequence whose centre carries a run of {a,b} blocks.
BiInfiniteSeq marker_rich(std::mt19937_64& rng, const MarkerPair& p) {
    BiInfiniteSeq x = random_seq(rng, p.n, 3);
    for (int k = 0; k < 7; ++k) {
        const Word& z = (rng() & 1) ? p.a : p.b;
        x.center.insert(x.center.end(), z.begin(), z.end());
    }
    x.center.push_back(static_cast<Letter>(rng() % static_cast<unsigned>(p.n)));
    return x;
}

BiInfiniteSeq conveyor_rich(std::mt19937_64& rng, const ConveyorSystem& c) {
    BiInfiniteSeq x = random_seq(rng, c.n, 3);
    for (int k = 0; k < 6; ++k) {
        x.center.insert(x.center.end(), c.w.begin(), c.w.end());
        const Word& u = c.U[rng() % c.U.size()];
        x.center.insert(x.center.end(), u.begin(), u.end());
    }
    x.center.insert(x.center.end(), c.w.begin(), c.w.end());
    return x;
}

ConveyorSystem binary_conveyor(ConveyorRule r) {
    return {2, parse_word("0,1"), {parse_word("0"), parse_word("1")}, std::move(r)};
}

// Flip u_i when u_(i-1) is 1: injective on finite runs only.
ConveyorRule conditional_flip() {
    return local_rule(2, 1, [](const std::vector<int>& w) { return w[0] == 1 ? 1 - w[1] : w[1]; });
}

ConveyorSystem ternary_conveyor(ConveyorRule r) {
    return {2, parse_word("0,0,1"), {parse_word("1,0"), parse_word("1,1"), parse_word("0,1")}, std::move(r)};
}

// Swap payloads 1 and 2 when u_(i-1) is 0.
ConveyorRule conditional_swap() {
    return local_rule(3, 1, [](const std::vector<int>& w) { return w[0] == 0 && w[1] > 0 ? 3 - w[1] : w[1]; });
}

} // namespace

TEST_CASE("marker validation") {
    CHECK_FALSE(validate_marker_pair(2, parse_word("0,0"), parse_word("0,1")).ok);
    CHECK_FALSE(validate_marker_pair(2, parse_word("0,1"), parse_word("0,1")).ok);
    CHECK_FALSE(validate_marker_pair(2, parse_word("0"), parse_word("1")).ok);
    CHECK_FALSE(validate_marker_pair(2, parse_word("0,1"), parse_word("0,1,1")).ok);
    CHECK_FALSE(validate_marker_pair(2, parse_word("0,2"), parse_word("0,1")).ok);
    CHECK(validate_marker_pair(2, parse_word("0,0,1"), parse_word("0,1,1")).ok);
    CHECK_FALSE(search_marker_pair(2, 2).has_value());
    for (auto [n, l] : {std::pair{2, 3}, {2, 4}, {3, 2}}) {
        auto p = search_marker_pair(n, l);
        REQUIRE(p.has_value());
        CHECK(validate_marker_pair(n, p->a, p->b).ok);
        CHECK(p->a < p->b);
    }
}

TEST_CASE("marker image on words") {
    MarkerPair p{2, parse_word("0,0,1"), parse_word("0,1,1")};
    // five blocks a a a b a: only the middle one has full context
    Word x = parse_word("0,0,1,0,0,1,0,0,1,0,1,1,0,0,1");
    Word y = marker_image(p, x);
    CHECK(to_string(y) == "0,0,1,0,0,1,0,1,1,0,1,1,0,0,1");
    CHECK(marker_image(p, y) == x);
    Word plain = parse_word("1,1,1,0,1,0,1,0,0,0,1");
    CHECK(marker_image(p, plain) == plain);
}

TEST_CASE("marker automorphisms") {
    for (auto [n, l] : {std::pair{2, 3}, {3, 2}}) {
        INFO("n=" << n << " l=" << l);
        MarkerPair p = *search_marker_pair(n, l);
        Pair m = marker_automorphism(p);
        CHECK(in_Dn(m.machine).member);
        CHECK(in_On(m.machine).member);
        CHECK(pair_equal(pair_product(m, m), identity_pair(n)));
        for (Letter x = 0; x < n; ++x) CHECK(m.alpha[static_cast<std::size_t>(loop_state(m.machine, x))] == 0);
        std::mt19937_64 rng(5 + static_cast<unsigned>(n));
        for (int i = 0; i < 25; ++i) {
            auto s = i % 2 ? marker_rich(rng, p) : random_seq(rng, n);
            CHECK(apply(m, s) == marker_apply(p, s));
        }
        auto pi = pi_action(m.machine, static_cast<int>(l));
        const Word ca = canonical_rotation(prime_root(p.a)), cb = canonical_rotation(prime_root(p.b));
        CHECK(pi.at(ca) == cb);
        CHECK(pi.at(cb) == ca);
    }
}

TEST_CASE("conveyor validation") {
    CHECK(validate_conveyor(binary_conveyor(perm_rule({0, 1}))).ok);
    CHECK(validate_conveyor(binary_conveyor(perm_rule({1, 0}))).ok);
    CHECK(validate_conveyor(binary_conveyor(conditional_flip())).ok);
    // constant rule collapses runs
    CHECK_FALSE(validate_conveyor(binary_conveyor(local_rule(2, 0, [](const std::vector<int>&) { return 0; }))).ok);
    // w overlapping itself
    ConveyorSystem bad{2, parse_word("0,0"), {parse_word("0"), parse_word("1")}, perm_rule({0, 1})};
    CHECK_FALSE(validate_conveyor(bad).ok);
    CHECK_FALSE(validate_conveyor(binary_conveyor(perm_rule({0}))).ok);
}

TEST_CASE("conveyor automorphisms") {
    auto id = conveyor_automorphism(binary_conveyor(perm_rule({0, 1})));
    CHECK(identity_shift(id) == 0);

    std::mt19937_64 rng(9);
    for (auto c : {binary_conveyor(perm_rule({1, 0})), ternary_conveyor(conditional_swap())}) {
        Pair f = conveyor_automorphism(c);
        CHECK(in_Dn(f.machine).member);
        CHECK_FALSE(identity_shift(f).has_value());
        for (int i = 0; i < 20; ++i) {
            auto s = i % 2 ? conveyor_rich(rng, c) : random_seq(rng, 2);
            if (i % 4 == 1) s.right = concat(c.w, c.U.back());
            CHECK(apply(f, s) == conveyor_apply(c, s));
        }
    }
    auto flip = conveyor_automorphism(binary_conveyor(perm_rule({1, 0})));
    CHECK(pair_equal(pair_product(flip, flip), identity_pair(2)));
    // all-0 and all-1 runs share an image
    CHECK(validate_conveyor(binary_conveyor(conditional_flip())).ok);
    CHECK_THROWS_AS(conveyor_automorphism(binary_conveyor(conditional_flip())), DomainError);

    auto cf = ternary_conveyor(conditional_swap());
    auto g = conveyor_automorphism(cf);
    auto gg = conveyor_automorphism(conveyor_compose(cf, cf));
    CHECK(pair_equal(pair_product(g, g), gg));
    CHECK(pair_equal(pair_product(g, pair_inverse(g)), identity_pair(2)));

    // S_3 acting on three payload words
    ConveyorSystem c3{2, parse_word("0,0,1"), {parse_word("1,0"), parse_word("1,1"), parse_word("0,1")}, perm_rule({1, 2, 0})};
    REQUIRE(validate_conveyor(c3).ok);
    Pair h = conveyor_automorphism(c3);
    CHECK(pair_equal(pair_product(pair_product(h, h), h), identity_pair(2)));
    CHECK_FALSE(identity_shift(pair_product(h, h)).has_value());
}

TEST_CASE("conveyor spec text") {
    std::string spec = "alphabet 2\nw 0,0,1\nU 1,0 1,1 0,1\nrule local 1 % swap after 0\n";
    for (std::string r : {"#", "0", "1", "2"}) spec += "map 0 1 " + r + " -> 2\nmap 0 2 " + r + " -> 1\n";
    auto c = parse_conveyor(spec);
    auto d = ternary_conveyor(conditional_swap());
    CHECK(pair_equal(conveyor_automorphism(c), conveyor_automorphism(d)));
    CHECK_THROWS_AS(parse_conveyor("alphabet 2\nw 0,1\n"), FormatError);
    CHECK_THROWS_AS(parse_conveyor("alphabet 2\nw 0,1\nU 0 1\nrule local 1\nmap 1 0 -> 1\n"), FormatError);
}

TEST_CASE("rule extraction") {
    // radius 0 cannot see a neighbour
    CHECK_THROWS_AS(extract_rule(2, [](const Word& x) {
        Word y = x;
        for (std::size_t i = 1; i < x.size(); ++i) y[i] = x[i] ^ x[i - 1];
        return y;
    }, 0, 0), DomainError);
    auto f = extract_rule(2, [](const Word& x) {
        Word y = x;
        for (std::size_t i = 1; i < x.size(); ++i) y[i] = x[i] ^ x[i - 1];
        return y;
    }, 0, 3);
    CHECK(f.memory == 1);
    CHECK(f.eval(parse_word("1,1,0")) == 0);
    CHECK(f.eval(parse_word("0,1,0")) == 1);
}

TEST_CASE("lifts") {
    auto idl = lift_to_initial(identity_machine(3), 2);
    CHECK(lift_is_identity(idl));
    CHECK(check_lift_bijective(idl, 2).ok);
    CHECK_THROWS_AS(lift_to_initial(identity_machine(3), 3), DomainError);

    MarkerPair p = *search_marker_pair(3, 2);
    Pair m = marker_automorphism(p);
    auto lm = lift_to_initial(m.machine, 2);
    CHECK_FALSE(lift_is_identity(lm));
    CHECK(lift_is_identity(lift_product(lm, lm)));
    CHECK(check_lift_bijective(lm, 3).ok);

    Pair g = conveyor_automorphism(ternary_conveyor(conditional_swap()));
    Pair gi = pair_inverse(g);
    // r must stay below n, so only r = 1 exists for n = 2
    auto lg = lift_to_initial(g.machine, 1), lgi = lift_to_initial(gi.machine, 1);
    CHECK(lift_is_identity(lift_product(lg, lgi)));
    CHECK(lift_equal(lift_product(lg, lg), lift_to_initial(pair_product(g, g).machine, 1)));
    CHECK(check_lift_bijective(lg, 4).ok);

    // a non-injective initial machine fails the cylinder check
    DetTransducer z(2, 1);
    z.set(0, 0, 0, {0});
    z.set(0, 1, 0, {0});
    CHECK_FALSE(check_lift_bijective(RootedLift{1, {z, 0}}, 2).ok);
}
