#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/catalog.hpp"
#include "sst/dynamics.hpp"
#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/sync.hpp"

#include <set>

using namespace sst;

namespace {

Pair fixture_pair() {
    auto t = fixture_fig1();
    return {t, canonical_annotation(t)};
}

// Direct evaluation of a local rule on a sequence, as a sequence with the
// same periods.
BiInfiniteSeq eval_rule(const LocalRule& f, const BiInfiniteSeq& x) {
    const long long P = static_cast<long long>(x.left.size()), Q = static_cast<long long>(x.right.size());
    const long long lb = x.offset - P - f.m, rb = x.offset + static_cast<long long>(x.center.size()) + f.m;
    Word y;
    for (long long j = lb; j < rb + Q; ++j) {
        Word win;
        for (long long i = j - f.memory; i < j - f.memory + f.m; ++i) win.push_back(x.at(i));
        y.push_back(f.eval(win));
    }
    BiInfiniteSeq r;
    r.left.assign(y.begin(), y.begin() + P);
    r.center.assign(y.begin() + P, y.begin() + (rb - lb));
    r.right.assign(y.begin() + (rb - lb), y.end());
    r.offset = lb + P;
    return r;
}

} // namespace

TEST_CASE("annotations") {
    CHECK(canonical_annotation(identity_machine(3)) == Annotation{0});
    auto t = fixture_fig1();
    CHECK(canonical_annotation(t) == Annotation{2, 2, 1, 1, 0, 0});
    CHECK(is_annotation(t, Annotation{5, 5, 4, 4, 3, 3}));
    auto p = reduce_pair(shift_machine(4), Annotation{0, 0, 0, 0});
    CHECK(identity_shift(p) == 1);
}

TEST_CASE("pair products") {
    auto fp = fixture_pair();
    CHECK(pair_equal(pair_product(identity_pair(2), fp), fp));
    CHECK(identity_shift(pair_product(identity_pair(2, 1), identity_pair(2, 1))) == 2);
    Pair a{generator(6, 2, 3), {0, 0}}, b{generator(6, 3, 2), {0, 0, 0}};
    CHECK(identity_shift(pair_product(a, b)) == 1);
    auto inv = pair_inverse(fp);
    CHECK(identity_shift(pair_product(fp, inv)) == 0);
    CHECK(identity_shift(pair_product(inv, fp)) == 0);
}

TEST_CASE("sequences") {
    auto x = parse_seq("(0,1)^-inf . 1,1 . (0)^inf @ -3");
    CHECK(x.at(-3) == 1);
    CHECK(x.at(-4) == 1);
    CHECK(x.at(-5) == 0);
    CHECK(x.at(-1) == 0);
    CHECK(x.at(100) == 0);
    CHECK(parse_seq(x.str()) == x);
    auto n = parse_seq("(0,0)^-inf . 0,1 . (1,1)^inf @ 0").normalized();
    CHECK(n.left == Word{0});
    CHECK(n.center.empty());
    CHECK(n.offset == 1);
    CHECK(n == parse_seq("(0)^-inf . - . (1)^inf @ 1"));
    CHECK_FALSE(n == parse_seq("(0)^-inf . - . (1)^inf @ 2"));
    CHECK_THROWS_AS(parse_seq("(0)^inf"), FormatError);
}

TEST_CASE("apply") {
    std::mt19937_64 rng(11);
    auto fp = fixture_pair();
    auto zero = parse_seq("(0)^-inf . - . (0)^inf @ 0");
    CHECK(apply(fp, zero) == zero);
    auto inv = pair_inverse(fp);
    for (int i = 0; i < 50; ++i) {
        auto x = random_seq(rng, 2);
        CHECK(apply(identity_pair(2, 1), x) == shift_seq(x));
        auto y = apply(fp, x);
        CHECK(apply(inv, y) == x);
        CHECK(apply(fp, shift_seq(x)) == shift_seq(y));
        CHECK(apply(pair_product(fp, fp), x) == apply(fp, y));
        // shifting the annotation shifts the output
        Pair g = fp;
        for (int& v : g.alpha) v += 2;
        CHECK(apply(g, x) == shift_seq(y, 2));
    }
    Pair a{generator(6, 2, 3), {0, 0}}, b{generator(6, 3, 2), {0, 0, 0}};
    for (int i = 0; i < 20; ++i) {
        auto x = random_seq(rng, 6);
        CHECK(apply(b, apply(a, x)) == shift_seq(x));
        CHECK(apply(pair_product(a, b), x) == shift_seq(x));
    }
}

TEST_CASE("local rules") {
    auto last = make_rule(2, 1, 0, [](const Word& w) { return w[0]; });
    CHECK(identity_shift(local_rule_to_pair(last)) == 0);
    auto prev = make_rule(3, 2, 1, [](const Word& w) { return w[0]; });
    CHECK(identity_shift(local_rule_to_pair(prev)) == 1);
    auto xr = make_rule(2, 2, 1, [](const Word& w) { return (w[0] + w[1]) % 2; });
    CHECK(is_right_permutive(xr));
    CHECK(is_left_permutive(xr));
    auto cst = make_rule(2, 2, 1, [](const Word&) { return 0; });
    CHECK_FALSE(is_right_permutive(cst));
    CHECK_FALSE(is_left_permutive(cst));
    auto cur = make_rule(2, 2, 1, [](const Word& w) { return w[1]; });
    CHECK(is_right_permutive(cur));
    auto xp = local_rule_to_pair(xr);
    CHECK(sync_level(xp.machine).level <= 1);
    // XOR is not invertible, so it only acts as an endomorphism
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        auto x = random_seq(rng, 2);
        CHECK(apply(xp, x) == eval_rule(xr, x));
    }
    // a three-letter rule with anticipation
    auto r3 = make_rule(3, 3, 1, [](const Word& w) { return (w[1] + w[0] * w[2]) % 3; });
    auto p3 = local_rule_to_pair(r3);
    for (int i = 0; i < 30; ++i) {
        auto x = random_seq(rng, 3);
        CHECK(apply(p3, x) == eval_rule(r3, x));
    }
}

TEST_CASE("pi action") {
    for (const auto& [k, v] : pi_action(identity_machine(2), 6)) CHECK(k == v);
    auto sw = pi_action(permutation_machine({1, 0}), 3);
    CHECK(sw.at(parse_word("0,0,1")) == parse_word("0,1,1"));
    auto t = fixture_fig1();
    auto pt = pi_action(t, 8);
    auto pinv = pi_action(invert(t), 8);
    for (int len = 1; len <= 8; ++len) {
        std::set<Word> img;
        for (const auto& g : enumerate_prime_classes(2, len)) {
            const Word& v = pt.at(g);
            CHECK(v.size() == g.size());
            img.insert(v);
            CHECK(pinv.at(v) == g);
        }
        CHECK(img.size() == enumerate_prime_classes(2, len).size());
    }
    // homomorphism on a product
    auto tt = multiply(t, t);
    auto ptt = pi_action(tt, 6);
    for (const auto& [g, v] : ptt) CHECK(v == pt.at(pt.at(g)));
}
