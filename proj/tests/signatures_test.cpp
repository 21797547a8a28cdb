#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/catalog.hpp"
#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

using namespace sst;

TEST_CASE("M_n classes") {
    CHECK(mn_class(6, 6).is_identity());
    CHECK(mn_class(6, 2) == mn_class(6, 12));
    auto two = mn_class(4, 2);
    CHECK_FALSE(two.is_identity());
    CHECK(two.order() == 2);
    CHECK((two * two).is_identity());
    for (int n : {2, 3}) {
        for (long long m = n, j = 1; j <= 6; ++j, m *= n) CHECK(mn_class(n, m).is_identity());
        CHECK(mn_structure(n).free_rank == 0);
        CHECK(mn_structure(n).torsion == 1);
    }
    CHECK(mn_structure(4).torsion == 2);
    CHECK(mn_structure(6).free_rank == 1);
    CHECK(mn_structure(6).torsion == 1);
    std::vector<MnElement> powers;
    for (long long j = 0, m = 1; j <= 6; ++j, m *= 2) powers.push_back(mn_class(6, m));
    for (std::size_t i = 0; i < powers.size(); ++i)
        for (std::size_t k = i + 1; k < powers.size(); ++k) CHECK_FALSE(powers[i] == powers[k]);
    CHECK(mn_class(6, 2).order() == 0);
    CHECK_THROWS_AS(mn_class(6, 5), DomainError);
    CHECK((mn_class(6, 2) * mn_class(6, 3)).is_identity());
}

TEST_CASE("generators") {
    auto t23 = generator(6, 2, 3), t32 = generator(6, 3, 2), t61 = generator(6, 6, 1);
    CHECK(t23.size() == 2);
    CHECK(t32.size() == 3);
    CHECK(sig(t23) == 3);
    CHECK(sig(t32) == 2);
    CHECK(sig(t61) == 1);
    for (int q = 0; q < 2; ++q) {
        auto c = uniform_cone_count(t23, q);
        CHECK(c.s == 3);
        CHECK(c.depth == 1);
        CHECK(image_antichain(t23, q).words.size() == 3);
    }
    // T(6,1) is the shift: state = previous letter, output = previous letter
    for (int q = 0; q < 6; ++q)
        for (int x = 0; x < 6; ++x) {
            CHECK(t61.to(q, x) == x);
            CHECK(t61.emit(q, x) == Word{q});
        }
    // the product of the prime generators is the shift
    CHECK(is_isomorphic(multiply(t23, t32), minimal(t61)));
    CHECK(is_identity(multiply(t23, t32)));
    CHECK(is_isomorphic(multiply(t23, t32), multiply(t32, t23)));
    CHECK(sig(invert(t23)) == 2);
    // n = 4: T(2,2) squared is the shift
    auto t22 = generator(4, 2, 2);
    CHECK(is_identity(multiply(t22, t22)));
    CHECK_THROWS_AS(generator(6, 4, 1), DomainError);
}

TEST_CASE("sig_omega") {
    auto t23 = generator(6, 2, 3), t32 = generator(6, 3, 2);
    CHECK((sig_omega(t23) * sig_omega(t32)).is_identity());
    CHECK(sig_omega(identity_machine(6)).is_identity());
    CHECK(sig_omega(fixture_fig1()).is_identity());
    CHECK(sig_omega(multiply(t23, t23)) == sig_omega(t23) * sig_omega(t23));
}

TEST_CASE("sig_k") {
    for (int n : {2, 4, 6})
        for (int d = 2; d <= n; ++d) {
            if (n % d) continue;
            const int e = n / d;
            auto t = generator(n, d, e);
            long long nk = 1;
            for (int k = 1; k <= 4; ++k) {
                nk *= n;
                long long want = (e * (nk / n)) % (nk - 1);
                if (want == 0) want = nk - 1;
                CHECK(sig_k(t, Annotation(static_cast<std::size_t>(t.size()), 0), k) == want);
            }
        }
    auto id = identity_machine(3);
    CHECK(sig_k(id, {1}, 3) == 9);
    CHECK(sig_k(id, {0}, 3) == 1);
    CHECK(sig_k(id, {0}, 1) == 1);
}

TEST_CASE("sig of simple machines") {
    CHECK(sig(identity_machine(5)) == 1);
    CHECK(sig(fixture_fig1()) == 1);
}

TEST_CASE("membership") {
    auto t23 = generator(6, 2, 3);
    CHECK(in_On(t23).member);
    CHECK_FALSE(in_Onr(t23, 1).member);
    // r = n-1: the congruence is 15 = 5 = 0 mod 5, so always satisfied
    CHECK(in_Onr(t23, 5).member);
    CHECK(in_Onr(identity_machine(6), 1).member);
    CHECK(in_Onr(identity_machine(6), 5).member);
    CHECK(in_Ln(shift_machine(3)).member);
    CHECK_FALSE(in_Kn(t23).member);
    CHECK(in_Kn(multiply(t23, generator(6, 3, 2))).member);
    auto f = fixture_fig1();
    CHECK(in_Ln(f).member);
    CHECK(in_Kn(f).member);
    auto d = in_Dn(f);
    CHECK_FALSE(d.member);
    CHECK(d.witness == "a1");
    CHECK(in_Dn(identity_machine(2)).member);
}

TEST_CASE("length potential") {
    auto p = length_potential(fixture_fig1());
    REQUIRE(p);
    CHECK(*p == Annotation{0, 0, -1, -1, -2, -2});
    DetTransducer bad(2, 1);
    bad.set(0, 0, 0, {0, 0});
    bad.set(0, 1, 0, {1});
    CHECK_FALSE(length_potential(bad));
}
