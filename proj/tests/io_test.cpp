#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sst/acceptance.hpp"
#include "sst/catalog.hpp"
#include "sst/errors.hpp"
#include "sst/io.hpp"
#include "sst/reverse.hpp"

#include <algorithm>
#include <string>

using namespace sst;

namespace {

int count(const std::string& s, const std::string& needle) {
    int c = 0;
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
    return c;
}

bool same(const DetTransducer& a, const DetTransducer& b) {
    return a.n == b.n && a.names == b.names && a.next == b.next && a.out == b.out;
}

} // namespace

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_machine("states a\nedge a 0 a 0\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nedge a 0 a 0\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nedge a 0 a 0\nedge a 0 a 1\nedge a 1 a 1\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nedge a 0 a 0\nedge a 1 b 1\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nedge a 0 a 2\nedge a 1 a 1\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nedge a 0 a 0\nndedge a 1 a 1\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a a\n"), FormatError);
    CHECK_THROWS_AS(parse_machine("alphabet 2\nstates a\nfoo\n"), FormatError);
    CHECK_THROWS_AS(load_machine("/nonexistent/x.fst"), FormatError);
}

TEST_CASE("round trip") {
    auto pm = parse_machine("alphabet 2\nstates x y\ninitial y\nedge x 0 y -\nedge x 1 y 1,1\nedge y 0 x 0\nedge y 1 y 1\n");
    REQUIRE_FALSE(pm.nondet);
    CHECK(pm.initial == 1);
    CHECK(pm.det.emit(0, 0).empty());
    auto again = parse_machine(serialize(pm.det, pm.initial));
    CHECK(same(again.det, pm.det));
    CHECK(again.initial == pm.initial);

    auto nd = rev(fixture_fig1());
    auto back = parse_machine(serialize(nd));
    REQUIRE(back.nondet);
    CHECK(serialize(back.nd) == serialize(nd));

    for (const auto& e : acceptance_pool()) {
        INFO(e.name);
        CHECK(same(parse_machine(serialize(e.machine)).det, e.machine));
    }
}

TEST_CASE("dot export") {
    auto id = to_dot(identity_machine(3));
    CHECK(count(id, "->") == 3);
    CHECK(count(id, ";\n") - count(id, "->") - 1 == 1);  // one node line
    auto sh = to_dot(shift_machine(2));
    CHECK(count(sh, "->") == 4);
    CHECK(sh.find("label=\"1|0\"") != std::string::npos);
    auto fx = to_dot(fixture_fig1());
    CHECK(count(fx, "->") == 12);
    CHECK(fx.find("label=\"0|ε\"") != std::string::npos);
    CHECK(to_dot(fixture_fig1()) == fx);
}
