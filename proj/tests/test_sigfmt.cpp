#include "binsig/sigfmt.hpp"

#include "doctest.h"

#include "binsig/errors.hpp"
#include "support/fixtures.hpp"

using namespace binsig;
using testutil::xstar;

namespace {
const char* kXstarDoc =
    "signal v1\n"
    "width 1\n"
    "init 1\n"
    "at 0 -> 0\n"
    "at 1 -> 1\n"
    "at 2 -> 0\n"
    "cycle start 3 period 5\n"
    "at +0 -> 1\n"
    "at +2 -> 0\n"
    "at +3 -> 1\n"
    "at +4 -> 0\n";
}  // namespace

TEST_CASE("the example document parses to the example signal") {
  CHECK(sigfmt::parse(kXstarDoc) == xstar());
  CHECK(sigfmt::serialize(xstar()) == kXstarDoc);
}

TEST_CASE("comments and blank lines are ignored") {
  UPSignal x = sigfmt::parse(
      "# a constant signal\n"
      "signal v1\n"
      "\n"
      "width 1   # one bit\n"
      "init 0\n");
  CHECK(is_constant(x));
  CHECK(x.init() == BinaryVector(1, 0));
}

TEST_CASE("parsing canonicalizes") {
  UPSignal x = sigfmt::parse(
      "signal v1\nwidth 1\ninit 1\nat 0 -> 1\nat 2 -> 0\n");
  REQUIRE(x.transient().size() == 1);
  CHECK(x.transient()[0].time == Rat(2));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    sigfmt::parse("signal v1\nwidth 1\ninit 1\nfrobnicate 3\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 1);
  }

  CHECK_THROWS_AS(sigfmt::parse(""), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse("signal v2\n"), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse("signal v1\n"), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse("signal v1\nwidth 1\n"), SyntaxError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\nat 1.5 -> 0\n"), SyntaxError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\nat +1 -> 0\n"), SyntaxError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\n"
                    "cycle start 0 period 2\nat 1 -> 0\n"),
      SyntaxError);
}

TEST_CASE("semantic errors name the offending line") {
  try {
    sigfmt::parse("signal v1\nwidth 1\ninit 1\nat 2 -> 0\nat 1 -> 1\n");
    FAIL("expected SemanticError");
  } catch (const SemanticError& e) {
    CHECK(e.line() == 5);
  }

  CHECK_THROWS_AS(sigfmt::parse("signal v1\nwidth 1\ninit 10\n"),
                  SemanticError);
  CHECK_THROWS_AS(sigfmt::parse("signal v1\nwidth 0\ninit 1\n"),
                  SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\nat 0 -> 01\n"),
      SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\ncycle start 0 period 0\n"),
      SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\n"
                    "cycle start 0 period 2\nat +1 -> 0\n"),
      SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\n"
                    "cycle start 0 period 2\nat +0 -> 0\nat +3 -> 1\n"),
      SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\ncycle start 0 period 2\n"),
      SemanticError);
  CHECK_THROWS_AS(
      sigfmt::parse("signal v1\nwidth 1\ninit 1\nat 3 -> 0\n"
                    "cycle start 2 period 2\nat +0 -> 1\n"),
      SemanticError);
}

TEST_CASE("round trip on random canonical signals") {
  testutil::Rng rng(73);
  for (int i = 0; i < 100; ++i) {
    UPSignal x = testutil::rand_signal(rng);
    UPSignal back = sigfmt::parse(sigfmt::serialize(x));
    CHECK(back == x);
  }
}

TEST_CASE("parsing a raw document equals canonicalizing its pieces") {
  testutil::Rng rng(83);
  for (int i = 0; i < 100; ++i) {
    testutil::RawDesc d = testutil::rand_raw_desc(rng);
    std::string doc = "signal v1\nwidth " +
                      std::to_string(d.init.width()) + "\ninit " +
                      d.init.to_string() + "\n";
    for (const auto& [t, v] : d.switches) {
      doc += "at " + t.to_string() + " -> " + v.to_string() + "\n";
    }
    if (d.cycle) {
      doc += "cycle start " + d.cycle->start.to_string() + " period " +
             d.cycle->period.to_string() + "\n";
      for (const auto& [o, v] : d.cycle->pattern) {
        doc += "at +" + o.to_string() + " -> " + v.to_string() + "\n";
      }
    }
    CHECK(sigfmt::parse(doc) == testutil::to_signal(d));
  }
}

TEST_CASE("multi-bit values") {
  UPSignal x = sigfmt::parse(
      "signal v1\nwidth 2\ninit 10\nat 0 -> 01\n"
      "cycle start 1 period 1/2\nat +0 -> 11\nat +1/4 -> 00\n");
  CHECK(x.width() == 2);
  CHECK(eval(x, Rat(-1)) == *BinaryVector::parse("10"));
  CHECK(eval(x, Rat(9, 8)) == *BinaryVector::parse("11"));
  CHECK(eval(x, Rat(11, 8)) == *BinaryVector::parse("00"));
  CHECK(sigfmt::parse(sigfmt::serialize(x)) == x);
}

TEST_CASE("chi expression for the example") {
  UPSignal x = sigfmt::parse_chi_expr(
      "chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) repeat start=3 period=5");
  CHECK(x == xstar());
}

TEST_CASE("chi expression basics") {
  UPSignal ray = sigfmt::parse_chi_expr("chi(-inf,0)");
  CHECK(ray.init() == BinaryVector(1, 1));
  REQUIRE(ray.transient().size() == 1);
  CHECK(ray.transient()[0].time == Rat(0));
  CHECK(ray.transient()[0].value == BinaryVector(1, 0));
  CHECK(!ray.cycle());

  CHECK(is_constant(sigfmt::parse_chi_expr("chi[0,1) ^ chi[0,1)")));
  CHECK(sigfmt::parse_chi_expr("chi[0,1) ^ chi[0,1)").init() ==
        BinaryVector(1, 0));

  UPSignal overlap = sigfmt::parse_chi_expr("chi[0,2) ^ chi[1,3)");
  // 1 on [0,1), 0 on [1,2), 1 on [2,3): xor of overlapping intervals
  CHECK(eval(overlap, Rat(1, 2)) == BinaryVector(1, 1));
  CHECK(eval(overlap, Rat(3, 2)) == BinaryVector(1, 0));
  CHECK(eval(overlap, Rat(5, 2)) == BinaryVector(1, 1));
  CHECK(eval(overlap, Rat(7, 2)) == BinaryVector(1, 0));
}

TEST_CASE("chi expression errors") {
  CHECK_THROWS_AS(sigfmt::parse_chi_expr(""), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse_chi_expr("chi[2,1)"), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse_chi_expr("chi[0,1"), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse_chi_expr("foo"), SyntaxError);
  CHECK_THROWS_AS(sigfmt::parse_chi_expr("chi[0,1) ^"), SyntaxError);
  CHECK_THROWS_AS(
      sigfmt::parse_chi_expr("chi[0,1) repeat start=0 period=0"), SyntaxError);
  // a term reaching past the declared window
  CHECK_THROWS_AS(
      sigfmt::parse_chi_expr("chi[0,1) ^ chi[4,6) repeat start=0 period=5"),
      SyntaxError);
  // continuation without a tail
  CHECK_THROWS_AS(sigfmt::parse_chi_expr("chi[0,1) ^ chi[2,3) ^ ..."),
                  MissingRepeatClause);
  // continuation with a tail is fine
  UPSignal x = sigfmt::parse_chi_expr(
      "chi(-inf,0) ^ chi[1,2) ^ chi[3,5) ^ chi[6,7) ^ ... "
      "repeat start=3 period=5");
  CHECK(x == xstar());
}

TEST_CASE("chi terms ending exactly at the window edge are allowed") {
  UPSignal x =
      sigfmt::parse_chi_expr("chi[0,1) ^ chi[3,4) repeat start=0 period=4");
  // pattern 1,0,0,1 over [0,4): at t=4 the next copy starts with 1
  CHECK(eval(x, Rat(4)) == BinaryVector(1, 1));
  CHECK(eval(x, Rat(5)) == BinaryVector(1, 0));
  CHECK(eval(x, Rat(7)) == BinaryVector(1, 1));
}

TEST_CASE("parser survives corrupted documents") {
  testutil::Rng rng(107);
  for (int i = 0; i < 300; ++i) {
    std::string doc = sigfmt::serialize(testutil::rand_signal(rng));
    int edits = static_cast<int>(testutil::rand_int(rng, 1, 6));
    for (int e = 0; e < edits && !doc.empty(); ++e) {
      auto pos = static_cast<std::size_t>(
          testutil::rand_int(rng, 0, static_cast<long long>(doc.size()) - 1));
      switch (testutil::rand_int(rng, 0, 2)) {
        case 0:
          doc[pos] = static_cast<char>(testutil::rand_int(rng, 0, 255));
          break;
        case 1:
          doc.erase(pos, 1);
          break;
        default:
          doc.insert(pos, 1,
                     static_cast<char>(testutil::rand_int(rng, 32, 126)));
      }
    }
    try {
      sigfmt::parse(doc);
    } catch (const Error&) {
    }
  }
}

TEST_CASE("parser survives random bytes") {
  testutil::Rng rng(79);
  for (int i = 0; i < 500; ++i) {
    std::string junk;
    int len = static_cast<int>(testutil::rand_int(rng, 0, 120));
    for (int j = 0; j < len; ++j) {
      junk.push_back(static_cast<char>(testutil::rand_int(rng, 0, 255)));
    }
    try {
      sigfmt::parse(junk);
    } catch (const Error&) {
      // any structured error is fine; crashing is not
    }
    try {
      sigfmt::parse_chi_expr(junk);
    } catch (const Error&) {
    }
  }
}
