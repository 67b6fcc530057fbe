#include <doctest.h>

#include <sstream>

#include "stlopt/error.hpp"
#include "stlopt/harness/generators.hpp"
#include "stlopt/stl/parser.hpp"
#include "stlopt/stl/semantics.hpp"
#include "support/brute_force.hpp"

using namespace stlopt;
using namespace stlopt::stl;

namespace {

Trace single(std::vector<double> xs, double dt = 1.0) { return Trace({"x"}, 0.0, dt, std::move(xs)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("interval rejects empty and negative ranges") {
  CHECK_NOTHROW(Interval(0, 1));
  CHECK_THROWS_WITH_AS(Interval(2, 1), "interval upper bound must exceed lower bound", Error);
  CHECK_THROWS_AS(Interval(1, 1), Error);
  CHECK_THROWS_AS(Interval(-1, 1), Error);
  CHECK(code_of([] { Interval(3, 2); }) == ErrorCode::InvalidInterval);
}

TEST_CASE("and/or need two arguments") {
  auto p = Formula::predicate("x", Comparison::Greater, 0);
  CHECK_THROWS_AS(Formula::conjunction({p}), Error);
  CHECK_THROWS_AS(Formula::disjunction({}), Error);
}

TEST_CASE("parse single predicate") {
  const Formula f = parse_formula("x > 0.4");
  REQUIRE(f.as<Predicate>() != nullptr);
  CHECK(f.as<Predicate>()->channel == "x");
  CHECK(f.as<Predicate>()->comparison == Comparison::Greater);
  CHECK(f.as<Predicate>()->threshold == 0.4);
  CHECK(f == Formula::predicate("x", Comparison::Greater, 0.4));
}

TEST_CASE("parse region-visit shape") {
  const Formula f = parse_formula("F[3,4](x > 0.5 & x < 0.6 & y > 0.2 & y < 0.4)");
  const auto* ev = f.as<Eventually>();
  REQUIRE(ev != nullptr);
  CHECK(ev->interval == Interval(3, 4));
  const auto* c = ev->arg.as<Conjunction>();
  REQUIRE(c != nullptr);
  REQUIRE(c->args.size() == 4);
  CHECK(c->args[1] == Formula::predicate("x", Comparison::Less, 0.6));
  CHECK(c->args[3] == Formula::predicate("y", Comparison::Less, 0.4));
}

TEST_CASE("parse precedence and until") {
  const auto p = [](const char* ch, double th) { return Formula::predicate(ch, Comparison::Greater, th); };
  CHECK(parse_formula("!x > 0 & y > 1 | x > 2") ==
        Formula::disjunction({Formula::conjunction({Formula::negation(p("x", 0)), p("y", 1)}), p("x", 2)}));
  CHECK(parse_formula("(x > 0 U[0,2] y > 0)") == Formula::until(Interval(0, 2), p("x", 0), p("y", 0)));
  CHECK(parse_formula("x >= -1.5e-1") == Formula::predicate("x", Comparison::GreaterEqual, -0.15));
  // G and F are plain identifiers unless an interval follows.
  CHECK(parse_formula("G > 1") == Formula::predicate("G", Comparison::Greater, 1));
}

TEST_CASE("parse errors carry position") {
  try {
    parse_formula("G[2,1](x > 0)");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::InvalidInterval);
    CHECK(std::string(e.what()).find("interval upper bound must exceed lower bound") != std::string::npos);
    CHECK(e.line() == 1);
    CHECK(e.column() == 2);
  }
  try {
    parse_formula("x > 0 &\n  & y > 1");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("x >"), ParseError);
  CHECK_THROWS_AS(parse_formula("x > 1 )"), ParseError);
  CHECK_THROWS_AS(parse_formula("F[1](x > 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("G[-1,2](x > 0)"), ParseError);
}

TEST_CASE("format") {
  CHECK(format_formula(Formula::predicate("x", Comparison::Greater, 0.4)) == "x > 0.4");
  CHECK(format_formula(Formula::negation(Formula::predicate("x", Comparison::Greater, 0))) == "!(x > 0)");
  CHECK(format_formula(parse_formula("(x<=1 U[0,2.5] y>=2)")) == "(x <= 1 U[0,2.5] y >= 2)");
}

TEST_CASE("round trip over generated formulas") {
  optim::Rng rng(7);
  harness::FormulaShape shape;
  shape.max_depth = 5;
  shape.grid_thresholds = true;
  shape.dt = 0.5;
  for (int i = 0; i < 200; ++i) {
    const Formula f = harness::random_formula(rng, shape);
    const std::string text = format_formula(f);
    CAPTURE(text);
    CHECK(parse_formula(text) == f);
  }
}

TEST_CASE("round trip keeps arbitrary thresholds exactly") {
  optim::Rng rng(8);
  harness::FormulaShape shape;
  shape.max_depth = 5;
  for (int i = 0; i < 200; ++i) {
    const Formula f = harness::random_formula(rng, shape);
    CHECK(parse_formula(format_formula(f)) == f);
  }
}

TEST_CASE("horizon") {
  CHECK(horizon(parse_formula("x > 0")) == 0.0);
  CHECK(horizon(parse_formula("G[1,2](F[0,3](x>0))")) == 5.0);
  CHECK(horizon(parse_formula("(x > 0 U[1,2] F[0,4](y > 0))")) == 6.0);
  CHECK(horizon(parse_formula("F[3,4](x>0) & F[8,10](x>0) & F[13,15](x>0)")) == 15.0);

  optim::Rng rng(3);
  harness::FormulaShape shape;
  for (int i = 0; i < 200; ++i) {
    const Formula g = harness::random_formula(rng, shape);
    const Formula wrapped = Formula::globally(Interval(0, 1 + static_cast<double>(rng.below(3))), g);
    CHECK(horizon(wrapped) >= horizon(g));
  }
}

TEST_CASE("window indices") {
  CHECK(window_indices(single({0, 0, 0, 0, 0}), 0, Interval(3, 4)) == IndexRange{3, 4});
  CHECK(window_indices(single(std::vector<double>(8, 0.0), 0.5), 1, Interval(1, 2)) == IndexRange{4, 6});
  CHECK(code_of([] { window_indices(single({0, 0, 0}, 5), 0, Interval(1, 2)); }) == ErrorCode::EmptyWindow);
  CHECK(code_of([] { window_indices(single({0, 0, 0}), 0, Interval(1, 3)); }) == ErrorCode::InsufficientHorizon);
}

TEST_CASE("satisfies examples") {
  CHECK(satisfies(parse_formula("x > 0.4"), single({0.5}), 0));
  CHECK(satisfies(parse_formula("G[0,2](x > 0.4)"), single({0.5, 0.45, 0.6}), 0));
  CHECK_FALSE(satisfies(parse_formula("G[0,2](x > 0.4)"), single({0.0, 0.45, 0.6}), 0));
  CHECK(satisfies(parse_formula("x >= 0.5"), single({0.5}), 0));
  CHECK_FALSE(satisfies(parse_formula("x > 0.5"), single({0.5}), 0));

  const Trace xy({"x", "y"}, 0, 1, {1, -1, 1, -1, 1, 1});
  CHECK(satisfies(parse_formula("(x > 0 U[0,2] y > 0)"), xy, 0));
  const Trace broken({"x", "y"}, 0, 1, {1, -1, -1, -1, 1, 1});
  CHECK_FALSE(satisfies(parse_formula("(x > 0 U[0,2] y > 0)"), broken, 0));
}

TEST_CASE("satisfies errors") {
  CHECK(code_of([] { satisfies(parse_formula("F[0,3](x > 0)"), single({1, 1, 1}), 0); }) ==
        ErrorCode::InsufficientHorizon);
  CHECK(code_of([] { satisfies(parse_formula("z > 0"), single({1}), 0); }) == ErrorCode::UnknownChannel);
  CHECK(code_of([] { satisfies(parse_formula("x > 0"), single({1, 1}), 0.5); }) == ErrorCode::UnalignedTime);
  CHECK(code_of([] { satisfies(parse_formula("x > 0"), single({1, 1}), 2); }) == ErrorCode::InsufficientHorizon);
}

TEST_CASE("boolean semantics match brute force, De Morgan holds") {
  optim::Rng rng(11);
  harness::FormulaShape shape;
  shape.max_depth = 4;
  for (int i = 0; i < 300; ++i) {
    const auto inst = harness::random_instance(rng, shape);
    const std::size_t spare = inst.trace.size() - 1 - static_cast<std::size_t>(std::llround(horizon(inst.formula)));
    for (std::size_t k = 0; k <= spare; ++k) {
      CHECK(satisfies_at(inst.formula, inst.trace, k) == brute::holds(inst.formula, inst.trace, inst.trace.time(k)));
    }
    const auto p = harness::random_formula(rng, shape);
    const auto q = harness::random_formula(rng, shape);
    const Formula lhs = Formula::negation(Formula::conjunction({p, q}));
    const Formula rhs = Formula::disjunction({Formula::negation(p), Formula::negation(q)});
    const auto steps = static_cast<std::size_t>(std::llround(horizon(lhs)));
    const Trace x = harness::random_trace(rng, {"x", "y"}, 1.0, steps + 1);
    CHECK(satisfies(lhs, x, 0) == satisfies(rhs, x, 0));
  }
}

TEST_CASE("trace construction and csv") {
  CHECK_THROWS_AS(Trace({"x"}, 0, 0, {1}), Error);
  CHECK_THROWS_AS(Trace({"x"}, 0, 1, {}), Error);
  CHECK_THROWS_AS(Trace({"x", "y"}, 0, 1, {1, 2, 3}), Error);

  std::istringstream ok("time,x,y\n0,1,2\n0.5,3,4\n1.0,5,6\n");
  const Trace t = read_trace_csv(ok);
  CHECK(t.size() == 3);
  CHECK(t.dt() == doctest::Approx(0.5));
  CHECK(t.at(2, t.channel_index("y")) == 6);
  CHECK(t.index_of(1.0) == 2);

  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream back(out.str());
  const Trace t2 = read_trace_csv(back);
  CHECK(t2.size() == 3);
  CHECK(t2.at(1, 0) == 3);

  std::istringstream uneven("time,x\n0,1\n1,2\n3,3\n");
  CHECK_THROWS_AS(read_trace_csv(uneven), Error);
  std::istringstream backwards("time,x\n1,1\n0,2\n");
  CHECK_THROWS_AS(read_trace_csv(backwards), Error);
  std::istringstream header("t,x\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(header), Error);
  std::istringstream ragged("time,x\n0,1\n1\n");
  CHECK_THROWS_AS(read_trace_csv(ragged), Error);
}
