#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revc/pretty.hpp"
#include "revc/syntax.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"

using namespace revc;

TEST_CASE("literals and list sugar") {
  CHECK(parse_term("tt")->tag == Tag::TT);
  TermPtr n = parse_term("nil");
  REQUIRE(n->tag == Tag::Inj1);
  CHECK(n->a->tag == Tag::Skip);

  TermPtr explicit_form = inj2(pair(tt(), inj2(pair(ff(), inj1(skip())))));
  CHECK(alpha_equal(parse_term("[tt, ff]"), explicit_form));
  CHECK(alpha_equal(parse_term("[tt]"), parse_term("tt :: nil")));
  CHECK(alpha_equal(parse_term("[tt]"), parse_term("inr <tt, inl skip>")));
  CHECK(alpha_equal(parse_term("tt :: ff :: nil"), parse_term("[tt, ff]")));
}

TEST_CASE("tuples nest to the right") {
  CHECK(alpha_equal(parse_term("<tt, ff, skip>"), pair(tt(), pair(ff(), skip()))));
  TypePtr t = parse_type("bit * bit * unit");
  CHECK(same_type(t, prod_type(bit_type(), prod_type(bit_type(), unit_type()))));
  CHECK(same_type(parse_type("bit -> bit -> bit"),
                  arrow_type(bit_type(), arrow_type(bit_type(), bit_type()))));
  CHECK(same_type(parse_type("[bit * bit]"), list_type(prod_type(bit_type(), bit_type()))));
  CHECK(same_type(parse_type("unit + bit"), sum_type(unit_type(), bit_type())));
}

TEST_CASE("binary primitives take a pair") {
  CHECK(alpha_equal(parse_term("and tt ff"), app(and_prim(), pair(tt(), ff()))));
  CHECK(alpha_equal(parse_term("xor tt ff"), xor_of(tt(), ff())));
  CHECK(alpha_equal(parse_term("not tt"), app(not_prim(), tt())));
}

TEST_CASE("let forms") {
  Name x("x");
  CHECK(alpha_equal(parse_term("let x = tt in x"), app(lam(x, var(x)), tt())));

  Name f("f");
  TermPtr expected = app(lam(f, var(f)), fix(lam(f, lam(x, app(var(f), var(x))))));
  CHECK(alpha_equal(parse_term("letrec f x = f x in f"), expected));

  TermPtr lu = parse_term("let * = skip in tt");
  REQUIRE(lu->tag == Tag::LetUnit);
  CHECK(lu->a->tag == Tag::Skip);

  // let <x, y> = M in N binds through projections
  TermPtr tuple = parse_term("let <x, y> = <tt, ff> in y");
  CHECK(tuple->tag == Tag::App);
}

TEST_CASE("lambda annotations") {
  TermPtr a = parse_term("\\x:bit. x");
  REQUIRE(a->tag == Tag::Lam);
  REQUIRE(a->annot);
  CHECK(same_type(a->annot, bit_type()));
  CHECK(alpha_equal(a, parse_term("\\(x : bit). x")));
  CHECK_FALSE(parse_term("\\x. x")->annot);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("def main : bit\ndef main = (tt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.loc.line == 2);
    CHECK(e.loc.column > 0);
  }
  CHECK_THROWS_AS(parse_term("#1"), ParseError);
  CHECK_THROWS_AS(parse_term("<tt,"), ParseError);
  CHECK_THROWS_AS(parse_type("bit *"), ParseError);
}

TEST_CASE("substitution avoids capture") {
  Name x("x"), y("y");
  TermPtr t = lam(y, var(x));
  TermPtr r = subst(t, x, var(y));
  REQUIRE(r->tag == Tag::Lam);
  CHECK(r->name != y);
  CHECK(r->a->tag == Tag::Var);
  CHECK(r->a->name == y);
  CHECK(alpha_equal(lam(x, var(x)), lam(y, var(y))));
  CHECK_FALSE(alpha_equal(lam(x, var(x)), lam(x, var(y))));
}

TEST_CASE("pretty printing") {
  CHECK(pretty(tt()) == "tt");
  CHECK(pretty(inj1(skip())) == "nil");
  CHECK(pretty(parse_term("[tt, ff]")) == "[tt, ff]");
  CHECK(pretty(parse_term("and tt ff")) == "and tt ff");
  CHECK(pretty(wire_ref(3)) == "#3");
}

TEST_CASE("round trip on the corpus") {
  for (const auto& name : testing::all_corpus()) {
    CAPTURE(name);
    SourceProgram p = parse_program(testing::read_corpus(name));
    SourceProgram q = parse_program(pretty(p));
    REQUIRE(p.definitions.size() == q.definitions.size());
    for (std::size_t i = 0; i < p.definitions.size(); ++i) {
      CHECK(p.definitions[i].name == q.definitions[i].name);
      CHECK(same_type(p.definitions[i].type, q.definitions[i].type));
      CHECK(alpha_equal(p.definitions[i].body, q.definitions[i].body));
    }
  }
}

TEST_CASE("round trip on random elaborated terms") {
  testing::TermGen gen(17);
  for (int i = 0; i < 300; ++i) {
    auto s = gen.closed();
    std::string text = pretty(s.term);
    CAPTURE(text);
    CHECK(alpha_equal(parse_term(text), s.term));
  }
}

TEST_CASE("first-order types") {
  CHECK(first_order(bit_type()));
  CHECK_FALSE(first_order(arrow_type(bit_type(), bit_type())));
  CHECK(first_order(list_type(prod_type(bit_type(), bit_type()))));
  CHECK_FALSE(first_order(unit_type()));
  CHECK_FALSE(first_order(sum_type(bit_type(), bit_type())));
  CHECK_FALSE(first_order(list_type(unit_type())));
  CHECK_FALSE(first_order(prod_type(bit_type(), arrow_type(bit_type(), bit_type()))));

  // closed under products and lists
  std::vector<TypePtr> fo = {bit_type(), list_type(bit_type()), prod_type(bit_type(), bit_type())};
  for (const auto& a : fo) {
    for (const auto& b : fo) CHECK(first_order(prod_type(a, b)));
    CHECK(first_order(list_type(a)));
  }
}

TEST_CASE("programs") {
  SourceProgram p = parse_program(testing::read_corpus("bit_adder"));
  CHECK(p.entry == Name("main"));
  REQUIRE(p.find(Name("bit_adder")));
  CHECK(p.resolve_entry()->closed());

  // a self-reference becomes a fixpoint
  SourceProgram m = parse_program(testing::read_corpus("map"));
  CHECK(m.find(Name("map"))->body->tag == Tag::Fix);

  CHECK_THROWS_AS(parse_program("def f : bit\ndef f = tt\ndef f : bit\ndef f = ff"), ParseError);
}
