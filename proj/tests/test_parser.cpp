#include <gtest/gtest.h>

#include <random>

#include "occurlab/corpus.hpp"
#include "occurlab/differential.hpp"
#include "support.hpp"

using namespace occurlab;
using namespace occurlab::testing;

TEST(ParseProgram, NqueensListing) {
  const Program p = parse_program(nqueens_source());
  ASSERT_EQ(p.clauses.size(), 4u);
  EXPECT_EQ(p.clauses[0].head.predicate, "pqs");
  EXPECT_EQ(p.clauses[1].head.predicate, "pqs");
  EXPECT_EQ(p.clauses[2].head.predicate, "pq");
  EXPECT_EQ(p.clauses[3].head.predicate, "pq");
  EXPECT_EQ(p.clauses[1].body.size(), 2u);
}

TEST(ParseProgram, Fact) {
  const Program p = parse_program("p(a).");
  ASSERT_EQ(p.clauses.size(), 1u);
  EXPECT_TRUE(p.clauses[0].is_fact());
  EXPECT_EQ(p.clauses[0].head, A("p(a)"));
}

TEST(ParseProgram, UnderscoresAreDistinct) {
  const Program p = parse_program("p(X) :- q(X,_), r(_).");
  ASSERT_EQ(p.clauses.size(), 1u);
  const Clause& c = p.clauses[0];
  ASSERT_EQ(c.body.size(), 2u);
  const Term u1 = c.body[0].args[1];
  const Term u2 = c.body[1].args[0];
  ASSERT_TRUE(u1.is_variable());
  ASSERT_TRUE(u2.is_variable());
  EXPECT_NE(u1.var(), u2.var());
  const Term whole = Term::compound("c", {c.head.as_term(), c.body[0].as_term(), c.body[1].as_term()});
  EXPECT_EQ(count_occurrences(u1.var(), whole), 1u);
  EXPECT_EQ(count_occurrences(u2.var(), whole), 1u);
}

TEST(ParseProgram, CommentsAndQuotedAtoms) {
  const Program p = parse_program("% header\np('hello world', X). % trailing\nq :- p(a, _).\n");
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_EQ(p.clauses[0].head.args[0], Term::constant("hello world"));
  EXPECT_EQ(p.clauses[1].head.arity(), 0u);
}

TEST(ParseProgram, DecimalLiteralsExpand) {
  EXPECT_EQ(parse_term("3"), numeral(3));
  EXPECT_EQ(render(numeral(2)), "s(s(0))");
}

TEST(ParseErrors, LineAndColumn) {
  try {
    parse_program("p(a).\nq(b :- r.");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(ParseErrors, ArityConflictIsDistinct) {
  EXPECT_THROW(parse_program("p(a).\np(a, b)."), ArityConflict);
  EXPECT_THROW(parse_equations("f(X) = f(a, b)"), ArityConflict);
  EXPECT_THROW(parse_program("p(f(a)) :- q(f(a, b))."), ArityConflict);
  try {
    parse_program("p(a. ");
  } catch (const ArityConflict&) {
    FAIL() << "syntax error reported as arity conflict";
  } catch (const ParseError&) {
  }
}

TEST(ParseErrors, GeneratedNamesRejectedByDefault) {
  EXPECT_THROW(parse_term("f(_12)"), ParseError);
  NameSupply supply;
  const Term t = parse_term("f(_12)", supply, ParseOptions{true});
  EXPECT_TRUE(t.arg(0).is_variable());
  // Reserved: fresh names never collide with it.
  for (int i = 0; i < 30; ++i) EXPECT_NE(supply.fresh().name, "_12");
}

TEST(ParseEquations, WorkedSets) {
  const EquationSet a = E("X = f(X), Y = X");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], (Equation{T("X"), T("f(X)")}));
  EXPECT_EQ(a[1], (Equation{T("Y"), T("X")}));
  const EquationSet b = E("X = f(Y), Y = f(X)");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1], (Equation{T("Y"), T("f(X)")}));
  EXPECT_TRUE(E("").empty());
  EXPECT_TRUE(E("  ").empty());
}

TEST(ParseQuery, OptionalFinalPeriod) {
  EXPECT_EQ(parse_query("p(X), q(Y)."), parse_query("p(X), q(Y)"));
  EXPECT_EQ(parse_query("p(X), q(Y)").size(), 2u);
}

TEST(Render, Examples) {
  EXPECT_EQ(render(std::span<const Equation>(E("X=f(X)"))), "X = f(X)");
  EXPECT_EQ(render(std::span<const Equation>(E("X=a"))), "X = a");
  EXPECT_EQ(render(T("[a,b|T]")), "[a,b|T]");
  EXPECT_EQ(render(T("[]")), "[]");
  EXPECT_EQ(render(T("'hello world'")), "'hello world'");
  EXPECT_EQ(render(Substitution{{Variable{"X"}, T("a")}, {Variable{"Y"}, T("f(a)")}}), "{X/a, Y/f(a)}");
  EXPECT_EQ(render(parse_program("p(X) :- q(X), r.").clauses[0]), "p(X) :- q(X), r.");
}

TEST(Render, QinRoundTrip) {
  const Query q = query_qin(2);
  const std::string text = render(std::span<const Atom>(q));
  EXPECT_EQ(text, "pqs(s(s(0)), [V1,V2], A, B)");
  const Query back = parse_query(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_TRUE(equal_up_to_renaming(back[0].as_term(), q[0].as_term()));
}

TEST(Render, ProgramRoundTrip) {
  NameSupply supply;
  const Program p = nqueens_program(supply);
  const std::string text = render(p);
  NameSupply again;
  const Program back = parse_program(text, again, ParseOptions{true});
  ASSERT_EQ(back.clauses.size(), p.clauses.size());
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    EXPECT_EQ(back.clauses[i], p.clauses[i]);
  }
  EXPECT_EQ(render(back), text);
}

TEST(Render, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const EquationSet e = random_equation_set(rng);
    const std::string text = render(std::span<const Equation>(e));
    EXPECT_EQ(parse_equations(text), e) << text;
  }
}
