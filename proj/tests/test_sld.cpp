#include <gtest/gtest.h>

#include "occurlab/corpus.hpp"
#include "occurlab/sld.hpp"
#include "support.hpp"

using namespace occurlab;
using namespace occurlab::testing;

namespace {

Term query_term(const Query& q) {
  std::vector<Term> ts;
  for (const Atom& a : q) ts.push_back(a.as_term());
  return Term::compound("q", ts);
}

DeriveOptions with(SelectionRule rule, std::size_t depth, Engine engine = Engine::Mma) {
  DeriveOptions o;
  o.rule = std::move(rule);
  o.depth = depth;
  o.engine = engine;
  return o;
}

}  // namespace

TEST(SelectionRule, Builtins) {
  const Query q = parse_query("p(a), q(b), r(c)");
  EXPECT_EQ(SelectionRule::leftmost().select(q, 4, 9), 0u);
  EXPECT_EQ(SelectionRule::rightmost().select(q, 4, 9), 2u);
  EXPECT_EQ(SelectionRule::round_robin().select(q, 4, 9), 1u);
  const auto r = SelectionRule::random(5);
  for (std::size_t node = 0; node < 50; ++node) {
    const std::size_t i = r.select(q, 0, node);
    EXPECT_LT(i, q.size());
    EXPECT_EQ(i, SelectionRule::random(5).select(q, 3, node));
  }
  EXPECT_EQ(SelectionRule::from_name("random:12").name(), "random:12");
  EXPECT_THROW(SelectionRule::from_name("middle"), std::invalid_argument);
  EXPECT_THROW(SelectionRule::leftmost().select(Query{}, 0, 0), std::invalid_argument);
}

TEST(ResolutionStep, QinWithClauseTwo) {
  NameSupply supply;
  const Program p = nqueens_program(supply);
  const Query q = parse_query("pqs(s(0), [A], B, C)");
  const StepResult r = resolution_step(q, SelectionRule::leftmost(), 1, p, supply);
  ASSERT_TRUE(std::holds_alternative<DerivationNode>(r));
  const Query& child = std::get<DerivationNode>(r).query;
  ASSERT_EQ(child.size(), 2u);
  // Hand simulation: I = 0, Cs = [A], Us = B, C = [_|Ds].
  const Query expected = parse_query("pqs(0, [A], [W|B], Ds), pq(s(0), [A], B, Ds)");
  EXPECT_TRUE(equal_up_to_renaming(query_term(child), query_term(expected)));
}

TEST(ResolutionStep, FactGivesEmptyQuery) {
  NameSupply supply;
  const Program p = nqueens_program(supply);
  const StepResult r = resolution_step(parse_query("pqs(0, X, Y, Z)"), SelectionRule::leftmost(), 0, p, supply);
  ASSERT_TRUE(std::holds_alternative<DerivationNode>(r));
  EXPECT_TRUE(std::get<DerivationNode>(r).query.empty());
  EXPECT_EQ(std::get<DerivationNode>(r).status, NodeStatus::Success);
}

TEST(ResolutionStep, ClashAndNoMatchingHead) {
  NameSupply supply;
  const Program p = nqueens_program(supply);
  const Query q = parse_query("pq(0, [], [], [])");
  const StepResult fail = resolution_step(q, SelectionRule::leftmost(), 2, p, supply);
  ASSERT_TRUE(std::holds_alternative<Branch>(fail));
  EXPECT_EQ(std::get<Branch>(fail).outcome, UnifyOutcome::Clash);
  EXPECT_TRUE(std::holds_alternative<NoMatchingHead>(resolution_step(q, SelectionRule::leftmost(), 0, p, supply)));
}

TEST(ResolutionStep, BodySplicedAtSelectedPosition) {
  NameSupply supply;
  const Program p = parse_program("b :- c, d.", supply);
  const StepResult r = resolution_step(parse_query("a, b, e"), SelectionRule::round_robin(), 0, p, supply);
  EXPECT_TRUE(std::holds_alternative<NoMatchingHead>(r));  // depth 0 selects a
  const Program q = parse_program("a :- c, d.", supply);
  const StepResult ok = resolution_step(parse_query("a, b, e"), SelectionRule::leftmost(), 0, q, supply);
  ASSERT_TRUE(std::holds_alternative<DerivationNode>(ok));
  EXPECT_EQ(std::get<DerivationNode>(ok).query, parse_query("c, d, b, e"));
}

TEST(Derive, QinOneSucceeds) {
  const DerivationTree t = derive(query_qin(1), nqueens_program());
  EXPECT_TRUE(t.has_success());
}

TEST(Derive, QinTwoFailsWithinBound) {
  const DerivationTree t = derive(query_qin(2), nqueens_program(), with(SelectionRule::leftmost(), 30));
  EXPECT_FALSE(t.has_success());
  EXPECT_TRUE(t.finitely_failed());
}

TEST(Derive, FactIsDepthOneSuccess) {
  const DerivationTree t = derive(parse_query("p(a)"), parse_program("p(a). p(b)."));
  ASSERT_EQ(t.nodes.size(), 2u);
  EXPECT_EQ(t.nodes[1].status, NodeStatus::Success);
  EXPECT_EQ(t.nodes[1].depth, 1u);
  EXPECT_EQ(t.nodes[0].branches.size(), 2u);
  EXPECT_EQ(t.nodes[0].branches[1].outcome, UnifyOutcome::Clash);
}

TEST(Derive, DepthBoundLeavesOpenNodes) {
  const DerivationTree t = derive(parse_query("nat(X)"), parse_program("nat(0). nat(s(X)) :- nat(X)."),
                                  with(SelectionRule::leftmost(), 5));
  EXPECT_TRUE(t.has_success());
  EXPECT_TRUE(t.truncated());
  for (const auto& n : t.nodes) EXPECT_LE(n.depth, 5u);
}

TEST(Derive, SingleBranch) {
  DeriveOptions o = with(SelectionRule::leftmost(), 30);
  o.single_branch = true;
  const DerivationTree t = derive(query_qin(1), nqueens_program(), o);
  for (const auto& n : t.nodes) {
    std::size_t children = 0;
    for (const auto& b : n.branches) children += b.child.has_value();
    EXPECT_LE(children, 1u);
  }
}

TEST(AvailableUnifications, DepthOneQin) {
  const DerivationTree t = derive(query_qin(1), nqueens_program(), with(SelectionRule::leftmost(), 1));
  const auto au = available_unifications(t);
  ASSERT_EQ(au.size(), 2u);
  for (const auto& u : au) {
    EXPECT_EQ(u.goal.predicate, u.head.predicate);
    const auto gv = vars_of(u.goal);
    for (const Variable& v : vars_of(u.head)) EXPECT_EQ(std::count(gv.begin(), gv.end(), v), 0);
  }
}

TEST(AvailableUnifications, ClauseThreeWheneverPqSelected) {
  const DerivationTree t = derive(query_qin(2), nqueens_program(), with(SelectionRule::rightmost(), 12));
  std::size_t pq_nodes = 0;
  for (const auto& n : t.nodes) {
    if (!n.selected || n.query[*n.selected].predicate != "pq") continue;
    ++pq_nodes;
    bool has3 = false;
    for (const auto& b : n.branches) has3 = has3 || b.unification.clause_index == 2;
    EXPECT_TRUE(has3);
  }
  EXPECT_GT(pq_nodes, 0u);
}

TEST(AvailableUnifications, LinearQinTreesAreNsto) {
  UnificationOracle oracle;
  const DerivationTree t = derive(query_qin(2), nqueens_program());
  for (const auto& u : available_unifications(t)) EXPECT_EQ(oracle.nsto(u.eqs), Verdict::Yes);
}

TEST(Invariants, LinearQinUnderEveryRule) {
  UnificationOracle oracle;
  for (const auto& rule : {SelectionRule::leftmost(), SelectionRule::rightmost(), SelectionRule::round_robin(),
                           SelectionRule::random(3)}) {
    const DerivationTree t = derive(query_qin(3), nqueens_program(), with(rule, 30));
    const InvariantReport r = check_derivation_invariants(t, oracle);
    EXPECT_TRUE(r.precondition_ok);
    EXPECT_EQ(r.all_atoms_linear, true) << rule.name();
    EXPECT_EQ(r.first_args_ground, true) << rule.name();
    EXPECT_EQ(r.all_available_nsto, Verdict::Yes) << rule.name();
    EXPECT_EQ(r.all_have_ocf_run, Verdict::Yes) << rule.name();
  }
}

TEST(Invariants, NonLinearQuery) {
  const Query q = parse_query("pqs(s(0), L, [L|_], _)");
  const DerivationTree t = derive(q, nqueens_program());
  const InvariantReport r = check_derivation_invariants(t);
  EXPECT_TRUE(r.precondition_ok);
  EXPECT_EQ(r.all_atoms_linear, false);
  EXPECT_EQ(r.first_args_ground, true);
  EXPECT_EQ(r.all_available_nsto, Verdict::No);
  EXPECT_EQ(r.all_have_ocf_run, Verdict::Yes);
}

TEST(Invariants, PreconditionViolation) {
  const DerivationTree t = derive(parse_query("pqs(N, L, A, B)"), nqueens_program(), with(SelectionRule::leftmost(), 4));
  const InvariantReport r = check_derivation_invariants(t);
  EXPECT_FALSE(r.precondition_ok);
  EXPECT_FALSE(r.all_atoms_linear.has_value());
  EXPECT_FALSE(r.first_args_ground.has_value());
  EXPECT_EQ(r.all_available_nsto, Verdict::Unknown);
  EXPECT_EQ(r.all_have_ocf_run, Verdict::Unknown);
}

TEST(Engines, SameStructureOnQin) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const DerivationTree a = derive(query_qin(n), nqueens_program(), with(SelectionRule::leftmost(), 30, Engine::Mma));
    const DerivationTree b =
        derive(query_qin(n), nqueens_program(), with(SelectionRule::leftmost(), 30, Engine::MmaMinus));
    EXPECT_TRUE(same_structure(a, b)) << n;
  }
}

TEST(Engines, RationalOnlyWithoutOccurCheck) {
  const DerivationTree a = derive(parse_query("p(X, f(X))"), parse_program("p(Y, Y)."), with(SelectionRule::leftmost(), 3));
  const DerivationTree b = derive(parse_query("p(X, f(X))"), parse_program("p(Y, Y)."),
                                  with(SelectionRule::leftmost(), 3, Engine::MmaMinus));
  EXPECT_EQ(a.nodes[0].branches.at(0).outcome, UnifyOutcome::OccurCheck);
  EXPECT_EQ(b.nodes[0].branches.at(0).outcome, UnifyOutcome::RationalOnly);
  EXPECT_FALSE(same_structure(a, b));
}

TEST(Derive, Deterministic) {
  const auto o = with(SelectionRule::random(9), 20);
  const DerivationTree a = derive(query_qin(3), nqueens_program(), o);
  const DerivationTree b = derive(query_qin(3), nqueens_program(), o);
  ASSERT_EQ(a.nodes.size(), b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) EXPECT_EQ(a.nodes[i].query, b.nodes[i].query);
}
