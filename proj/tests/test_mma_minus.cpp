#include <gtest/gtest.h>

#include <random>

#include "occurlab/corpus.hpp"
#include "occurlab/differential.hpp"
#include "occurlab/iterms.hpp"
#include "occurlab/mma_minus.hpp"
#include "support.hpp"

using namespace occurlab;
using namespace occurlab::testing;

namespace {

const Variable X{"X"};

EquationSet counterexample() {
  NameSupply supply;
  const Atom goal{"pq", {numeral(1), T("L"), T("[L|U]"), T("W")}};
  const Atom head = rename_apart(nqueens_program(supply).clauses.at(2).head, {}, supply).value;
  return {{goal.as_term(), head.as_term()}};
}

Action eliminate(std::size_t pos, const std::string& t) { return {ActionKind::Eliminate, pos, X, T(t), {}}; }
Action decompose(std::size_t pos) { return {ActionKind::Decompose, pos, {}, {}, {}}; }

// (5') with equation `pos` (X = t) replacing the left side of equation `target`.
Action partial_lhs(std::size_t pos, const std::string& t, std::size_t target) {
  return {ActionKind::PartialEliminate, pos, X, T(t), {Occurrence{target, false, {}}}};
}

}  // namespace

TEST(SemiSolved, WorkedExamples) {
  EXPECT_TRUE(is_semi_solved(E("X = f(X), Y = X")));
  EXPECT_TRUE(is_semi_solved(E("X = f(Y), Y = f(X)")));
  EXPECT_FALSE(is_semi_solved(E("X = f(Y), Y = f(X), X = a")));
  EXPECT_FALSE(is_semi_solved(E("X = a, Y = f(X)")));
}

TEST(SemiSolved, Edges) {
  EXPECT_TRUE(is_semi_solved(EquationSet{}));
  EXPECT_FALSE(is_semi_solved(E("X = X")));
  EXPECT_FALSE(is_semi_solved(E("f(X) = a")));
  EXPECT_TRUE(is_semi_solved(E("X = a, Y = b")));
  const auto rel = succ_relation(E("X = f(Y), Y = g(Z)"));
  ASSERT_TRUE(rel);
  EXPECT_TRUE(rel->reaches(X, Variable{"Y"}));
  EXPECT_FALSE(rel->reaches(Variable{"Y"}, X));
  // Edges only lead to left-hand side variables.
  EXPECT_FALSE(rel->reaches(X, Variable{"Z"}));
  EXPECT_FALSE(succ_relation(E("f(X) = a")));
}

TEST(ApplicableMinus, IsolatedCycleHasNoAction) {
  EXPECT_TRUE(applicable_actions_minus({E("X = f(X)")}, MinusMode::Unrestricted).empty());
}

TEST(ApplicableMinus, LoopExampleEliminations) {
  const auto as = applicable_actions_minus({E("X = f(X), X = f(f(X))")}, MinusMode::Unrestricted);
  int elim = 0;
  for (const Action& a : as) {
    EXPECT_NE(a.kind, ActionKind::PartialEliminate);  // requirement (d)
    EXPECT_NE(a.kind, ActionKind::OccurHalt);
    elim += a.kind == ActionKind::Eliminate;
  }
  EXPECT_EQ(elim, 2);
}

TEST(ApplicableMinus, PartialAfterEliminate) {
  MmaMinusState s{E("X = f(X), X = f(f(X))"), {X}};
  const auto as = applicable_actions_minus(s, MinusMode::Restricted);
  std::vector<Action> partial;
  for (const Action& a : as) {
    if (a.kind == ActionKind::PartialEliminate) partial.push_back(a);
    EXPECT_NE(a.kind, ActionKind::Eliminate);  // not repeated on X in restricted mode
  }
  // Only X = f(X) onto the left side of X = f(f(X)); the other direction grows the term.
  ASSERT_EQ(partial.size(), 1u);
  EXPECT_EQ(partial[0], partial_lhs(0, "f(X)", 1));
  const auto un = applicable_actions_minus(s, MinusMode::Unrestricted);
  EXPECT_TRUE(std::find(un.begin(), un.end(), partial_lhs(1, "f(f(X))", 0)) != un.end());
}

TEST(StepMinus, LoopSchedules) {
  const EquationSet e = E("X = f(X), X = f(f(X))");
  MmaMinusState s{e};
  s = step_minus(s, eliminate(0, "f(X)"));
  EXPECT_EQ(s.eqs, E("X = f(X), f(X) = f(f(f(X)))"));
  EXPECT_EQ(s.eliminated.count(X), 1u);
  s = step_minus(s, decompose(1));
  EXPECT_EQ(s.eqs, e);

  // Small side onto the lhs, then decompose.
  MmaMinusState a = step_minus(s, partial_lhs(0, "f(X)", 1));
  EXPECT_EQ(a.eqs, E("X = f(X), f(X) = f(f(X))"));
  a = step_minus(a, decompose(1));
  EXPECT_EQ(a.eqs, E("X = f(X), X = f(X)"));

  // Large side onto the lhs, then decompose: E with the first equation reversed.
  MmaMinusState b = step_minus(s, partial_lhs(1, "f(f(X))", 0));
  EXPECT_EQ(b.eqs, E("f(f(X)) = f(X), X = f(f(X))"));
  b = step_minus(b, decompose(0));
  EXPECT_EQ(b.eqs, E("f(X) = X, X = f(f(X))"));
}

TEST(StepMinus, RequirementD) {
  const MmaMinusState s{E("X = f(X), X = f(f(X))")};
  EXPECT_THROW(step_minus(s, partial_lhs(0, "f(X)", 1)), std::invalid_argument);
}

TEST(StepMinus, RejectsBadSelections) {
  const MmaMinusState s{E("X = f(X), X = f(f(X))"), {X}};
  // Empty selection.
  EXPECT_THROW(step_minus(s, Action{ActionKind::PartialEliminate, 0, X, T("f(X)"), {}}), std::invalid_argument);
  // Occurrence inside its own equation.
  EXPECT_THROW(step_minus(s, partial_lhs(0, "f(X)", 0)), std::invalid_argument);
  // Path that does not point at X.
  EXPECT_THROW(step_minus(s, Action{ActionKind::PartialEliminate, 0, X, T("f(X)"), {Occurrence{1, true, {}}}}),
               std::invalid_argument);
  // Growing replacement is not allowed in restricted mode.
  EXPECT_THROW(step_minus(s, partial_lhs(1, "f(f(X))", 0), MinusMode::Restricted), std::invalid_argument);
  // Arbitrary nonempty subsets are allowed in unrestricted mode.
  const auto r = step_minus(s, Action{ActionKind::PartialEliminate, 0, X, T("f(X)"), {Occurrence{1, true, {0, 0}}}});
  EXPECT_EQ(r.eqs, E("X = f(X), X = f(f(f(X)))"));
}

TEST(StepMinus, EliminateGuardIsInequality) {
  const MmaMinusState s{E("X = f(X), Y = g(X)")};
  const auto as = applicable_actions_minus(s, MinusMode::Unrestricted);
  ASSERT_TRUE(std::find(as.begin(), as.end(), eliminate(0, "f(X)")) != as.end());
  const auto t = step_minus(s, eliminate(0, "f(X)"));
  EXPECT_EQ(t.eqs, E("X = f(X), Y = g(f(X))"));
}

TEST(RunMinus, LoopExample) {
  const EquationSet e = E("X = f(X), X = f(f(X))");
  const Trace r = run_minus(e, Strategy::leftmost(), MinusMode::Restricted);
  EXPECT_EQ(r.status, RunStatus::SemiSolved);
  EXPECT_EQ(r.final_eqs(), E("X = f(X)"));
  const Trace u = run_minus(e, Strategy::adversarial(), MinusMode::Unrestricted);
  EXPECT_EQ(u.status, RunStatus::Loop);
  EXPECT_EQ(u.states[1], e);
}

TEST(RunMinus, CounterexampleFailsByClashUnderEveryStrategy) {
  for (MinusMode mode : {MinusMode::Restricted, MinusMode::Unrestricted}) {
    auto names = Strategy::builtin_names();
    for (int seed = 1; seed <= 5; ++seed) names.push_back("random:" + std::to_string(seed));
    for (const auto& name : names) {
      const Trace t = run_minus(counterexample(), Strategy::from_name(name), mode);
      if (t.status == RunStatus::Loop || t.status == RunStatus::FuelExhausted) continue;
      EXPECT_EQ(t.status, RunStatus::Clash) << name << " " << mode_name(mode);
    }
  }
}

TEST(RunMinus, LinearCaseMatchesMma) {
  NameSupply supply;
  const Program p = nqueens_program(supply);
  const Atom goal = query_qin(3).at(0);
  const Atom head = rename_apart(p.clauses[1].head, {}, supply).value;
  const EquationSet e{{goal.as_term(), head.as_term()}};
  const Trace t = run_minus(e, Strategy::leftmost(), MinusMode::Restricted);
  ASSERT_EQ(t.status, RunStatus::SemiSolved);
  ASSERT_TRUE(is_solved(t.final_eqs()));
  const Trace m = run(e, Strategy::leftmost());
  EXPECT_TRUE(equal_up_to_renaming(extract_mgu(t.final_eqs()), extract_mgu(m.final_eqs())));
}

TEST(Classify, Examples) {
  const EquationSet e = E("X = a");
  EXPECT_EQ(classify_result(run_minus(e, Strategy::leftmost(), MinusMode::Restricted), e), Classification::Correct);
  // Success claimed on a non-unifiable input.
  Trace broken;
  broken.initial = E("a = b");
  broken.status = RunStatus::SemiSolved;
  EXPECT_EQ(classify_result(broken, broken.initial), Classification::Incorrect);
  // Failure claimed on a unifiable input.
  Trace wrong_fail;
  wrong_fail.initial = E("X = a");
  wrong_fail.status = RunStatus::Clash;
  EXPECT_EQ(classify_result(wrong_fail, wrong_fail.initial), Classification::Incorrect);
  Trace loop;
  loop.initial = E("X = a");
  loop.status = RunStatus::Loop;
  EXPECT_EQ(classify_result(loop, loop.initial), Classification::Nonterminating);
  // A semi-solved, unsolved result is not an mgu.
  Trace cyclic;
  cyclic.initial = E("X = f(X)");
  cyclic.status = RunStatus::SemiSolved;
  EXPECT_EQ(classify_result(cyclic, cyclic.initial), Classification::Incorrect);
}

TEST(Properties, RequirementDHoldsInGeneratedTraces) {
  std::mt19937_64 rng(41);
  const auto schedules = sample_schedules(41);
  for (int i = 0; i < 120; ++i) {
    const EquationSet e = random_equation_set(rng);
    for (const Schedule& s : schedules) {
      const Trace t = run_minus(e, s.strategy, s.mode, 100);
      ASSERT_EQ(t.eliminated.size(), t.actions.size());
      for (std::size_t k = 0; k < t.actions.size(); ++k) {
        if (t.actions[k].kind != ActionKind::PartialEliminate) continue;
        ASSERT_GT(k, 0u);
        const auto& before = t.eliminated[k - 1];
        EXPECT_TRUE(std::find(before.begin(), before.end(), *t.actions[k].var) != before.end());
      }
    }
  }
}

TEST(Properties, OcfMmaRunsReplayInMinus) {
  std::mt19937_64 rng(43);
  int replayed = 0;
  for (int i = 0; i < 300; ++i) {
    const EquationSet e = random_equation_set(rng);
    const OcfSearch s = exists_ocf_run(e);
    if (s.kind != OcfSearch::Kind::Found) continue;
    MmaMinusState st{e};
    for (std::size_t k = 0; k < s.witness->actions.size(); ++k) {
      const Action& a = s.witness->actions[k];
      if (a.kind == ActionKind::Clash) {
        const auto as = applicable_actions_minus(st, MinusMode::Unrestricted);
        EXPECT_TRUE(std::find(as.begin(), as.end(), a) != as.end());
        break;
      }
      ASSERT_NO_THROW(st = step_minus(st, a, MinusMode::Unrestricted)) << render(std::span<const Equation>(e));
      EXPECT_EQ(st.eqs, s.witness->states[k]);
    }
    ++replayed;
  }
  EXPECT_GT(replayed, 100);
}

TEST(Properties, MinusRunsWithoutCyclicBindingsAreMmaRuns) {
  std::mt19937_64 rng(47);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const EquationSet e = random_equation_set(rng);
    for (const Schedule& s : sample_schedules(i, 1)) {
      const Trace t = run_minus(e, s.strategy, s.mode, 100);
      bool plain = true;
      for (const Action& a : t.actions) {
        if (a.kind == ActionKind::Eliminate && occurs_in(*a.var, *a.term)) plain = false;
      }
      if (!plain) continue;
      ++checked;
      MmaState st{e};
      for (const Action& a : t.actions) {
        EXPECT_NE(a.kind, ActionKind::PartialEliminate);
        ASSERT_NO_THROW(st = step(st, a));
      }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Properties, SemiSolvedStatesHaveISolutions) {
  std::mt19937_64 rng(53);
  int seen = 0;
  for (int i = 0; i < 200; ++i) {
    const EquationSet e = random_equation_set(rng);
    for (const Schedule& s : sample_schedules(i, 1)) {
      const Trace t = run_minus(e, s.strategy, s.mode, 100);
      for (std::size_t k = 0; k <= t.states.size(); ++k) {
        const EquationSet& st = k == 0 ? t.initial : t.states[k - 1];
        if (!is_semi_solved(st)) continue;
        ++seen;
        EXPECT_TRUE(has_i_solution(st)) << render(std::span<const Equation>(st));
      }
    }
  }
  EXPECT_GT(seen, 200);
}

TEST(Properties, RestrictedModeTerminatesOnRandomSets) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    const EquationSet e = random_equation_set(rng);
    for (const auto& name : {"leftmost", "rightmost", "bind-eager", "adversarial"}) {
      const Trace t = run_minus(e, Strategy::from_name(name), MinusMode::Restricted);
      EXPECT_NE(t.status, RunStatus::Loop) << name << ": " << render(std::span<const Equation>(e));
      EXPECT_NE(t.status, RunStatus::FuelExhausted) << name << ": " << render(std::span<const Equation>(e));
    }
  }
}
