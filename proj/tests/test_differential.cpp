#include <gtest/gtest.h>

#include <random>

#include "occurlab/differential.hpp"
#include "support.hpp"

using namespace occurlab;
using namespace occurlab::testing;

TEST(Generator, RespectsBounds) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 500; ++i) {
    const EquationSet e = random_equation_set(rng);
    EXPECT_GE(e.size(), 1u);
    EXPECT_LE(e.size(), 6u);
    EXPECT_LE(vars_of(std::span<const Equation>(e)).size(), 4u);
  }
  const auto [a, h] = random_atom_pair(rng);
  const auto av = vars_of(a);
  for (const Variable& v : vars_of(h)) EXPECT_EQ(std::count(av.begin(), av.end(), v), 0);
}

TEST(Generator, Reproducible) {
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(random_equation_set(a), random_equation_set(b));
}

TEST(Schedules, AtLeastFivePerSet) {
  const auto s = sample_schedules(1);
  EXPECT_GE(s.size(), 5u);
  std::set<std::string> labels;
  for (const auto& x : s) labels.insert(x.label());
  EXPECT_EQ(labels.size(), s.size());
}

TEST(Shrink, GreedyMinimization) {
  // Fails whenever some equation still contains the clash g(.) = h(.,.).
  const auto fails = [](const EquationSet& e) {
    for (const Equation& q : e) {
      if (!q.lhs.is_variable() && !q.rhs.is_variable() && q.lhs.name() == "g" && q.rhs.name() == "h") return true;
    }
    return false;
  };
  const EquationSet big = E("X = f(Y), g(f(a)) = h(k(X, Y), b), Z = a");
  const EquationSet small = shrink(big, fails);
  ASSERT_EQ(small.size(), 1u);
  EXPECT_TRUE(fails(small));
  EXPECT_LE(term_size(small[0].lhs) + term_size(small[0].rhs), 5u);
}

TEST(TheoremTest, SmallRunIsClean) {
  TheoremTestOptions o;
  o.count = 60;
  o.seed = 3;
  const TheoremTestReport r = theorem_test(o);
  EXPECT_EQ(r.accepted, 60u);
  EXPECT_EQ(r.incorrect, 0u);
  EXPECT_FALSE(r.counterexample);
  EXPECT_GE(r.terminated, 5u * 60u);
}
