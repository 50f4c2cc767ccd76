#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "occurlab/mma.hpp"
#include "occurlab/mma_minus.hpp"
#include "occurlab/term.hpp"

namespace occurlab {

struct RandomSetParams {
  std::size_t max_equations = 6;
  std::size_t max_variables = 4;
  std::size_t max_arity = 2;
  std::size_t max_depth = 3;
};

// Signature: a/0, b/0, f/1, g/1, h/2, k/2 (cut down to max_arity); variables X, Y, Z, W, V, U.
Term random_term(std::mt19937_64& rng, const std::vector<Variable>& vars, std::size_t max_arity,
                 std::size_t depth);
EquationSet random_equation_set(std::mt19937_64& rng, const RandomSetParams& params = {});

// Variable-disjoint p(s1,s2) and p(t1,t2).
std::pair<Atom, Atom> random_atom_pair(std::mt19937_64& rng, std::size_t max_depth = 3);

struct Schedule {
  Strategy strategy;
  MinusMode mode;

  std::string label() const;
};

// Built-in strategies in both modes plus `random_count` seeded random ones per mode.
std::vector<Schedule> sample_schedules(std::uint64_t seed, std::size_t random_count = 2);

struct ScheduleResult {
  std::string schedule;
  Trace trace;
  Classification classification;
};

struct SetReport {
  EquationSet eqs;
  std::vector<ScheduleResult> runs;
  std::size_t terminated = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
};

inline constexpr std::size_t kTheoremFuel = 200;

SetReport check_set(const EquationSet& e, std::span<const Schedule> schedules, std::size_t fuel = kTheoremFuel);

struct TheoremTestOptions {
  std::size_t count = 1000;  // accepted sets (exists_ocf_run = found)
  std::uint64_t seed = 1;
  std::size_t fuel = kTheoremFuel;
  std::size_t bound = kDefaultEnumerationBound;
  std::size_t min_terminated = 5;
  RandomSetParams params;
};

struct TheoremTestReport {
  std::size_t generated = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;  // exists_ocf_run = none
  std::size_t unknown = 0;   // search bound exhausted
  std::size_t runs = 0;
  std::size_t terminated = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t under_sampled = 0;  // accepted sets with fewer than min_terminated terminating runs
  std::optional<EquationSet> counterexample;  // shrunk
  std::optional<std::string> counterexample_schedule;
};

using SetObserver = std::function<void(const SetReport&)>;

TheoremTestReport theorem_test(const TheoremTestOptions& options, const SetObserver& observe = {});

/// Greedy shrinking: drops equations, then replaces subterms by their
/// arguments or by a variable, while `fails` keeps holding.
EquationSet shrink(EquationSet eqs, const std::function<bool(const EquationSet&)>& fails);

}  // namespace occurlab
