#pragma once

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "occurlab/mma.hpp"
#include "occurlab/term.hpp"

namespace occurlab {

/// Martelli-Montanari without the occur-check.
///
/// Differences from MMA: no action (6); Eliminate (5) only needs X != t; a new
/// action (5') replaces a nonempty subset of the other occurrences of X by t,
/// and is allowed only once (5) has been performed on some X = t'. Success is
/// a semi-solved set.
///
/// Restricted mode never repeats (5) on a variable and limits (5') to a single
/// left-hand side occurrence X of some X = t' with |t| <= |t'|.
/// Unrestricted mode offers three canonical (5') selections per equation: the
/// first occurrence, all occurrences, and all left-hand side occurrences.
enum class MinusMode { Unrestricted, Restricted };

std::string_view mode_name(MinusMode m);

struct MmaMinusState {
  EquationSet eqs;
  std::set<Variable> eliminated;  // variables on which (5) has been performed
  RunStatus status = RunStatus::Running;
};

// Edges Xi > Xk iff Xk occurs in ti; only defined when every left side is a variable.
struct SuccRelation {
  std::set<std::pair<Variable, Variable>> edges;

  bool reaches(const Variable& from, const Variable& to) const;
};

std::optional<SuccRelation> succ_relation(std::span<const Equation> eqs);

bool is_semi_solved(std::span<const Equation> eqs);

std::vector<Action> applicable_actions_minus(const MmaMinusState& s, MinusMode mode);

/// Validates and performs one step. (5') accepts any nonempty occurrence
/// selection in unrestricted mode; throws std::invalid_argument when the
/// action is not applicable, including a (5') before any (5) on its variable.
MmaMinusState step_minus(const MmaMinusState& s, const Action& a, MinusMode mode = MinusMode::Unrestricted);

inline constexpr std::size_t kMaxStateSize = 1 << 12;

/// Runs until the current set is semi-solved, a clash, or the fuel runs out.
/// With a memoryless strategy a revisited state is reported as Loop. States
/// larger than kMaxStateSize symbols count as fuel exhaustion.
Trace run_minus(const EquationSet& e, const Strategy& strategy, MinusMode mode,
                std::size_t fuel = kDefaultFuel);

enum class Classification { Correct, Incorrect, Nonterminating };
std::string_view classification_name(Classification c);

/// Compares a run's result with the full algorithm's verdict on `original`:
/// failure iff not unifiable, otherwise a solved set that is an mgu.
Classification classify_result(const Trace& t, const EquationSet& original);

}  // namespace occurlab
