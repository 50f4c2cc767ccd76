#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "occurlab/term.hpp"

namespace occurlab {

using TermPair = std::pair<Term, Term>;

/// Outermost positions where `a` and `h` differ, left to right. Roots with a
/// different functor or arity give the single pair (a, h).
std::vector<TermPair> disagreement_pairs(const Term& a, const Term& h);
std::vector<TermPair> disagreement_pairs(const Atom& a, const Atom& h);

/// Nondeterministic Robinson unification state: the current substitution and
/// the instances it induces on the two inputs and on tracked bystanders.
struct RobinsonState {
  Substitution theta;
  Term a_inst;
  Term h_inst;
  std::vector<Term> observers;
};

enum class RobinsonOutcome { Success, Clash, OccurCheck };

// Picks one disagreement pair; the span is never empty.
using PairChooser = std::function<std::size_t(std::span<const TermPair>)>;

namespace pair_choice {
PairChooser first();
PairChooser last();
PairChooser random(std::uint64_t seed);
}  // namespace pair_choice

struct RobinsonResult {
  RobinsonOutcome outcome;
  RobinsonState state;
  // States before each step plus the final one, when recorded.
  std::vector<RobinsonState> history;

  bool success() const { return outcome == RobinsonOutcome::Success; }
};

RobinsonResult unify_robinson(const Term& a, const Term& h, std::span<const Term> observers = {},
                              PairChooser choose = pair_choice::first(),
                              bool record_history = false);

RobinsonResult unify_robinson(const Atom& a, const Atom& h, std::span<const Atom> observers = {},
                              PairChooser choose = pair_choice::first(),
                              bool record_history = false);

// Every schedule of the nondeterministic algorithm, up to `limit` complete runs.
std::vector<RobinsonResult> all_robinson_runs(const Term& a, const Term& h, std::size_t limit = 4096);

}  // namespace occurlab
