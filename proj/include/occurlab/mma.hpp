#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occurlab/term.hpp"

namespace occurlab {

// Martelli-Montanari actions, numbered 1..6, plus the partial elimination
// (5') used only by the variant without occur-check.
enum class ActionKind { Decompose, Clash, DeleteTrivial, Orient, Eliminate, OccurHalt, PartialEliminate };

// "1".."6" or "5'".
std::string_view action_number(ActionKind kind);
std::string_view action_name(ActionKind kind);

// An occurrence of a variable: equation index, side, and argument path.
struct Occurrence {
  std::size_t equation = 0;
  bool rhs = false;
  std::vector<std::size_t> path;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct Action {
  ActionKind kind;
  std::size_t position;             // index of the selected equation
  std::optional<Variable> var;      // Eliminate, PartialEliminate
  std::optional<Term> term;         // Eliminate, PartialEliminate
  std::vector<Occurrence> occurrences;  // PartialEliminate only

  friend bool operator==(const Action&, const Action&) = default;
};

enum class RunStatus { Running, Solved, SemiSolved, Clash, OccurCheck, FuelExhausted, Loop, Stuck };

std::string_view status_name(RunStatus s);

struct MmaState {
  EquationSet eqs;
  RunStatus status = RunStatus::Running;
};

/// Deterministic chooser over the applicable actions of a state.
///
/// Built-ins: "leftmost", "rightmost", "bind-eager" (bind variables to ground
/// terms as early as possible), "adversarial" (delay ground bindings, prefer
/// the occur-check and term-growing moves), and "random:<seed>".
class Strategy {
 public:
  using Chooser = std::function<std::size_t(const EquationSet&, std::span<const Action>)>;

  Strategy(std::string name, Chooser chooser, bool memoryless);

  static Strategy leftmost();
  static Strategy rightmost();
  static Strategy random(std::uint64_t seed);
  static Strategy bind_eagerly();
  static Strategy adversarial();

  // Throws std::invalid_argument for unknown names.
  static Strategy from_name(std::string_view name);
  static std::vector<std::string> builtin_names();

  // Precondition: !actions.empty().
  std::size_t choose(const EquationSet& eqs, std::span<const Action> actions) const;
  const std::string& name() const { return name_; }
  // Choice depends only on the state; a revisited state proves a loop.
  bool memoryless() const { return memoryless_; }

 private:
  std::string name_;
  Chooser chooser_;
  bool memoryless_;
};

// Priority used by bind-eager and by the occur-check-free run search.
int bind_eager_rank(const EquationSet& eqs, const Action& a);

struct Trace {
  EquationSet initial;
  std::vector<Action> actions;
  std::vector<EquationSet> states;  // state after each action
  // Eliminated variables after each action (variant without occur-check only).
  std::vector<std::vector<Variable>> eliminated;
  RunStatus status = RunStatus::Running;
  std::string strategy;

  const EquationSet& final_eqs() const { return states.empty() ? initial : states.back(); }
  const EquationSet& state_before(std::size_t step) const {
    return step == 0 ? initial : states[step - 1];
  }
};

inline constexpr std::size_t kDefaultEnumerationBound = 100000;
inline constexpr std::size_t kDefaultFuel = 10000;

bool is_solved(std::span<const Equation> eqs);

std::vector<Action> applicable_actions(const MmaState& s);

// Throws std::invalid_argument if `a` is not applicable in `s`.
MmaState step(const MmaState& s, const Action& a);

// MMA terminates under every strategy; FuelExhausted indicates a defect.
Trace run(const EquationSet& e, const Strategy& strategy, std::size_t fuel = kDefaultFuel);

struct RunGraphSummary {
  bool any_occur_halt = false;
  bool any_clash = false;
  bool any_success = false;
  std::vector<Substitution> mgus;  // pairwise distinct up to renaming
  bool exhausted = false;
  std::size_t states = 0;
};

/// Explores every schedule, merging states that are equal up to equation
/// order and variable renaming, until `bound` distinct states are seen.
RunGraphSummary enumerate_runs(const EquationSet& e, std::size_t bound = kDefaultEnumerationBound);

enum class Verdict { Yes, No, Unknown };
std::string_view verdict_name(Verdict v);

// No run performs the occur-check halt (6).
Verdict is_nsto(const EquationSet& e, std::size_t bound = kDefaultEnumerationBound);

struct OcfSearch {
  enum class Kind { Found, None, Unknown };
  Kind kind = Kind::None;
  std::optional<Trace> witness;
  std::size_t states = 0;
};

// Searches for a terminating run that never performs action (6).
OcfSearch exists_ocf_run(const EquationSet& e, std::size_t bound = kDefaultEnumerationBound);

// Throws std::invalid_argument unless the state (or set) is solved.
Substitution extract_mgu(const MmaState& s);
Substitution extract_mgu(std::span<const Equation> solved);

/// Canonical form up to equation order and variable renaming. Variables in
/// `marked` are flagged in the key.
std::string canonical_key(std::span<const Equation> eqs, std::span<const Variable> marked = {});

namespace detail {
// Performs the rewrite of an action without checking applicability.
EquationSet perform(const EquationSet& eqs, const Action& a);
bool occurs_elsewhere(const EquationSet& eqs, std::size_t position, const Variable& x);
}  // namespace detail

}  // namespace occurlab
