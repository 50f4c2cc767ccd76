#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "occurlab/mma.hpp"
#include "occurlab/program.hpp"
#include "occurlab/term.hpp"

namespace occurlab {

/// Chooses the atom of a nonempty query to resolve next.
/// Built-ins: "leftmost", "rightmost", "random:<seed>", "round-robin".
class SelectionRule {
 public:
  // (query, depth, node id) -> position
  using Chooser = std::function<std::size_t(const Query&, std::size_t, std::size_t)>;

  SelectionRule(std::string name, Chooser chooser);

  static SelectionRule leftmost();
  static SelectionRule rightmost();
  // Deterministic per (seed, node id), so trees are reproducible.
  static SelectionRule random(std::uint64_t seed);
  // Position depth mod length.
  static SelectionRule round_robin();
  static SelectionRule from_name(std::string_view name);

  std::size_t select(const Query& q, std::size_t depth, std::size_t node_id) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Chooser chooser_;
};

enum class Engine { Mma, MmaMinus };
std::string_view engine_name(Engine e);
Engine engine_from_name(std::string_view name);

/// {goal = head} for a selected atom and a standardized-apart clause head
/// with the same predicate.
struct AvailableUnification {
  Atom goal;
  Atom head;
  EquationSet eqs;
  std::size_t clause_index = 0;
};

enum class UnifyOutcome {
  Unified,
  Clash,
  OccurCheck,
  // Variant without occur-check only: success with a semi-solved, unsolved set.
  RationalOnly,
  Nonterminated,
};
std::string_view outcome_name(UnifyOutcome o);

struct Branch {
  AvailableUnification unification;
  Clause renamed;
  UnifyOutcome outcome = UnifyOutcome::Clash;
  std::optional<Substitution> mgu;
  std::optional<std::size_t> child;  // node index when unified
};

enum class NodeStatus { Success, Failure, Open, Internal };
std::string_view node_status_name(NodeStatus s);

struct DerivationNode {
  Query query;
  std::size_t depth = 0;
  std::optional<std::size_t> parent;
  std::optional<std::size_t> selected;
  std::vector<Branch> branches;
  NodeStatus status = NodeStatus::Open;
};

struct DerivationTree {
  std::vector<DerivationNode> nodes;  // nodes[0] is the root
  std::string rule;
  Engine engine = Engine::Mma;

  bool has_success() const;
  // No success leaf and no node cut by the depth bound.
  bool finitely_failed() const;
  bool truncated() const;
};

struct DeriveOptions {
  SelectionRule rule = SelectionRule::leftmost();
  std::size_t depth = 30;
  Engine engine = Engine::Mma;
  // Follow only the first unifying clause at each node.
  bool single_branch = false;
};

struct NoMatchingHead {};

// One resolution step with the given clause; the successor replaces the
// selected atom by the clause body, in place.
using StepResult = std::variant<DerivationNode, Branch, NoMatchingHead>;

/// Resolves the atom chosen by `rule` with clause `clause_index`. Returns the
/// child node on success, the failed Branch on unification failure, or
/// NoMatchingHead when the predicates differ.
StepResult resolution_step(const Query& q, const SelectionRule& rule, std::size_t clause_index,
                           const Program& program, NameSupply& supply, Engine engine = Engine::Mma);

DerivationTree derive(const Query& q0, const Program& program, const DeriveOptions& options = {});

std::vector<AvailableUnification> available_unifications(const DerivationTree& t);

/// Memoizes NSTO and occur-check-free-run verdicts by canonical key.
class UnificationOracle {
 public:
  explicit UnificationOracle(std::size_t bound = kDefaultEnumerationBound) : bound_(bound) {}

  Verdict nsto(const EquationSet& e);
  Verdict has_ocf_run(const EquationSet& e);

 private:
  std::size_t bound_;
  std::unordered_map<std::string, Verdict> nsto_;
  std::unordered_map<std::string, Verdict> ocf_;
};

struct InvariantReport {
  bool precondition_ok = false;  // every root atom has a ground first argument
  std::optional<bool> all_atoms_linear;
  std::optional<bool> first_args_ground;
  Verdict all_available_nsto = Verdict::Unknown;
  Verdict all_have_ocf_run = Verdict::Unknown;
  std::size_t nodes = 0;
  std::size_t atoms = 0;
  std::size_t unifications = 0;
};

InvariantReport check_derivation_invariants(const DerivationTree& t, UnificationOracle& oracle);
InvariantReport check_derivation_invariants(const DerivationTree& t,
                                            std::size_t bound = kDefaultEnumerationBound);

// Same success/failure structure: statuses, branch outcomes, and shape.
bool same_structure(const DerivationTree& a, const DerivationTree& b);

}  // namespace occurlab
