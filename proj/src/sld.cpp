#include "occurlab/sld.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "occurlab/mma_minus.hpp"

namespace occurlab {

// ---------------------------------------------------------------------------
// Selection rules

SelectionRule::SelectionRule(std::string name, Chooser chooser)
    : name_(std::move(name)), chooser_(std::move(chooser)) {}

SelectionRule SelectionRule::leftmost() {
  return {"leftmost", [](const Query&, std::size_t, std::size_t) -> std::size_t { return 0; }};
}

SelectionRule SelectionRule::rightmost() {
  return {"rightmost", [](const Query& q, std::size_t, std::size_t) { return q.size() - 1; }};
}

SelectionRule SelectionRule::random(std::uint64_t seed) {
  return {"random:" + std::to_string(seed), [seed](const Query& q, std::size_t, std::size_t node) {
            std::seed_seq seq{seed, static_cast<std::uint64_t>(node)};
            std::mt19937_64 rng(seq);
            return std::uniform_int_distribution<std::size_t>(0, q.size() - 1)(rng);
          }};
}

SelectionRule SelectionRule::round_robin() {
  return {"round-robin", [](const Query& q, std::size_t depth, std::size_t) { return depth % q.size(); }};
}

SelectionRule SelectionRule::from_name(std::string_view name) {
  if (name == "leftmost") return leftmost();
  if (name == "rightmost") return rightmost();
  if (name == "round-robin") return round_robin();
  if (name.substr(0, 7) == "random:") {
    const std::string digits(name.substr(7));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return random(std::stoull(digits));
    }
  }
  throw std::invalid_argument("unknown selection rule '" + std::string(name) + "'");
}

std::size_t SelectionRule::select(const Query& q, std::size_t depth, std::size_t node_id) const {
  if (q.empty()) throw std::invalid_argument("selection from an empty query");
  const std::size_t i = chooser_(q, depth, node_id);
  if (i >= q.size()) throw std::logic_error("selection rule " + name_ + " chose an invalid position");
  return i;
}

std::string_view engine_name(Engine e) { return e == Engine::Mma ? "mma" : "mma-minus"; }

Engine engine_from_name(std::string_view name) {
  if (name == "mma") return Engine::Mma;
  if (name == "mma-minus") return Engine::MmaMinus;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view outcome_name(UnifyOutcome o) {
  switch (o) {
    case UnifyOutcome::Unified: return "unified";
    case UnifyOutcome::Clash: return "clash";
    case UnifyOutcome::OccurCheck: return "occur-check";
    case UnifyOutcome::RationalOnly: return "rational-only";
    case UnifyOutcome::Nonterminated: return "nonterminated";
  }
  return "?";
}

std::string_view node_status_name(NodeStatus s) {
  switch (s) {
    case NodeStatus::Success: return "success";
    case NodeStatus::Failure: return "failure";
    case NodeStatus::Open: return "open";
    case NodeStatus::Internal: return "internal";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Resolution

namespace {

struct Unification {
  UnifyOutcome outcome;
  std::optional<Substitution> mgu;
};

Unification unify_with(Engine engine, const EquationSet& eqs) {
  if (engine == Engine::Mma) {
    const Trace t = run(eqs, Strategy::leftmost());
    switch (t.status) {
      case RunStatus::Solved: return {UnifyOutcome::Unified, extract_mgu(t.final_eqs())};
      case RunStatus::Clash: return {UnifyOutcome::Clash, std::nullopt};
      case RunStatus::OccurCheck: return {UnifyOutcome::OccurCheck, std::nullopt};
      default: throw std::logic_error("MMA did not terminate on " + std::to_string(eqs.size()) + " equations");
    }
  }
  const Trace t = run_minus(eqs, Strategy::leftmost(), MinusMode::Restricted);
  switch (t.status) {
    case RunStatus::SemiSolved:
      if (is_solved(t.final_eqs())) return {UnifyOutcome::Unified, extract_mgu(t.final_eqs())};
      return {UnifyOutcome::RationalOnly, std::nullopt};
    case RunStatus::Clash: return {UnifyOutcome::Clash, std::nullopt};
    default: return {UnifyOutcome::Nonterminated, std::nullopt};
  }
}

std::set<Variable> var_set(const Query& q) {
  const auto vs = vars_of(std::span<const Atom>(q));
  return {vs.begin(), vs.end()};
}

bool same_predicate(const Atom& a, const Atom& b) {
  return a.predicate == b.predicate && a.arity() == b.arity();
}

Branch make_branch(const Query& q, std::size_t selected, std::size_t clause_index, const Clause& clause,
                   NameSupply& supply, Engine engine, Query* successor) {
  auto renamed = rename_apart(clause, var_set(q), supply);
  const Atom& goal = q[selected];
  Branch b;
  b.unification = {goal, renamed.value.head, EquationSet{{goal.as_term(), renamed.value.head.as_term()}},
                   clause_index};
  b.renamed = std::move(renamed.value);
  const Unification u = unify_with(engine, b.unification.eqs);
  b.outcome = u.outcome;
  b.mgu = u.mgu;
  if (u.outcome == UnifyOutcome::Unified && successor) {
    Query next;
    next.reserve(q.size() - 1 + b.renamed.body.size());
    next.insert(next.end(), q.begin(), q.begin() + static_cast<std::ptrdiff_t>(selected));
    next.insert(next.end(), b.renamed.body.begin(), b.renamed.body.end());
    next.insert(next.end(), q.begin() + static_cast<std::ptrdiff_t>(selected) + 1, q.end());
    *successor = occurlab::apply(*u.mgu, std::span<const Atom>(next));
  }
  return b;
}

void reserve_names(NameSupply& supply, const Query& q, const Program& p) {
  for (const Variable& v : vars_of(std::span<const Atom>(q))) supply.reserve(v);
  for (const Clause& c : p.clauses) {
    for (const Variable& v : vars_of(c)) supply.reserve(v);
  }
}

}  // namespace

StepResult resolution_step(const Query& q, const SelectionRule& rule, std::size_t clause_index,
                           const Program& program, NameSupply& supply, Engine engine) {
  if (q.empty()) throw std::invalid_argument("resolution step on the empty query");
  const Clause& clause = program.clauses.at(clause_index);
  const std::size_t selected = rule.select(q, 0, 0);
  if (!same_predicate(q[selected], clause.head)) return NoMatchingHead{};
  Query successor;
  Branch b = make_branch(q, selected, clause_index, clause, supply, engine, &successor);
  if (b.outcome != UnifyOutcome::Unified) return b;
  DerivationNode child;
  child.query = std::move(successor);
  child.depth = 1;
  child.parent = 0;
  child.status = child.query.empty() ? NodeStatus::Success : NodeStatus::Open;
  return child;
}

DerivationTree derive(const Query& q0, const Program& program, const DeriveOptions& options) {
  DerivationTree tree;
  tree.rule = options.rule.name();
  tree.engine = options.engine;
  NameSupply supply;
  reserve_names(supply, q0, program);
  tree.nodes.push_back(DerivationNode{q0, 0, std::nullopt, std::nullopt, {}, NodeStatus::Open});
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    const std::size_t id = work.front();
    work.pop_front();
    if (tree.nodes[id].query.empty()) {
      tree.nodes[id].status = NodeStatus::Success;
      continue;
    }
    if (tree.nodes[id].depth >= options.depth) {
      tree.nodes[id].status = NodeStatus::Open;
      continue;
    }
    const Query query = tree.nodes[id].query;
    const std::size_t depth = tree.nodes[id].depth;
    const std::size_t selected = options.rule.select(query, depth, id);
    tree.nodes[id].selected = selected;
    bool any = false;
    for (std::size_t ci = 0; ci < program.clauses.size(); ++ci) {
      if (!same_predicate(query[selected], program.clauses[ci].head)) continue;
      Query successor;
      Branch b = make_branch(query, selected, ci, program.clauses[ci], supply, options.engine, &successor);
      if (b.outcome == UnifyOutcome::Unified) {
        any = true;
        b.child = tree.nodes.size();
        tree.nodes.push_back(DerivationNode{std::move(successor), depth + 1, id, std::nullopt, {}, NodeStatus::Open});
        work.push_back(*b.child);
      }
      tree.nodes[id].branches.push_back(std::move(b));
      if (any && options.single_branch) break;
    }
    tree.nodes[id].status = any ? NodeStatus::Internal : NodeStatus::Failure;
  }
  return tree;
}

bool DerivationTree::has_success() const {
  return std::any_of(nodes.begin(), nodes.end(), [](const DerivationNode& n) { return n.status == NodeStatus::Success; });
}

bool DerivationTree::truncated() const {
  return std::any_of(nodes.begin(), nodes.end(), [](const DerivationNode& n) { return n.status == NodeStatus::Open; });
}

bool DerivationTree::finitely_failed() const { return !has_success() && !truncated(); }

std::vector<AvailableUnification> available_unifications(const DerivationTree& t) {
  std::vector<AvailableUnification> out;
  for (const DerivationNode& n : t.nodes) {
    for (const Branch& b : n.branches) out.push_back(b.unification);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariants

Verdict UnificationOracle::nsto(const EquationSet& e) {
  const std::string key = canonical_key(e);
  if (auto it = nsto_.find(key); it != nsto_.end()) return it->second;
  const Verdict v = is_nsto(e, bound_);
  nsto_.emplace(key, v);
  return v;
}

Verdict UnificationOracle::has_ocf_run(const EquationSet& e) {
  const std::string key = canonical_key(e);
  if (auto it = ocf_.find(key); it != ocf_.end()) return it->second;
  const OcfSearch s = exists_ocf_run(e, bound_);
  const Verdict v = s.kind == OcfSearch::Kind::Found  ? Verdict::Yes
                    : s.kind == OcfSearch::Kind::None ? Verdict::No
                                                      : Verdict::Unknown;
  ocf_.emplace(key, v);
  return v;
}

namespace {

// Yes only if every verdict is Yes; any No wins over Unknown.
void fold(Verdict& acc, Verdict v) {
  if (acc == Verdict::No || v == Verdict::Yes) return;
  acc = v;
}

}  // namespace

InvariantReport check_derivation_invariants(const DerivationTree& t, UnificationOracle& oracle) {
  InvariantReport r;
  r.nodes = t.nodes.size();
  const Query& root = t.nodes.at(0).query;
  r.precondition_ok = std::all_of(root.begin(), root.end(),
                                  [](const Atom& a) { return a.arity() > 0 && is_ground(a.args[0]); });
  if (!r.precondition_ok) return r;
  bool linear = true;
  bool ground = true;
  Verdict nsto = Verdict::Yes;
  Verdict ocf = Verdict::Yes;
  for (const DerivationNode& n : t.nodes) {
    for (const Atom& a : n.query) {
      ++r.atoms;
      linear = linear && is_linear(a);
      ground = ground && a.arity() > 0 && is_ground(a.args[0]);
    }
    for (const Branch& b : n.branches) {
      ++r.unifications;
      fold(nsto, oracle.nsto(b.unification.eqs));
      fold(ocf, oracle.has_ocf_run(b.unification.eqs));
    }
  }
  r.all_atoms_linear = linear;
  r.first_args_ground = ground;
  r.all_available_nsto = nsto;
  r.all_have_ocf_run = ocf;
  return r;
}

InvariantReport check_derivation_invariants(const DerivationTree& t, std::size_t bound) {
  UnificationOracle oracle(bound);
  return check_derivation_invariants(t, oracle);
}

namespace {

bool same_subtree(const DerivationTree& a, std::size_t ia, const DerivationTree& b, std::size_t ib) {
  const DerivationNode& x = a.nodes[ia];
  const DerivationNode& y = b.nodes[ib];
  if (x.status != y.status || x.selected != y.selected || x.branches.size() != y.branches.size()) return false;
  for (std::size_t k = 0; k < x.branches.size(); ++k) {
    const Branch& p = x.branches[k];
    const Branch& q = y.branches[k];
    if (p.outcome != q.outcome || p.unification.clause_index != q.unification.clause_index) return false;
    if (p.child.has_value() != q.child.has_value()) return false;
    if (p.child && !same_subtree(a, *p.child, b, *q.child)) return false;
  }
  return true;
}

}  // namespace

bool same_structure(const DerivationTree& a, const DerivationTree& b) {
  if (a.nodes.empty() || b.nodes.empty()) return a.nodes.empty() == b.nodes.empty();
  return same_subtree(a, 0, b, 0);
}

}  // namespace occurlab
