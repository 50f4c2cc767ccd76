#include "occurlab/mma_minus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "occurlab/parser.hpp"

namespace occurlab {

std::string_view mode_name(MinusMode m) {
  return m == MinusMode::Restricted ? "restricted" : "unrestricted";
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::Correct: return "correct";
    case Classification::Incorrect: return "incorrect";
    case Classification::Nonterminating: return "nonterminating";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Semi-solved sets

bool SuccRelation::reaches(const Variable& from, const Variable& to) const {
  std::set<Variable> seen;
  std::vector<Variable> stack{from};
  while (!stack.empty()) {
    Variable v = stack.back();
    stack.pop_back();
    for (auto it = edges.lower_bound({v, Variable{}}); it != edges.end() && it->first == v; ++it) {
      if (it->second == to) return true;
      if (seen.insert(it->second).second) stack.push_back(it->second);
    }
  }
  return false;
}

std::optional<SuccRelation> succ_relation(std::span<const Equation> eqs) {
  std::set<Variable> lhs;
  for (const Equation& e : eqs) {
    if (!e.lhs.is_variable()) return std::nullopt;
    lhs.insert(e.lhs.var());
  }
  SuccRelation rel;
  for (const Equation& e : eqs) {
    for (const Variable& v : vars_of(e.rhs)) {
      if (lhs.count(v) != 0) rel.edges.emplace(e.lhs.var(), v);
    }
  }
  return rel;
}

bool is_semi_solved(std::span<const Equation> eqs) {
  std::set<Variable> lhs;
  for (const Equation& e : eqs) {
    if (!e.lhs.is_variable() || !lhs.insert(e.lhs.var()).second) return false;
    if (e.rhs.is_variable() && e.rhs.var() == e.lhs.var()) return false;
  }
  const auto rel = succ_relation(eqs);
  std::set<Variable> in_rhs;
  for (const Equation& e : eqs) {
    for (const Variable& v : vars_of(e.rhs)) in_rhs.insert(v);
  }
  for (const Variable& x : lhs) {
    if (in_rhs.count(x) != 0 && !rel->reaches(x, x)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Actions

namespace {

void collect_occurrences(const Term& t, const Variable& x, std::size_t eq, bool rhs,
                         std::vector<std::size_t>& path, std::vector<Occurrence>& out) {
  if (t.is_variable()) {
    if (t.var() == x) out.push_back({eq, rhs, path});
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i);
    collect_occurrences(t.arg(i), x, eq, rhs, path, out);
    path.pop_back();
  }
}

std::vector<Occurrence> occurrences_elsewhere(const EquationSet& eqs, std::size_t position, const Variable& x) {
  std::vector<Occurrence> out;
  std::vector<std::size_t> path;
  for (std::size_t j = 0; j < eqs.size(); ++j) {
    if (j == position) continue;
    collect_occurrences(eqs[j].lhs, x, j, false, path, out);
    collect_occurrences(eqs[j].rhs, x, j, true, path, out);
  }
  return out;
}

bool is_left_root(const Occurrence& o) { return !o.rhs && o.path.empty(); }

const Term* subterm_at(const EquationSet& eqs, const Occurrence& o) {
  if (o.equation >= eqs.size()) return nullptr;
  const Term* t = o.rhs ? &eqs[o.equation].rhs : &eqs[o.equation].lhs;
  for (std::size_t i : o.path) {
    if (t->is_variable() || i >= t->arity()) return nullptr;
    t = &t->arg(i);
  }
  return t;
}

void add_partial(std::vector<Action>& out, std::size_t i, const Equation& e, std::vector<Occurrence> sel) {
  Action a{ActionKind::PartialEliminate, i, e.lhs.var(), e.rhs, std::move(sel)};
  if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
}

}  // namespace

std::vector<Action> applicable_actions_minus(const MmaMinusState& s, MinusMode mode) {
  std::vector<Action> out;
  if (s.status != RunStatus::Running) return out;
  const bool restricted = mode == MinusMode::Restricted;
  for (std::size_t i = 0; i < s.eqs.size(); ++i) {
    const Equation& e = s.eqs[i];
    if (e.lhs.is_compound() && e.rhs.is_compound()) {
      const bool same = e.lhs.name() == e.rhs.name() && e.lhs.arity() == e.rhs.arity();
      out.push_back({same ? ActionKind::Decompose : ActionKind::Clash, i, {}, {}, {}});
      continue;
    }
    if (e.lhs.is_compound()) {
      out.push_back({ActionKind::Orient, i, {}, {}, {}});
      continue;
    }
    const Variable& x = e.lhs.var();
    if (e.rhs.is_variable() && e.rhs.var() == x) {
      out.push_back({ActionKind::DeleteTrivial, i, {}, {}, {}});
      continue;
    }
    if (!detail::occurs_elsewhere(s.eqs, i, x)) continue;
    const bool eliminated = s.eliminated.count(x) != 0;
    if (!(restricted && eliminated)) out.push_back({ActionKind::Eliminate, i, x, e.rhs, {}});
    if (!eliminated) continue;
    const auto occs = occurrences_elsewhere(s.eqs, i, x);
    std::vector<Occurrence> lhs_occs;
    std::copy_if(occs.begin(), occs.end(), std::back_inserter(lhs_occs), is_left_root);
    if (restricted) {
      for (const Occurrence& o : lhs_occs) {
        if (e.rhs.size() <= s.eqs[o.equation].rhs.size()) add_partial(out, i, e, {o});
      }
    } else {
      add_partial(out, i, e, {occs.front()});
      add_partial(out, i, e, occs);
      if (!lhs_occs.empty()) add_partial(out, i, e, lhs_occs);
    }
  }
  return out;
}

MmaMinusState step_minus(const MmaMinusState& s, const Action& a, MinusMode mode) {
  auto reject = [&](const std::string& why) {
    throw std::invalid_argument("action (" + std::string(action_number(a.kind)) + ") at position " +
                                std::to_string(a.position + 1) + " rejected: " + why);
  };
  if (s.status != RunStatus::Running) reject("run already halted");
  if (a.kind == ActionKind::OccurHalt) reject("no occur-check halt without the occur-check");
  if (a.kind == ActionKind::PartialEliminate) {
    if (a.position >= s.eqs.size()) reject("no such equation");
    const Equation& e = s.eqs[a.position];
    if (!e.lhs.is_variable() || !a.var || !a.term || e.lhs.var() != *a.var || e.rhs != *a.term) {
      reject("binding does not match the selected equation");
    }
    if (e.rhs.is_variable() && e.rhs.var() == *a.var) reject("equation is trivial");
    if (s.eliminated.count(*a.var) == 0) {
      reject("(5) has not been performed on " + a.var->name + " (requirement (d))");
    }
    if (a.occurrences.empty()) reject("empty occurrence selection");
    for (std::size_t k = 0; k < a.occurrences.size(); ++k) {
      const Occurrence& o = a.occurrences[k];
      if (o.equation == a.position) reject("occurrence inside the selected equation");
      const Term* sub = subterm_at(s.eqs, o);
      if (!sub || !sub->is_variable() || sub->var() != *a.var) reject("selected position is not " + a.var->name);
      if (std::find(a.occurrences.begin(), a.occurrences.begin() + static_cast<std::ptrdiff_t>(k), o) !=
          a.occurrences.begin() + static_cast<std::ptrdiff_t>(k)) {
        reject("duplicate occurrence");
      }
    }
    if (mode == MinusMode::Restricted) {
      if (a.occurrences.size() != 1 || !is_left_root(a.occurrences.front())) {
        reject("restricted mode replaces a single left-hand side occurrence");
      }
      if (a.term->size() > s.eqs[a.occurrences.front().equation].rhs.size()) {
        reject("restricted mode requires |t| <= |t'|");
      }
    }
  } else {
    const auto actions = applicable_actions_minus(s, mode);
    if (std::find(actions.begin(), actions.end(), a) == actions.end()) reject("not applicable");
  }
  MmaMinusState next{detail::perform(s.eqs, a), s.eliminated, RunStatus::Running};
  if (a.kind == ActionKind::Eliminate) next.eliminated.insert(*a.var);
  if (a.kind == ActionKind::Clash) next.status = RunStatus::Clash;
  return next;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

std::size_t total_size(const EquationSet& eqs) {
  std::size_t n = 0;
  for (const Equation& e : eqs) n += e.lhs.size() + e.rhs.size();
  return n;
}

std::string exact_key(const MmaMinusState& s) {
  std::string key = render(s.eqs);
  key += " |";
  for (const Variable& v : s.eliminated) key += " " + v.name;
  return key;
}

}  // namespace

Trace run_minus(const EquationSet& e, const Strategy& strategy, MinusMode mode, std::size_t fuel) {
  Trace trace{e, {}, {}, {}, RunStatus::Running, strategy.name()};
  MmaMinusState s{e, {}, RunStatus::Running};
  std::unordered_set<std::string> seen;
  if (strategy.memoryless()) seen.insert(exact_key(s));
  for (std::size_t used = 0;; ++used) {
    if (is_semi_solved(s.eqs)) {
      trace.status = RunStatus::SemiSolved;
      return trace;
    }
    const auto actions = applicable_actions_minus(s, mode);
    if (actions.empty()) {
      trace.status = RunStatus::Stuck;
      return trace;
    }
    if (used == fuel) {
      trace.status = RunStatus::FuelExhausted;
      return trace;
    }
    const Action& a = actions.at(strategy.choose(s.eqs, actions));
    s.eqs = detail::perform(s.eqs, a);
    if (a.kind == ActionKind::Eliminate) s.eliminated.insert(*a.var);
    trace.actions.push_back(a);
    trace.states.push_back(s.eqs);
    trace.eliminated.emplace_back(s.eliminated.begin(), s.eliminated.end());
    if (a.kind == ActionKind::Clash) {
      trace.status = RunStatus::Clash;
      return trace;
    }
    if (total_size(s.eqs) > kMaxStateSize) {
      trace.status = RunStatus::FuelExhausted;
      return trace;
    }
    if (strategy.memoryless() && !seen.insert(exact_key(s)).second) {
      trace.status = RunStatus::Loop;
      return trace;
    }
  }
}

Classification classify_result(const Trace& t, const EquationSet& original) {
  switch (t.status) {
    case RunStatus::Running:
    case RunStatus::FuelExhausted:
    case RunStatus::Loop:
    case RunStatus::Stuck:
      return Classification::Nonterminating;
    default:
      break;
  }
  const Trace reference = run(original, Strategy::leftmost());
  if (reference.status != RunStatus::Solved) {
    return t.status == RunStatus::Clash ? Classification::Correct : Classification::Incorrect;
  }
  const bool success = t.status == RunStatus::SemiSolved || t.status == RunStatus::Solved;
  if (!success || !is_solved(t.final_eqs())) return Classification::Incorrect;
  const Substitution theta = extract_mgu(t.final_eqs());
  const Substitution sigma = extract_mgu(reference.final_eqs());
  const auto vars = vars_of(std::span<const Equation>(original));
  if (unifies(theta, original) && more_general_on(theta, sigma, vars)) return Classification::Correct;
  return Classification::Incorrect;
}

}  // namespace occurlab
