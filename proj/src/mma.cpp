#include "occurlab/mma.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "occurlab/parser.hpp"

namespace occurlab {

std::string_view action_number(ActionKind kind) {
  switch (kind) {
    case ActionKind::Decompose: return "1";
    case ActionKind::Clash: return "2";
    case ActionKind::DeleteTrivial: return "3";
    case ActionKind::Orient: return "4";
    case ActionKind::Eliminate: return "5";
    case ActionKind::OccurHalt: return "6";
    case ActionKind::PartialEliminate: return "5'";
  }
  return "?";
}

std::string_view action_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Decompose: return "decompose";
    case ActionKind::Clash: return "clash";
    case ActionKind::DeleteTrivial: return "delete";
    case ActionKind::Orient: return "orient";
    case ActionKind::Eliminate: return "eliminate";
    case ActionKind::OccurHalt: return "occur-halt";
    case ActionKind::PartialEliminate: return "partial-eliminate";
  }
  return "?";
}

std::string_view status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::Solved: return "solved";
    case RunStatus::SemiSolved: return "semi-solved";
    case RunStatus::Clash: return "clash";
    case RunStatus::OccurCheck: return "occur-check";
    case RunStatus::FuelExhausted: return "fuel-exhausted";
    case RunStatus::Loop: return "loop";
    case RunStatus::Stuck: return "stuck";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Rewriting

namespace detail {

bool occurs_elsewhere(const EquationSet& eqs, std::size_t position, const Variable& x) {
  for (std::size_t j = 0; j < eqs.size(); ++j) {
    if (j == position) continue;
    if (occurs_in(x, eqs[j].lhs) || occurs_in(x, eqs[j].rhs)) return true;
  }
  return false;
}

namespace {

Term replace_at(const Term& t, std::span<const std::size_t> path, const Term& with) {
  if (path.empty()) return with;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args.at(path.front()) = replace_at(args.at(path.front()), path.subspan(1), with);
  return Term::compound(t.name(), std::move(args));
}

}  // namespace

EquationSet perform(const EquationSet& eqs, const Action& a) {
  EquationSet out;
  const Equation& eq = eqs.at(a.position);
  switch (a.kind) {
    case ActionKind::Decompose:
      out.reserve(eqs.size() + eq.lhs.arity());
      out.insert(out.end(), eqs.begin(), eqs.begin() + static_cast<std::ptrdiff_t>(a.position));
      for (std::size_t i = 0; i < eq.lhs.arity(); ++i) out.push_back({eq.lhs.arg(i), eq.rhs.arg(i)});
      out.insert(out.end(), eqs.begin() + static_cast<std::ptrdiff_t>(a.position) + 1, eqs.end());
      return out;
    case ActionKind::Clash:
    case ActionKind::OccurHalt:
      return eqs;
    case ActionKind::DeleteTrivial:
      out = eqs;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(a.position));
      return out;
    case ActionKind::Orient:
      out = eqs;
      out[a.position] = eq.flipped();
      return out;
    case ActionKind::Eliminate: {
      Substitution binding;
      binding.bind(*a.var, *a.term);
      out.reserve(eqs.size());
      for (std::size_t j = 0; j < eqs.size(); ++j) {
        out.push_back(j == a.position ? eqs[j] : apply(binding, eqs[j]));
      }
      return out;
    }
    case ActionKind::PartialEliminate: {
      out = eqs;
      for (const Occurrence& occ : a.occurrences) {
        Equation& target = out.at(occ.equation);
        Term& side = occ.rhs ? target.rhs : target.lhs;
        side = replace_at(side, occ.path, *a.term);
      }
      return out;
    }
  }
  throw std::logic_error("unknown action kind");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// MMA proper

bool is_solved(std::span<const Equation> eqs) {
  std::set<Variable> lhs;
  for (const Equation& e : eqs) {
    if (!e.lhs.is_variable() || !lhs.insert(e.lhs.var()).second) return false;
  }
  for (const Equation& e : eqs) {
    for (const Variable& v : vars_of(e.rhs)) {
      if (lhs.count(v) != 0) return false;
    }
  }
  return true;
}

std::vector<Action> applicable_actions(const MmaState& s) {
  std::vector<Action> out;
  if (s.status != RunStatus::Running) return out;
  for (std::size_t i = 0; i < s.eqs.size(); ++i) {
    const Equation& e = s.eqs[i];
    if (e.lhs.is_compound() && e.rhs.is_compound()) {
      const bool same = e.lhs.name() == e.rhs.name() && e.lhs.arity() == e.rhs.arity();
      out.push_back({same ? ActionKind::Decompose : ActionKind::Clash, i, {}, {}, {}});
    } else if (e.lhs.is_compound()) {
      out.push_back({ActionKind::Orient, i, {}, {}, {}});
    } else if (e.rhs.is_variable() && e.rhs.var() == e.lhs.var()) {
      out.push_back({ActionKind::DeleteTrivial, i, {}, {}, {}});
    } else if (occurs_in(e.lhs.var(), e.rhs)) {
      out.push_back({ActionKind::OccurHalt, i, {}, {}, {}});
    } else if (detail::occurs_elsewhere(s.eqs, i, e.lhs.var())) {
      out.push_back({ActionKind::Eliminate, i, e.lhs.var(), e.rhs, {}});
    }
  }
  return out;
}

MmaState step(const MmaState& s, const Action& a) {
  const auto actions = applicable_actions(s);
  if (std::find(actions.begin(), actions.end(), a) == actions.end()) {
    throw std::invalid_argument("action (" + std::string(action_number(a.kind)) + ") is not applicable at position " +
                                std::to_string(a.position + 1));
  }
  MmaState next{detail::perform(s.eqs, a), RunStatus::Running};
  if (a.kind == ActionKind::Clash) next.status = RunStatus::Clash;
  if (a.kind == ActionKind::OccurHalt) next.status = RunStatus::OccurCheck;
  if (next.status == RunStatus::Running && applicable_actions(next).empty()) next.status = RunStatus::Solved;
  return next;
}

Trace run(const EquationSet& e, const Strategy& strategy, std::size_t fuel) {
  Trace trace{e, {}, {}, {}, RunStatus::Running, strategy.name()};
  MmaState s{e, RunStatus::Running};
  for (std::size_t used = 0;; ++used) {
    const auto actions = applicable_actions(s);
    if (actions.empty()) {
      trace.status = RunStatus::Solved;
      return trace;
    }
    if (used == fuel) {
      trace.status = RunStatus::FuelExhausted;
      return trace;
    }
    const Action& a = actions.at(strategy.choose(s.eqs, actions));
    s = MmaState{detail::perform(s.eqs, a), RunStatus::Running};
    trace.actions.push_back(a);
    trace.states.push_back(s.eqs);
    if (a.kind == ActionKind::Clash || a.kind == ActionKind::OccurHalt) {
      trace.status = a.kind == ActionKind::Clash ? RunStatus::Clash : RunStatus::OccurCheck;
      return trace;
    }
  }
}

Substitution extract_mgu(std::span<const Equation> solved) {
  if (!is_solved(solved)) throw std::invalid_argument("equation set is not solved: " + render(solved));
  Substitution out;
  for (const Equation& e : solved) out.bind(e.lhs.var(), e.rhs);
  return out;
}

Substitution extract_mgu(const MmaState& s) {
  if (s.status != RunStatus::Solved) {
    throw std::invalid_argument("state is " + std::string(status_name(s.status)) + ", not solved");
  }
  return extract_mgu(s.eqs);
}

// ---------------------------------------------------------------------------
// Strategies

Strategy::Strategy(std::string name, Chooser chooser, bool memoryless)
    : name_(std::move(name)), chooser_(std::move(chooser)), memoryless_(memoryless) {}

std::size_t Strategy::choose(const EquationSet& eqs, std::span<const Action> actions) const {
  const std::size_t i = chooser_(eqs, actions);
  if (i >= actions.size()) throw std::logic_error("strategy " + name_ + " chose an invalid action");
  return i;
}

namespace {

Strategy ranked(std::string name, std::function<int(const EquationSet&, const Action&)> rank) {
  return Strategy(
      std::move(name),
      [rank = std::move(rank)](const EquationSet& eqs, std::span<const Action> actions) {
        std::size_t best = 0;
        int best_rank = rank(eqs, actions[0]);
        for (std::size_t i = 1; i < actions.size(); ++i) {
          const int r = rank(eqs, actions[i]);
          if (r < best_rank) {
            best = i;
            best_rank = r;
          }
        }
        return best;
      },
      true);
}

// A 5' step that replaces the left-hand side X of some X = t' by a larger t.
bool grows_left_side(const EquationSet& eqs, const Action& a) {
  if (a.kind != ActionKind::PartialEliminate || a.occurrences.size() != 1) return false;
  const Occurrence& occ = a.occurrences.front();
  if (occ.rhs || !occ.path.empty()) return false;
  return a.term->size() > eqs.at(occ.equation).rhs.size();
}

int adversarial_rank(const EquationSet& eqs, const Action& a) {
  const Equation& e = eqs.at(a.position);
  switch (a.kind) {
    case ActionKind::OccurHalt: return 0;
    case ActionKind::Decompose: return 1;
    case ActionKind::PartialEliminate: return grows_left_side(eqs, a) ? 2 : 6;
    case ActionKind::Orient: return is_ground(e.lhs) ? 7 : 3;
    case ActionKind::Eliminate: return is_ground(*a.term) ? 8 : 4;
    case ActionKind::DeleteTrivial: return 5;
    case ActionKind::Clash: return 9;
  }
  return 10;
}

}  // namespace

int bind_eager_rank(const EquationSet& eqs, const Action& a) {
  const Equation& e = eqs.at(a.position);
  switch (a.kind) {
    case ActionKind::Eliminate: return is_ground(*a.term) ? 0 : 3;
    case ActionKind::Orient: return is_ground(e.lhs) ? 1 : 3;
    case ActionKind::Clash:
    case ActionKind::Decompose:
    case ActionKind::DeleteTrivial: return 2;
    case ActionKind::PartialEliminate: return 4;
    case ActionKind::OccurHalt: return 9;
  }
  return 10;
}

Strategy Strategy::leftmost() {
  return Strategy("leftmost", [](const EquationSet&, std::span<const Action>) -> std::size_t { return 0; },
                  true);
}

Strategy Strategy::rightmost() {
  return Strategy(
      "rightmost", [](const EquationSet&, std::span<const Action> actions) { return actions.size() - 1; }, true);
}

Strategy Strategy::random(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return Strategy(
      "random:" + std::to_string(seed),
      [rng](const EquationSet&, std::span<const Action> actions) {
        return std::uniform_int_distribution<std::size_t>(0, actions.size() - 1)(*rng);
      },
      false);
}

Strategy Strategy::bind_eagerly() { return ranked("bind-eager", bind_eager_rank); }

Strategy Strategy::adversarial() { return ranked("adversarial", adversarial_rank); }

Strategy Strategy::from_name(std::string_view name) {
  if (name == "leftmost") return leftmost();
  if (name == "rightmost") return rightmost();
  if (name == "bind-eager") return bind_eagerly();
  if (name == "adversarial") return adversarial();
  std::string_view digits = name;
  if (name.substr(0, 7) == "random:") digits = name.substr(7);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return random(std::stoull(std::string(digits)));
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<std::string> Strategy::builtin_names() {
  return {"leftmost", "rightmost", "bind-eager", "adversarial"};
}

// ---------------------------------------------------------------------------
// Canonical keys

namespace {

void shape_into(const Term& t, std::string& out) {
  if (t.is_variable()) {
    out += '_';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    shape_into(t.arg(i), out);
  }
  out += ')';
}

void key_into(const Term& t, std::map<Variable, std::size_t>& names, std::string& out) {
  if (t.is_variable()) {
    auto [it, inserted] = names.emplace(t.var(), names.size());
    out += '#';
    out += std::to_string(it->second);
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    key_into(t.arg(i), names, out);
  }
  out += ')';
}

}  // namespace

std::string canonical_key(std::span<const Equation> eqs, std::span<const Variable> marked) {
  std::vector<std::pair<std::string, std::size_t>> order;
  order.reserve(eqs.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    std::string shape;
    shape_into(eqs[i].lhs, shape);
    shape += '=';
    shape_into(eqs[i].rhs, shape);
    order.emplace_back(std::move(shape), i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::map<Variable, std::size_t> names;
  std::string out;
  for (const auto& [shape, i] : order) {
    key_into(eqs[i].lhs, names, out);
    out += '=';
    key_into(eqs[i].rhs, names, out);
    out += ';';
  }
  if (!marked.empty()) {
    std::vector<std::size_t> ids;
    for (const Variable& v : marked) {
      auto it = names.find(v);
      if (it != names.end()) ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    out += '!';
    for (std::size_t id : ids) out += std::to_string(id) + ',';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run-graph exploration

RunGraphSummary enumerate_runs(const EquationSet& e, std::size_t bound) {
  RunGraphSummary summary;
  std::unordered_set<std::string> seen;
  std::deque<EquationSet> frontier;
  seen.insert(canonical_key(e));
  frontier.push_back(e);
  while (!frontier.empty()) {
    EquationSet eqs = std::move(frontier.front());
    frontier.pop_front();
    MmaState s{eqs, RunStatus::Running};
    const auto actions = applicable_actions(s);
    if (actions.empty()) {
      summary.any_success = true;
      Substitution mgu = extract_mgu(std::span<const Equation>(eqs));
      const bool known = std::any_of(summary.mgus.begin(), summary.mgus.end(),
                                     [&](const Substitution& m) { return equal_up_to_renaming(m, mgu); });
      if (!known) summary.mgus.push_back(std::move(mgu));
      continue;
    }
    for (const Action& a : actions) {
      if (a.kind == ActionKind::Clash) {
        summary.any_clash = true;
        continue;
      }
      if (a.kind == ActionKind::OccurHalt) {
        summary.any_occur_halt = true;
        continue;
      }
      EquationSet next = detail::perform(eqs, a);
      if (!seen.insert(canonical_key(next)).second) continue;
      if (seen.size() > bound) {
        summary.exhausted = true;
        summary.states = seen.size();
        return summary;
      }
      frontier.push_back(std::move(next));
    }
  }
  summary.states = seen.size();
  return summary;
}

Verdict is_nsto(const EquationSet& e, std::size_t bound) {
  const RunGraphSummary s = enumerate_runs(e, bound);
  if (s.any_occur_halt) return Verdict::No;
  return s.exhausted ? Verdict::Unknown : Verdict::Yes;
}

namespace {

class OcfSearcher {
 public:
  explicit OcfSearcher(std::size_t bound) : bound_(bound) {}

  // Fills `path` with the actions of a witness run ending in a terminal step.
  bool search(const EquationSet& eqs, std::vector<Action>& path) {
    if (!dead_.insert(canonical_key(eqs)).second) return false;
    if (dead_.size() > bound_) {
      exhausted_ = true;
      return false;
    }
    MmaState s{eqs, RunStatus::Running};
    auto actions = applicable_actions(s);
    if (actions.empty()) return true;
    std::stable_sort(actions.begin(), actions.end(), [&](const Action& a, const Action& b) {
      return rank(eqs, a) < rank(eqs, b);
    });
    for (const Action& a : actions) {
      if (a.kind == ActionKind::OccurHalt) continue;
      path.push_back(a);
      if (a.kind == ActionKind::Clash) return true;
      if (search(detail::perform(eqs, a), path)) return true;
      path.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  bool exhausted() const { return exhausted_; }
  std::size_t states() const { return dead_.size(); }

 private:
  static int rank(const EquationSet& eqs, const Action& a) {
    return a.kind == ActionKind::Clash ? -1 : bind_eager_rank(eqs, a);
  }

  std::size_t bound_;
  bool exhausted_ = false;
  std::unordered_set<std::string> dead_;
};

}  // namespace

OcfSearch exists_ocf_run(const EquationSet& e, std::size_t bound) {
  OcfSearcher searcher(bound);
  std::vector<Action> path;
  OcfSearch result;
  if (searcher.search(e, path)) {
    Trace t{e, {}, {}, {}, RunStatus::Running, "ocf-search"};
    EquationSet cur = e;
    for (const Action& a : path) {
      cur = detail::perform(cur, a);
      t.actions.push_back(a);
      t.states.push_back(cur);
    }
    t.status = (!path.empty() && path.back().kind == ActionKind::Clash) ? RunStatus::Clash : RunStatus::Solved;
    result.kind = OcfSearch::Kind::Found;
    result.witness = std::move(t);
  } else {
    result.kind = searcher.exhausted() ? OcfSearch::Kind::Unknown : OcfSearch::Kind::None;
  }
  result.states = searcher.states();
  return result;
}

}  // namespace occurlab
