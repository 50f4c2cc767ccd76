#include "occurlab/robinson.hpp"

#include <memory>
#include <random>

namespace occurlab {

namespace {

void collect_pairs(const Term& a, const Term& h, std::vector<TermPair>& out) {
  if (a == h) return;
  if (a.is_variable() || h.is_variable() || a.name() != h.name() || a.arity() != h.arity()) {
    out.emplace_back(a, h);
    return;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) collect_pairs(a.arg(i), h.arg(i), out);
}

}  // namespace

std::vector<TermPair> disagreement_pairs(const Term& a, const Term& h) {
  std::vector<TermPair> out;
  collect_pairs(a, h, out);
  return out;
}

std::vector<TermPair> disagreement_pairs(const Atom& a, const Atom& h) {
  return disagreement_pairs(a.as_term(), h.as_term());
}

namespace pair_choice {

PairChooser first() {
  return [](std::span<const TermPair>) -> std::size_t { return 0; };
}

PairChooser last() {
  return [](std::span<const TermPair> pairs) { return pairs.size() - 1; };
}

PairChooser random(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](std::span<const TermPair> pairs) {
    return std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(*rng);
  };
}

}  // namespace pair_choice

namespace {

enum class StepKind { Bound, Clash, OccurCheck };

// Applies one disagreement pair to the state.
StepKind robinson_step(RobinsonState& s, const TermPair& pair) {
  Term x = pair.first;
  Term t = pair.second;
  if (!x.is_variable()) std::swap(x, t);
  if (!x.is_variable()) return StepKind::Clash;
  if (occurs_in(x.var(), t)) return StepKind::OccurCheck;
  Substitution binding;
  binding.bind(x.var(), t);
  s.theta = s.theta.compose(binding);
  s.a_inst = apply(binding, s.a_inst);
  s.h_inst = apply(binding, s.h_inst);
  for (Term& b : s.observers) b = apply(binding, b);
  return StepKind::Bound;
}

RobinsonOutcome outcome_of(StepKind k) {
  return k == StepKind::Clash ? RobinsonOutcome::Clash : RobinsonOutcome::OccurCheck;
}

void explore(RobinsonState state, std::vector<RobinsonResult>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  const auto pairs = disagreement_pairs(state.a_inst, state.h_inst);
  if (pairs.empty()) {
    out.push_back({RobinsonOutcome::Success, std::move(state), {}});
    return;
  }
  for (const TermPair& p : pairs) {
    RobinsonState next = state;
    StepKind k = robinson_step(next, p);
    if (k == StepKind::Bound) {
      explore(std::move(next), out, limit);
    } else {
      out.push_back({outcome_of(k), std::move(next), {}});
    }
    if (out.size() >= limit) return;
  }
}

}  // namespace

RobinsonResult unify_robinson(const Term& a, const Term& h, std::span<const Term> observers,
                              PairChooser choose, bool record_history) {
  RobinsonResult result{RobinsonOutcome::Success,
                        RobinsonState{{}, a, h, std::vector<Term>(observers.begin(), observers.end())},
                        {}};
  RobinsonState& s = result.state;
  while (true) {
    if (record_history) result.history.push_back(s);
    const auto pairs = disagreement_pairs(s.a_inst, s.h_inst);
    if (pairs.empty()) return result;
    StepKind k = robinson_step(s, pairs[choose(pairs)]);
    if (k != StepKind::Bound) {
      result.outcome = outcome_of(k);
      return result;
    }
  }
}

RobinsonResult unify_robinson(const Atom& a, const Atom& h, std::span<const Atom> observers,
                              PairChooser choose, bool record_history) {
  std::vector<Term> obs;
  obs.reserve(observers.size());
  for (const Atom& b : observers) obs.push_back(b.as_term());
  return unify_robinson(a.as_term(), h.as_term(), obs, std::move(choose), record_history);
}

std::vector<RobinsonResult> all_robinson_runs(const Term& a, const Term& h, std::size_t limit) {
  std::vector<RobinsonResult> out;
  explore(RobinsonState{{}, a, h, {}}, out, limit);
  return out;
}

}  // namespace occurlab
