#include "occurlab/differential.hpp"

#include <array>

namespace occurlab {

namespace {

struct Symbol {
  const char* name;
  std::size_t arity;
};

constexpr std::array<Symbol, 6> kSignature{{{"a", 0}, {"b", 0}, {"f", 1}, {"g", 1}, {"h", 2}, {"k", 2}}};
constexpr std::array<const char*, 6> kVarNames{"X", "Y", "Z", "W", "V", "U"};

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::vector<Variable> var_pool(std::size_t n, const std::string& suffix = "") {
  std::vector<Variable> out;
  for (std::size_t i = 0; i < n && i < kVarNames.size(); ++i) out.push_back(Variable{kVarNames[i] + suffix});
  return out;
}

Term replace_at(const Term& t, std::span<const std::size_t> path, const Term& by) {
  if (path.empty()) return by;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path[0]] = replace_at(args[path[0]], path.subspan(1), by);
  return Term::compound(t.name(), std::move(args));
}

void compound_paths(const Term& t, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (t.is_variable()) return;
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(i);
    compound_paths(t.arg(i), cur, out);
    cur.pop_back();
  }
}

Term subterm(const Term& t, std::span<const std::size_t> path) {
  return path.empty() ? t : subterm(t.arg(path[0]), path.subspan(1));
}

}  // namespace

Term random_term(std::mt19937_64& rng, const std::vector<Variable>& vars, std::size_t max_arity,
                 std::size_t depth) {
  std::vector<Symbol> syms;
  for (const Symbol& s : kSignature) {
    if (s.arity <= max_arity && (depth > 0 || s.arity == 0)) syms.push_back(s);
  }
  // Variables get about as much weight as all function symbols together.
  const std::size_t choice = pick(rng, syms.size() * 2);
  if (choice >= syms.size() && !vars.empty()) return Term::variable(vars[pick(rng, vars.size())]);
  const Symbol& s = syms[choice % syms.size()];
  std::vector<Term> args;
  for (std::size_t i = 0; i < s.arity; ++i) args.push_back(random_term(rng, vars, max_arity, depth - 1));
  return Term::compound(s.name, std::move(args));
}

EquationSet random_equation_set(std::mt19937_64& rng, const RandomSetParams& params) {
  const auto vars = var_pool(1 + pick(rng, params.max_variables));
  const std::size_t n = 1 + pick(rng, params.max_equations);
  EquationSet out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({random_term(rng, vars, params.max_arity, params.max_depth),
                   random_term(rng, vars, params.max_arity, params.max_depth)});
  }
  return out;
}

std::pair<Atom, Atom> random_atom_pair(std::mt19937_64& rng, std::size_t max_depth) {
  const auto left = var_pool(3);
  const auto right = var_pool(3, "1");
  Atom a{"p", {random_term(rng, left, 2, max_depth), random_term(rng, left, 2, max_depth)}};
  Atom h{"p", {random_term(rng, right, 2, max_depth), random_term(rng, right, 2, max_depth)}};
  return {std::move(a), std::move(h)};
}

std::string Schedule::label() const { return strategy.name() + "/" + std::string(mode_name(mode)); }

std::vector<Schedule> sample_schedules(std::uint64_t seed, std::size_t random_count) {
  std::vector<Schedule> out;
  for (MinusMode mode : {MinusMode::Restricted, MinusMode::Unrestricted}) {
    for (const auto& name : {"leftmost", "rightmost", "bind-eager", "adversarial"}) {
      out.push_back({Strategy::from_name(name), mode});
    }
    for (std::size_t i = 0; i < random_count; ++i) {
      out.push_back({Strategy::random(seed * 1000003 + i * 2 + (mode == MinusMode::Restricted ? 0 : 1)), mode});
    }
  }
  return out;
}

SetReport check_set(const EquationSet& e, std::span<const Schedule> schedules, std::size_t fuel) {
  SetReport r;
  r.eqs = e;
  for (const Schedule& s : schedules) {
    Trace t = run_minus(e, s.strategy, s.mode, fuel);
    const Classification c = classify_result(t, e);
    if (c != Classification::Nonterminating) {
      ++r.terminated;
      (c == Classification::Correct ? r.correct : r.incorrect) += 1;
    }
    r.runs.push_back({s.label(), std::move(t), c});
  }
  return r;
}

TheoremTestReport theorem_test(const TheoremTestOptions& options, const SetObserver& observe) {
  TheoremTestReport rep;
  std::mt19937_64 rng(options.seed);
  // Bounded so a pathological generator cannot spin forever.
  const std::size_t max_generated = options.count * 50 + 100;
  while (rep.accepted < options.count && rep.generated < max_generated) {
    const EquationSet e = random_equation_set(rng, options.params);
    ++rep.generated;
    const OcfSearch s = exists_ocf_run(e, options.bound);
    if (s.kind == OcfSearch::Kind::None) {
      ++rep.rejected;
      continue;
    }
    if (s.kind == OcfSearch::Kind::Unknown) {
      ++rep.unknown;
      continue;
    }
    ++rep.accepted;
    const auto schedules = sample_schedules(options.seed + rep.generated);
    const SetReport sr = check_set(e, schedules, options.fuel);
    rep.runs += sr.runs.size();
    rep.terminated += sr.terminated;
    rep.correct += sr.correct;
    rep.incorrect += sr.incorrect;
    if (sr.terminated < options.min_terminated) ++rep.under_sampled;
    if (observe) observe(sr);
    if (sr.incorrect > 0 && !rep.counterexample) {
      for (std::size_t i = 0; i < sr.runs.size(); ++i) {
        if (sr.runs[i].classification != Classification::Incorrect) continue;
        const Schedule sched = schedules[i];
        rep.counterexample_schedule = sched.label();
        rep.counterexample = shrink(e, [&](const EquationSet& cand) {
          if (exists_ocf_run(cand, options.bound).kind != OcfSearch::Kind::Found) return false;
          const Trace t = run_minus(cand, sched.strategy, sched.mode, options.fuel);
          return classify_result(t, cand) == Classification::Incorrect;
        });
        break;
      }
    }
  }
  return rep;
}

EquationSet shrink(EquationSet eqs, const std::function<bool(const EquationSet&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < eqs.size() && eqs.size() > 1; ++i) {
      EquationSet cand = eqs;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(cand)) {
        eqs = std::move(cand);
        progress = true;
        --i;
      }
    }
    for (std::size_t i = 0; i < eqs.size() && !progress; ++i) {
      for (bool rhs : {false, true}) {
        const Term side = rhs ? eqs[i].rhs : eqs[i].lhs;
        std::vector<std::vector<std::size_t>> paths;
        std::vector<std::size_t> cur;
        compound_paths(side, cur, paths);
        const auto vs = vars_of(std::span<const Equation>(eqs));
        for (const auto& p : paths) {
          const Term sub = subterm(side, p);
          std::vector<Term> replacements(sub.args().begin(), sub.args().end());
          if (!vs.empty()) replacements.push_back(Term::variable(vs.front()));
          if (sub.arity() > 0) replacements.push_back(Term::constant("a"));
          for (const Term& by : replacements) {
            EquationSet cand = eqs;
            (rhs ? cand[i].rhs : cand[i].lhs) = replace_at(side, p, by);
            if (fails(cand)) {
              eqs = std::move(cand);
              progress = true;
              break;
            }
          }
          if (progress) break;
        }
        if (progress) break;
      }
    }
  }
  return eqs;
}

}  // namespace occurlab
