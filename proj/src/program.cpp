#include "occurlab/program.hpp"

namespace occurlab {

std::vector<Variable> vars_of(const Clause& c) {
  std::vector<Atom> atoms;
  atoms.reserve(c.body.size() + 1);
  atoms.push_back(c.head);
  atoms.insert(atoms.end(), c.body.begin(), c.body.end());
  return vars_of(std::span<const Atom>(atoms));
}

namespace {

Substitution fresh_renaming(const std::vector<Variable>& vars, const std::set<Variable>& forbidden,
                            NameSupply& supply) {
  Substitution renaming;
  for (const Variable& v : vars) {
    Variable fresh = supply.fresh(v.name);
    while (forbidden.count(fresh) != 0) fresh = supply.fresh(v.name);
    renaming.bind(v, Term::variable(fresh));
  }
  return renaming;
}

}  // namespace

Renamed<Atom> rename_apart(const Atom& a, const std::set<Variable>& forbidden, NameSupply& supply) {
  Substitution renaming = fresh_renaming(vars_of(a), forbidden, supply);
  return {apply(renaming, a), renaming};
}

Renamed<Clause> rename_apart(const Clause& c, const std::set<Variable>& forbidden,
                             NameSupply& supply) {
  Substitution renaming = fresh_renaming(vars_of(c), forbidden, supply);
  Clause out{apply(renaming, c.head), occurlab::apply(renaming, std::span<const Atom>(c.body))};
  return {std::move(out), renaming};
}

}  // namespace occurlab
