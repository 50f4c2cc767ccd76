#pragma once

#include <set>
#include <utility>
#include <vector>

#include "occurlab/term.hpp"

namespace occurlab {

struct Clause {
  Atom head;
  std::vector<Atom> body;  // empty for a fact

  bool is_fact() const { return body.empty(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Program {
  std::vector<Clause> clauses;  // source order
};

// The empty query exists only as the success state of a derivation.
using Query = std::vector<Atom>;

std::vector<Variable> vars_of(const Clause& c);

template <typename T>
struct Renamed {
  T value;
  Substitution renaming;  // bijection on the variables of the original
};

/// Variant of `a` (or `c`) whose variables are all fresh from `supply` and
/// disjoint from `forbidden`.
Renamed<Atom> rename_apart(const Atom& a, const std::set<Variable>& forbidden, NameSupply& supply);
Renamed<Clause> rename_apart(const Clause& c, const std::set<Variable>& forbidden,
                             NameSupply& supply);

}  // namespace occurlab
